#include "dagsel/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace dagsel {

namespace {

std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

Json to_json(const Dag& g) {
    Json j;
    j["n"] = g.n();
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back(Json::array({e.from, e.to}));
    j["edges"] = std::move(edges);
    return j;
}

Dag dag_from_json(const Json& j) {
    if (!j.is_object()) throw GraphError("graph json: expected an object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw GraphError("graph json: missing integer field \"n\"");
    if (!j.contains("edges") || !j["edges"].is_array())
        throw GraphError("graph json: missing array field \"edges\"");
    const int n = j["n"].get<int>();
    std::vector<Edge> edges;
    size_t idx = 0;
    for (const Json& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw GraphError("graph json: edges[" + std::to_string(idx) +
                             "] must be a pair of integers");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
        ++idx;
    }
    return build_dag(n, std::move(edges));
}

Json to_json(const SelectionDistribution& dist) {
    Json j;
    j["mechanism"] = dist.mechanism();
    j["k"] = dist.k();
    j["n"] = dist.n_agents();
    j["ic_guaranteed"] = dist.ic_guaranteed();
    Json outcomes = Json::array();
    for (const SelectionDistribution::Outcome& o : dist.outcomes()) {
        Json oj;
        oj["set"] = o.agents;
        oj["p"] = o.prob;
        outcomes.push_back(std::move(oj));
    }
    j["outcomes"] = std::move(outcomes);
    Json marg = Json::object();
    for (int i = 1; i <= dist.n_agents(); ++i) marg[std::to_string(i)] = dist.marginal(i);
    j["marginals"] = std::move(marg);
    return j;
}

Json to_json(const IcViolation& v) {
    Json j;
    j["agent"] = v.agent;
    Json hidden = Json::array();
    for (const Edge& e : v.hidden) hidden.push_back(Json::array({e.from, e.to}));
    j["hidden"] = std::move(hidden);
    j["marginal_before"] = v.marginal_before;
    j["marginal_after"] = v.marginal_after;
    return j;
}

Json to_json(const IcReport& r) {
    Json j;
    j["mechanism"] = r.mechanism;
    j["subsets_examined"] = r.subsets_examined;
    j["passed"] = r.passed();
    Json vs = Json::array();
    for (const IcViolation& v : r.violations) vs.push_back(to_json(v));
    j["violations"] = std::move(vs);
    return j;
}

Json to_json(const StructureReport& r) {
    Json j;
    j["k"] = r.k;
    j["passed"] = r.all_passed();
    Json checks = Json::array();
    for (const StructureCheck& c : r.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["passed"] = c.passed;
        cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j;
}

Json to_json(const UpperBoundCertificate& cert) {
    auto rats = [](const auto& arr) {
        Json a = Json::array();
        for (const Rat& r : arr) a.push_back(rat_to_string(r));
        return a;
    };
    Json j;
    j["x_chain"] = rats(cert.x_chain);
    j["x_hide21"] = rats(cert.x_hide21);
    j["x_hide32"] = rats(cert.x_hide32);
    j["ratios"] = rats(cert.ratios);
    j["min_ratio"] = rat_to_string(cert.min_ratio);
    j["lp_optimum"] = rat_to_string(cert.lp_optimum);
    return j;
}

Json ratio_report_json(const RatioSweepResult& result, std::span<const Dag> corpus) {
    Json j;
    j["mechanism"] = result.mechanism;
    j["k"] = result.k;
    j["graphs"] = corpus.size();
    j["min_ratio"] = result.min_ratio;
    if (!corpus.empty()) {
        j["argmin_index"] = result.argmin_index;
        j["argmin_hash"] = graph_hash_hex(corpus[result.argmin_index]);
        j["argmin_graph"] = to_json(corpus[result.argmin_index]);
    }
    return j;
}

std::uint64_t graph_hash(const Dag& g) {
    // FNV-1a, 64-bit
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::int64_t value) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= std::uint64_t(value >> (8 * byte)) & 0xffu;
            h *= 0x100000001b3ull;
        }
    };
    mix(g.n());
    for (const Edge& e : g.edges()) {
        mix(e.from);
        mix(e.to);
    }
    return h;
}

std::string graph_hash_hex(const Dag& g) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)graph_hash(g));
    return buf;
}

void write_sweep_csv(std::ostream& os, std::span<const Dag> corpus,
                     const std::vector<double>* ratios,
                     const std::vector<int>* violation_counts) {
    os << "graph_hash,ratio,violations\n";
    for (size_t i = 0; i < corpus.size(); ++i) {
        os << graph_hash_hex(corpus[i]) << ',';
        if (ratios) os << shortest((*ratios)[i]);
        os << ',';
        if (violation_counts) os << (*violation_counts)[i];
        os << '\n';
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out.flush()) throw std::runtime_error("write to " + tmp + " failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move " + tmp + " into place");
}

}  // namespace dagsel
