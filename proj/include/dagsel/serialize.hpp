#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "dagsel/analysis.hpp"
#include "dagsel/graph.hpp"
#include "dagsel/influential.hpp"
#include "dagsel/mechanisms.hpp"
#include "dagsel/upper_bound.hpp"

// JSON/CSV wire formats. Key order is fixed (ordered_json) and doubles are
// emitted in shortest round-trip form, so identical values always serialize
// to identical bytes -- reports and CLI outputs are reproducible bit-for-bit.
namespace dagsel {

using Json = nlohmann::ordered_json;

// {"n": <int>, "edges": [[from,to], ...]} with edges sorted ascending.
Json to_json(const Dag& g);
// Validates shape and content; GraphError subclasses name what is wrong.
Dag dag_from_json(const Json& j);

Json to_json(const SelectionDistribution& dist);
Json to_json(const IcViolation& v);
Json to_json(const IcReport& r);
Json to_json(const StructureReport& r);
Json to_json(const UpperBoundCertificate& cert);

// Full ratio-sweep report including the worst graph.
Json ratio_report_json(const RatioSweepResult& result, std::span<const Dag> corpus);

// FNV-1a over the canonical encoding; stable across platforms and runs.
std::uint64_t graph_hash(const Dag& g);
std::string graph_hash_hex(const Dag& g);

// One row per corpus graph: graph_hash,ratio,violations. Pass nullptr for a
// column a sweep did not produce; its cells are left empty.
void write_sweep_csv(std::ostream& os, std::span<const Dag> corpus,
                     const std::vector<double>* ratios,
                     const std::vector<int>* violation_counts);

// Canonical file rendering: two-space indent plus trailing newline.
std::string dump_json(const Json& j);

// Writes via a temp file + rename so readers never observe partial output.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dagsel
