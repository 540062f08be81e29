// Times the parallel sweep kernels against their serial references on a
// shared corpus and insists the results agree exactly. Not part of ctest;
// run it by hand (optionally with OMP_NUM_THREADS set) to see the scaling.
#include <chrono>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dagsel/analysis.hpp"
#include "dagsel/generators.hpp"
#include "dagsel/mechanisms.hpp"

using namespace dagsel;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool same_ic(const IcSweepResult& a, const IcSweepResult& b) {
    return a.subsets_examined == b.subsets_examined &&
           a.failing_indices == b.failing_indices && a.violation_counts == b.violation_counts;
}

}  // namespace

int main(int argc, char** argv) {
    int count = argc > 1 ? std::atoi(argv[1]) : 2000;
    std::cout << "corpus: " << count << " random dags (n <= 10, out-degree <= 6, seed 7)\n";
#ifdef _OPENMP
    std::cout << "openmp: enabled, max threads " << omp_get_max_threads() << "\n";
#else
    std::cout << "openmp: not available, both kernels run serially\n";
#endif
    std::vector<Dag> corpus = random_corpus(count, 10, 7, 6);
    Mechanism mech = make_beta_lm(OPTIMAL_BETA);

    auto t0 = Clock::now();
    IcSweepResult ic_par = ic_sweep(mech, corpus);
    double ic_par_s = seconds_since(t0);

    t0 = Clock::now();
    IcSweepResult ic_ser = ic_sweep_serial(mech, corpus);
    double ic_ser_s = seconds_since(t0);

    t0 = Clock::now();
    RatioSweepResult ra_par = ratio_sweep(mech, corpus);
    double ra_par_s = seconds_since(t0);

    t0 = Clock::now();
    RatioSweepResult ra_ser = ratio_sweep_serial(mech, corpus);
    double ra_ser_s = seconds_since(t0);

    t0 = Clock::now();
    StructureSweepResult st_par = structure_sweep(corpus);
    double st_par_s = seconds_since(t0);

    t0 = Clock::now();
    StructureSweepResult st_ser = structure_sweep_serial(corpus);
    double st_ser_s = seconds_since(t0);

    std::cout << "ic sweep:        parallel " << ic_par_s << " s, serial " << ic_ser_s
              << " s, speedup " << ic_ser_s / ic_par_s << "x\n";
    std::cout << "ratio sweep:     parallel " << ra_par_s << " s, serial " << ra_ser_s
              << " s, speedup " << ra_ser_s / ra_par_s << "x\n";
    std::cout << "structure sweep: parallel " << st_par_s << " s, serial " << st_ser_s
              << " s, speedup " << st_ser_s / st_par_s << "x\n";

    bool ok = same_ic(ic_par, ic_ser) && ra_par.ratios == ra_ser.ratios &&
              ra_par.min_ratio == ra_ser.min_ratio &&
              ra_par.argmin_index == ra_ser.argmin_index &&
              st_par.failing_indices == st_ser.failing_indices;
    std::cout << (ok ? "kernels agree exactly\n" : "MISMATCH between kernels\n");
    return ok ? 0 : 1;
}
