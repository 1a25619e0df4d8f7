// Benchmark comparing the OpenMP kernels against their serial references.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dbcs/confidence.hpp"
#include "dbcs/experiment.hpp"
#include "dbcs/json_io.hpp"
#include "dbcs/synth.hpp"

using namespace dbcs;

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-18s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both variants run serially\n");
#endif

    const SynthSpec spec = informative_spec(
        14, 3, 1000, {{4, 5, 6}, {7, 8, 9}, {10, 11, 12}}, 3.0, 1.0, /*seed=*/7,
        /*first_channel_id=*/4);
    const Dataset ds = generate_synthetic(spec);
    ClassifierConfig cfg;
    cfg.split.seed = 7;

    std::printf("%-18s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    PrecisionTable pt;
    {
        const double s = time_ms([&] { pt = rank_channels_serial(ds, cfg); });
        PrecisionTable pt_par;
        const double p = time_ms([&] { pt_par = rank_channels(ds, cfg); });
        if (precision_table_to_json(pt) != precision_table_to_json(pt_par)) {
            std::fprintf(stderr, "rank_channels: parallel result differs from serial\n");
            return 1;
        }
        row("rank_channels", s, p);
    }

    const RankingBundle bundle = build_ranking_sets(pt);
    const LayeredDag dag = build_dag(bundle.root, bundle.rankings);
    const auto folds = split(ds, cfg.split);

    {
        ConfidenceRegistry serial = train_registry_serial(folds.train, dag, cfg);
        ConfidenceRegistry parallel = train_registry_serial(folds.train, dag, cfg);
        const double s = time_ms([&] { serial = train_registry_serial(folds.train, dag, cfg); });
        const double p = time_ms([&] { parallel = train_registry(folds.train, dag, cfg); });
        if (registry_to_json(serial) != registry_to_json(parallel)) {
            std::fprintf(stderr, "train_registry: parallel result differs from serial\n");
            return 1;
        }
        row("train_registry", s, p);

        EvalReport rs, rp;
        const double es =
            time_ms([&] { rs = run_experiment_serial(dag, serial, folds.test, 0.9); });
        const double ep = time_ms([&] { rp = run_experiment(dag, serial, folds.test, 0.9); });
        if (eval_report_to_json(rs) != eval_report_to_json(rp)) {
            std::fprintf(stderr, "run_experiment: parallel result differs from serial\n");
            return 1;
        }
        row("run_experiment", es, ep);
    }
    return 0;
}
