#include <doctest.h>

#include <cmath>

#include "dbcs/csv.hpp"
#include "dbcs/experiment.hpp"
#include "dbcs/json_io.hpp"
#include "dbcs/synth.hpp"
#include "support.hpp"

using namespace dbcs;
using namespace dbcs::testing;

namespace {

LayeredDag toy_dag(std::initializer_list<int> root,
                   std::vector<std::vector<ChannelId>> layers) {
    LayeredDag dag;
    int t = 0;
    for (int c : root)
        dag.root.members.push_back({TaskId{t++, "T" + std::to_string(t)}, ChannelId{c}});
    dag.layers = std::move(layers);
    return dag;
}

Dataset tiny_test_set(int n) {
    std::vector<std::pair<std::vector<double>, int>> rows;
    for (int i = 0; i < n; ++i)
        rows.push_back({{0.0, 0.0, 0.0, 0.0}, i % 2});
    return make_dataset(ids({1, 2, 3, 4}), 2, std::move(rows));
}

}  // namespace

TEST_CASE("fully confident root puts all mass at the lower bound") {
    const LayeredDag dag = toy_dag({1, 2}, {ids({3}), ids({4})});
    TableConfidence table;
    table.set(SubsetKey::of(ids({1, 2})), Confidence{0, 1.0});
    const Dataset test = tiny_test_set(10);
    const EvalReport report = run_experiment(dag, table, test, 0.5);

    CHECK(report.histogram == std::map<std::size_t, double>{{2, 1.0}});
    CHECK(report.mean_channels == 2.0);
    CHECK(report.worst_case_channels == 2);
    CHECK(report.stop_reasons.at("threshold_met") == 10);
    CHECK(report.overall_accuracy == 0.5);  // always predicts task 0
    CHECK(report.per_task_accuracy[0] == 1.0);
    CHECK(report.per_task_accuracy[1] == 0.0);
}

TEST_CASE("unreachable theta puts all mass at the upper bound") {
    const LayeredDag dag = toy_dag({1, 2}, {ids({3}), ids({4})});
    TableConfidence table;
    for (const SubsetKey& key : enumerate_model_keys(dag))
        table.set(key, Confidence{0, 0.9});
    const Dataset test = tiny_test_set(8);
    const EvalReport report = run_experiment(dag, table, test, 1.0);
    CHECK(report.histogram == std::map<std::size_t, double>{{4, 1.0}});
    CHECK(report.worst_case_channels == dag.max_path_channels());
    CHECK(report.stop_reasons.at("reached_destination") == 8);
}

TEST_CASE("histogram fractions sum to one and stay within bounds") {
    const SynthSpec spec = informative_spec(8, 3, 200, {{1}, {2}, {3}}, 2.0, 1.0, 5, 1);
    const Dataset ds = generate_synthetic(spec);
    ClassifierConfig cfg;
    cfg.split.seed = 5;
    const auto folds = split(ds, cfg.split);
    const PrecisionTable pt = rank_channels(ds, cfg);
    const RankingBundle bundle = build_ranking_sets(pt);
    const LayeredDag dag = build_dag(bundle.root, bundle.rankings);
    const ConfidenceRegistry reg = train_registry(folds.train, dag, cfg);

    const EvalReport report = run_experiment(dag, reg, folds.test, 0.9);
    double total = 0.0;
    for (const auto& [size, fraction] : report.histogram) {
        CHECK(size >= dag.root.members.size());
        CHECK(size <= dag.max_path_channels());
        total += fraction;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(report.worst_case_channels <= dag.max_path_channels());

    const EvalReport serial = run_experiment_serial(dag, reg, folds.test, 0.9);
    CHECK(eval_report_to_json(report) == eval_report_to_json(serial));

    const std::string text = report_text(report);
    CHECK(text.find("overall") != std::string::npos);
    const std::string csv = histogram_csv(report);
    CHECK(csv.rfind("channels,fraction\n", 0) == 0);
}

TEST_CASE("theta=1 predictions come from the maximal-subset model") {
    const SynthSpec spec = informative_spec(6, 2, 120, {{1}, {2}}, 2.5, 1.0, 9, 1);
    const Dataset ds = generate_synthetic(spec);
    ClassifierConfig cfg;
    cfg.split.seed = 9;
    const auto folds = split(ds, cfg.split);
    const PrecisionTable pt = rank_channels(ds, cfg);
    const RankingBundle bundle = build_ranking_sets(pt);
    const LayeredDag dag = build_dag(bundle.root, bundle.rankings);
    const ConfidenceRegistry reg = train_registry(folds.train, dag, cfg);

    for (std::size_t i = 0; i < folds.test.samples.size(); ++i) {
        const auto readings = row_readings(folds.test, i);
        const auto result = dbcs_select(dag, reg, readings, 1.0);
        const Confidence final_model =
            reg.confidence(SubsetKey::of(result.selected), readings);
        CHECK(result.predicted == final_model.task);
        CHECK(result.pcv == final_model.value);
    }
}

TEST_CASE("synthetic generation is deterministic per seed") {
    const SynthSpec spec = informative_spec(5, 2, 50, {{1}, {2}}, 2.0, 1.0, 123, 1);
    const Dataset a = generate_synthetic(spec);
    const Dataset b = generate_synthetic(spec);
    CHECK(dataset_to_csv(a) == dataset_to_csv(b));

    SynthSpec other = spec;
    other.seed = 124;
    CHECK(dataset_to_csv(generate_synthetic(other)) != dataset_to_csv(a));
}

TEST_CASE("zero separation yields chance-level precision everywhere") {
    const SynthSpec spec = informative_spec(4, 2, 1500, {}, 0.0, 1.0, 61, 1);
    const Dataset ds = generate_synthetic(spec);  // 3000 samples, no signal
    ClassifierConfig cfg;
    cfg.split.seed = 61;
    const PrecisionTable pt = rank_channels(ds, cfg);
    for (const auto& row : pt.precision)
        for (double p : row)
            CHECK(std::abs(p - 0.5) < 0.05);
}

TEST_CASE("a strongly separated channel tops the table and joins the root") {
    SynthSpec spec;
    spec.channels = ids({1, 2, 3});
    spec.tasks = make_tasks(2);
    spec.samples_per_task = 100;
    spec.sigma = 1.0;
    spec.seed = 15;
    spec.means = {{-5.0, 0.0, 0.0}, {5.0, 0.0, 0.0}};  // channel 1 splits the tasks
    const Dataset ds = generate_synthetic(spec);
    ClassifierConfig cfg;
    cfg.split.seed = 15;
    const PrecisionTable pt = rank_channels(ds, cfg);
    CHECK(pt.at(ChannelId{1}, 0) > 0.99);
    CHECK(pt.at(ChannelId{1}, 1) > 0.99);

    const RankingBundle bundle = build_ranking_sets(pt);
    const auto root = bundle.root.channels_sorted();
    CHECK(std::find(root.begin(), root.end(), ChannelId{1}) != root.end());
}

TEST_CASE("bad synthetic specs are rejected") {
    SynthSpec spec;
    spec.channels = ids({1, 2});
    spec.tasks = make_tasks(2);
    spec.means = {{0.0, 0.0}, {0.0, 0.0}};
    spec.sigma = 0.0;
    CHECK_THROWS_AS(generate_synthetic(spec), ValidationError);
    spec.sigma = 1.0;
    spec.means = {{0.0}, {0.0}};
    CHECK_THROWS_AS(generate_synthetic(spec), ValidationError);
    spec.means = {{0.0, 0.0}, {0.0, 0.0}};
    spec.informative = {{ChannelId{9}}};
    CHECK_THROWS_AS(generate_synthetic(spec), ValidationError);
}

TEST_CASE("baseline experiment is bounded by the channel count") {
    const SynthSpec spec = informative_spec(5, 2, 80, {{1}, {2}}, 2.5, 1.0, 33, 1);
    const Dataset ds = generate_synthetic(spec);
    ClassifierConfig cfg;
    cfg.split.seed = 33;
    const auto folds = split(ds, cfg.split);
    const LazyRegistry reg(folds.train, cfg);
    const EvalReport report = baseline_experiment(ds.channels, reg, folds.test, 0.9);
    CHECK(report.samples == folds.test.samples.size());
    CHECK(report.worst_case_channels <= ds.channels.size());
    for (const auto& [size, fraction] : report.histogram)
        CHECK(size >= 1);
}
