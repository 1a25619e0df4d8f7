#include <doctest.h>

#include <cmath>
#include <random>

#include "dbcs/csv.hpp"
#include "dbcs/experiment.hpp"
#include "dbcs/json_io.hpp"
#include "dbcs/types.hpp"
#include "support.hpp"

using namespace dbcs;
using namespace dbcs::testing;

TEST_CASE("well-formed dataset validates cleanly") {
    const Dataset ds = make_dataset(ids({1, 2}), 2,
                                    {{{0.0, 1.0}, 0}, {{1.0, 0.0}, 1}, {{0.5, 0.5}, 0}});
    const auto report = validate_dataset(ds);
    CHECK(report.valid());
    CHECK(report.violations.empty());
}

TEST_CASE("NaN feature is flagged with sample and channel") {
    Dataset ds = make_dataset(ids({1, 7}), 2, {{{0.0, 1.0}, 0}, {{1.0, 0.0}, 1}});
    ds.samples[1].features[1] = std::nan("");
    const auto report = validate_dataset(ds);
    REQUIRE_FALSE(report.valid());
    CHECK(report.violations[0] == "non-finite value at sample 1, channel 7");
}

TEST_CASE("empty task class is flagged by name") {
    const Dataset ds = make_dataset(ids({1, 2}), 2, {{{0.0, 1.0}, 0}, {{1.0, 0.0}, 0}});
    const auto report = validate_dataset(ds);
    REQUIRE_FALSE(report.valid());
    CHECK(report.violations[0] == "empty class T2");
}

TEST_CASE("duplicate channels and width mismatches are flagged") {
    Dataset ds = make_dataset(ids({3, 3}), 2, {{{0.0, 1.0}, 0}, {{1.0}, 1}});
    const auto report = validate_dataset(ds);
    REQUIRE_FALSE(report.valid());
    CHECK(report.violations[0] == "duplicate channel 3");
    bool width_flagged = false;
    for (const auto& v : report.violations)
        width_flagged |= v.find("feature width mismatch at sample 1") != std::string::npos;
    CHECK(width_flagged);
}

TEST_CASE("validate_dataset is idempotent and side-effect free") {
    Dataset ds = make_dataset(ids({1, 2}), 2, {{{0.0, 1.0}, 0}, {{1.0, 0.0}, 0}});
    const auto first = validate_dataset(ds);
    const auto second = validate_dataset(ds);
    CHECK(first.violations == second.violations);
}

TEST_CASE("CSV round trip preserves the dataset") {
    const Dataset ds = make_dataset(ids({4, 9}), 2,
                                    {{{0.25, -1.5, 3.0, 0.125}, 0}, {{1.0, 2.0, -0.5, 4.0}, 1}},
                                    /*feature_width=*/2);
    const Dataset back = parse_dataset_csv(dataset_to_csv(ds));
    CHECK(back.channels == ds.channels);
    CHECK(back.feature_width == ds.feature_width);
    CHECK(back.tasks == ds.tasks);
    REQUIRE(back.samples.size() == ds.samples.size());
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        CHECK(back.samples[i].features == ds.samples[i].features);
        CHECK(back.samples[i].label == ds.samples[i].label);
    }
}

TEST_CASE("CSV header is the documented layout") {
    const Dataset ds = make_dataset(ids({4, 9}), 2, {{{0.0, 1.0}, 0}, {{1.0, 0.0}, 1}});
    const std::string csv = dataset_to_csv(ds);
    CHECK(csv.substr(0, csv.find('\n')) == "ch_4:0,ch_9:0,label");
}

TEST_CASE("malformed CSV is rejected") {
    CHECK_THROWS_AS(parse_dataset_csv(""), ValidationError);
    CHECK_THROWS_AS(parse_dataset_csv("ch_1:0,ch_2:0\n1,2\n"), ValidationError);  // no label
    CHECK_THROWS_AS(parse_dataset_csv("ch_1:0,label\nx,T1\n"), ValidationError);  // bad number
    CHECK_THROWS_AS(parse_dataset_csv("ch_1:0,ch_1:0,label\n1,2,T1\n"), ValidationError);
    CHECK_THROWS_AS(parse_dataset_csv("ch_1:0,label\n1,2,T1\n"), ValidationError);  // field count
}

TEST_CASE("valid random datasets pass through the whole pipeline") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> feature(-2.0, 2.0);
    for (int round = 0; round < 20; ++round) {
        std::uniform_int_distribution<int> task_dist(2, 4);
        const int num_tasks = task_dist(rng);
        std::uniform_int_distribution<int> chan_dist(num_tasks + 1, 8);
        const int num_channels = chan_dist(rng);
        std::uniform_int_distribution<int> count_dist(30, 80);
        const int num_samples = count_dist(rng);
        const int width = round % 2 + 1;

        std::vector<std::pair<std::vector<double>, int>> rows;
        for (int i = 0; i < num_samples; ++i) {
            std::vector<double> x;
            for (int c = 0; c < num_channels * width; ++c)
                x.push_back(feature(rng));
            rows.push_back({std::move(x), i % num_tasks});  // every class populated
        }
        std::vector<ChannelId> channels;
        for (int c = 0; c < num_channels; ++c)
            channels.push_back(ChannelId{c + 1});
        const Dataset ds = make_dataset(channels, num_tasks, std::move(rows), width);
        REQUIRE(validate_dataset(ds).valid());

        ClassifierConfig cfg;
        cfg.k = 3;
        cfg.split.seed = static_cast<std::uint64_t>(round);
        const PrecisionTable pt = rank_channels(ds, cfg);
        const RankingBundle bundle = build_ranking_sets(pt);
        const LayeredDag dag = build_dag(bundle.root, bundle.rankings);
        const auto folds = split(ds, cfg.split);
        const ConfidenceRegistry reg = train_registry(folds.train, dag, cfg);
        for (std::size_t i = 0; i < std::min<std::size_t>(3, folds.test.samples.size()); ++i) {
            const auto result = dbcs_select(dag, reg, row_readings(folds.test, i), 0.8);
            CHECK(result.selected.size() >= dag.root.members.size());
            CHECK(result.selected.size() <= dag.max_path_channels());
        }
    }
}
