#include <doctest.h>

#include <random>

#include "dbcs/dag.hpp"
#include "dbcs/json_io.hpp"
#include "support.hpp"

using namespace dbcs;
using namespace dbcs::testing;

namespace {

LayeredDag fixture_dag() {
    const RankingBundle bundle = build_ranking_sets(load_fixture_table());
    return build_dag(bundle.root, bundle.rankings);
}

RootSet root_of(std::initializer_list<int> channels) {
    RootSet root;
    int t = 0;
    for (int c : channels) {
        root.members.push_back({TaskId{t, "T" + std::to_string(t + 1)}, ChannelId{c}});
        ++t;
    }
    return root;
}

}  // namespace

TEST_CASE("fixture DAG has the expected layer structure") {
    const LayeredDag dag = fixture_dag();
    REQUIRE(dag.layers.size() == 4);
    CHECK(dag.layers[0] == ids({16, 10, 6}));
    CHECK(dag.layers[1] == ids({4, 12, 8}));
    CHECK(dag.layers[2] == ids({7, 9, 17}));
    CHECK(dag.layers[3] == ids({14, 5}));
    CHECK(dag.max_path_channels() == 7);  // 50% of the 14 channels
}

TEST_CASE("channel partition is exact") {
    const LayeredDag dag = fixture_dag();
    auto all = dag.all_channels();
    std::sort(all.begin(), all.end());
    CHECK(all == ids({4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17}));
}

TEST_CASE("empty rankings produce a zero-layer DAG") {
    const LayeredDag dag = build_dag(root_of({1, 2}), {});
    CHECK(dag.layers.empty());
    CHECK(dag.max_path_channels() == 2);
    CHECK(enumerate_paths(dag).size() == 1);  // R -> D directly
}

TEST_CASE("duplicate leading channels shift to their successors") {
    // 5 channels, 2 tasks: root {1,2}; A ranks {3,4,5}, B ranks {3,5,4}
    std::vector<RankingSet> rankings = {
        {TaskId{0, "A"}, ids({3, 4, 5})},
        {TaskId{1, "B"}, ids({3, 5, 4})},
    };
    const LayeredDag dag = build_dag(root_of({1, 2}), rankings);
    REQUIRE(dag.layers.size() == 2);
    CHECK(dag.layers[0] == ids({3, 5}));  // B's 3 was claimed by A, B takes 5
    CHECK(dag.layers[1] == ids({4}));
}

TEST_CASE("ranking list order does not matter, task index does") {
    std::vector<RankingSet> forward = {
        {TaskId{0, "A"}, ids({3, 4, 5})},
        {TaskId{1, "B"}, ids({3, 5, 4})},
    };
    auto reversed = forward;
    std::swap(reversed[0], reversed[1]);
    const std::string a = dag_to_json(build_dag(root_of({1, 2}), forward));
    const std::string b = dag_to_json(build_dag(root_of({1, 2}), reversed));
    CHECK(a == b);
}

TEST_CASE("inconsistent ranking universes are rejected") {
    std::vector<RankingSet> rankings = {
        {TaskId{0, "A"}, ids({3, 4})},
        {TaskId{1, "B"}, ids({3, 5})},
    };
    CHECK_THROWS_AS(build_dag(root_of({1, 2}), rankings), ValidationError);

    std::vector<RankingSet> overlapping = {
        {TaskId{0, "A"}, ids({2, 3})},
        {TaskId{1, "B"}, ids({2, 3})},
    };
    CHECK_THROWS_AS(build_dag(root_of({1, 2}), overlapping), ValidationError);
}

TEST_CASE("DAG JSON round trip is the identity") {
    const LayeredDag dag = fixture_dag();
    const LayeredDag back = dag_roundtrip(dag);
    CHECK(dag_to_json(back) == dag_to_json(dag));
    CHECK(back.layers == dag.layers);
    CHECK(back.root.channels() == dag.root.channels());
}

TEST_CASE("duplicate channels in DAG JSON are rejected") {
    const LayeredDag dag = fixture_dag();
    std::string text = dag_to_json(dag);
    // move channel 16 into a second layer as a duplicate
    const auto pos = text.find("14,");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 3, "16,");
    CHECK_THROWS_WITH_AS(dag_from_json(text), doctest::Contains("duplicate channel"),
                         ValidationError);
}

TEST_CASE("degenerate DAG JSON with no layers parses") {
    const std::string text = dag_to_json(build_dag(root_of({1, 2}), {}));
    const LayeredDag dag = dag_from_json(text);
    CHECK(dag.layers.empty());
    CHECK(dag.root.channels() == ids({1, 2}));
}

TEST_CASE("fixture path enumeration") {
    const LayeredDag dag = fixture_dag();
    const auto paths = enumerate_paths(dag);
    CHECK(paths.size() == 54);  // 3*3*3*2
    CHECK(paths.size() == recursive_path_count(dag));
    // lexicographic in layer storage order
    CHECK(paths[0].layer_nodes == ids({16, 4, 7, 14}));
    CHECK(paths[1].layer_nodes == ids({16, 4, 7, 5}));
    CHECK(paths.back().layer_nodes == ids({6, 8, 17, 5}));
}

TEST_CASE("two 2-node layers give four lexicographic paths") {
    LayeredDag dag;
    dag.root = root_of({0});
    dag.layers = {ids({1, 2}), ids({3, 4})};
    const auto paths = enumerate_paths(dag);
    REQUIRE(paths.size() == 4);
    CHECK(paths[0].layer_nodes == ids({1, 3}));
    CHECK(paths[1].layer_nodes == ids({1, 4}));
    CHECK(paths[2].layer_nodes == ids({2, 3}));
    CHECK(paths[3].layer_nodes == ids({2, 4}));
}

TEST_CASE("path count equals the product of layer sizes on random DAGs") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 100; ++round) {
        const RandomInstance inst = make_random_instance(rng, 16, 4);
        std::size_t product = 1;
        for (const auto& layer : inst.dag.layers)
            product *= layer.size();
        const auto paths = enumerate_paths(inst.dag);
        CHECK(paths.size() == product);
        CHECK(paths.size() == recursive_path_count(inst.dag));
    }
}
