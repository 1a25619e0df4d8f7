#pragma once

// Shared test helpers: independent reference implementations and generators.
// Everything here stays deliberately naive so it can serve as an oracle for
// the production code paths.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dbcs/confidence.hpp"
#include "dbcs/dag.hpp"
#include "dbcs/json_io.hpp"
#include "dbcs/ranking.hpp"
#include "dbcs/types.hpp"

namespace dbcs::testing {

inline std::string fixture_path() {
    return std::string(DBCS_DATA_DIR) + "/precision_table_14ch.json";
}

inline PrecisionTable load_fixture_table() {
    return load_precision_table(fixture_path());
}

inline std::vector<ChannelId> ids(std::initializer_list<int> values) {
    std::vector<ChannelId> out;
    for (int v : values)
        out.push_back(ChannelId{v});
    return out;
}

inline std::vector<TaskId> make_tasks(int count) {
    std::vector<TaskId> out;
    for (int t = 0; t < count; ++t)
        out.push_back(TaskId{t, "T" + std::to_string(t + 1)});
    return out;
}

/// Dataset from explicit per-sample (features, label) rows, feature width 1 per
/// channel unless stated otherwise.
inline Dataset make_dataset(std::vector<ChannelId> channels, int num_tasks,
                            std::vector<std::pair<std::vector<double>, int>> rows,
                            int feature_width = 1) {
    Dataset ds;
    ds.channels = std::move(channels);
    ds.tasks = make_tasks(num_tasks);
    ds.feature_width = feature_width;
    for (auto& [x, label] : rows)
        ds.samples.push_back(Sample{std::move(x), label});
    return ds;
}

/// Full-sort k-NN reference: same tie rules, different code path.
inline int naive_knn_predict(const LabeledMatrix& train, std::span<const double> query, int k) {
    struct Entry {
        double d2;
        std::size_t index;
    };
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < train.rows(); ++i) {
        double d2 = 0;
        for (std::size_t j = 0; j < train.dim; ++j) {
            const double diff = query[j] - train.row(i)[j];
            d2 += diff * diff;
        }
        entries.push_back({d2, i});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.d2 != b.d2 ? a.d2 < b.d2 : a.index < b.index;
    });
    std::map<int, int> votes;
    for (int i = 0; i < k; ++i)
        ++votes[train.labels[entries[static_cast<std::size_t>(i)].index]];
    int best = -1, best_count = -1;
    for (const auto& [label, count] : votes)
        if (count > best_count) {  // map order makes ties resolve to the lowest label
            best = label;
            best_count = count;
        }
    return best;
}

/// Independent recursive root-to-D path counter (no path materialization).
inline std::size_t recursive_path_count(const LayeredDag& dag, std::size_t layer = 0) {
    if (layer == dag.layers.size())
        return 1;
    std::size_t total = 0;
    for (std::size_t i = 0; i < dag.layers[layer].size(); ++i)
        total += recursive_path_count(dag, layer + 1);
    return total;
}

/// Independent model-key enumeration: explicit edge list + prefix walk over sets.
inline std::set<std::set<int>> brute_force_model_keys(const LayeredDag& dag) {
    std::set<std::set<int>> keys;
    std::set<int> root;
    for (ChannelId c : dag.root_channels())
        root.insert(c.value);

    // prefixes via breadth-first frontier of channel sets
    std::vector<std::set<int>> frontier = {root};
    keys.insert(root);
    for (const auto& layer : dag.layers) {
        std::vector<std::set<int>> next;
        for (const auto& prefix : frontier)
            for (ChannelId c : layer) {
                auto grown = prefix;
                grown.insert(c.value);
                keys.insert(grown);
                next.push_back(std::move(grown));
            }
        frontier = std::move(next);
    }

    // pairwise keys per edge with a channel head
    for (std::size_t l = 0; l < dag.layers.size(); ++l)
        for (ChannelId head : dag.layers[l]) {
            if (l == 0) {
                auto pair = root;
                pair.insert(head.value);
                keys.insert(pair);
            } else {
                for (ChannelId tail : dag.layers[l - 1])
                    keys.insert(std::set<int>{tail.value, head.value});
            }
        }
    return keys;
}

/// Random DAG + fully populated confidence table + zero readings; the staple
/// for selection property tests.
struct RandomInstance {
    LayeredDag dag;
    TableConfidence table;
    ChannelReadings readings;
    int num_tasks = 0;
};

inline RandomInstance make_random_instance(std::mt19937_64& rng, int max_channels = 20,
                                           int max_tasks = 5) {
    std::uniform_int_distribution<int> task_dist(1, max_tasks);
    const int num_tasks = task_dist(rng);
    std::uniform_int_distribution<int> chan_dist(num_tasks + 1, max_channels);
    const int num_channels = chan_dist(rng);

    PrecisionTable pt;
    pt.tasks = make_tasks(num_tasks);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int c = 0; c < num_channels; ++c) {
        pt.channels.push_back(ChannelId{c});
        std::vector<double> row;
        for (int t = 0; t < num_tasks; ++t)
            row.push_back(unit(rng));
        pt.precision.push_back(std::move(row));
        pt.overall.push_back(unit(rng));
    }

    RandomInstance inst;
    const RankingBundle bundle = build_ranking_sets(pt);
    inst.dag = build_dag(bundle.root, bundle.rankings);
    inst.num_tasks = num_tasks;

    std::uniform_int_distribution<int> task_pick(0, num_tasks - 1);
    for (const SubsetKey& key : enumerate_model_keys(inst.dag)) {
        // values in (0,1]
        const double v = std::nextafter(unit(rng), 2.0);
        inst.table.set(key, Confidence{task_pick(rng), std::min(v, 1.0)});
    }
    for (ChannelId c : inst.dag.all_channels())
        inst.readings.values[c] = {0.0};
    return inst;
}

}  // namespace dbcs::testing
