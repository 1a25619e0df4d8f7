#include "dbcs/dag.hpp"

#include <algorithm>
#include <set>

namespace dbcs {

std::vector<TaskId> LayeredDag::tasks() const {
    std::vector<TaskId> out;
    out.reserve(root.members.size());
    for (const RootMember& m : root.members)
        out.push_back(m.task);
    return out;
}

std::vector<ChannelId> LayeredDag::all_channels() const {
    std::vector<ChannelId> out = root_channels();
    for (const auto& layer : layers)
        out.insert(out.end(), layer.begin(), layer.end());
    return out;
}

LayeredDag build_dag(const RootSet& root, const std::vector<RankingSet>& rankings) {
    std::set<ChannelId> root_set;
    for (const RootMember& m : root.members)
        if (!root_set.insert(m.channel).second)
            throw ValidationError("duplicate channel " + std::to_string(m.channel.value) +
                                  " in root set");

    // All ranking sets must range over the same channels, disjoint from the root.
    std::set<ChannelId> universe;
    for (std::size_t t = 0; t < rankings.size(); ++t) {
        std::set<ChannelId> chans(rankings[t].ordered.begin(), rankings[t].ordered.end());
        if (chans.size() != rankings[t].ordered.size())
            throw ValidationError("duplicate channel in ranking set for task " +
                                  rankings[t].task.name);
        for (ChannelId c : chans)
            if (root_set.contains(c))
                throw ValidationError("ranking set for task " + rankings[t].task.name +
                                      " contains root channel " + std::to_string(c.value));
        if (t == 0)
            universe = std::move(chans);
        else if (chans != universe)
            throw ValidationError("ranking sets cover different channel universes");
    }

    // Task index, not list position, drives the placement order.
    std::vector<const RankingSet*> by_task(rankings.size());
    for (const RankingSet& rs : rankings) {
        const auto t = static_cast<std::size_t>(rs.task.index);
        if (t >= rankings.size() || by_task[t] != nullptr)
            throw ValidationError("ranking set task indices are not dense");
        by_task[t] = &rs;
    }

    LayeredDag dag;
    dag.root = root;
    std::set<ChannelId> placed = root_set;
    std::vector<std::size_t> cursor(rankings.size(), 0);
    std::size_t remaining = universe.size();
    while (remaining > 0) {
        std::vector<ChannelId> layer;
        for (std::size_t t = 0; t < by_task.size(); ++t) {
            const auto& ordered = by_task[t]->ordered;
            // Skip channels claimed earlier in this or previous layers.
            while (cursor[t] < ordered.size() && placed.contains(ordered[cursor[t]]))
                ++cursor[t];
            if (cursor[t] == ordered.size())
                continue;
            layer.push_back(ordered[cursor[t]]);
            placed.insert(ordered[cursor[t]]);
            --remaining;
        }
        dag.layers.push_back(std::move(layer));
    }
    return dag;
}

std::vector<DagPath> enumerate_paths(const LayeredDag& dag) {
    std::vector<DagPath> out;
    DagPath current;
    auto walk = [&](auto&& self, std::size_t layer) -> void {
        if (layer == dag.layers.size()) {
            out.push_back(current);
            return;
        }
        for (ChannelId c : dag.layers[layer]) {
            current.layer_nodes.push_back(c);
            self(self, layer + 1);
            current.layer_nodes.pop_back();
        }
    };
    walk(walk, 0);
    return out;
}

}  // namespace dbcs
