#pragma once

#include <vector>

#include "dbcs/ranking.hpp"
#include "dbcs/types.hpp"

namespace dbcs {

/// Layered DAG: a merged root node R, channel layers, and an implicit destination
/// node D. Edges are the complete bipartite connections R -> layer 1,
/// layer j -> layer j+1, and last layer -> D.
struct LayeredDag {
    RootSet root;
    std::vector<std::vector<ChannelId>> layers;  // claim order within each layer

    std::vector<TaskId> tasks() const;
    std::vector<ChannelId> root_channels() const { return root.channels(); }
    std::vector<ChannelId> all_channels() const;  // root first, then layers
    /// Channel count of a complete root-to-D path: T + layer count.
    std::size_t max_path_channels() const { return root.members.size() + layers.size(); }
};

/// One complete root-to-D path: a channel per layer (R and D are implicit).
struct DagPath {
    std::vector<ChannelId> layer_nodes;
};

/// Builds layers iteratively: per layer, tasks contribute their highest-ranked
/// not-yet-placed channel in task-index order; exhausted tasks contribute nothing.
LayeredDag build_dag(const RootSet& root, const std::vector<RankingSet>& rankings);

/// All root-to-D paths in lexicographic order of the layer node lists.
/// Count equals the product of the layer sizes.
std::vector<DagPath> enumerate_paths(const LayeredDag& dag);

}  // namespace dbcs
