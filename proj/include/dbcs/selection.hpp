#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dbcs/confidence.hpp"
#include "dbcs/dag.hpp"
#include "dbcs/types.hpp"

namespace dbcs {

enum class StopReason { threshold_met, reached_destination, all_visited };

std::string to_string(StopReason r);
StopReason stop_reason_from_string(const std::string& s);

struct SelectionResult {
    std::vector<ChannelId> selected;  // acquisition order, root channels first
    ChannelReadings readings_used;    // readings of the selected channels
    double pcv = 0.0;                 // confidence of the final selected subset
    int predicted = 0;                // argmax task of the final subset model
    StopReason stop_reason = StopReason::threshold_met;
    std::vector<ChannelId> probed;    // every channel read, ascending id
};

/// On-demand channel access; lets callers observe exactly which channels a
/// selection reads.
using ReadingsFn = std::function<std::vector<double>(ChannelId)>;

/// Adapts a full readings row; throws on channels it does not hold.
ReadingsFn readings_fn(const ChannelReadings& full);

/// Greedy max-confidence walk over the layered DAG: accumulate the current
/// node, stop once the path confidence reaches theta, otherwise follow the
/// outgoing edge with the highest pairwise confidence (ties to the lower
/// channel id) until the destination node. Edge confidences are computed
/// lazily, so only visited nodes and evaluated candidate heads are read.
SelectionResult dbcs_select(const LayeredDag& dag, const ConfidenceProvider& conf,
                            const ReadingsFn& read, double theta);
SelectionResult dbcs_select(const LayeredDag& dag, const ConfidenceProvider& conf,
                            const ChannelReadings& sample, double theta);

/// Complete-graph baseline: start at the channel with the best singleton
/// confidence, repeatedly append the unvisited channel collaborating best with
/// the previous one, and stop on threshold or exhaustion. Reads every channel.
SelectionResult general_select(const std::vector<ChannelId>& channels,
                               const ConfidenceProvider& conf, const ReadingsFn& read,
                               double theta);
SelectionResult general_select(const std::vector<ChannelId>& channels,
                               const ConfidenceProvider& conf, const ChannelReadings& sample,
                               double theta);

/// Exhaustive reference: replays the greedy rule over the enumerated path list
/// and scans every path prefix for the globally best confidence.
struct OracleResult {
    SelectionResult greedy;
    std::vector<ChannelId> best_prefix;  // max PCV, shortest wins ties
    double best_pcv = 0.0;
    int best_task = 0;
};

OracleResult oracle_best_path(const LayeredDag& dag, const ConfidenceProvider& conf,
                              const ChannelReadings& sample, double theta);

}  // namespace dbcs
