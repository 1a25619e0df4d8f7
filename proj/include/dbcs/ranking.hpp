#pragma once

#include <vector>

#include "dbcs/split.hpp"
#include "dbcs/types.hpp"

namespace dbcs {

/// k-NN settings shared by ranking and confidence models. Distance is Euclidean.
struct ClassifierConfig {
    int k = 4;
    SplitSpec split;
};

/// Per-channel, per-task class precision grid plus overall accuracy per channel.
struct PrecisionTable {
    std::vector<ChannelId> channels;
    std::vector<TaskId> tasks;
    std::vector<std::vector<double>> precision;  // [channel][task], fractions in [0,1]
    std::vector<double> overall;                 // [channel]

    double at(ChannelId c, int task) const;
};

/// Channels ordered by non-increasing precision for one task, root members excluded.
struct RankingSet {
    TaskId task;
    std::vector<ChannelId> ordered;
};

struct RootMember {
    TaskId task;
    ChannelId channel;
};

/// One claimed leading channel per task; claim order follows the task index.
struct RootSet {
    std::vector<RootMember> members;

    std::vector<ChannelId> channels() const;         // claim order
    std::vector<ChannelId> channels_sorted() const;  // ascending id
};

struct RankingBundle {
    RootSet root;
    std::vector<RankingSet> rankings;  // one per task, task-index order
};

struct ChannelEvaluation {
    std::vector<double> precision;  // per task
    double overall = 0.0;
};

/// TP / (TP + FP); zero when the class was never predicted.
double precision_from_counts(std::size_t true_positives, std::size_t false_positives);

/// Trains/tests a k-NN on the configured split using only this channel's features.
ChannelEvaluation evaluate_channel(const Dataset& ds, ChannelId channel,
                                   const ClassifierConfig& cfg);

/// One evaluate_channel row per channel. The parallel kernel and the serial
/// reference produce identical tables.
PrecisionTable rank_channels(const Dataset& ds, const ClassifierConfig& cfg);
PrecisionTable rank_channels_serial(const Dataset& ds, const ClassifierConfig& cfg);

/// Claims the root greedily in task-index order (ties to the lower channel id),
/// then orders the remaining channels per task by non-increasing precision.
RankingBundle build_ranking_sets(const PrecisionTable& pt);

}  // namespace dbcs
