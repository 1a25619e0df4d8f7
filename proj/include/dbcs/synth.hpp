#pragma once

#include <cstdint>
#include <vector>

#include "dbcs/types.hpp"

namespace dbcs {

/// Gaussian generator spec. Sample features for channel c under task t are drawn
/// from N(means[t][c], sigma^2); channels whose mean column is constant across
/// tasks carry no class signal.
struct SynthSpec {
    std::vector<ChannelId> channels;
    std::vector<TaskId> tasks;
    int samples_per_task = 100;
    int feature_width = 1;
    double sigma = 1.0;
    std::vector<std::vector<double>> means;           // [task][channel]
    std::vector<std::vector<ChannelId>> informative;  // per task, for reporting
    std::uint64_t seed = 0;
};

/// One-vs-rest spec: each task's informative channels get mean `separation` on
/// that task's samples and 0 elsewhere; all other channels are shared noise.
SynthSpec informative_spec(int num_channels, int num_tasks, int samples_per_task,
                           const std::vector<std::vector<int>>& informative, double separation,
                           double sigma, std::uint64_t seed, int first_channel_id = 0);

Dataset generate_synthetic(const SynthSpec& spec);

}  // namespace dbcs
