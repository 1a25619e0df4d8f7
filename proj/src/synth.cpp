#include "dbcs/synth.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace dbcs {

SynthSpec informative_spec(int num_channels, int num_tasks, int samples_per_task,
                           const std::vector<std::vector<int>>& informative, double separation,
                           double sigma, std::uint64_t seed, int first_channel_id) {
    SynthSpec spec;
    for (int c = 0; c < num_channels; ++c)
        spec.channels.push_back(ChannelId{first_channel_id + c});
    for (int t = 0; t < num_tasks; ++t)
        spec.tasks.push_back(TaskId{t, "T" + std::to_string(t + 1)});
    spec.samples_per_task = samples_per_task;
    spec.sigma = sigma;
    spec.seed = seed;
    spec.means.assign(static_cast<std::size_t>(num_tasks),
                      std::vector<double>(static_cast<std::size_t>(num_channels), 0.0));
    spec.informative.resize(static_cast<std::size_t>(num_tasks));
    if (informative.size() > static_cast<std::size_t>(num_tasks))
        throw ValidationError("more informative-channel lists than tasks");
    for (std::size_t t = 0; t < informative.size(); ++t)
        for (int id : informative[t]) {
            const ChannelId c{id};
            const auto it = std::find(spec.channels.begin(), spec.channels.end(), c);
            if (it == spec.channels.end())
                throw ValidationError("informative channel " + std::to_string(id) +
                                      " not in channel list");
            spec.means[t][static_cast<std::size_t>(it - spec.channels.begin())] = separation;
            spec.informative[t].push_back(c);
        }
    return spec;
}

Dataset generate_synthetic(const SynthSpec& spec) {
    if (spec.channels.empty())
        throw ValidationError("synthetic spec has no channels");
    if (spec.tasks.empty())
        throw ValidationError("synthetic spec has no tasks");
    if (spec.samples_per_task < 1)
        throw ValidationError("samples_per_task must be positive");
    if (spec.feature_width < 1)
        throw ValidationError("feature width must be at least 1");
    if (!(spec.sigma > 0.0))
        throw ValidationError("sigma must be positive");
    if (spec.means.size() != spec.tasks.size())
        throw ValidationError("means must have one row per task");
    for (const auto& row : spec.means)
        if (row.size() != spec.channels.size())
            throw ValidationError("means row width must equal the channel count");
    const std::set<ChannelId> channel_set(spec.channels.begin(), spec.channels.end());
    if (channel_set.size() != spec.channels.size())
        throw ValidationError("duplicate channel in synthetic spec");
    for (const auto& list : spec.informative)
        for (ChannelId c : list)
            if (!channel_set.contains(c))
                throw ValidationError("informative channel " + std::to_string(c.value) +
                                      " not in channel list");

    Dataset ds;
    ds.channels = spec.channels;
    ds.tasks = spec.tasks;
    ds.feature_width = spec.feature_width;

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, spec.sigma);
    for (std::size_t t = 0; t < spec.tasks.size(); ++t)
        for (int i = 0; i < spec.samples_per_task; ++i) {
            Sample s;
            s.label = static_cast<int>(t);
            s.features.reserve(spec.channels.size() * static_cast<std::size_t>(spec.feature_width));
            for (std::size_t c = 0; c < spec.channels.size(); ++c)
                for (int f = 0; f < spec.feature_width; ++f)
                    s.features.push_back(spec.means[t][c] + noise(rng));
            ds.samples.push_back(std::move(s));
        }
    return ds;
}

}  // namespace dbcs
