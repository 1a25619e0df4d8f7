#include "dbcs/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dbcs {

std::size_t Dataset::channel_index(ChannelId c) const {
    auto it = std::find(channels.begin(), channels.end(), c);
    if (it == channels.end())
        throw ValidationError("unknown channel " + std::to_string(c.value));
    return static_cast<std::size_t>(it - channels.begin());
}

std::span<const double> Dataset::features_of(const Sample& s, std::size_t channel_pos) const {
    const auto w = static_cast<std::size_t>(feature_width);
    return {s.features.data() + channel_pos * w, w};
}

ValidationReport validate_dataset(const Dataset& ds) {
    ValidationReport report;
    auto flag = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    if (ds.feature_width < 1)
        flag("feature width must be at least 1");

    std::set<ChannelId> seen;
    for (ChannelId c : ds.channels)
        if (!seen.insert(c).second)
            flag("duplicate channel " + std::to_string(c.value));

    if (ds.tasks.size() < 2)
        flag("fewer than 2 tasks");
    for (std::size_t t = 0; t < ds.tasks.size(); ++t)
        if (ds.tasks[t].index != static_cast<int>(t))
            flag("task index " + std::to_string(ds.tasks[t].index) +
                 " at position " + std::to_string(t) + " is not dense");

    const std::size_t row_width = ds.channels.size() * static_cast<std::size_t>(ds.feature_width);
    std::vector<std::size_t> class_counts(ds.tasks.size(), 0);
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        const Sample& s = ds.samples[i];
        if (s.features.size() != row_width) {
            flag("feature width mismatch at sample " + std::to_string(i) + ": expected " +
                 std::to_string(row_width) + " values, got " + std::to_string(s.features.size()));
        } else {
            for (std::size_t c = 0; c < ds.channels.size(); ++c)
                for (double v : ds.features_of(s, c))
                    if (!std::isfinite(v)) {
                        flag("non-finite value at sample " + std::to_string(i) + ", channel " +
                             std::to_string(ds.channels[c].value));
                        break;
                    }
        }
        if (s.label < 0 || s.label >= static_cast<int>(ds.tasks.size()))
            flag("unknown task label at sample " + std::to_string(i));
        else
            ++class_counts[static_cast<std::size_t>(s.label)];
    }
    for (std::size_t t = 0; t < ds.tasks.size(); ++t)
        if (class_counts[t] == 0)
            flag("empty class " + ds.tasks[t].name);

    return report;
}

ChannelReadings row_readings(const Dataset& ds, std::size_t sample_index) {
    if (sample_index >= ds.samples.size())
        throw ValidationError("sample index out of range");
    const Sample& s = ds.samples[sample_index];
    ChannelReadings r;
    for (std::size_t c = 0; c < ds.channels.size(); ++c) {
        auto f = ds.features_of(s, c);
        r.values[ds.channels[c]] = std::vector<double>(f.begin(), f.end());
    }
    return r;
}

}  // namespace dbcs
