#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dbcs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad content or violated precondition (CLI exit code 1).
struct ValidationError : Error {
    using Error::Error;
};

/// Filesystem failure (CLI exit code 2).
struct IoError : Error {
    using Error::Error;
};

/// Channel label. Values are opaque ids; the shipped 14-channel fixture uses 4..17.
struct ChannelId {
    int value = 0;
    friend auto operator<=>(const ChannelId&, const ChannelId&) = default;
};

struct TaskId {
    int index = 0;     // dense 0..T-1
    std::string name;  // display label, e.g. "T1"
    friend bool operator==(const TaskId&, const TaskId&) = default;
};

/// One acquisition: a fixed-width feature vector per channel plus the task label.
/// Features are stored channel-major: channel i occupies [i*width, (i+1)*width).
struct Sample {
    std::vector<double> features;
    int label = 0;  // index into Dataset::tasks
};

struct Dataset {
    std::vector<ChannelId> channels;
    std::vector<TaskId> tasks;
    int feature_width = 1;
    std::vector<Sample> samples;

    std::size_t channel_index(ChannelId c) const;
    std::span<const double> features_of(const Sample& s, std::size_t channel_pos) const;
};

/// Partial row: readings for acquired channels only.
struct ChannelReadings {
    std::map<ChannelId, std::vector<double>> values;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
};

/// Report-style dataset check; collects every invariant violation, never throws.
ValidationReport validate_dataset(const Dataset& ds);

/// Full readings row for one sample.
ChannelReadings row_readings(const Dataset& ds, std::size_t sample_index);

}  // namespace dbcs
