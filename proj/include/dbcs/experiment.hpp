#pragma once

#include <map>
#include <string>
#include <vector>

#include "dbcs/selection.hpp"

namespace dbcs {

struct EvalReport {
    std::size_t samples = 0;
    double overall_accuracy = 0.0;
    std::vector<double> per_task_accuracy;          // indexed by task
    std::map<std::size_t, double> histogram;        // |selected| -> fraction of samples
    double mean_channels = 0.0;
    std::size_t worst_case_channels = 0;
    std::map<std::string, std::size_t> stop_reasons;
    std::vector<TaskId> tasks;
};

/// Runs dbcs_select on every test sample and aggregates accuracy, channel
/// utilization and stop reasons. The parallel kernel and the serial reference
/// produce identical reports.
EvalReport run_experiment(const LayeredDag& dag, const ConfidenceProvider& conf,
                          const Dataset& test, double theta);
EvalReport run_experiment_serial(const LayeredDag& dag, const ConfidenceProvider& conf,
                                 const Dataset& test, double theta);

/// Same aggregation for the complete-graph baseline.
EvalReport baseline_experiment(const std::vector<ChannelId>& channels,
                               const ConfidenceProvider& conf, const Dataset& test, double theta);

/// k-NN accuracy using every channel; the all-channels reference point.
double full_channel_accuracy(const Dataset& train, const Dataset& test, int k);

/// Fixed-width text table of the report (per-task and overall accuracy,
/// utilization summary).
std::string report_text(const EvalReport& report);

/// `channels,fraction` rows of the utilization histogram.
std::string histogram_csv(const EvalReport& report);

}  // namespace dbcs
