#include "dbcs/experiment.hpp"

#include <algorithm>
#include <cstdio>

#include "dbcs/knn.hpp"

namespace dbcs {

namespace {

EvalReport aggregate(const Dataset& test, const std::vector<SelectionResult>& results) {
    EvalReport report;
    report.samples = test.samples.size();
    report.tasks = test.tasks;
    report.per_task_accuracy.assign(test.tasks.size(), 0.0);

    std::vector<std::size_t> task_total(test.tasks.size(), 0), task_correct(test.tasks.size(), 0);
    std::map<std::size_t, std::size_t> counts;
    std::size_t correct = 0, channel_sum = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const SelectionResult& r = results[i];
        const int label = test.samples[i].label;
        ++task_total[static_cast<std::size_t>(label)];
        if (r.predicted == label) {
            ++correct;
            ++task_correct[static_cast<std::size_t>(label)];
        }
        ++counts[r.selected.size()];
        channel_sum += r.selected.size();
        report.worst_case_channels = std::max(report.worst_case_channels, r.selected.size());
        ++report.stop_reasons[to_string(r.stop_reason)];
    }
    const auto n = static_cast<double>(results.size());
    report.overall_accuracy = n > 0 ? static_cast<double>(correct) / n : 0.0;
    for (std::size_t t = 0; t < test.tasks.size(); ++t)
        report.per_task_accuracy[t] =
            task_total[t] > 0 ? static_cast<double>(task_correct[t]) /
                                    static_cast<double>(task_total[t])
                              : 0.0;
    for (const auto& [size, count] : counts)
        report.histogram[size] = static_cast<double>(count) / n;
    report.mean_channels = n > 0 ? static_cast<double>(channel_sum) / n : 0.0;
    return report;
}

EvalReport run_experiment_impl(const LayeredDag& dag, const ConfidenceProvider& conf,
                               const Dataset& test, double theta, bool parallel) {
    std::vector<SelectionResult> results(test.samples.size());
    const auto n = static_cast<std::ptrdiff_t>(test.samples.size());
    std::exception_ptr failure;
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                results[static_cast<std::size_t>(i)] =
                    dbcs_select(dag, conf, row_readings(test, static_cast<std::size_t>(i)), theta);
            } catch (...) {
#pragma omp critical
                if (!failure)
                    failure = std::current_exception();
            }
        }
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            results[static_cast<std::size_t>(i)] =
                dbcs_select(dag, conf, row_readings(test, static_cast<std::size_t>(i)), theta);
    }
    if (failure)
        std::rethrow_exception(failure);
    return aggregate(test, results);
}

}  // namespace

EvalReport run_experiment(const LayeredDag& dag, const ConfidenceProvider& conf,
                          const Dataset& test, double theta) {
    return run_experiment_impl(dag, conf, test, theta, true);
}

EvalReport run_experiment_serial(const LayeredDag& dag, const ConfidenceProvider& conf,
                                 const Dataset& test, double theta) {
    return run_experiment_impl(dag, conf, test, theta, false);
}

EvalReport baseline_experiment(const std::vector<ChannelId>& channels,
                               const ConfidenceProvider& conf, const Dataset& test, double theta) {
    std::vector<SelectionResult> results(test.samples.size());
    for (std::size_t i = 0; i < test.samples.size(); ++i)
        results[i] = general_select(channels, conf, row_readings(test, i), theta);
    return aggregate(test, results);
}

double full_channel_accuracy(const Dataset& train, const Dataset& test, int k) {
    LabeledMatrix m;
    for (const Sample& s : train.samples)
        m.push_row(s.features, s.label);
    std::size_t correct = 0;
    for (const Sample& s : test.samples)
        if (knn_predict(m, s.features, k) == s.label)
            ++correct;
    if (test.samples.empty())
        throw ValidationError("empty test fold");
    return static_cast<double>(correct) / static_cast<double>(test.samples.size());
}

std::string report_text(const EvalReport& report) {
    char buf[128];
    std::string out;
    out += "task        accuracy\n";
    for (std::size_t t = 0; t < report.tasks.size(); ++t) {
        std::snprintf(buf, sizeof buf, "%-10s  %6.2f%%\n", report.tasks[t].name.c_str(),
                      100.0 * report.per_task_accuracy[t]);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "%-10s  %6.2f%%\n", "overall", 100.0 * report.overall_accuracy);
    out += buf;
    std::snprintf(buf, sizeof buf, "samples: %zu  mean channels: %.3f  worst case: %zu\n",
                  report.samples, report.mean_channels, report.worst_case_channels);
    out += buf;
    out += "stop reasons:";
    for (const auto& [reason, count] : report.stop_reasons) {
        std::snprintf(buf, sizeof buf, " %s=%zu", reason.c_str(), count);
        out += buf;
    }
    out += "\n";
    return out;
}

std::string histogram_csv(const EvalReport& report) {
    std::string out = "channels,fraction\n";
    char buf[64];
    for (const auto& [size, fraction] : report.histogram) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", size, fraction);
        out += buf;
    }
    return out;
}

}  // namespace dbcs
