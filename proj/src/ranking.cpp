#include "dbcs/ranking.hpp"

#include <algorithm>
#include <set>

#include "dbcs/knn.hpp"

namespace dbcs {

double PrecisionTable::at(ChannelId c, int task) const {
    for (std::size_t i = 0; i < channels.size(); ++i)
        if (channels[i] == c)
            return precision[i].at(static_cast<std::size_t>(task));
    throw ValidationError("channel " + std::to_string(c.value) + " not in precision table");
}

std::vector<ChannelId> RootSet::channels() const {
    std::vector<ChannelId> out;
    out.reserve(members.size());
    for (const RootMember& m : members)
        out.push_back(m.channel);
    return out;
}

std::vector<ChannelId> RootSet::channels_sorted() const {
    auto out = channels();
    std::sort(out.begin(), out.end());
    return out;
}

double precision_from_counts(std::size_t true_positives, std::size_t false_positives) {
    const std::size_t predicted = true_positives + false_positives;
    if (predicted == 0)
        return 0.0;
    return static_cast<double>(true_positives) / static_cast<double>(predicted);
}

ChannelEvaluation evaluate_channel(const Dataset& ds, ChannelId channel,
                                   const ClassifierConfig& cfg) {
    const std::size_t pos = ds.channel_index(channel);
    const auto folds = split(ds, cfg.split);
    if (folds.train.samples.empty())
        throw ValidationError("training fold is empty");
    if (folds.test.samples.empty())
        throw ValidationError("test fold is empty");
    if (static_cast<std::size_t>(cfg.k) > folds.train.samples.size())
        throw ValidationError("k=" + std::to_string(cfg.k) + " exceeds training size " +
                              std::to_string(folds.train.samples.size()));

    LabeledMatrix train;
    for (const Sample& s : folds.train.samples)
        train.push_row(folds.train.features_of(s, pos), s.label);

    const std::size_t num_tasks = ds.tasks.size();
    std::vector<std::size_t> tp(num_tasks, 0), fp(num_tasks, 0);
    std::size_t correct = 0;
    for (const Sample& s : folds.test.samples) {
        const int pred = knn_predict(train, folds.test.features_of(s, pos), cfg.k);
        if (pred == s.label) {
            ++tp[static_cast<std::size_t>(pred)];
            ++correct;
        } else {
            ++fp[static_cast<std::size_t>(pred)];
        }
    }

    ChannelEvaluation ev;
    ev.precision.resize(num_tasks);
    for (std::size_t t = 0; t < num_tasks; ++t)
        ev.precision[t] = precision_from_counts(tp[t], fp[t]);
    ev.overall = static_cast<double>(correct) / static_cast<double>(folds.test.samples.size());
    return ev;
}

namespace {

PrecisionTable rank_channels_impl(const Dataset& ds, const ClassifierConfig& cfg, bool parallel) {
    PrecisionTable pt;
    pt.channels = ds.channels;
    pt.tasks = ds.tasks;
    pt.precision.resize(ds.channels.size());
    pt.overall.resize(ds.channels.size());

    const auto n = static_cast<std::ptrdiff_t>(ds.channels.size());
    std::exception_ptr failure;
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                const auto ev = evaluate_channel(ds, ds.channels[static_cast<std::size_t>(i)], cfg);
                pt.precision[static_cast<std::size_t>(i)] = ev.precision;
                pt.overall[static_cast<std::size_t>(i)] = ev.overall;
            } catch (...) {
#pragma omp critical
                if (!failure)
                    failure = std::current_exception();
            }
        }
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto ev = evaluate_channel(ds, ds.channels[static_cast<std::size_t>(i)], cfg);
            pt.precision[static_cast<std::size_t>(i)] = ev.precision;
            pt.overall[static_cast<std::size_t>(i)] = ev.overall;
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return pt;
}

}  // namespace

PrecisionTable rank_channels(const Dataset& ds, const ClassifierConfig& cfg) {
    return rank_channels_impl(ds, cfg, true);
}

PrecisionTable rank_channels_serial(const Dataset& ds, const ClassifierConfig& cfg) {
    return rank_channels_impl(ds, cfg, false);
}

RankingBundle build_ranking_sets(const PrecisionTable& pt) {
    const std::size_t num_tasks = pt.tasks.size();
    const std::size_t num_channels = pt.channels.size();
    if (num_tasks < 1)
        throw ValidationError("precision table has no tasks");
    if (num_channels <= num_tasks)
        throw ValidationError("need more channels than tasks: " + std::to_string(num_channels) +
                              " channels for " + std::to_string(num_tasks) + " tasks");
    for (std::size_t c = 0; c < num_channels; ++c)
        if (pt.precision[c].size() != num_tasks)
            throw ValidationError("incomplete precision table");

    // Channel identity, not table position, drives every ordering below.
    auto by_precision_desc = [&](std::size_t task) {
        std::vector<std::size_t> idx(num_channels);
        for (std::size_t i = 0; i < num_channels; ++i)
            idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (pt.precision[a][task] != pt.precision[b][task])
                return pt.precision[a][task] > pt.precision[b][task];
            return pt.channels[a] < pt.channels[b];
        });
        return idx;
    };

    RankingBundle out;
    std::set<ChannelId> claimed;
    for (std::size_t t = 0; t < num_tasks; ++t) {
        for (std::size_t i : by_precision_desc(t)) {
            if (claimed.contains(pt.channels[i]))
                continue;
            claimed.insert(pt.channels[i]);
            out.root.members.push_back({pt.tasks[t], pt.channels[i]});
            break;
        }
    }

    for (std::size_t t = 0; t < num_tasks; ++t) {
        RankingSet rs;
        rs.task = pt.tasks[t];
        for (std::size_t i : by_precision_desc(t))
            if (!claimed.contains(pt.channels[i]))
                rs.ordered.push_back(pt.channels[i]);
        out.rankings.push_back(std::move(rs));
    }
    return out;
}

}  // namespace dbcs
