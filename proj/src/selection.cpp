#include "dbcs/selection.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace dbcs {

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::threshold_met: return "threshold_met";
        case StopReason::reached_destination: return "reached_destination";
        case StopReason::all_visited: return "all_visited";
    }
    throw ValidationError("bad stop reason");
}

StopReason stop_reason_from_string(const std::string& s) {
    if (s == "threshold_met")
        return StopReason::threshold_met;
    if (s == "reached_destination")
        return StopReason::reached_destination;
    if (s == "all_visited")
        return StopReason::all_visited;
    throw ValidationError("bad stop reason '" + s + "'");
}

ReadingsFn readings_fn(const ChannelReadings& full) {
    return [&full](ChannelId c) {
        auto it = full.values.find(c);
        if (it == full.values.end())
            throw ValidationError("missing reading for channel " + std::to_string(c.value));
        return it->second;
    };
}

namespace {

void check_theta(double theta) {
    if (!(theta > 0.0) || theta > 1.0)
        throw ValidationError("theta must lie in (0,1]");
}

/// Reads each channel at most once and remembers everything it read.
class ReadingCache {
public:
    explicit ReadingCache(const ReadingsFn& read) : read_(read) {}

    const std::vector<double>& get(ChannelId c) {
        auto it = cache_.values.find(c);
        if (it == cache_.values.end())
            it = cache_.values.emplace(c, read_(c)).first;
        return it->second;
    }

    ChannelReadings subset(const std::vector<ChannelId>& channels) {
        ChannelReadings r;
        for (ChannelId c : channels)
            r.values.emplace(c, get(c));
        return r;
    }

    std::vector<ChannelId> probed() const {
        std::vector<ChannelId> out;
        out.reserve(cache_.values.size());
        for (const auto& [c, v] : cache_.values)
            out.push_back(c);
        return out;
    }

private:
    const ReadingsFn& read_;
    ChannelReadings cache_;
};

}  // namespace

SelectionResult dbcs_select(const LayeredDag& dag, const ConfidenceProvider& conf,
                            const ReadingsFn& read, double theta) {
    check_theta(theta);
    if (dag.root.members.empty())
        throw ValidationError("DAG has an empty root");

    ReadingCache cache(read);
    SelectionResult result;
    result.selected = dag.root_channels();

    // current == nullopt while standing on the merged root node.
    std::optional<ChannelId> current;
    std::size_t layer = 0;
    while (true) {
        const auto prefix_key = SubsetKey::of(result.selected);
        const auto prefix_readings = cache.subset(result.selected);
        const Confidence pcv = conf.confidence(prefix_key, prefix_readings);
        result.pcv = pcv.value;
        result.predicted = pcv.task;
        if (pcv.value >= theta) {
            result.stop_reason = StopReason::threshold_met;
            break;
        }
        if (layer == dag.layers.size()) {
            // Every outgoing edge leads to the destination node.
            result.stop_reason = StopReason::reached_destination;
            break;
        }

        std::optional<ChannelId> best;
        double best_value = 0.0;
        for (ChannelId head : dag.layers[layer]) {
            std::vector<ChannelId> pair_channels =
                current ? std::vector<ChannelId>{*current} : dag.root_channels();
            pair_channels.push_back(head);
            const auto pair_key = SubsetKey::of(std::move(pair_channels));
            const Confidence edge = conf.confidence(pair_key, cache.subset(pair_key.channels));
            if (!best || edge.value > best_value || (edge.value == best_value && head < *best)) {
                best = head;
                best_value = edge.value;
            }
        }
        current = *best;
        result.selected.push_back(*best);
        ++layer;
    }

    result.readings_used = cache.subset(result.selected);
    result.probed = cache.probed();
    return result;
}

SelectionResult dbcs_select(const LayeredDag& dag, const ConfidenceProvider& conf,
                            const ChannelReadings& sample, double theta) {
    return dbcs_select(dag, conf, readings_fn(sample), theta);
}

SelectionResult general_select(const std::vector<ChannelId>& channels,
                               const ConfidenceProvider& conf, const ReadingsFn& read,
                               double theta) {
    check_theta(theta);
    if (channels.empty())
        throw ValidationError("no channels to select from");

    ReadingCache cache(read);
    SelectionResult result;

    std::optional<ChannelId> start;
    double start_value = 0.0;
    for (ChannelId c : channels) {
        const auto key = SubsetKey::of({c});
        const Confidence single = conf.confidence(key, cache.subset(key.channels));
        if (!start || single.value > start_value || (single.value == start_value && c < *start)) {
            start = c;
            start_value = single.value;
        }
    }
    result.selected.push_back(*start);

    while (true) {
        const auto prefix_key = SubsetKey::of(result.selected);
        const Confidence pcv = conf.confidence(prefix_key, cache.subset(prefix_key.channels));
        result.pcv = pcv.value;
        result.predicted = pcv.task;
        if (pcv.value >= theta) {
            result.stop_reason = StopReason::threshold_met;
            break;
        }
        if (result.selected.size() == channels.size()) {
            result.stop_reason = StopReason::all_visited;
            break;
        }

        const ChannelId previous = result.selected.back();
        std::optional<ChannelId> best;
        double best_value = 0.0;
        for (ChannelId c : channels) {
            if (std::find(result.selected.begin(), result.selected.end(), c) !=
                result.selected.end())
                continue;
            const auto pair_key = SubsetKey::of({previous, c});
            const Confidence edge = conf.confidence(pair_key, cache.subset(pair_key.channels));
            if (!best || edge.value > best_value || (edge.value == best_value && c < *best)) {
                best = c;
                best_value = edge.value;
            }
        }
        result.selected.push_back(*best);
    }

    result.readings_used = cache.subset(result.selected);
    result.probed = cache.probed();
    return result;
}

SelectionResult general_select(const std::vector<ChannelId>& channels,
                               const ConfidenceProvider& conf, const ChannelReadings& sample,
                               double theta) {
    return general_select(channels, conf, readings_fn(sample), theta);
}

OracleResult oracle_best_path(const LayeredDag& dag, const ConfidenceProvider& conf,
                              const ChannelReadings& sample, double theta) {
    check_theta(theta);
    const auto paths = enumerate_paths(dag);
    const auto read = readings_fn(sample);
    ReadingCache cache(read);

    auto prefix_confidence = [&](const std::vector<ChannelId>& prefix) {
        const auto key = SubsetKey::of(prefix);
        return conf.confidence(key, cache.subset(key.channels));
    };

    OracleResult out;

    // Greedy replay navigating by path filtering instead of graph adjacency.
    {
        std::vector<const DagPath*> consistent;
        consistent.reserve(paths.size());
        for (const DagPath& p : paths)
            consistent.push_back(&p);

        SelectionResult& g = out.greedy;
        g.selected = dag.root_channels();
        std::optional<ChannelId> current;
        std::size_t depth = 0;
        while (true) {
            const Confidence pcv = prefix_confidence(g.selected);
            g.pcv = pcv.value;
            g.predicted = pcv.task;
            if (pcv.value >= theta) {
                g.stop_reason = StopReason::threshold_met;
                break;
            }
            if (depth == dag.layers.size()) {
                g.stop_reason = StopReason::reached_destination;
                break;
            }

            std::vector<ChannelId> candidates;
            for (const DagPath* p : consistent)
                if (std::find(candidates.begin(), candidates.end(), p->layer_nodes[depth]) ==
                    candidates.end())
                    candidates.push_back(p->layer_nodes[depth]);

            std::optional<ChannelId> best;
            double best_value = 0.0;
            for (ChannelId head : candidates) {
                std::vector<ChannelId> pair_channels =
                    current ? std::vector<ChannelId>{*current} : dag.root_channels();
                pair_channels.push_back(head);
                const auto key = SubsetKey::of(std::move(pair_channels));
                const Confidence edge = conf.confidence(key, cache.subset(key.channels));
                if (!best || edge.value > best_value ||
                    (edge.value == best_value && head < *best)) {
                    best = head;
                    best_value = edge.value;
                }
            }

            std::vector<const DagPath*> next;
            for (const DagPath* p : consistent)
                if (p->layer_nodes[depth] == *best)
                    next.push_back(p);
            consistent = std::move(next);
            current = *best;
            g.selected.push_back(*best);
            ++depth;
        }
        g.readings_used = cache.subset(g.selected);
        g.probed = cache.probed();
    }

    // Globally best prefix: max PCV, shortest wins ties, then lexicographic.
    {
        bool have = false;
        std::vector<ChannelId> best_prefix;
        Confidence best_conf;
        std::map<SubsetKey, Confidence> seen;
        for (const DagPath& path : paths) {
            std::vector<ChannelId> prefix = dag.root_channels();
            for (std::size_t depth = 0; depth <= path.layer_nodes.size(); ++depth) {
                if (depth > 0)
                    prefix.push_back(path.layer_nodes[depth - 1]);
                const auto key = SubsetKey::of(prefix);
                auto it = seen.find(key);
                if (it == seen.end())
                    it = seen.emplace(key, prefix_confidence(prefix)).first;
                const Confidence c = it->second;
                const bool better =
                    !have || c.value > best_conf.value ||
                    (c.value == best_conf.value && prefix.size() < best_prefix.size()) ||
                    (c.value == best_conf.value && prefix.size() == best_prefix.size() &&
                     prefix < best_prefix);
                if (better) {
                    have = true;
                    best_prefix = prefix;
                    best_conf = c;
                }
            }
        }
        out.best_prefix = best_prefix;
        out.best_pcv = best_conf.value;
        out.best_task = best_conf.task;
    }
    return out;
}

}  // namespace dbcs
