#include "dbcs/confidence.hpp"

#include <algorithm>
#include <cstdio>

namespace dbcs {

SubsetKey SubsetKey::of(std::vector<ChannelId> chs) {
    if (chs.empty())
        throw ValidationError("subset key cannot be empty");
    std::sort(chs.begin(), chs.end());
    if (std::adjacent_find(chs.begin(), chs.end()) != chs.end())
        throw ValidationError("subset key has duplicate channels");
    return SubsetKey{std::move(chs)};
}

std::string SubsetKey::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < channels.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(channels[i].value);
    }
    return out + "}";
}

std::set<SubsetKey> enumerate_model_keys(const LayeredDag& dag) {
    std::set<SubsetKey> keys;
    const auto root = dag.root.channels_sorted();

    // Prefix keys: every channel set of a path prefix starting at R.
    std::vector<ChannelId> prefix = root;
    auto walk = [&](auto&& self, std::size_t layer) -> void {
        keys.insert(SubsetKey::of(prefix));
        if (layer == dag.layers.size())
            return;
        for (ChannelId c : dag.layers[layer]) {
            prefix.push_back(c);
            self(self, layer + 1);
            prefix.pop_back();
        }
    };
    walk(walk, 0);

    // Pairwise keys for every edge whose head is a channel node. The root's
    // channel set expands, so root -> layer-1 pairs coincide with prefixes.
    if (!dag.layers.empty()) {
        for (ChannelId head : dag.layers[0]) {
            auto chans = root;
            chans.push_back(head);
            keys.insert(SubsetKey::of(std::move(chans)));
        }
        for (std::size_t l = 0; l + 1 < dag.layers.size(); ++l)
            for (ChannelId tail : dag.layers[l])
                for (ChannelId head : dag.layers[l + 1])
                    keys.insert(SubsetKey::of({tail, head}));
    }
    return keys;
}

Confidence SubsetModel::classify(std::span<const double> query) const {
    const auto post = knn_posterior(train, query, k, num_tasks);
    const auto best = std::max_element(post.begin(), post.end());  // tie -> lowest task index
    Confidence c;
    c.task = static_cast<int>(best - post.begin());
    c.value = std::clamp(*best, kConfidenceFloor, 1.0);
    return c;
}

std::vector<double> subset_query(const SubsetKey& key, const ChannelReadings& readings,
                                 int feature_width) {
    std::vector<double> q;
    q.reserve(key.channels.size() * static_cast<std::size_t>(feature_width));
    for (ChannelId c : key.channels) {
        auto it = readings.values.find(c);
        if (it == readings.values.end())
            throw ValidationError("missing reading for channel " + std::to_string(c.value));
        if (it->second.size() != static_cast<std::size_t>(feature_width))
            throw ValidationError("reading for channel " + std::to_string(c.value) +
                                  " has width " + std::to_string(it->second.size()) +
                                  ", expected " + std::to_string(feature_width));
        q.insert(q.end(), it->second.begin(), it->second.end());
    }
    return q;
}

SubsetModel fit_subset_model(const Dataset& train, const SubsetKey& key,
                             const ClassifierConfig& cfg) {
    if (train.samples.empty())
        throw ValidationError("empty training fold");
    if (static_cast<std::size_t>(cfg.k) > train.samples.size())
        throw ValidationError("k=" + std::to_string(cfg.k) + " exceeds training size " +
                              std::to_string(train.samples.size()));

    std::vector<std::size_t> positions;
    positions.reserve(key.channels.size());
    for (ChannelId c : key.channels)
        positions.push_back(train.channel_index(c));

    SubsetModel model;
    model.k = cfg.k;
    model.num_tasks = static_cast<int>(train.tasks.size());
    model.train.dim = positions.size() * static_cast<std::size_t>(train.feature_width);
    model.train.data.reserve(train.samples.size() * model.train.dim);
    for (const Sample& s : train.samples) {
        for (std::size_t pos : positions) {
            auto f = train.features_of(s, pos);
            model.train.data.insert(model.train.data.end(), f.begin(), f.end());
        }
        model.train.labels.push_back(s.label);
    }
    return model;
}

ConfidenceRegistry::ConfidenceRegistry(ClassifierConfig cfg, Dataset training_fold,
                                       std::map<SubsetKey, SubsetModel> models)
    : cfg_(cfg),
      train_(std::move(training_fold)),
      models_(std::move(models)),
      fingerprint_(dataset_fingerprint(train_)) {}

Confidence ConfidenceRegistry::confidence(const SubsetKey& key,
                                          const ChannelReadings& readings) const {
    auto it = models_.find(key);
    if (it == models_.end())
        throw ValidationError("no model for subset " + key.to_string());
    return it->second.classify(subset_query(key, readings, train_.feature_width));
}

std::string dataset_fingerprint(const Dataset& ds) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](const void* p, std::size_t n) {
        const auto* bytes = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ULL;
        }
    };
    auto mix_int = [&](std::int64_t v) { mix(&v, sizeof v); };
    mix_int(static_cast<std::int64_t>(ds.channels.size()));
    for (ChannelId c : ds.channels)
        mix_int(c.value);
    mix_int(ds.feature_width);
    mix_int(static_cast<std::int64_t>(ds.tasks.size()));
    for (const TaskId& t : ds.tasks)
        mix(t.name.data(), t.name.size());
    mix_int(static_cast<std::int64_t>(ds.samples.size()));
    for (const Sample& s : ds.samples) {
        mix_int(s.label);
        mix(s.features.data(), s.features.size() * sizeof(double));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

ConfidenceRegistry train_registry_impl(const Dataset& train, const LayeredDag& dag,
                                       const ClassifierConfig& cfg, bool parallel) {
    for (ChannelId c : dag.all_channels())
        train.channel_index(c);  // throws on channels absent from the fold

    const auto key_set = enumerate_model_keys(dag);
    const std::vector<SubsetKey> keys(key_set.begin(), key_set.end());
    std::vector<SubsetModel> models(keys.size());

    const auto n = static_cast<std::ptrdiff_t>(keys.size());
    std::exception_ptr failure;
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                models[static_cast<std::size_t>(i)] =
                    fit_subset_model(train, keys[static_cast<std::size_t>(i)], cfg);
            } catch (...) {
#pragma omp critical
                if (!failure)
                    failure = std::current_exception();
            }
        }
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            models[static_cast<std::size_t>(i)] =
                fit_subset_model(train, keys[static_cast<std::size_t>(i)], cfg);
    }
    if (failure)
        std::rethrow_exception(failure);

    std::map<SubsetKey, SubsetModel> by_key;
    for (std::size_t i = 0; i < keys.size(); ++i)
        by_key.emplace(keys[i], std::move(models[i]));
    return ConfidenceRegistry(cfg, train, std::move(by_key));
}

}  // namespace

ConfidenceRegistry train_registry(const Dataset& train, const LayeredDag& dag,
                                  const ClassifierConfig& cfg) {
    return train_registry_impl(train, dag, cfg, true);
}

ConfidenceRegistry train_registry_serial(const Dataset& train, const LayeredDag& dag,
                                         const ClassifierConfig& cfg) {
    return train_registry_impl(train, dag, cfg, false);
}

Confidence TableConfidence::confidence(const SubsetKey& key, const ChannelReadings&) const {
    auto it = table_.find(key);
    if (it == table_.end())
        throw ValidationError("no confidence entry for subset " + key.to_string());
    return it->second;
}

LazyRegistry::LazyRegistry(Dataset training_fold, ClassifierConfig cfg)
    : train_(std::move(training_fold)), cfg_(cfg) {}

Confidence LazyRegistry::confidence(const SubsetKey& key, const ChannelReadings& readings) const {
    const auto query = subset_query(key, readings, train_.feature_width);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it == cache_.end())
        it = cache_.emplace(key, fit_subset_model(train_, key, cfg_)).first;
    return it->second.classify(query);
}

std::size_t LazyRegistry::trained_models() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
}

}  // namespace dbcs
