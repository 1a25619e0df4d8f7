#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "dbcs/dag.hpp"
#include "dbcs/knn.hpp"
#include "dbcs/ranking.hpp"
#include "dbcs/types.hpp"

namespace dbcs {

/// Sorted, duplicate-free channel subset; identifies one confidence model.
struct SubsetKey {
    std::vector<ChannelId> channels;

    static SubsetKey of(std::vector<ChannelId> chs);
    std::string to_string() const;
    friend auto operator<=>(const SubsetKey&, const SubsetKey&) = default;
};

/// Argmax class and its confidence value in (0,1].
struct Confidence {
    int task = 0;
    double value = 0.0;
};

/// Floor keeping returned values inside the open-bottom interval (0,1].
inline constexpr double kConfidenceFloor = 1e-6;

/// Maps a channel subset plus its readings to a confidence. Implementations must
/// be safe for concurrent queries.
class ConfidenceProvider {
public:
    virtual ~ConfidenceProvider() = default;
    virtual Confidence confidence(const SubsetKey& key, const ChannelReadings& readings) const = 0;
};

/// Every model key a DBCS run over this DAG can query: pairwise keys for each
/// edge into a channel node (the root contributes all its channels) and prefix
/// keys for every path prefix starting at the root.
std::set<SubsetKey> enumerate_model_keys(const LayeredDag& dag);

/// k-NN vote-fraction model over one subset's concatenated features.
struct SubsetModel {
    int k = 4;
    int num_tasks = 0;
    LabeledMatrix train;

    Confidence classify(std::span<const double> query) const;
};

/// Concatenates the key's readings in key (ascending channel) order.
std::vector<double> subset_query(const SubsetKey& key, const ChannelReadings& readings,
                                 int feature_width);

/// Fits one SubsetModel on training samples restricted to the key's channels.
SubsetModel fit_subset_model(const Dataset& train, const SubsetKey& key,
                             const ClassifierConfig& cfg);

/// Trained subset-confidence models for exactly the keys of one DAG.
class ConfidenceRegistry : public ConfidenceProvider {
public:
    ConfidenceRegistry(ClassifierConfig cfg, Dataset training_fold,
                       std::map<SubsetKey, SubsetModel> models);

    Confidence confidence(const SubsetKey& key, const ChannelReadings& readings) const override;

    const std::map<SubsetKey, SubsetModel>& models() const { return models_; }
    const Dataset& training_fold() const { return train_; }
    const ClassifierConfig& config() const { return cfg_; }
    std::string fingerprint() const { return fingerprint_; }

private:
    ClassifierConfig cfg_;
    Dataset train_;
    std::map<SubsetKey, SubsetModel> models_;
    std::string fingerprint_;
};

/// FNV-1a over the fold's structure and sample bytes, hex-encoded.
std::string dataset_fingerprint(const Dataset& ds);

/// Fits one model per DAG key on the given training fold. The parallel kernel and
/// the serial reference produce identical registries.
ConfidenceRegistry train_registry(const Dataset& train, const LayeredDag& dag,
                                  const ClassifierConfig& cfg);
ConfidenceRegistry train_registry_serial(const Dataset& train, const LayeredDag& dag,
                                         const ClassifierConfig& cfg);

/// Fixed key -> confidence table; readings are ignored. Test and simulation aid.
class TableConfidence : public ConfidenceProvider {
public:
    TableConfidence() = default;
    explicit TableConfidence(std::map<SubsetKey, Confidence> table) : table_(std::move(table)) {}

    void set(SubsetKey key, Confidence c) { table_[std::move(key)] = c; }
    Confidence confidence(const SubsetKey& key, const ChannelReadings&) const override;

private:
    std::map<SubsetKey, Confidence> table_;
};

/// Trains subset models on demand and memoizes them; serves arbitrary subsets of
/// the training fold's channels. Queries are internally synchronized.
class LazyRegistry : public ConfidenceProvider {
public:
    LazyRegistry(Dataset training_fold, ClassifierConfig cfg);

    Confidence confidence(const SubsetKey& key, const ChannelReadings& readings) const override;
    std::size_t trained_models() const;

private:
    Dataset train_;
    ClassifierConfig cfg_;
    mutable std::mutex mutex_;
    mutable std::map<SubsetKey, SubsetModel> cache_;
};

}  // namespace dbcs
