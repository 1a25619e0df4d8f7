#include "dbcs/knn.hpp"

#include <algorithm>

namespace dbcs {

void LabeledMatrix::push_row(std::span<const double> x, int label) {
    if (rows() == 0 && dim == 0)
        dim = x.size();
    if (x.size() != dim)
        throw ValidationError("feature dimension mismatch: expected " + std::to_string(dim) +
                              ", got " + std::to_string(x.size()));
    data.insert(data.end(), x.begin(), x.end());
    labels.push_back(label);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ValidationError("feature dimension mismatch between query and training row");
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        d2 += diff * diff;
    }
    return d2;
}

std::vector<std::size_t> knn_neighbors(const LabeledMatrix& train, std::span<const double> query,
                                       int k) {
    if (train.rows() == 0)
        throw ValidationError("empty training set");
    if (k < 1 || static_cast<std::size_t>(k) > train.rows())
        throw ValidationError("k=" + std::to_string(k) + " out of range for " +
                              std::to_string(train.rows()) + " training rows");
    if (query.size() != train.dim)
        throw ValidationError("query dimension " + std::to_string(query.size()) +
                              " does not match training dimension " + std::to_string(train.dim));

    std::vector<std::pair<double, std::size_t>> dist(train.rows());
    for (std::size_t i = 0; i < train.rows(); ++i)
        dist[i] = {squared_distance(query, train.row(i)), i};
    // (distance, index) order makes distance ties deterministic.
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

    std::vector<std::size_t> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        out[static_cast<std::size_t>(i)] = dist[static_cast<std::size_t>(i)].second;
    return out;
}

int knn_predict(const LabeledMatrix& train, std::span<const double> query, int k) {
    int num_labels = 0;
    for (int l : train.labels)
        num_labels = std::max(num_labels, l + 1);
    const auto post = knn_posterior(train, query, k, num_labels);
    return static_cast<int>(std::max_element(post.begin(), post.end()) - post.begin());
}

std::vector<double> knn_posterior(const LabeledMatrix& train, std::span<const double> query, int k,
                                  int num_labels) {
    const auto nbrs = knn_neighbors(train, query, k);
    std::vector<double> post(static_cast<std::size_t>(num_labels), 0.0);
    for (std::size_t i : nbrs) {
        const int l = train.labels[i];
        if (l < 0 || l >= num_labels)
            throw ValidationError("training label " + std::to_string(l) + " out of range");
        post[static_cast<std::size_t>(l)] += 1.0;
    }
    for (double& p : post)
        p /= static_cast<double>(k);
    return post;
}

}  // namespace dbcs
