#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dbcs/types.hpp"

namespace dbcs {

/// Flat row-major training matrix with integer labels.
struct LabeledMatrix {
    std::size_t dim = 0;
    std::vector<double> data;  // rows() * dim values
    std::vector<int> labels;

    std::size_t rows() const { return labels.size(); }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
    void push_row(std::span<const double> x, int label);
};

double squared_distance(std::span<const double> a, std::span<const double> b);

/// Indices of the k nearest rows by Euclidean distance.
/// Distance ties resolve to the lower row index.
std::vector<std::size_t> knn_neighbors(const LabeledMatrix& train, std::span<const double> query,
                                       int k);

/// Majority label among the k nearest; vote ties resolve to the lowest label.
int knn_predict(const LabeledMatrix& train, std::span<const double> query, int k);

/// Per-label vote fractions among the k nearest (size num_labels).
std::vector<double> knn_posterior(const LabeledMatrix& train, std::span<const double> query, int k,
                                  int num_labels);

}  // namespace dbcs
