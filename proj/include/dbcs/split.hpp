#pragma once

#include <array>
#include <cstdint>

#include "dbcs/types.hpp"

namespace dbcs {

struct SplitSpec {
    double train = 0.70;
    double val = 0.15;
    double test = 0.15;
    std::uint64_t seed = 0;
};

struct SplitResult {
    Dataset train;
    Dataset val;
    Dataset test;
};

/// Fold sizes: train = floor(r_train*n), val = floor(r_val*n), test = remainder.
std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitSpec& spec);

/// Seeded uniform shuffle, then exact partition into the three folds.
SplitResult split(const Dataset& ds, const SplitSpec& spec);

}  // namespace dbcs
