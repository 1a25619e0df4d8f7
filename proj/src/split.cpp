#include "dbcs/split.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace dbcs {

namespace {

void check_ratios(const SplitSpec& spec) {
    if (!(spec.train > 0.0) || !(spec.val > 0.0) || !(spec.test > 0.0))
        throw ValidationError("split ratios must all be positive");
    if (std::abs(spec.train + spec.val + spec.test - 1.0) > 1e-9)
        throw ValidationError("split ratios must sum to 1");
}

}  // namespace

std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitSpec& spec) {
    check_ratios(spec);
    const auto nd = static_cast<double>(n);
    const auto n_train = static_cast<std::size_t>(std::floor(spec.train * nd));
    const auto n_val = static_cast<std::size_t>(std::floor(spec.val * nd));
    return {n_train, n_val, n - n_train - n_val};
}

SplitResult split(const Dataset& ds, const SplitSpec& spec) {
    const std::size_t n = ds.samples.size();
    if (n < 3)
        throw ValidationError("split needs at least 3 samples, got " + std::to_string(n));
    const auto sizes = split_sizes(n, spec);

    // Fisher-Yates with an explicit draw so partitions are identical everywhere.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
        std::swap(order[i], order[j]);
    }

    SplitResult out;
    Dataset* folds[3] = {&out.train, &out.val, &out.test};
    std::size_t pos = 0;
    for (int f = 0; f < 3; ++f) {
        Dataset& fold = *folds[f];
        fold.channels = ds.channels;
        fold.tasks = ds.tasks;
        fold.feature_width = ds.feature_width;
        fold.samples.reserve(sizes[static_cast<std::size_t>(f)]);
        for (std::size_t i = 0; i < sizes[static_cast<std::size_t>(f)]; ++i)
            fold.samples.push_back(ds.samples[order[pos++]]);
    }
    return out;
}

}  // namespace dbcs
