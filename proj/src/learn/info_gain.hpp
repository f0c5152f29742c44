#pragma once

#include <vector>

#include "learn/dataset.hpp"

namespace rumortrack::learn {

inline constexpr std::size_t kIgBins = 10;

// Equal-frequency cut points: sorted[floor(b * n / bins)] for b = 1..bins-1,
// duplicates removed. A value falls in bin = number of cuts <= value.
std::vector<double> equal_frequency_cuts(std::vector<double> column, std::size_t bins = kIgBins);
std::size_t bin_of(const std::vector<double>& cuts, double value);

// Natural-log entropy of a label multiset.
double entropy(const std::vector<int>& labels);

// H(class) - H(class | feature). Nominal columns use their raw values as
// categories; others are discretized with equal_frequency_cuts.
double information_gain(const Dataset& d, std::size_t column);

struct RankedFeature {
    std::size_t column;
    double gain;
};

// Descending gain, ties by column order; at most k entries.
std::vector<RankedFeature> rank_by_ig(const Dataset& d, std::size_t k = 10);

}  // namespace rumortrack::learn
