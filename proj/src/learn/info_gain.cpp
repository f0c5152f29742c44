#include "learn/info_gain.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "util/error.hpp"

namespace rumortrack::learn {

std::vector<double> equal_frequency_cuts(std::vector<double> column, std::size_t bins) {
    std::vector<double> cuts;
    if (column.empty() || bins < 2) return cuts;
    std::sort(column.begin(), column.end());
    const std::size_t n = column.size();
    for (std::size_t b = 1; b < bins; ++b) {
        const double c = column[b * n / bins];
        if (cuts.empty() || cuts.back() != c) cuts.push_back(c);
    }
    return cuts;
}

std::size_t bin_of(const std::vector<double>& cuts, double value) {
    return static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), value) - cuts.begin());
}

namespace {

double entropy_of_counts(const std::vector<std::size_t>& counts, std::size_t total) {
    if (total == 0) return 0.0;
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

double entropy(const std::vector<int>& labels) {
    std::map<int, std::size_t> counts;
    for (int l : labels) ++counts[l];
    std::vector<std::size_t> c;
    for (const auto& [_, n] : counts) c.push_back(n);
    return entropy_of_counts(c, labels.size());
}

double information_gain(const Dataset& d, std::size_t column) {
    if (column >= d.columns()) fail(ErrorKind::InvalidArgument, "no such feature column");
    const std::size_t n = d.rows();
    if (n == 0) return 0.0;
    std::vector<double> values(n);
    for (std::size_t r = 0; r < n; ++r) values[r] = d.x[r][column];

    std::map<double, std::vector<std::size_t>> groups;  // category -> class counts
    if (d.nominal[column]) {
        for (std::size_t r = 0; r < n; ++r) {
            auto& g = groups[values[r]];
            g.resize(kClassCount);
            ++g[static_cast<std::size_t>(d.y[r])];
        }
    } else {
        const auto cuts = equal_frequency_cuts(values);
        for (std::size_t r = 0; r < n; ++r) {
            auto& g = groups[static_cast<double>(bin_of(cuts, values[r]))];
            g.resize(kClassCount);
            ++g[static_cast<std::size_t>(d.y[r])];
        }
    }
    std::vector<std::size_t> totals(kClassCount, 0);
    for (int y : d.y) ++totals[static_cast<std::size_t>(y)];
    const double h = entropy_of_counts(totals, n);
    double conditional = 0.0;
    for (const auto& [_, counts] : groups) {
        std::size_t m = 0;
        for (auto c : counts) m += c;
        conditional += static_cast<double>(m) / static_cast<double>(n) * entropy_of_counts(counts, m);
    }
    const double gain = h - conditional;
    return gain < 0.0 ? 0.0 : gain;
}

std::vector<RankedFeature> rank_by_ig(const Dataset& d, std::size_t k) {
    std::vector<RankedFeature> out;
    for (std::size_t c = 0; c < d.columns(); ++c) out.push_back({c, information_gain(d, c)});
    std::stable_sort(out.begin(), out.end(), [](const RankedFeature& a, const RankedFeature& b) { return a.gain > b.gain; });
    if (out.size() > k) out.resize(k);
    return out;
}

}  // namespace rumortrack::learn
