#include "learn/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

namespace rumortrack::learn {

using nlohmann::json;

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::NaiveBayes: return "naive_bayes";
        case Algorithm::RandomTree: return "random_tree";
        case Algorithm::RandomForest: return "random_forest";
    }
    return "random_tree";
}

Algorithm parse_algorithm(std::string_view s) {
    if (s == "naive_bayes" || s == "nb") return Algorithm::NaiveBayes;
    if (s == "random_tree" || s == "rt") return Algorithm::RandomTree;
    if (s == "random_forest" || s == "rf") return Algorithm::RandomForest;
    fail(ErrorKind::InvalidArgument, "unknown algorithm '" + std::string(s) + "'");
}

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

Proba normalize_log(const std::array<double, kClassCount>& logp) {
    const double m = *std::max_element(logp.begin(), logp.end());
    double z = 0.0;
    for (double l : logp) z += std::exp(l - m);
    Proba p{};
    for (std::size_t c = 0; c < kClassCount; ++c) p[c] = std::exp(logp[c] - m) / z;
    return p;
}

}  // namespace

Proba NaiveBayesModel::predict_proba(const std::vector<double>& row) const {
    std::array<double, kClassCount> logp = log_prior;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        const auto& col = columns[i];
        const double x = row[i];
        for (std::size_t c = 0; c < kClassCount; ++c) {
            if (col.nominal) {
                const auto it = std::lower_bound(col.categories.begin(), col.categories.end(), x);
                const bool seen = it != col.categories.end() && *it == x;
                const std::size_t slot = seen ? static_cast<std::size_t>(it - col.categories.begin()) : col.categories.size();
                logp[c] += col.log_prob[c][slot];
            } else {
                const double d = x - col.mean[c];
                logp[c] += -0.5 * (kLog2Pi + std::log(col.variance[c])) - d * d / (2.0 * col.variance[c]);
            }
        }
    }
    return normalize_log(logp);
}

Proba TreeModel::predict_proba(const std::vector<double>& row) const {
    std::size_t at = 0;
    while (nodes[at].feature >= 0) {
        const auto& n = nodes[at];
        const double x = row[static_cast<std::size_t>(n.feature)];
        const bool left = n.equality ? x == n.threshold : x <= n.threshold;
        at = static_cast<std::size_t>(left ? n.left : n.right);
    }
    const auto& leaf = nodes[at];
    const double total = leaf.counts[0] + leaf.counts[1];
    Proba p{};
    for (std::size_t c = 0; c < kClassCount; ++c) p[c] = total > 0 ? leaf.counts[c] / total : 1.0 / kClassCount;
    return p;
}

std::size_t TreeModel::depth() const {
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    std::size_t best = 0;
    while (!stack.empty()) {
        auto [i, d] = stack.back();
        stack.pop_back();
        best = std::max(best, d);
        if (nodes[i].feature >= 0) {
            stack.push_back({static_cast<std::size_t>(nodes[i].left), d + 1});
            stack.push_back({static_cast<std::size_t>(nodes[i].right), d + 1});
        }
    }
    return best;
}

namespace {

int argmax(const Proba& p) { return p[kRumor] > p[kNonRumor] ? kRumor : kNonRumor; }

}  // namespace

Proba ForestModel::predict_proba(const std::vector<double>& row) const {
    Proba votes{};
    for (const auto& t : trees) votes[static_cast<std::size_t>(argmax(t.predict_proba(row)))] += 1.0;
    for (auto& v : votes) v /= static_cast<double>(trees.size());
    return votes;
}

Proba TrainedModel::predict_proba(const std::vector<double>& row) const {
    if (const auto* nb = std::get_if<NaiveBayesModel>(&model)) {
        std::vector<double> sub(features.size());
        for (std::size_t i = 0; i < features.size(); ++i) sub[i] = row.at(features[i]);
        return nb->predict_proba(sub);
    }
    if (const auto* tree = std::get_if<TreeModel>(&model)) return tree->predict_proba(row);
    return std::get<ForestModel>(model).predict_proba(row);
}

int TrainedModel::predict(const std::vector<double>& row) const { return argmax(predict_proba(row)); }

namespace {

double entropy2(double a, double b) {
    const double n = a + b;
    double h = 0.0;
    if (a > 0) h -= a / n * std::log(a / n);
    if (b > 0) h -= b / n * std::log(b / n);
    return h;
}

struct Split {
    bool found = false;
    double gain = 0.0;
    int feature = -1;
    bool equality = false;
    double threshold = 0.0;
};

constexpr double kMinGain = 1e-12;

Split best_split_on(const Dataset& d, const std::vector<std::size_t>& rows, std::size_t feature, std::size_t min_leaf,
                    double parent_entropy, const std::array<double, kClassCount>& totals) {
    Split best;
    const double n = static_cast<double>(rows.size());
    std::vector<std::pair<double, int>> v;
    v.reserve(rows.size());
    for (std::size_t r : rows) v.push_back({d.x[r][feature], d.y[r]});
    std::sort(v.begin(), v.end());

    auto consider = [&](double l0, double l1, bool equality, double threshold) {
        const double ln = l0 + l1, rn = n - ln;
        if (ln < static_cast<double>(min_leaf) || rn < static_cast<double>(min_leaf)) return;
        const double children = ln / n * entropy2(l0, l1) + rn / n * entropy2(totals[0] - l0, totals[1] - l1);
        const double gain = parent_entropy - children;
        if (gain > kMinGain && (!best.found || gain > best.gain)) {
            best = {true, gain, static_cast<int>(feature), equality, threshold};
        }
    };

    if (d.nominal[feature]) {
        for (std::size_t i = 0; i < v.size();) {
            std::size_t j = i;
            double c0 = 0, c1 = 0;
            while (j < v.size() && v[j].first == v[i].first) {
                (v[j].second == kRumor ? c1 : c0) += 1;
                ++j;
            }
            if (!(i == 0 && j == v.size())) consider(c0, c1, true, v[i].first);
            i = j;
        }
        return best;
    }
    double l0 = 0, l1 = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        (v[i].second == kRumor ? l1 : l0) += 1;
        const double a = v[i].first, b = v[i + 1].first;
        if (a == b) continue;
        double mid = a + (b - a) / 2.0;
        if (!(mid >= a && mid < b)) mid = a;
        consider(l0, l1, false, mid);
    }
    return best;
}

}  // namespace

TreeModel grow_tree(const Dataset& d, const std::vector<std::size_t>& initial_rows,
                    const std::vector<std::size_t>& features, const Hyperparams& params, std::uint64_t seed) {
    TreeModel tree;
    Rng rng(seed);
    const std::size_t min_leaf = std::max<std::size_t>(1, params.min_leaf);
    const std::size_t k = params.k_features > 0
                              ? std::min(params.k_features, features.size())
                              : std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(features.size())))));

    struct Work {
        std::size_t node;
        std::vector<std::size_t> rows;
        std::size_t depth;
    };
    tree.nodes.emplace_back();
    std::vector<Work> stack;
    stack.push_back({0, initial_rows, 0});
    while (!stack.empty()) {
        Work w = std::move(stack.back());
        stack.pop_back();
        std::array<double, kClassCount> totals{};
        for (std::size_t r : w.rows) totals[static_cast<std::size_t>(d.y[r])] += 1;
        tree.nodes[w.node].counts = totals;
        const bool pure = totals[0] == 0 || totals[1] == 0;
        if (pure || w.rows.size() < 2 * min_leaf || (params.max_depth > 0 && w.depth >= params.max_depth)) continue;

        const double h = entropy2(totals[0], totals[1]);
        std::vector<std::size_t> order = features;
        shuffle(order, rng);
        Split best;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i >= k && best.found) break;
            const Split s = best_split_on(d, w.rows, order[i], min_leaf, h, totals);
            if (s.found && (!best.found || s.gain > best.gain)) best = s;
        }
        if (!best.found) continue;

        std::vector<std::size_t> left, right;
        for (std::size_t r : w.rows) {
            const double x = d.x[r][static_cast<std::size_t>(best.feature)];
            ((best.equality ? x == best.threshold : x <= best.threshold) ? left : right).push_back(r);
        }
        const int li = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        const int ri = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        auto& node = tree.nodes[w.node];
        node.feature = best.feature;
        node.equality = best.equality;
        node.threshold = best.threshold;
        node.left = li;
        node.right = ri;
        // Right first so the left subtree is grown (and draws randomness) first.
        stack.push_back({static_cast<std::size_t>(ri), std::move(right), w.depth + 1});
        stack.push_back({static_cast<std::size_t>(li), std::move(left), w.depth + 1});
    }
    return tree;
}

namespace {

NaiveBayesModel train_nb(const Dataset& d, const std::vector<std::size_t>& features, const Hyperparams& params) {
    NaiveBayesModel m;
    const double n = static_cast<double>(d.rows());
    std::array<double, kClassCount> nc{};
    for (int y : d.y) nc[static_cast<std::size_t>(y)] += 1;
    for (std::size_t c = 0; c < kClassCount; ++c) m.log_prior[c] = std::log((nc[c] + 1.0) / (n + kClassCount));

    for (std::size_t f : features) {
        NaiveBayesModel::Column col;
        col.nominal = d.nominal[f];
        if (col.nominal) {
            for (const auto& row : d.x) col.categories.push_back(row[f]);
            std::sort(col.categories.begin(), col.categories.end());
            col.categories.erase(std::unique(col.categories.begin(), col.categories.end()), col.categories.end());
            const std::size_t slots = col.categories.size() + 1;
            for (std::size_t c = 0; c < kClassCount; ++c) col.log_prob[c].assign(slots, 0.0);
            std::array<std::vector<double>, kClassCount> counts;
            for (auto& v : counts) v.assign(slots, 0.0);
            for (std::size_t r = 0; r < d.rows(); ++r) {
                const auto it = std::lower_bound(col.categories.begin(), col.categories.end(), d.x[r][f]);
                counts[static_cast<std::size_t>(d.y[r])][static_cast<std::size_t>(it - col.categories.begin())] += 1;
            }
            for (std::size_t c = 0; c < kClassCount; ++c) {
                for (std::size_t s = 0; s < slots; ++s)
                    col.log_prob[c][s] = std::log((counts[c][s] + 1.0) / (nc[c] + static_cast<double>(slots)));
            }
        } else {
            double all_sum = 0.0;
            std::array<double, kClassCount> sum{};
            for (std::size_t r = 0; r < d.rows(); ++r) {
                sum[static_cast<std::size_t>(d.y[r])] += d.x[r][f];
                all_sum += d.x[r][f];
            }
            const double all_mean = all_sum / n;
            for (std::size_t c = 0; c < kClassCount; ++c) col.mean[c] = nc[c] > 0 ? sum[c] / nc[c] : all_mean;
            std::array<double, kClassCount> ss{};
            double all_ss = 0.0;
            for (std::size_t r = 0; r < d.rows(); ++r) {
                const auto c = static_cast<std::size_t>(d.y[r]);
                const double dv = d.x[r][f] - col.mean[c];
                ss[c] += dv * dv;
                all_ss += (d.x[r][f] - all_mean) * (d.x[r][f] - all_mean);
            }
            for (std::size_t c = 0; c < kClassCount; ++c) {
                const double var = nc[c] > 0 ? ss[c] / nc[c] : all_ss / n;
                col.variance[c] = std::max(var, params.variance_floor);
            }
        }
        m.columns.push_back(std::move(col));
    }
    return m;
}

}  // namespace

TrainedModel train(const Dataset& d, Algorithm algorithm, std::vector<std::size_t> features, const Hyperparams& params,
                   std::uint64_t seed) {
    if (d.rows() == 0) fail(ErrorKind::InvalidArgument, "cannot train on an empty dataset");
    if (features.empty()) {
        features.resize(d.columns());
        std::iota(features.begin(), features.end(), 0);
    }
    for (std::size_t f : features) {
        if (f >= d.columns()) fail(ErrorKind::InvalidArgument, "feature column out of range");
    }
    TrainedModel m;
    m.algorithm = algorithm;
    m.features = features;
    for (std::size_t f : features) m.feature_names.push_back(d.names[f]);
    m.seed = seed;
    m.params = params;

    std::vector<std::size_t> all(d.rows());
    std::iota(all.begin(), all.end(), 0);
    switch (algorithm) {
        case Algorithm::NaiveBayes:
            m.model = train_nb(d, features, params);
            break;
        case Algorithm::RandomTree:
            m.model = grow_tree(d, all, features, params, seed);
            break;
        case Algorithm::RandomForest: {
            if (params.forest_size == 0) fail(ErrorKind::InvalidArgument, "forest_size must be at least 1");
            ForestModel forest;
            for (std::size_t t = 0; t < params.forest_size; ++t) {
                const std::uint64_t tree_seed = seed + t;
                std::vector<std::size_t> rows = all;
                if (params.bootstrap) {
                    Rng rng(derive_seed(tree_seed, "bootstrap"));
                    for (auto& r : rows) r = static_cast<std::size_t>(uniform_below(rng, all.size()));
                }
                forest.trees.push_back(grow_tree(d, rows, features, params, tree_seed));
            }
            m.model = std::move(forest);
            break;
        }
    }
    return m;
}

namespace {

json tree_json(const TreeModel& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes) {
        if (n.feature < 0) {
            nodes.push_back({{"counts", n.counts}});
        } else {
            nodes.push_back({{"feature", n.feature},
                             {"equality", n.equality},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"counts", n.counts}});
        }
    }
    return nodes;
}

TreeModel tree_from(const json& j) {
    TreeModel t;
    for (const auto& n : j) {
        TreeNode node;
        node.counts = n.at("counts").get<std::array<double, kClassCount>>();
        if (n.contains("feature")) {
            node.feature = n.at("feature").get<int>();
            node.equality = n.at("equality").get<bool>();
            node.threshold = n.at("threshold").get<double>();
            node.left = n.at("left").get<int>();
            node.right = n.at("right").get<int>();
        }
        t.nodes.push_back(node);
    }
    const int size = static_cast<int>(t.nodes.size());
    for (const auto& n : t.nodes) {
        if (n.feature >= 0 && (n.left <= 0 || n.right <= 0 || n.left >= size || n.right >= size))
            fail(ErrorKind::Parse, "model: tree child index out of range");
    }
    if (t.nodes.empty()) fail(ErrorKind::Parse, "model: empty tree");
    return t;
}

}  // namespace

std::string model_to_json(const TrainedModel& m) {
    json j;
    j["format"] = "rumortrack-model";
    j["version"] = 1;
    j["algorithm"] = to_string(m.algorithm);
    j["features"] = m.features;
    j["feature_names"] = m.feature_names;
    j["seed"] = m.seed;
    j["params"] = {{"forest_size", m.params.forest_size},   {"min_leaf", m.params.min_leaf},
                   {"k_features", m.params.k_features},     {"max_depth", m.params.max_depth},
                   {"bootstrap", m.params.bootstrap},       {"variance_floor", m.params.variance_floor}};
    if (const auto* nb = std::get_if<NaiveBayesModel>(&m.model)) {
        json cols = json::array();
        for (const auto& c : nb->columns) {
            if (c.nominal) {
                cols.push_back({{"nominal", true}, {"categories", c.categories}, {"log_prob", c.log_prob}});
            } else {
                cols.push_back({{"nominal", false}, {"mean", c.mean}, {"variance", c.variance}});
            }
        }
        j["naive_bayes"] = {{"log_prior", nb->log_prior}, {"columns", cols}};
    } else if (const auto* t = std::get_if<TreeModel>(&m.model)) {
        j["tree"] = tree_json(*t);
    } else {
        json trees = json::array();
        for (const auto& t : std::get<ForestModel>(m.model).trees) trees.push_back(tree_json(t));
        j["forest"] = trees;
    }
    return j.dump() + '\n';
}

TrainedModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::Parse, std::string("model: ") + e.what());
    }
    try {
        if (j.value("format", "") != "rumortrack-model" || j.value("version", 0) != 1)
            fail(ErrorKind::Parse, "not a rumortrack model (version 1)");
        TrainedModel m;
        m.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
        m.features = j.at("features").get<std::vector<std::size_t>>();
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        m.seed = j.at("seed").get<std::uint64_t>();
        const auto& p = j.at("params");
        m.params.forest_size = p.at("forest_size").get<std::size_t>();
        m.params.min_leaf = p.at("min_leaf").get<std::size_t>();
        m.params.k_features = p.at("k_features").get<std::size_t>();
        m.params.max_depth = p.at("max_depth").get<std::size_t>();
        m.params.bootstrap = p.at("bootstrap").get<bool>();
        m.params.variance_floor = p.at("variance_floor").get<double>();
        switch (m.algorithm) {
            case Algorithm::NaiveBayes: {
                NaiveBayesModel nb;
                const auto& jn = j.at("naive_bayes");
                nb.log_prior = jn.at("log_prior").get<std::array<double, kClassCount>>();
                for (const auto& c : jn.at("columns")) {
                    NaiveBayesModel::Column col;
                    col.nominal = c.at("nominal").get<bool>();
                    if (col.nominal) {
                        col.categories = c.at("categories").get<std::vector<double>>();
                        col.log_prob = c.at("log_prob").get<std::array<std::vector<double>, kClassCount>>();
                    } else {
                        col.mean = c.at("mean").get<std::array<double, kClassCount>>();
                        col.variance = c.at("variance").get<std::array<double, kClassCount>>();
                    }
                    nb.columns.push_back(std::move(col));
                }
                if (nb.columns.size() != m.features.size()) fail(ErrorKind::Parse, "model: column count mismatch");
                m.model = std::move(nb);
                break;
            }
            case Algorithm::RandomTree:
                m.model = tree_from(j.at("tree"));
                break;
            case Algorithm::RandomForest: {
                ForestModel f;
                for (const auto& t : j.at("forest")) f.trees.push_back(tree_from(t));
                if (f.trees.empty()) fail(ErrorKind::Parse, "model: empty forest");
                m.model = std::move(f);
                break;
            }
        }
        return m;
    } catch (const json::exception& e) {
        fail(ErrorKind::Parse, std::string("model: ") + e.what());
    }
}

}  // namespace rumortrack::learn
