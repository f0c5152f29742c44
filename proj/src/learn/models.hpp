#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "learn/dataset.hpp"

namespace rumortrack::learn {

using Proba = std::array<double, kClassCount>;

enum class Algorithm { NaiveBayes, RandomTree, RandomForest };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view s);  // throws Error(InvalidArgument)

struct Hyperparams {
    std::size_t forest_size = 100;
    std::size_t min_leaf = 2;     // fewest rows allowed in a child
    std::size_t k_features = 0;   // features tried per split; 0 = max(1, floor(sqrt(d)))
    std::size_t max_depth = 0;    // 0 = unlimited
    bool bootstrap = true;        // forest only
    double variance_floor = 1e-9; // naive Bayes
};

struct NaiveBayesModel {
    struct Column {
        bool nominal = false;
        std::array<double, kClassCount> mean{}, variance{};
        std::vector<double> categories;                        // sorted
        std::array<std::vector<double>, kClassCount> log_prob; // parallel to categories, plus one slot for unseen
    };
    std::array<double, kClassCount> log_prior{};
    std::vector<Column> columns;

    Proba predict_proba(const std::vector<double>& row) const;
};

struct TreeNode {
    // Leaf when feature < 0.
    int feature = -1;
    bool equality = false;  // go left when x == threshold (nominal), else when x <= threshold
    double threshold = 0.0;
    int left = -1, right = -1;
    std::array<double, kClassCount> counts{};
};

struct TreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    Proba predict_proba(const std::vector<double>& row) const;
    std::size_t depth() const;
};

struct ForestModel {
    std::vector<TreeModel> trees;
    Proba predict_proba(const std::vector<double>& row) const;  // vote shares
};

struct TrainedModel {
    Algorithm algorithm = Algorithm::RandomTree;
    std::vector<std::size_t> features;  // dataset columns used, in order
    std::vector<std::string> feature_names;
    std::uint64_t seed = 0;
    Hyperparams params;
    std::variant<NaiveBayesModel, TreeModel, ForestModel> model;

    // `row` holds every dataset column; the model picks its own subset.
    Proba predict_proba(const std::vector<double>& row) const;
    int predict(const std::vector<double>& row) const;  // argmax, ties -> non_rumor
};

// Empty `features` means every column. Throws Error(InvalidArgument) on an
// empty dataset or a column index out of range.
TrainedModel train(const Dataset& d, Algorithm algorithm, std::vector<std::size_t> features, const Hyperparams& params,
                   std::uint64_t seed);

// Tree grown on all rows of `d` restricted to `features`.
TreeModel grow_tree(const Dataset& d, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& features,
                    const Hyperparams& params, std::uint64_t seed);

std::string model_to_json(const TrainedModel& m);
TrainedModel model_from_json(const std::string& text);

}  // namespace rumortrack::learn
