#include <doctest.h>

#include <cmath>
#include <map>

#include "learn/dataset.hpp"
#include "learn/evaluate.hpp"
#include "learn/info_gain.hpp"
#include "learn/models.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

using namespace rumortrack;
using namespace rumortrack::learn;

namespace {

// Column 0 carries the label with some overlap, the rest is noise.
Dataset synthetic(std::size_t rows, std::size_t noise, std::uint64_t seed, double gap = 4.0) {
    Rng rng(seed);
    Dataset d;
    d.names.push_back("signal");
    for (std::size_t k = 0; k < noise; ++k) d.names.push_back("noise" + std::to_string(k));
    d.nominal.assign(d.names.size(), false);
    for (std::size_t i = 0; i < rows; ++i) {
        const int y = i % 2 == 0 ? kRumor : kNonRumor;
        std::vector<double> x;
        x.push_back((y == kRumor ? gap : 0.0) + uniform_unit(rng) * 3.0);
        for (std::size_t k = 0; k < noise; ++k) x.push_back(std::floor(uniform_unit(rng) * 10.0));
        d.x.push_back(std::move(x));
        d.y.push_back(y);
        d.topic.push_back(i % 3 == 0 ? "A" : "B");
    }
    return d;
}

std::vector<std::size_t> all_columns(const Dataset& d) {
    std::vector<std::size_t> out(d.columns());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
}

}  // namespace

TEST_CASE("confusion arithmetic") {
    Confusion c{};
    c[kRumor][kRumor] = 9;
    c[kNonRumor][kRumor] = 1;
    c[kRumor][kNonRumor] = 3;
    c[kNonRumor][kNonRumor] = 7;
    const auto r = report_from_confusion(c);
    CHECK(*r.per_class[kRumor].precision == doctest::Approx(0.9));
    CHECK(*r.per_class[kRumor].recall == doctest::Approx(0.75));
    CHECK(r.rows == 20);
    for (double w : {r.weighted_precision, r.weighted_recall, r.weighted_f}) {
        CHECK(w >= 0.0);
        CHECK(w <= 1.0);
    }
    const double lo = std::min(*r.per_class[0].f_measure, *r.per_class[1].f_measure);
    const double hi = std::max(*r.per_class[0].f_measure, *r.per_class[1].f_measure);
    CHECK(r.weighted_f >= lo);
    CHECK(r.weighted_f <= hi);

    Confusion perfect{};
    perfect[0][0] = 5;
    perfect[1][1] = 5;
    const auto p = report_from_confusion(perfect);
    CHECK(p.weighted_precision == 1.0);
    CHECK(p.weighted_recall == 1.0);
    CHECK(p.weighted_f == 1.0);
}

TEST_CASE("entropy and information gain") {
    CHECK(entropy({0, 1, 0, 1}) == doctest::Approx(1.0));
    CHECK(entropy({1, 1, 1}) == 0.0);
    Dataset d;
    d.names = {"same", "checker"};
    d.nominal = {false, false};
    for (int i = 0; i < 40; ++i) {
        const int y = i % 2;
        d.x.push_back({static_cast<double>(y), static_cast<double>((i / 2) % 2)});
        d.y.push_back(y);
        d.topic.push_back("");
    }
    CHECK(std::fabs(information_gain(d, 0) - entropy(d.y)) < 1e-9);
    CHECK(std::fabs(information_gain(d, 1)) < 1e-9);
    const auto ranked = rank_by_ig(d, 2);
    CHECK(ranked[0].column == 0);
}

TEST_CASE("equal frequency cuts") {
    std::vector<double> col;
    for (int i = 0; i < 100; ++i) col.push_back(i);
    const auto cuts = equal_frequency_cuts(col);
    CHECK(cuts.size() == 9);
    std::map<std::size_t, int> per_bin;
    for (double v : col) ++per_bin[bin_of(cuts, v)];
    for (const auto& [bin, n] : per_bin) CHECK(n == 10);
    const auto flat = equal_frequency_cuts(std::vector<double>(50, 1.0));
    CHECK(flat.size() == 1);
    CHECK(bin_of(flat, 1.0) == 1);
}

TEST_CASE("information gain is invariant under monotone transforms") {
    auto d = synthetic(200, 2, 4, 1.0);
    auto t = d;
    for (auto& row : t.x) row[0] = std::exp(row[0]) * 3.0 + 1.0;
    CHECK(std::fabs(information_gain(d, 0) - information_gain(t, 0)) < 1e-12);
}

TEST_CASE("separable data: random tree fits it") {
    Dataset d;
    d.names = {"a", "b"};
    d.nominal = {false, false};
    for (int i = 0; i < 60; ++i) {
        const double a = i % 10, b = i / 10;
        d.x.push_back({a, b});
        d.y.push_back(a + b > 7 ? kRumor : kNonRumor);
        d.topic.push_back("");
    }
    Hyperparams p;
    p.min_leaf = 1;
    const auto m = train(d, Algorithm::RandomTree, {0, 1}, p, 3);
    std::size_t right = 0;
    for (std::size_t i = 0; i < d.rows(); ++i) right += m.predict(d.x[i]) == d.y[i];
    CHECK(right == d.rows());
}

TEST_CASE("naive bayes posteriors sum to one") {
    auto d = synthetic(200, 4, 9);
    d.nominal[1] = true;
    const auto m = train(d, Algorithm::NaiveBayes, all_columns(d), {}, 1);
    Rng rng(2);
    for (int i = 0; i < 500; ++i) {
        std::vector<double> row;
        for (std::size_t c = 0; c < d.columns(); ++c) row.push_back((uniform_unit(rng) - 0.5) * 1e3);
        const auto p = m.predict_proba(row);
        CHECK(std::fabs(p[0] + p[1] - 1.0) < 1e-9);
    }
}

TEST_CASE("forest of one tree without bootstrap equals the tree") {
    const auto d = synthetic(300, 5, 11, 1.5);
    Hyperparams p;
    p.forest_size = 1;
    p.bootstrap = false;
    const auto tree = train(d, Algorithm::RandomTree, all_columns(d), p, 77);
    const auto forest = train(d, Algorithm::RandomForest, all_columns(d), p, 77);
    for (const auto& row : d.x) CHECK(tree.predict(row) == forest.predict(row));
}

TEST_CASE("forest is at least as accurate as its worst tree") {
    const auto d = synthetic(300, 5, 12, 1.0);
    Hyperparams p;
    p.forest_size = 15;
    const auto f = train(d, Algorithm::RandomForest, all_columns(d), p, 5);
    const auto& forest = std::get<ForestModel>(f.model);
    auto accuracy = [&](auto&& predict) {
        std::size_t right = 0;
        for (std::size_t i = 0; i < d.rows(); ++i) right += predict(d.x[i]) == d.y[i];
        return right;
    };
    const auto forest_acc = accuracy([&](const std::vector<double>& r) { return f.predict(r); });
    std::size_t worst = d.rows();
    for (const auto& t : forest.trees) {
        worst = std::min(worst, accuracy([&](const std::vector<double>& r) {
            std::vector<double> cols;
            for (auto c : f.features) cols.push_back(r[c]);
            const auto pr = t.predict_proba(cols);
            return pr[kRumor] > pr[kNonRumor] ? kRumor : kNonRumor;
        }));
    }
    CHECK(forest_acc >= worst);
}

TEST_CASE("models are deterministic and survive serialization") {
    const auto d = synthetic(200, 3, 21, 1.0);
    for (auto algo : {Algorithm::NaiveBayes, Algorithm::RandomTree, Algorithm::RandomForest}) {
        Hyperparams p;
        p.forest_size = 10;
        const auto a = train(d, algo, all_columns(d), p, 5);
        const auto b = train(d, algo, all_columns(d), p, 5);
        const auto text = model_to_json(a);
        CHECK(text == model_to_json(b));
        const auto back = model_from_json(text);
        CHECK(model_to_json(back) == text);
        for (const auto& row : d.x) {
            const auto pa = a.predict_proba(row);
            const auto pb = back.predict_proba(row);
            CHECK(pa[0] == pb[0]);
            CHECK(pa[1] == pb[1]);
        }
    }
    CHECK_THROWS_AS(model_from_json("{}"), Error);
    CHECK_THROWS_AS(parse_algorithm("svm"), Error);
}

TEST_CASE("stratified folds keep class balance") {
    const auto d = synthetic(101, 1, 3);
    const auto folds = stratified_folds(d, 10, 9);
    std::map<std::size_t, std::array<int, 2>> per;
    for (std::size_t i = 0; i < d.rows(); ++i) ++per[folds[i]][d.y[i]];
    CHECK(per.size() == 10);
    for (const auto& [f, c] : per) {
        CHECK(c[0] >= 4);
        CHECK(c[1] >= 4);
    }
    CHECK(folds == stratified_folds(d, 10, 9));
}

TEST_CASE("cross validation and backward elimination") {
    const auto d = synthetic(200, 4, 30);
    ClassifierSpec spec;
    const auto r = cross_validate(d, spec, all_columns(d), 5, 1);
    CHECK(r.rows == 200);
    CHECK(r.weighted_f > 0.9);

    const auto e = greedy_backward_eliminate(d, spec, 4, 3);
    REQUIRE(e.trace.size() == 1);
    CHECK(e.selected.size() == 4);
    const auto& step = e.trace[0];
    double best = -1;
    for (const auto& [col, f] : step.candidates) best = std::max(best, f);
    CHECK(step.score == best);
    const auto again = greedy_backward_eliminate(d, spec, 4, 3);
    CHECK(again.selected == e.selected);
    const auto one = greedy_backward_eliminate(d, spec, 1, 3);
    CHECK(one.selected == std::vector<std::size_t>{0});
}

TEST_CASE("selection protocols") {
    const auto d = synthetic(150, 4, 31);
    ClassifierSpec spec;
    const auto full = full_data_protocol(d, spec, Selector::InfoGain, 2, 5, 1);
    CHECK(full.protocol == "full_data_selection");
    CHECK(full.overfit_warning);
    CHECK(full.selected.size() == 2);
    const auto nested = nested_protocol(d, spec, Selector::InfoGain, 2, 5, 1);
    CHECK(nested.protocol == "nested_selection");
    CHECK(!nested.overfit_warning);
    CHECK(nested.fold_selected.size() == 5);
    CHECK(parse_selector(to_string(Selector::Backward)) == Selector::Backward);
}

TEST_CASE("leave one topic out") {
    auto d = synthetic(200, 2, 40);
    ClassifierSpec spec;
    const auto rows = leave_one_topic_out(d, spec, all_columns(d), 1);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].topic == "A");
    CHECK(rows[0].rows + rows[1].rows == 200);
    for (std::size_t i = 0; i < d.rows(); ++i) {
        if (d.topic[i] == "A") d.y[i] = kNonRumor;
    }
    const auto degenerate = leave_one_topic_out(d, spec, all_columns(d), 1);
    CHECK(degenerate[0].zero_support);
    CHECK(!degenerate[0].rumor.recall);
}

TEST_CASE("dataset needs two classes") {
    auto d = synthetic(10, 1, 1);
    for (auto& y : d.y) y = kRumor;
    CHECK_THROWS_AS(require_two_classes(d, "test"), Error);
}
