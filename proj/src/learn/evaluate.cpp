#include "learn/evaluate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <mutex>
#include <thread>

#include "util/error.hpp"
#include "util/rng.hpp"

namespace rumortrack::learn {

EvalReport report_from_confusion(const Confusion& c) {
    EvalReport r;
    r.confusion = c;
    for (std::size_t k = 0; k < kClassCount; ++k) {
        std::size_t tp = c[k][k], predicted = 0, actual = 0;
        for (std::size_t j = 0; j < kClassCount; ++j) {
            predicted += c[j][k];
            actual += c[k][j];
        }
        auto& m = r.per_class[k];
        m.support = actual;
        r.rows += actual;
        if (predicted > 0) m.precision = static_cast<double>(tp) / static_cast<double>(predicted);
        if (actual > 0) m.recall = static_cast<double>(tp) / static_cast<double>(actual);
        if (m.precision && m.recall) {
            const double s = *m.precision + *m.recall;
            m.f_measure = s > 0 ? 2.0 * *m.precision * *m.recall / s : 0.0;
        }
    }
    if (r.rows > 0) {
        for (const auto& m : r.per_class) {
            const double w = static_cast<double>(m.support) / static_cast<double>(r.rows);
            r.weighted_precision += w * m.precision.value_or(0.0);
            r.weighted_recall += w * m.recall.value_or(0.0);
            r.weighted_f += w * m.f_measure.value_or(0.0);
        }
    }
    return r;
}

std::vector<std::size_t> stratified_folds(const Dataset& d, std::size_t folds, std::uint64_t seed) {
    if (folds < 2) fail(ErrorKind::InvalidArgument, "cross-validation needs at least 2 folds");
    std::vector<std::size_t> fold(d.rows(), 0);
    Rng rng(seed);
    for (int cls = 0; cls < kClassCount; ++cls) {
        std::vector<std::size_t> idx;
        for (std::size_t r = 0; r < d.rows(); ++r) {
            if (d.y[r] == cls) idx.push_back(r);
        }
        if (idx.size() < folds) {
            fail(ErrorKind::InvalidArgument, "class " + std::string(class_name(cls)) + " has " +
                                                 std::to_string(idx.size()) + " rows, fewer than " +
                                                 std::to_string(folds) + " folds; use fewer folds");
        }
        shuffle(idx, rng);
        for (std::size_t i = 0; i < idx.size(); ++i) fold[idx[i]] = i % folds;
    }
    return fold;
}

EvalReport cross_validate(const Dataset& d, const ClassifierSpec& spec, const std::vector<std::size_t>& features,
                          std::size_t folds, std::uint64_t seed) {
    const auto fold = stratified_folds(d, folds, seed);
    Confusion c{};
    for (std::size_t k = 0; k < folds; ++k) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t r = 0; r < d.rows(); ++r) (fold[r] == k ? test_rows : train_rows).push_back(r);
        const auto model = train(d.subset(train_rows), spec.algorithm, features, spec.params, derive_seed(seed, k));
        for (std::size_t r : test_rows) ++c[static_cast<std::size_t>(d.y[r])][static_cast<std::size_t>(model.predict(d.x[r]))];
    }
    return report_from_confusion(c);
}

std::vector<TopicResult> leave_one_topic_out(const Dataset& d, const ClassifierSpec& spec,
                                             const std::vector<std::size_t>& features, std::uint64_t seed) {
    std::vector<std::string> topics = d.topic;
    std::sort(topics.begin(), topics.end());
    topics.erase(std::unique(topics.begin(), topics.end()), topics.end());
    if (topics.size() < 2) fail(ErrorKind::InvalidArgument, "leave-one-topic-out needs at least two topics");
    std::vector<TopicResult> out;
    for (const auto& t : topics) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t r = 0; r < d.rows(); ++r) (d.topic[r] == t ? test_rows : train_rows).push_back(r);
        const auto model = train(d.subset(train_rows), spec.algorithm, features, spec.params, derive_seed(seed, t));
        Confusion c{};
        for (std::size_t r : test_rows) ++c[static_cast<std::size_t>(d.y[r])][static_cast<std::size_t>(model.predict(d.x[r]))];
        const auto rep = report_from_confusion(c);
        TopicResult tr;
        tr.topic = t;
        tr.rows = test_rows.size();
        tr.rumor = rep.per_class[kRumor];
        tr.zero_support = tr.rumor.support == 0;
        out.push_back(std::move(tr));
    }
    return out;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex m;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(m);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

Elimination greedy_backward_eliminate(const Dataset& d, const ClassifierSpec& spec, std::size_t target_size,
                                      std::uint64_t seed, std::vector<std::size_t> start, std::size_t inner_folds,
                                      std::size_t threads) {
    require_two_classes(d, "greedy backward elimination");
    if (start.empty()) {
        start.resize(d.columns());
        std::iota(start.begin(), start.end(), 0);
    }
    std::sort(start.begin(), start.end());
    if (target_size == 0 || target_size >= start.size())
        fail(ErrorKind::InvalidArgument, "target size must be between 1 and the feature count minus one");

    Elimination out;
    std::vector<std::size_t> current = start;
    for (std::size_t step = 0; current.size() > target_size; ++step) {
        EliminationStep s;
        s.before = current;
        std::vector<double> scores(current.size());
        const std::uint64_t cv_seed = derive_seed(seed, step);
        parallel_for(current.size(), threads, [&](std::size_t i) {
            std::vector<std::size_t> without = current;
            without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
            scores[i] = cross_validate(d, spec, without, inner_folds, cv_seed).weighted_f;
        });
        std::size_t best = 0;
        for (std::size_t i = 0; i < current.size(); ++i) {
            s.candidates.push_back({current[i], scores[i]});
            if (scores[i] > scores[best]) best = i;
        }
        s.removed = current[best];
        s.score = scores[best];
        current.erase(current.begin() + static_cast<std::ptrdiff_t>(best));
        out.trace.push_back(std::move(s));
    }
    out.selected = current;
    return out;
}

std::string_view to_string(Selector s) {
    switch (s) {
        case Selector::None: return "none";
        case Selector::InfoGain: return "ig";
        case Selector::Backward: return "gbe";
    }
    return "none";
}

Selector parse_selector(std::string_view s) {
    if (s == "none" || s == "all") return Selector::None;
    if (s == "ig") return Selector::InfoGain;
    if (s == "gbe") return Selector::Backward;
    fail(ErrorKind::InvalidArgument, "unknown feature selector '" + std::string(s) + "'");
}

std::vector<std::size_t> select_features(const Dataset& d, const ClassifierSpec& spec, Selector selector,
                                         std::size_t target_size, std::uint64_t seed) {
    std::vector<std::size_t> out;
    switch (selector) {
        case Selector::None:
            out.resize(d.columns());
            std::iota(out.begin(), out.end(), 0);
            break;
        case Selector::InfoGain:
            for (const auto& r : rank_by_ig(d, target_size)) out.push_back(r.column);
            std::sort(out.begin(), out.end());
            break;
        case Selector::Backward:
            out = greedy_backward_eliminate(d, spec, target_size, seed).selected;
            break;
    }
    return out;
}

ProtocolResult full_data_protocol(const Dataset& d, const ClassifierSpec& spec, Selector selector,
                                  std::size_t target_size, std::size_t folds, std::uint64_t seed) {
    ProtocolResult p;
    p.protocol = "full_data_selection";
    p.overfit_warning = selector != Selector::None;
    p.selected = select_features(d, spec, selector, target_size, derive_seed(seed, "select"));
    p.report = cross_validate(d, spec, p.selected, folds, derive_seed(seed, "cv"));
    return p;
}

ProtocolResult nested_protocol(const Dataset& d, const ClassifierSpec& spec, Selector selector,
                               std::size_t target_size, std::size_t folds, std::uint64_t seed) {
    ProtocolResult p;
    p.protocol = "nested_selection";
    const std::uint64_t cv_seed = derive_seed(seed, "cv");
    const auto fold = stratified_folds(d, folds, cv_seed);
    Confusion c{};
    for (std::size_t k = 0; k < folds; ++k) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t r = 0; r < d.rows(); ++r) (fold[r] == k ? test_rows : train_rows).push_back(r);
        const Dataset train_set = d.subset(train_rows);
        auto selected = select_features(train_set, spec, selector, target_size, derive_seed(derive_seed(seed, "select"), k));
        const auto model = train(train_set, spec.algorithm, selected, spec.params, derive_seed(cv_seed, k));
        for (std::size_t r : test_rows) ++c[static_cast<std::size_t>(d.y[r])][static_cast<std::size_t>(model.predict(d.x[r]))];
        p.fold_selected.push_back(std::move(selected));
    }
    p.report = report_from_confusion(c);
    return p;
}

}  // namespace rumortrack::learn
