// One line per acceptance criterion; exit status 1 when any fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <utility>
#include <vector>

#include "harness.hpp"

namespace acceptance {

std::string fixtures() { return RT_FIXTURES; }
std::string source_dir() { return RT_SOURCE_DIR; }

}  // namespace acceptance

int main() {
    using namespace acceptance;
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
        {"boolean-engine-oracle", boolean_oracle},
        {"rumor-query-parse", table_queries},
        {"annotation-replay", annotation_replay},
        {"propagation-bookkeeping", propagation_join},
        {"lexicon-math", lexicon_math},
        {"feature-dual-implementation", feature_parity},
        {"information-gain-oracle", info_gain_oracle},
        {"planted-signal-selection", planted_selection},
        {"classifier-sanity", classifier_sanity},
        {"leave-one-topic-out", topic_holdout},
        {"pearson", pearson_checks},
        {"end-to-end-golden-run", golden_run},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  %-28s %6.2fs  %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
