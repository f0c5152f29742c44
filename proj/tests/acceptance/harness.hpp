#pragma once

#include <sstream>
#include <string>

namespace acceptance {

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Builds the detail text and the verdict in one place.
class Report {
public:
    template <typename T>
    Report& operator<<(const T& v) {
        out_ << v;
        return *this;
    }
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            if (!failures_.empty()) failures_ += "; ";
            failures_ += what;
        }
    }
    Outcome done() const {
        std::string d = out_.str();
        if (!failures_.empty()) d += (d.empty() ? "" : " | ") + std::string("failed: ") + failures_;
        return {pass_, d};
    }

private:
    std::ostringstream out_;
    std::string failures_;
    bool pass_ = true;
};

std::string fixtures();
std::string source_dir();

Outcome boolean_oracle();
Outcome table_queries();
Outcome annotation_replay();
Outcome propagation_join();
Outcome lexicon_math();
Outcome feature_parity();
Outcome info_gain_oracle();
Outcome planted_selection();
Outcome classifier_sanity();
Outcome topic_holdout();
Outcome pearson_checks();
Outcome golden_run();

}  // namespace acceptance
