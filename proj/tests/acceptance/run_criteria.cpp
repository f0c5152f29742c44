#include <chrono>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "harness.hpp"
#include "pipeline/config.hpp"
#include "pipeline/engine.hpp"
#include "timeline/timeline.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

using namespace rumortrack;
namespace fs = std::filesystem;

namespace acceptance {

namespace {

// Textbook single-pass form, kept apart from the two-pass library code.
double direct_r(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

}  // namespace

Outcome pearson_checks() {
    Report rep;
    Rng rng(1);
    std::size_t self_exact = 0, neg_exact = 0, affine_ok = 0;
    double formula_err = 0.0;
    const int cases = 1000;
    for (int c = 0; c < cases; ++c) {
        const std::size_t n = 2 + uniform_below(rng, 200);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = std::floor(uniform_unit(rng) * 50.0);
            y[i] = std::floor(uniform_unit(rng) * 30.0) + 0.5 * x[i] * (c % 3);
        }
        std::vector<double> neg(n);
        for (std::size_t i = 0; i < n; ++i) neg[i] = -x[i];
        const auto rx = timeline::pearson(x, x), rn = timeline::pearson(x, neg), r = timeline::pearson(x, y);
        if (!rx || !r) {
            ++self_exact, ++neg_exact, ++affine_ok;  // constant draw; absent is the correct answer
            continue;
        }
        self_exact += *rx == 1.0;
        neg_exact += rn && *rn == -1.0;
        formula_err = std::max(formula_err, std::fabs(*r - direct_r(x, y)));

        const double a = (uniform_unit(rng) - 0.5) * 20.0, b = (uniform_unit(rng) - 0.5) * 100.0;
        const double cc = (uniform_unit(rng) - 0.5) * 20.0, dd = (uniform_unit(rng) - 0.5) * 100.0;
        if (a == 0.0 || cc == 0.0) {
            ++affine_ok;
            continue;
        }
        std::vector<double> ax(n), cy(n);
        for (std::size_t i = 0; i < n; ++i) {
            ax[i] = a * x[i] + b;
            cy[i] = cc * y[i] + dd;
        }
        const auto ra = timeline::pearson(ax, cy);
        const double sign = (a > 0) == (cc > 0) ? 1.0 : -1.0;
        affine_ok += ra && std::fabs(*ra - sign * *r) <= 1e-9;
    }
    rep << "r(x,x)=1 exact " << self_exact << "/" << cases << ", r(x,-x)=-1 exact " << neg_exact << "/" << cases
        << ", max |r - direct| " << formula_err << ", affine sign " << affine_ok << "/" << cases;
    rep.require(self_exact == cases && neg_exact == cases, "self correlation not exact");
    rep.require(formula_err <= 1e-12, "differs from the direct formula");
    rep.require(affine_ok == cases, "affine invariance");
    return rep.done();
}

Outcome golden_run() {
    Report rep;
    const auto cfg = pipeline::load_config(source_dir() + "/data/demo/config.json");
    const auto root = fs::temp_directory_path() / "rumortrack_acceptance_golden";
    fs::remove_all(root);
    double slowest = 0.0;
    std::vector<fs::path> dirs;
    for (int run = 0; run < 2; ++run) {
        const auto dir = root / ("run" + std::to_string(run));
        const auto t0 = std::chrono::steady_clock::now();
        pipeline::run_pipeline(cfg, dir);
        slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        dirs.push_back(dir);
    }
    std::size_t files = 0, differ = 0;
    std::string first;
    for (const auto& e : fs::recursive_directory_iterator(dirs[0])) {
        if (!e.is_regular_file()) continue;
        ++files;
        const auto rel = fs::relative(e.path(), dirs[0]);
        if (!fs::exists(dirs[1] / rel) || read_file(e.path()) != read_file(dirs[1] / rel)) {
            ++differ;
            if (first.empty()) first = rel.string();
        }
    }
    std::size_t files_b = 0;
    for (const auto& e : fs::recursive_directory_iterator(dirs[1])) files_b += e.is_regular_file();
    rep << "demo run " << slowest << " s (slowest of 2), " << files << " artifacts, " << differ << " differ";
    if (!first.empty()) rep << " (first " << first << ")";
    rep.require(slowest < 60.0, "slower than 60 s");
    rep.require(files > 20 && files == files_b, "artifact sets differ");
    rep.require(differ == 0, "re-run not bit-identical");
    fs::remove_all(root);
    return rep.done();
}

}  // namespace acceptance
