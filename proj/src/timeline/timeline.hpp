#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "annotation/label.hpp"
#include "util/time.hpp"

namespace rumortrack::timeline {

struct DateRange {
    std::int64_t first_day = 0;  // days since epoch, inclusive
    std::int64_t last_day = 0;   // inclusive
    std::size_t days() const { return static_cast<std::size_t>(last_day - first_day + 1); }
};

struct LabeledEvent {
    std::string rumor_id;
    annotation::Label label;
    Timestamp created_at;
};

struct DailySeries {
    std::string rumor_id;
    annotation::Label label;  // rumor or clarification
    std::int64_t first_day = 0;
    std::vector<std::size_t> counts;  // one per day of the range

    std::size_t total() const;
};

struct Binned {
    std::vector<DailySeries> series;  // per rumor id (sorted): rumor, clarification
    std::size_t out_of_range = 0;
};

// The range spanned by the events, or nullopt without events.
std::optional<DateRange> span(const std::vector<LabeledEvent>& events);

// UTC-day bins for the rumor and clarification classes of every rumor id in
// `rumor_ids` (plus any that appear in events), zero-filled over `range`.
// Events labeled other are ignored; events outside the range are counted.
Binned bin_daily(const std::vector<LabeledEvent>& events, const DateRange& range,
                 const std::vector<std::string>& rumor_ids = {});

// Product-moment correlation; absent for unequal or too-short inputs, or
// when either series is constant.
std::optional<double> pearson(const std::vector<double>& a, const std::vector<double>& b);
std::optional<double> pearson(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

std::string series_to_csv(const DailySeries& rumor, const DailySeries& clarification);

struct CorrelationRow {
    std::string rumor_id;
    std::size_t rumor_total = 0;
    std::size_t clarification_total = 0;
    std::optional<double> r;
};

std::vector<CorrelationRow> correlations(const Binned& binned);
std::string correlations_to_csv(const std::vector<CorrelationRow>& rows);

// Static line chart of one rumor's two series.
std::string plot_svg(const DailySeries& rumor, const DailySeries& clarification, const std::optional<double>& r);

}  // namespace rumortrack::timeline
