#include "timeline/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "util/error.hpp"
#include "util/text_io.hpp"

namespace rumortrack::timeline {

using annotation::Label;

std::size_t DailySeries::total() const {
    std::size_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

std::optional<DateRange> span(const std::vector<LabeledEvent>& events) {
    if (events.empty()) return std::nullopt;
    DateRange r{utc_day(events.front().created_at), utc_day(events.front().created_at)};
    for (const auto& e : events) {
        r.first_day = std::min(r.first_day, utc_day(e.created_at));
        r.last_day = std::max(r.last_day, utc_day(e.created_at));
    }
    return r;
}

Binned bin_daily(const std::vector<LabeledEvent>& events, const DateRange& range,
                 const std::vector<std::string>& rumor_ids) {
    if (range.last_day < range.first_day) fail(ErrorKind::InvalidArgument, "date range ends before it starts");
    std::set<std::string> ids(rumor_ids.begin(), rumor_ids.end());
    for (const auto& e : events) ids.insert(e.rumor_id);

    Binned out;
    std::map<std::pair<std::string, Label>, std::size_t> slot;
    for (const auto& id : ids) {
        for (Label l : {Label::Rumor, Label::Clarification}) {
            slot[{id, l}] = out.series.size();
            out.series.push_back({id, l, range.first_day, std::vector<std::size_t>(range.days(), 0)});
        }
    }
    for (const auto& e : events) {
        if (e.label == Label::Other) continue;
        const auto day = utc_day(e.created_at);
        if (day < range.first_day || day > range.last_day) {
            ++out.out_of_range;
            continue;
        }
        ++out.series[slot.at({e.rumor_id, e.label})].counts[static_cast<std::size_t>(day - range.first_day)];
    }
    return out;
}

std::optional<double> pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    if (n != b.size() || n < 2) return std::nullopt;
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

std::optional<double> pearson(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return pearson(std::vector<double>(a.begin(), a.end()), std::vector<double>(b.begin(), b.end()));
}

std::string series_to_csv(const DailySeries& rumor, const DailySeries& clarification) {
    if (rumor.counts.size() != clarification.counts.size() || rumor.first_day != clarification.first_day)
        fail(ErrorKind::InvalidArgument, "series cover different ranges");
    std::string out = "date,rumor,clarification\n";
    for (std::size_t i = 0; i < rumor.counts.size(); ++i) {
        out += format_date(rumor.first_day + static_cast<std::int64_t>(i)) + ',' + std::to_string(rumor.counts[i]) +
               ',' + std::to_string(clarification.counts[i]) + '\n';
    }
    return out;
}

std::vector<CorrelationRow> correlations(const Binned& binned) {
    std::vector<CorrelationRow> out;
    for (std::size_t i = 0; i + 1 < binned.series.size(); i += 2) {
        const auto& r = binned.series[i];
        const auto& c = binned.series[i + 1];
        out.push_back({r.rumor_id, r.total(), c.total(), pearson(r.counts, c.counts)});
    }
    return out;
}

std::string correlations_to_csv(const std::vector<CorrelationRow>& rows) {
    std::string out = "rumor_id,rumor_total,clarification_total,pearson_r\n";
    for (const auto& r : rows) {
        out += r.rumor_id + ',' + std::to_string(r.rumor_total) + ',' + std::to_string(r.clarification_total) + ',' +
               (r.r ? format_double(*r.r) : "") + '\n';
    }
    return out;
}

std::string plot_svg(const DailySeries& rumor, const DailySeries& clarification, const std::optional<double>& r) {
    const double width = 720, height = 320, left = 50, right = 20, top = 30, bottom = 40;
    const std::size_t n = rumor.counts.size();
    std::size_t peak = 1;
    for (std::size_t i = 0; i < n; ++i) peak = std::max({peak, rumor.counts[i], clarification.counts[i]});
    const double pw = width - left - right, ph = height - top - bottom;
    auto x_at = [&](std::size_t i) { return left + (n <= 1 ? pw / 2 : pw * static_cast<double>(i) / static_cast<double>(n - 1)); };
    auto y_at = [&](std::size_t v) { return top + ph - ph * static_cast<double>(v) / static_cast<double>(peak); };
    auto polyline = [&](const DailySeries& s, const char* colour) {
        std::string pts;
        for (std::size_t i = 0; i < n; ++i) {
            if (i) pts += ' ';
            pts += format_fixed(x_at(i), 2) + ',' + format_fixed(y_at(s.counts[i]), 2);
        }
        return "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"" + pts +
               "\"/>\n";
    };
    std::string title = rumor.rumor_id + " daily volume";
    title += r ? ", r = " + format_fixed(*r, 3) : ", r absent";
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"320\" viewBox=\"0 0 720 320\">\n";
    out += "<rect width=\"720\" height=\"320\" fill=\"white\"/>\n";
    out += "<text x=\"50\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";
    out += "<line x1=\"50\" y1=\"280\" x2=\"700\" y2=\"280\" stroke=\"black\"/>\n";
    out += "<line x1=\"50\" y1=\"30\" x2=\"50\" y2=\"280\" stroke=\"black\"/>\n";
    out += "<text x=\"45\" y=\"34\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           std::to_string(peak) + "</text>\n";
    if (n > 0) {
        out += "<text x=\"50\" y=\"298\" font-family=\"sans-serif\" font-size=\"11\">" + format_date(rumor.first_day) +
               "</text>\n";
        out += "<text x=\"700\" y=\"298\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               format_date(rumor.first_day + static_cast<std::int64_t>(n) - 1) + "</text>\n";
    }
    out += polyline(rumor, "#c0392b");
    out += polyline(clarification, "#2471a3");
    out += "<text x=\"560\" y=\"20\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#c0392b\">rumor</text>\n";
    out += "<text x=\"610\" y=\"20\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#2471a3\">clarification</text>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace rumortrack::timeline
