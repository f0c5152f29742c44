#include "learn/dataset.hpp"

#include <algorithm>

#include "util/error.hpp"

namespace rumortrack::learn {

std::string_view class_name(int c) { return c == kRumor ? "rumor" : "non_rumor"; }

int parse_class(std::string_view label) {
    if (label == "rumor") return kRumor;
    if (label == "non_rumor" || label == "clarification" || label == "other") return kNonRumor;
    fail(ErrorKind::Parse, "unknown class label '" + std::string(label) + "'");
}

std::size_t Dataset::count(int cls) const { return static_cast<std::size_t>(std::count(y.begin(), y.end(), cls)); }

Dataset Dataset::subset(const std::vector<std::size_t>& rows) const {
    Dataset d;
    d.names = names;
    d.nominal = nominal;
    d.x.reserve(rows.size());
    for (std::size_t r : rows) {
        d.x.push_back(x.at(r));
        d.y.push_back(y.at(r));
        d.topic.push_back(topic.empty() ? std::string{} : topic.at(r));
    }
    return d;
}

Dataset from_matrix(const std::vector<features::MatrixRow>& rows) {
    Dataset d;
    for (const auto& s : features::kSlots) {
        d.names.emplace_back(s.name);
        d.nominal.push_back(features::is_nominal(s.kind));
    }
    for (const auto& r : rows) {
        if (!r.label) continue;
        d.x.emplace_back(r.values.begin(), r.values.end());
        d.y.push_back(parse_class(*r.label));
        d.topic.push_back(r.topic.value_or(""));
    }
    return d;
}

void require_two_classes(const Dataset& d, const std::string& what) {
    if (d.count(kRumor) == 0 || d.count(kNonRumor) == 0)
        fail(ErrorKind::InvalidArgument, what + ": dataset needs both rumor and non_rumor rows");
}

}  // namespace rumortrack::learn
