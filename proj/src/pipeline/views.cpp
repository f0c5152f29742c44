#include "pipeline/views.hpp"

namespace rumortrack::pipeline {

using nlohmann::json;
using annotation::Label;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json tally_json(const annotation::Tally& t) {
    return {{"rumor", t[Label::Rumor]}, {"clarification", t[Label::Clarification]}, {"other", t[Label::Other]}};
}

json class_metrics_json(const learn::ClassMetrics& m) {
    return {{"precision", optional_number(m.precision)},
            {"recall", optional_number(m.recall)},
            {"f_measure", optional_number(m.f_measure)},
            {"support", m.support}};
}

json eval_report_json(const learn::EvalReport& r) {
    return {{"rows", r.rows},
            {"confusion", {{"actual_non_rumor", r.confusion[learn::kNonRumor]}, {"actual_rumor", r.confusion[learn::kRumor]}}},
            {"per_class", {{"rumor", class_metrics_json(r.per_class[learn::kRumor])},
                           {"non_rumor", class_metrics_json(r.per_class[learn::kNonRumor])}}},
            {"weighted", {{"precision", r.weighted_precision}, {"recall", r.weighted_recall}, {"f_measure", r.weighted_f}}}};
}

json topic_results_json(const std::vector<learn::TopicResult>& topics) {
    json out = json::array();
    for (const auto& t : topics) {
        out.push_back({{"topic", t.topic},
                       {"rows", t.rows},
                       {"rumor_share", t.rows ? static_cast<double>(t.rumor.support) / static_cast<double>(t.rows) : 0.0},
                       {"precision", optional_number(t.rumor.precision)},
                       {"recall", optional_number(t.rumor.recall)},
                       {"f_measure", optional_number(t.rumor.f_measure)},
                       {"zero_support", t.zero_support}});
    }
    return out;
}

json task_stats_json(const annotation::TaskStats& s) {
    return {{"candidates", s.candidates},
            {"gold", s.gold},
            {"judgments", s.judgments},
            {"valid_judgments", s.valid_judgments},
            {"workers", s.workers},
            {"banned_workers", s.banned_workers},
            {"resolved", s.resolved},
            {"unresolved", s.unresolved},
            {"labels", tally_json(s.labels)},
            {"agreement", optional_number(s.agreement)}};
}

json summary_json(const annotation::PropagationSummary& s) {
    return {{"unique", tally_json(s.unique)},
            {"propagated", tally_json(s.propagated)},
            {"unresolved_groups", s.unresolved_groups},
            {"unlabeled_messages", s.unlabeled_messages},
            {"candidate_groups", s.candidate_groups}};
}

json submit_json(const annotation::SubmitResult& r) {
    const char* status = "accepted";
    switch (r.status) {
        case annotation::SubmitStatus::Accepted: break;
        case annotation::SubmitStatus::RejectedBanned: status = "rejected_banned"; break;
        case annotation::SubmitStatus::RejectedDuplicate: status = "rejected_duplicate"; break;
        case annotation::SubmitStatus::RejectedClosed: status = "rejected_closed"; break;
    }
    return {{"status", status},
            {"seq", r.seq},
            {"banned", r.worker.banned},
            {"newly_banned", r.newly_banned},
            {"replayed", r.replayed},
            {"reason", r.reason}};
}

std::vector<std::string> column_names(const learn::Dataset& d, const std::vector<std::size_t>& cols) {
    std::vector<std::string> out;
    for (auto c : cols) out.push_back(d.names.at(c));
    return out;
}

}  // namespace rumortrack::pipeline
