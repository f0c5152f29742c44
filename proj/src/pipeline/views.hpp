#pragma once

#include <optional>
#include <string>
#include <vector>

#include "annotation/task.hpp"
#include "annotation/workflow.hpp"
#include "json.hpp"
#include "learn/evaluate.hpp"

// JSON renderings shared by the report, the service and the C API.
namespace rumortrack::pipeline {

nlohmann::json optional_number(const std::optional<double>& v);
nlohmann::json tally_json(const annotation::Tally& t);
nlohmann::json class_metrics_json(const learn::ClassMetrics& m);
nlohmann::json eval_report_json(const learn::EvalReport& r);
nlohmann::json topic_results_json(const std::vector<learn::TopicResult>& topics);
nlohmann::json task_stats_json(const annotation::TaskStats& s);
nlohmann::json summary_json(const annotation::PropagationSummary& s);
nlohmann::json submit_json(const annotation::SubmitResult& r);
std::vector<std::string> column_names(const learn::Dataset& d, const std::vector<std::size_t>& cols);

}  // namespace rumortrack::pipeline
