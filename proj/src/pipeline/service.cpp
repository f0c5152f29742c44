#include "pipeline/service.hpp"

#include <algorithm>

#include "annotation/workflow.hpp"
#include "httplib.h"
#include "index/query.hpp"
#include "json.hpp"
#include "pipeline/views.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

namespace rumortrack::pipeline {

using nlohmann::json;

namespace {

const char* code_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::Io: return "io";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Config: return "config";
        case ErrorKind::InvalidArgument: return "invalid_argument";
        case ErrorKind::NotFound: return "not_found";
        case ErrorKind::State: return "state";
    }
    return "internal";
}

int http_status(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotFound: return 404;
        case ErrorKind::State: return 409;
        case ErrorKind::Io: return 500;
        default: return 400;
    }
}

Response ok(const json& j) { return {200, j.dump()}; }

Response error_response(int status, const std::string& code, const std::string& message,
                        std::optional<std::size_t> position = std::nullopt) {
    json e{{"code", code}, {"message", message}};
    if (position) e["position"] = *position;
    return {status, json{{"error", e}}.dump()};
}

json parse_body(const std::string& body) {
    try {
        auto j = json::parse(body);
        if (!j.is_object()) fail(ErrorKind::InvalidArgument, "request body must be a JSON object");
        return j;
    } catch (const json::exception&) {
        fail(ErrorKind::Parse, "request body is not valid JSON");
    }
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) fail(ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(ErrorKind::InvalidArgument, std::string("field '") + key + "' has the wrong type");
    }
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    for (auto& p : split(path, '/')) {
        if (!p.empty()) parts.push_back(p);
    }
    return parts;
}

}  // namespace

Service::Service(Config config, std::filesystem::path data_dir)
    : config_(std::move(config)), data_dir_(std::move(data_dir)) {
    auto ingested = corpus::ingest_file(config_.corpus, config_.schema);
    state_ = build_corpus_state(filter_language(ingested.accepted, config_.language));
    for (const auto& m : state_.messages) texts_[m.id] = m.text;

    const auto dir = data_dir_ / "tasks";
    if (std::filesystem::is_directory(dir)) {
        std::vector<std::filesystem::path> logs;
        for (const auto& e : std::filesystem::directory_iterator(dir)) {
            if (e.path().extension() == ".jsonl") logs.push_back(e.path());
        }
        std::sort(logs.begin(), logs.end());
        for (const auto& p : logs) {
            auto t = annotation::AnnotationTask::replay(read_file(p));
            const auto id = t.definition().task_id;
            const auto rumor = t.definition().rumor_id;
            tasks_.emplace(id, TaskEntry{rumor, std::make_unique<annotation::SharedTask>(std::move(t))});
        }
    }
}

Service::~Service() = default;

Response Service::handle(const std::string& method, const std::string& path,
                         const std::map<std::string, std::string>& params, const std::string& body) {
    try {
        const auto p = split_path(path);
        const std::size_t n = p.size();
        if (method == "GET" && n == 1 && p[0] == "health") return ok({{"status", "ok"}});
        if (method == "POST" && n == 2 && p[0] == "queries" && p[1] == "evaluate") return evaluate(body);
        if (method == "GET" && n == 1 && p[0] == "rumors") return rumors();
        if (method == "GET" && n == 3 && p[0] == "rumors" && p[2] == "timeline") return timeline(p[1]);
        if (method == "POST" && n == 1 && p[0] == "tasks") return create_task(body);
        if (method == "GET" && n == 3 && p[0] == "tasks" && p[2] == "next") return next(p[1], params);
        if (method == "POST" && n == 3 && p[0] == "tasks" && p[2] == "judgments") return submit(p[1], body);
        if (method == "GET" && n == 3 && p[0] == "tasks" && p[2] == "stats") return task_stats(p[1]);
        if (method == "GET" && n == 3 && p[0] == "runs" && p[2] == "report") return report(p[1]);
        return error_response(404, "not_found", "no route for " + method + " " + path);
    } catch (const index::QuerySyntaxError& e) {
        return error_response(400, "query_syntax", e.message(), e.position());
    } catch (const Error& e) {
        return error_response(http_status(e.kind()), code_of(e.kind()), e.what());
    } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
    }
}

Response Service::evaluate(const std::string& body) {
    const auto j = parse_body(body);
    const auto query = field<std::string>(j, "query");
    std::size_t top_k = 0;
    if (j.contains("top_k")) top_k = field<std::size_t>(j, "top_k");
    const auto a = answer_query(state_, query, top_k);
    return ok({{"query", a.canonical}, {"ids", a.ids}, {"count", a.count}});
}

Response Service::rumors() {
    json out = json::array();
    for (const auto& r : config_.rumors) {
        const auto a = answer_query(state_, r.query, 0);
        out.push_back({{"id", r.id},
                       {"description", r.description},
                       {"provenance", r.provenance},
                       {"query", r.query},
                       {"canonical_query", a.canonical},
                       {"hits", a.count}});
    }
    return ok({{"rumors", out}});
}

Response Service::timeline(const std::string& rumor_id) {
    const bool known = std::any_of(config_.rumors.begin(), config_.rumors.end(),
                                   [&](const RumorConfig& r) { return r.id == rumor_id; });
    if (!known) fail(ErrorKind::NotFound, "unknown rumor '" + rumor_id + "'");
    const auto dir = data_dir_ / config_.run_id / "timeline";
    const auto series = dir / (rumor_id + ".csv");
    if (!std::filesystem::exists(series)) fail(ErrorKind::NotFound, "no timeline for '" + rumor_id + "'; run the pipeline first");
    json dates = json::array(), rumor = json::array(), clar = json::array();
    const auto lines = read_lines(series);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto c = split(lines[i], ',');
        if (c.size() != 3) fail(ErrorKind::Parse, series.string() + ": malformed row");
        dates.push_back(c[0]);
        rumor.push_back(parse_int(c[1]));
        clar.push_back(parse_int(c[2]));
    }
    json r = nullptr;
    const auto corr = dir / "correlations.csv";
    if (std::filesystem::exists(corr)) {
        for (const auto& line : read_lines(corr)) {
            const auto c = split(line, ',');
            if (c.size() == 4 && c[0] == rumor_id && !c[3].empty()) r = parse_double(c[3]);
        }
    }
    return ok({{"rumor_id", rumor_id}, {"dates", dates}, {"rumor", rumor}, {"clarification", clar}, {"r", r}});
}

Response Service::create_task(const std::string& body) {
    const auto j = parse_body(body);
    annotation::TaskDefinition def;
    def.rumor_id = field<std::string>(j, "rumor_id");
    const auto rumor = std::find_if(config_.rumors.begin(), config_.rumors.end(),
                                    [&](const RumorConfig& r) { return r.id == def.rumor_id; });
    if (rumor == config_.rumors.end()) fail(ErrorKind::NotFound, "unknown rumor '" + def.rumor_id + "'");
    def.task_id = j.contains("task_id") ? field<std::string>(j, "task_id") : "task-" + def.rumor_id;
    if (def.task_id.empty() || def.task_id.find_first_of("/\\. \t") != std::string::npos)
        fail(ErrorKind::InvalidArgument, "task_id must be a plain name");
    def.instruction = j.contains("instruction") ? field<std::string>(j, "instruction") : rumor->description;
    def.config = config_.annotation.task;
    if (j.contains("config")) {
        const auto& c = j["config"];
        if (!c.is_object()) fail(ErrorKind::InvalidArgument, "config must be an object");
        for (const auto& [k, v] : c.items()) {
            if (!v.is_number()) fail(ErrorKind::InvalidArgument, "config." + k + " must be a number");
            if (k == "min_gold") def.config.min_gold = v.get<std::size_t>();
            else if (k == "min_accuracy_percent") def.config.min_accuracy_percent = v.get<int>();
            else if (k == "min_gold_attempts") def.config.min_gold_attempts = v.get<std::size_t>();
            else if (k == "min_judgments") def.config.min_judgments = v.get<std::size_t>();
            else if (k == "max_judgments") def.config.max_judgments = v.get<std::size_t>();
            else if (k == "gold_interval") def.config.gold_interval = v.get<std::size_t>();
            else fail(ErrorKind::InvalidArgument, "unknown config key '" + k + "'");
        }
    }
    if (j.contains("candidates")) {
        def.candidates = field<std::vector<std::string>>(j, "candidates");
        for (const auto& id : def.candidates) {
            if (!state_.position.count(id)) fail(ErrorKind::NotFound, "unknown message '" + id + "'");
        }
    } else {
        const auto hits = unique_hits(state_, answer_query(state_, rumor->query, 0).ids);
        def.candidates = annotation::sample_candidates(hits, config_.annotation.cap, config_.annotation.head,
                                                       derive_seed(config_.seed, "sample:" + def.rumor_id));
    }
    if (j.contains("gold")) {
        if (!j["gold"].is_array()) fail(ErrorKind::InvalidArgument, "gold must be a list");
        for (const auto& g : j["gold"]) {
            const auto label = annotation::parse_label(field<std::string>(g, "label"));
            if (!label) fail(ErrorKind::InvalidArgument, "gold label must be rumor, clarification or other");
            def.gold.push_back({field<std::string>(g, "message_id"), *label});
        }
    }
    auto t = annotation::AnnotationTask::create(def);
    std::lock_guard<std::mutex> lock(tasks_mutex_);
    if (tasks_.count(def.task_id)) fail(ErrorKind::State, "task '" + def.task_id + "' already exists");
    persist(def.task_id, t);
    const std::size_t candidates = def.candidates.size(), gold = def.gold.size();
    tasks_.emplace(def.task_id, TaskEntry{def.rumor_id, std::make_unique<annotation::SharedTask>(std::move(t))});
    return ok({{"task_id", def.task_id}, {"rumor_id", def.rumor_id}, {"candidates", candidates}, {"gold", gold}});
}

Service::TaskEntry& Service::task(const std::string& task_id) {
    std::lock_guard<std::mutex> lock(tasks_mutex_);
    const auto it = tasks_.find(task_id);
    if (it == tasks_.end()) fail(ErrorKind::NotFound, "unknown task '" + task_id + "'");
    return it->second;
}

void Service::persist(const std::string& task_id, const annotation::AnnotationTask& t) {
    write_file(data_dir_ / "tasks" / (task_id + ".jsonl"), t.event_log());
}

Response Service::next(const std::string& task_id, const std::map<std::string, std::string>& params) {
    const auto w = params.find("worker");
    if (w == params.end() || w->second.empty()) fail(ErrorKind::InvalidArgument, "missing query parameter 'worker'");
    auto& entry = task(task_id);
    return entry.task->with_lock([&](annotation::AnnotationTask& t) {
        json out{{"task_id", task_id}, {"worker", w->second}};
        const auto item = t.next_item(w->second);
        if (item) {
            out["message_id"] = *item;
            const auto it = texts_.find(*item);
            out["text"] = it == texts_.end() ? "" : it->second;
            out["reason"] = nullptr;
        } else {
            out["message_id"] = nullptr;
            out["text"] = nullptr;
            out["reason"] = t.closed() ? "closed" : t.worker(w->second).banned ? "banned" : "done";
        }
        return ok(out);
    });
}

Response Service::submit(const std::string& task_id, const std::string& body) {
    const auto j = parse_body(body);
    const auto worker = field<std::string>(j, "worker");
    const auto message_id = field<std::string>(j, "message_id");
    const auto label = annotation::parse_label(field<std::string>(j, "label"));
    if (!label) fail(ErrorKind::InvalidArgument, "label must be rumor, clarification or other");
    const std::string token = j.contains("token") ? field<std::string>(j, "token") : "";
    if (worker.empty()) fail(ErrorKind::InvalidArgument, "worker must not be empty");
    auto& entry = task(task_id);
    return entry.task->with_lock([&](annotation::AnnotationTask& t) {
        const auto r = t.submit_judgment(worker, message_id, *label, token);
        if (r.status == annotation::SubmitStatus::Accepted && !r.replayed) persist(task_id, t);
        return ok(submit_json(r));
    });
}

Response Service::task_stats(const std::string& task_id) {
    auto& entry = task(task_id);
    return entry.task->with_lock([&](annotation::AnnotationTask& t) {
        json workers = json::array();
        for (const auto& w : t.workers()) {
            workers.push_back({{"worker", w.worker_id},
                               {"gold_attempts", w.gold_attempts},
                               {"gold_correct", w.gold_correct},
                               {"banned", w.banned}});
        }
        auto out = task_stats_json(t.stats());
        out["task_id"] = task_id;
        out["rumor_id"] = entry.rumor_id;
        out["closed"] = t.closed();
        out["worker_records"] = workers;
        return ok(out);
    });
}

Response Service::report(const std::string& run_id) {
    if (run_id.find_first_of("/\\") != std::string::npos || run_id == "." || run_id == "..")
        fail(ErrorKind::InvalidArgument, "bad run id");
    const auto p = data_dir_ / run_id / "report.json";
    if (!std::filesystem::exists(p)) fail(ErrorKind::NotFound, "no report for run '" + run_id + "'");
    return {200, read_file(p)};
}

void Service::listen(const std::string& host, int port) {
    {
        std::lock_guard<std::mutex> lock(server_mutex_);
        if (stopped_) return;
        server_ = std::make_unique<httplib::Server>();
        auto route = [this](const httplib::Request& req, httplib::Response& res) {
            std::map<std::string, std::string> params;
            for (const auto& [k, v] : req.params) params.emplace(k, v);
            const auto r = handle(req.method, req.path, params, req.body);
            res.status = r.status;
            res.set_content(r.body, "application/json");
        };
        const std::string any = ".*";
        server_->Get(any, route);
        server_->Post(any, route);
        server_->Put(any, route);
        server_->Delete(any, route);
        const int p = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
        if (p < 0) fail(ErrorKind::Io, "cannot bind " + host + ":" + std::to_string(port));
        bound_port_ = p;
    }
    server_->listen_after_bind();
}

void Service::stop() {
    std::lock_guard<std::mutex> lock(server_mutex_);
    stopped_ = true;
    if (server_) server_->stop();
}

}  // namespace rumortrack::pipeline
