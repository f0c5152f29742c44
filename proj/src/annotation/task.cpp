#include "annotation/task.hpp"

#include <algorithm>

#include "json.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

namespace rumortrack::annotation {

using nlohmann::json;

AnnotationTask::AnnotationTask(TaskDefinition def) : def_(std::move(def)) {}

AnnotationTask AnnotationTask::create(TaskDefinition def) {
    const auto& cfg = def.config;
    if (cfg.min_judgments == 0 || cfg.max_judgments < cfg.min_judgments)
        fail(ErrorKind::Config, "annotation: need 0 < min_judgments <= max_judgments");
    if (cfg.min_accuracy_percent < 0 || cfg.min_accuracy_percent > 100)
        fail(ErrorKind::Config, "annotation: accuracy threshold must be a percentage");
    if (def.gold.size() < cfg.min_gold) {
        fail(ErrorKind::InvalidArgument, "task " + def.task_id + ": gold set has " + std::to_string(def.gold.size()) +
                                             " items, at least " + std::to_string(cfg.min_gold) + " required");
    }
    AnnotationTask task(std::move(def));
    for (std::size_t i = 0; i < task.def_.candidates.size(); ++i) {
        if (!task.candidate_pos_.emplace(task.def_.candidates[i], i).second)
            fail(ErrorKind::InvalidArgument, "duplicate candidate '" + task.def_.candidates[i] + "'");
    }
    for (const auto& g : task.def_.gold) {
        if (!task.contains(g.message_id))
            fail(ErrorKind::InvalidArgument, "gold item '" + g.message_id + "' is not a candidate");
        if (!task.gold_.emplace(g.message_id, g.label).second)
            fail(ErrorKind::InvalidArgument, "duplicate gold item '" + g.message_id + "'");
    }
    return task;
}

void AnnotationTask::close() { closed_ = true; }

bool AnnotationTask::valid(const Judgment& j) const {
    const auto it = workers_.find(j.worker_id);
    return it == workers_.end() || !it->second.banned;
}

SubmitResult AnnotationTask::submit_judgment(const std::string& worker_id, const std::string& message_id, Label label,
                                             const std::string& token) {
    if (!token.empty()) {
        if (auto it = tokens_.find(token); it != tokens_.end()) {
            SubmitResult again = it->second;
            again.replayed = true;
            again.worker = worker(worker_id);
            return again;
        }
    }
    if (!contains(message_id))
        fail(ErrorKind::NotFound, "message '" + message_id + "' is not part of task " + def_.task_id);

    SubmitResult result;
    auto& record = workers_[worker_id];
    record.worker_id = worker_id;
    if (closed_) {
        result.status = SubmitStatus::RejectedClosed;
        result.reason = "task is closed";
        result.worker = record;
        return result;
    }
    if (record.banned) {
        result.status = SubmitStatus::RejectedBanned;
        result.reason = "worker is banned from this task";
        result.worker = record;
        return result;
    }
    auto& judged = judged_by_worker_[worker_id];
    if (judged.count(message_id)) {
        result.status = SubmitStatus::RejectedDuplicate;
        result.reason = "worker already judged this message";
        result.worker = record;
        return result;
    }

    Judgment j{judgments_.size() + 1, worker_id, message_id, label, token};
    judged.insert(message_id);
    by_message_[message_id].push_back(judgments_.size());
    judgments_.push_back(j);
    result.seq = j.seq;

    if (const auto g = gold_.find(message_id); g != gold_.end()) {
        ++record.gold_attempts;
        if (g->second == label) ++record.gold_correct;
        const auto& cfg = def_.config;
        const bool below = 100 * record.gold_correct < static_cast<std::size_t>(cfg.min_accuracy_percent) * record.gold_attempts;
        if (record.gold_attempts >= cfg.min_gold_attempts && below) {
            record.banned = true;
            result.newly_banned = true;
            bans_.push_back({worker_id, j.seq});
        }
    }
    result.worker = record;
    if (!token.empty()) tokens_[token] = result;
    return result;
}

std::optional<std::string> AnnotationTask::next_item(const std::string& worker_id) const {
    if (closed_) return std::nullopt;
    const auto w = workers_.find(worker_id);
    if (w != workers_.end() && w->second.banned) return std::nullopt;
    const auto judged_it = judged_by_worker_.find(worker_id);
    static const std::set<std::string> kNone;
    const auto& judged = judged_it == judged_by_worker_.end() ? kNone : judged_it->second;

    const std::optional<std::string> work = [&]() -> std::optional<std::string> {
        const std::string* best = nullptr;
        std::size_t best_votes = 0;
        for (const auto& id : def_.candidates) {
            if (gold_.count(id) || judged.count(id)) continue;
            const Resolution r = resolve(id);
            if (r.resolved || !r.needs_more) continue;
            if (!best || r.valid_judgments < best_votes) {
                best = &id;
                best_votes = r.valid_judgments;
            }
        }
        if (!best) return std::nullopt;
        return *best;
    }();
    if (!work) return std::nullopt;

    const std::size_t served = judged.size();
    const std::size_t every = def_.config.gold_interval;
    if (every > 0 && !def_.gold.empty() && (served + 1) % (every + 1) == 0) {
        std::vector<const GoldItem*> order;
        for (const auto& g : def_.gold) order.push_back(&g);
        // Per-worker rotation so different workers meet gold items in different orders.
        std::sort(order.begin(), order.end(), [&](const GoldItem* a, const GoldItem* b) {
            return fnv1a64(worker_id + '\x1f' + a->message_id) < fnv1a64(worker_id + '\x1f' + b->message_id);
        });
        for (const GoldItem* g : order) {
            if (!judged.count(g->message_id)) return g->message_id;
        }
    }
    return work;
}

Resolution AnnotationTask::resolve(const std::string& message_id) const {
    if (!contains(message_id))
        fail(ErrorKind::NotFound, "message '" + message_id + "' is not part of task " + def_.task_id);
    Resolution r;
    r.message_id = message_id;
    std::vector<Label> votes;
    if (const auto it = by_message_.find(message_id); it != by_message_.end()) {
        for (std::size_t idx : it->second) {
            if (valid(judgments_[idx])) votes.push_back(judgments_[idx].label);
        }
    }
    r.valid_judgments = votes.size();

    if (const auto g = gold_.find(message_id); g != gold_.end()) {
        r.gold = true;
        r.resolved = true;
        r.label = g->second;
        for (Label v : votes) ++r.tally[v];
        return r;
    }

    const auto& cfg = def_.config;
    Tally prefix;
    for (std::size_t n = 1; n <= votes.size(); ++n) {
        ++prefix[votes[n - 1]];
        if (n < cfg.min_judgments) continue;
        for (Label l : kLabels) {
            if (2 * prefix[l] > n) {
                r.resolved = true;
                r.label = l;
            }
        }
        if (!r.resolved && n >= cfg.max_judgments) {
            r.resolved = true;
            r.label = Label::Other;
        }
        if (r.resolved) {
            r.tally = prefix;
            return r;
        }
    }
    r.tally = prefix;
    r.needs_more = true;
    return r;
}

std::vector<Resolution> AnnotationTask::resolve_all() const {
    std::vector<Resolution> out;
    out.reserve(def_.candidates.size());
    for (const auto& id : def_.candidates) out.push_back(resolve(id));
    return out;
}

std::optional<double> AnnotationTask::agreement() const {
    std::size_t matching = 0;
    std::size_t total = 0;
    for (const auto& id : def_.candidates) {
        if (gold_.count(id)) continue;
        const Resolution r = resolve(id);
        if (!r.resolved) continue;
        for (std::size_t idx : by_message_.at(id)) {
            const auto& j = judgments_[idx];
            if (!valid(j)) continue;
            ++total;
            if (j.label == *r.label) ++matching;
        }
    }
    if (total == 0) return std::nullopt;
    return static_cast<double>(matching) / static_cast<double>(total);
}

TaskStats AnnotationTask::stats() const {
    TaskStats s;
    s.candidates = def_.candidates.size();
    s.gold = def_.gold.size();
    s.judgments = judgments_.size();
    for (const auto& j : judgments_) {
        if (valid(j)) ++s.valid_judgments;
    }
    s.workers = workers_.size();
    for (const auto& [_, w] : workers_) {
        if (w.banned) ++s.banned_workers;
    }
    for (const auto& r : resolve_all()) {
        if (r.resolved) {
            ++s.resolved;
            ++s.labels[*r.label];
        } else {
            ++s.unresolved;
        }
    }
    s.agreement = agreement();
    return s;
}

WorkerRecord AnnotationTask::worker(const std::string& worker_id) const {
    if (const auto it = workers_.find(worker_id); it != workers_.end()) return it->second;
    WorkerRecord w;
    w.worker_id = worker_id;
    return w;
}

std::vector<WorkerRecord> AnnotationTask::workers() const {
    std::vector<WorkerRecord> out;
    for (const auto& [_, w] : workers_) out.push_back(w);
    return out;
}

namespace {

json definition_json(const TaskDefinition& d) {
    json gold = json::array();
    for (const auto& g : d.gold) gold.push_back({{"message_id", g.message_id}, {"label", to_string(g.label)}});
    const auto& c = d.config;
    return {{"task_id", d.task_id},
            {"rumor_id", d.rumor_id},
            {"instruction", d.instruction},
            {"candidates", d.candidates},
            {"gold", gold},
            {"config",
             {{"min_gold", c.min_gold},
              {"min_accuracy_percent", c.min_accuracy_percent},
              {"min_gold_attempts", c.min_gold_attempts},
              {"min_judgments", c.min_judgments},
              {"max_judgments", c.max_judgments},
              {"gold_interval", c.gold_interval}}}};
}

TaskDefinition definition_from_json(const json& j) {
    TaskDefinition d;
    d.task_id = j.at("task_id").get<std::string>();
    d.rumor_id = j.at("rumor_id").get<std::string>();
    d.instruction = j.at("instruction").get<std::string>();
    d.candidates = j.at("candidates").get<std::vector<std::string>>();
    for (const auto& g : j.at("gold")) {
        const auto label = parse_label(g.at("label").get<std::string>());
        if (!label) fail(ErrorKind::Parse, "unknown gold label");
        d.gold.push_back({g.at("message_id").get<std::string>(), *label});
    }
    const auto& c = j.at("config");
    d.config.min_gold = c.at("min_gold").get<std::size_t>();
    d.config.min_accuracy_percent = c.at("min_accuracy_percent").get<int>();
    d.config.min_gold_attempts = c.at("min_gold_attempts").get<std::size_t>();
    d.config.min_judgments = c.at("min_judgments").get<std::size_t>();
    d.config.max_judgments = c.at("max_judgments").get<std::size_t>();
    d.config.gold_interval = c.at("gold_interval").get<std::size_t>();
    return d;
}

}  // namespace

std::string AnnotationTask::event_log() const {
    std::string out = json{{"type", "create"}, {"task", definition_json(def_)}}.dump() + '\n';
    std::size_t ban = 0;
    for (const auto& j : judgments_) {
        json e{{"type", "judgment"},
               {"seq", j.seq},
               {"worker", j.worker_id},
               {"message", j.message_id},
               {"label", to_string(j.label)}};
        if (!j.token.empty()) e["token"] = j.token;
        out += e.dump() + '\n';
        while (ban < bans_.size() && bans_[ban].after_seq == j.seq) {
            out += json{{"type", "ban"}, {"worker", bans_[ban].worker_id}, {"after_seq", j.seq}}.dump() + '\n';
            ++ban;
        }
    }
    if (closed_) out += json{{"type", "close"}}.dump() + '\n';
    return out;
}

AnnotationTask AnnotationTask::replay(const std::string& event_log) {
    std::optional<AnnotationTask> task;
    std::size_t expected_bans = 0;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < event_log.size()) {
        auto end = event_log.find('\n', start);
        if (end == std::string::npos) end = event_log.size();
        const std::string line = event_log.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;
        json e;
        try {
            e = json::parse(line);
        } catch (const json::exception& ex) {
            fail(ErrorKind::Parse, "event log line " + std::to_string(line_no) + ": " + ex.what());
        }
        try {
            const std::string type = e.value("type", "");
            if (type == "create") {
                if (task) fail(ErrorKind::Parse, "event log: second create event");
                task = AnnotationTask::create(definition_from_json(e.at("task")));
                continue;
            }
            if (!task) fail(ErrorKind::Parse, "event log: events before create");
            if (type == "judgment") {
                const auto label = parse_label(e.at("label").get<std::string>());
                if (!label) fail(ErrorKind::Parse, "event log: unknown label");
                const auto r = task->submit_judgment(e.at("worker").get<std::string>(), e.at("message").get<std::string>(),
                                                     *label, e.value("token", std::string{}));
                if (r.status != SubmitStatus::Accepted || r.seq != e.at("seq").get<std::uint64_t>())
                    fail(ErrorKind::Parse, "event log line " + std::to_string(line_no) + ": judgment does not replay");
            } else if (type == "ban") {
                if (expected_bans >= task->bans_.size() ||
                    task->bans_[expected_bans].worker_id != e.at("worker").get<std::string>())
                    fail(ErrorKind::Parse, "event log line " + std::to_string(line_no) + ": ban does not replay");
                ++expected_bans;
            } else if (type == "close") {
                task->close();
            } else {
                fail(ErrorKind::Parse, "event log: unknown event type '" + type + "'");
            }
        } catch (const json::exception& ex) {
            fail(ErrorKind::Parse, "event log line " + std::to_string(line_no) + ": " + ex.what());
        }
    }
    if (!task) fail(ErrorKind::Parse, "event log has no create event");
    if (expected_bans != task->bans_.size()) fail(ErrorKind::Parse, "event log is missing ban events");
    return std::move(*task);
}

}  // namespace rumortrack::annotation
