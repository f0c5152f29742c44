#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "annotation/label.hpp"

namespace rumortrack::annotation {

struct AnnotationConfig {
    std::size_t min_gold = 20;
    int min_accuracy_percent = 70;  // ban when accuracy is strictly below this
    std::size_t min_gold_attempts = 5;
    std::size_t min_judgments = 3;
    std::size_t max_judgments = 5;  // still tied here -> resolved as Other
    std::size_t gold_interval = 5;  // one gold item after every N work items
};

struct GoldItem {
    std::string message_id;
    Label label;
};

struct TaskDefinition {
    std::string task_id;
    std::string rumor_id;
    std::string instruction;
    std::vector<std::string> candidates;  // unique representatives
    std::vector<GoldItem> gold;           // subset of candidates
    AnnotationConfig config;
};

struct WorkerRecord {
    std::string worker_id;
    std::size_t gold_attempts = 0;
    std::size_t gold_correct = 0;
    bool banned = false;

    double accuracy() const {
        return gold_attempts == 0 ? 1.0 : static_cast<double>(gold_correct) / static_cast<double>(gold_attempts);
    }
};

struct Judgment {
    std::uint64_t seq = 0;
    std::string worker_id;
    std::string message_id;
    Label label = Label::Other;
    std::string token;  // client idempotency token, may be empty
};

struct Resolution {
    std::string message_id;
    std::optional<Label> label;
    Tally tally;  // votes that decided the label, or all valid votes while unresolved
    std::size_t valid_judgments = 0;
    bool resolved = false;
    bool needs_more = false;  // unresolved and another judgment is wanted
    bool gold = false;
};

enum class SubmitStatus { Accepted, RejectedBanned, RejectedDuplicate, RejectedClosed };

struct SubmitResult {
    SubmitStatus status = SubmitStatus::Accepted;
    std::uint64_t seq = 0;  // sequence number of the accepted judgment
    WorkerRecord worker;
    bool newly_banned = false;
    bool replayed = false;  // answered from the idempotency table
    std::string reason;
};

struct TaskStats {
    std::size_t candidates = 0;
    std::size_t gold = 0;
    std::size_t judgments = 0;
    std::size_t valid_judgments = 0;
    std::size_t workers = 0;
    std::size_t banned_workers = 0;
    std::size_t resolved = 0;
    std::size_t unresolved = 0;
    Tally labels;
    std::optional<double> agreement;
};

// One rumor's labeling job. Not synchronized; see SharedTask.
//
// Every accepted judgment is appended to an event log; a worker whose gold
// accuracy drops strictly below the threshold (once they have at least
// min_gold_attempts gold answers) is banned and all of their judgments in the
// task stop counting. Resolution scans a message's valid judgments in
// submission order and stops at the first prefix of at least min_judgments
// votes with a strict majority (> half); at max_judgments without one the
// message resolves to Other. Gold messages resolve to their known label.
class AnnotationTask {
public:
    // Throws Error(InvalidArgument) on fewer than min_gold gold items, gold
    // outside the candidates, or duplicate candidates.
    static AnnotationTask create(TaskDefinition def);

    const TaskDefinition& definition() const { return def_; }
    bool is_gold(const std::string& message_id) const { return gold_.count(message_id) > 0; }
    bool contains(const std::string& message_id) const { return candidate_pos_.count(message_id) > 0; }
    bool closed() const { return closed_; }
    void close();

    // Throws Error(NotFound) for a message outside the task.
    SubmitResult submit_judgment(const std::string& worker_id, const std::string& message_id, Label label,
                                 const std::string& token = {});

    // Next message for the worker, or nullopt when nothing is left for them
    // (or the worker is banned). A pure function of the current state.
    std::optional<std::string> next_item(const std::string& worker_id) const;

    Resolution resolve(const std::string& message_id) const;
    std::vector<Resolution> resolve_all() const;  // candidate order

    // Share of valid judgments agreeing with the final label, pooled over
    // resolved non-gold messages. Absent when nothing is resolved.
    std::optional<double> agreement() const;
    TaskStats stats() const;

    WorkerRecord worker(const std::string& worker_id) const;
    std::vector<WorkerRecord> workers() const;
    const std::vector<Judgment>& judgments() const { return judgments_; }

    // JSON lines: a "create" event, then "judgment", "ban" and "close" events.
    std::string event_log() const;
    // Rebuilds a task by re-applying the log; throws Error(Parse) if derived
    // events (bans) in the log disagree with the replay.
    static AnnotationTask replay(const std::string& event_log);

private:
    struct BanEvent {
        std::string worker_id;
        std::uint64_t after_seq;
    };

    explicit AnnotationTask(TaskDefinition def);
    bool valid(const Judgment& j) const;

    TaskDefinition def_;
    std::unordered_map<std::string, std::size_t> candidate_pos_;
    std::unordered_map<std::string, Label> gold_;
    std::map<std::string, WorkerRecord> workers_;
    std::vector<Judgment> judgments_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_message_;
    std::unordered_map<std::string, std::set<std::string>> judged_by_worker_;
    std::unordered_map<std::string, SubmitResult> tokens_;
    std::vector<BanEvent> bans_;
    bool closed_ = false;
};

// Serializes all state transitions of one task behind a mutex.
class SharedTask {
public:
    explicit SharedTask(AnnotationTask task) : task_(std::move(task)) {}

    template <typename Fn>
    auto with_lock(Fn&& fn) {
        std::lock_guard<std::mutex> lock(mutex_);
        return fn(task_);
    }

private:
    std::mutex mutex_;
    AnnotationTask task_;
};

}  // namespace rumortrack::annotation
