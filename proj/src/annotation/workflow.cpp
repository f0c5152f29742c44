#include "annotation/workflow.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

#include "util/error.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

namespace rumortrack::annotation {

std::vector<std::string> sample_candidates(std::vector<Hit> hits, std::size_t cap, std::size_t head,
                                           std::uint64_t seed) {
    if (head > cap)
        fail(ErrorKind::Config, "sampling head (" + std::to_string(head) + ") exceeds cap (" + std::to_string(cap) + ")");
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return std::tie(b.retweet_count, a.created_at, a.id) < std::tie(a.retweet_count, b.created_at, b.id);
    });
    std::vector<std::string> out;
    if (hits.size() <= cap) {
        for (auto& h : hits) out.push_back(std::move(h.id));
        return out;
    }
    for (std::size_t i = 0; i < head; ++i) out.push_back(hits[i].id);

    std::vector<std::size_t> rest(hits.size() - head);
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = head + i;
    Rng rng(seed);
    // Partial Fisher-Yates: the first `want` slots end up as the sample.
    const std::size_t want = cap - head;
    for (std::size_t i = 0; i < want; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_below(rng, rest.size() - i));
        std::swap(rest[i], rest[j]);
    }
    rest.resize(want);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i : rest) out.push_back(hits[i].id);
    return out;
}

Propagation propagate(const std::vector<Resolution>& resolutions, const std::vector<corpus::DuplicateGroup>& groups) {
    std::unordered_map<std::string, const corpus::DuplicateGroup*> by_rep;
    for (const auto& g : groups) by_rep.emplace(g.representative, &g);

    Propagation out;
    out.summary.candidate_groups = resolutions.size();
    for (const auto& r : resolutions) {
        const auto it = by_rep.find(r.message_id);
        if (it == by_rep.end())
            fail(ErrorKind::InvalidArgument, "'" + r.message_id + "' is not a duplicate-group representative");
        const auto& members = it->second->members;
        if (!r.resolved) {
            ++out.summary.unresolved_groups;
            out.summary.unlabeled_messages += members.size();
            continue;
        }
        ++out.summary.unique[*r.label];
        out.summary.propagated[*r.label] += members.size();
        for (const auto& m : members) out.labeled.push_back({m, r.message_id, *r.label});
    }
    std::sort(out.labeled.begin(), out.labeled.end(),
              [](const LabeledMessage& a, const LabeledMessage& b) { return a.message_id < b.message_id; });
    return out;
}

std::map<std::string, Label> label_map(const std::vector<LabeledMessage>& labeled) {
    std::map<std::string, Label> out;
    for (const auto& l : labeled) out[l.message_id] = l.label;
    return out;
}

std::string labels_to_tsv(const std::vector<LabeledMessage>& labeled) {
    std::string out = "message_id\trepresentative\tlabel\n";
    for (const auto& l : labeled) {
        out += l.message_id + '\t' + l.representative + '\t';
        out += to_string(l.label);
        out += '\n';
    }
    return out;
}

std::vector<LabeledMessage> labels_from_tsv(const std::string& content) {
    std::vector<LabeledMessage> out;
    const auto lines = split(content, '\n');
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto cols = split(lines[i], '\t');
        const auto label = cols.size() == 3 ? parse_label(cols[2]) : std::nullopt;
        if (!label) fail(ErrorKind::Parse, "labels line " + std::to_string(i + 1) + ": expected id, representative, label");
        out.push_back({cols[0], cols[1], *label});
    }
    return out;
}

std::string resolutions_to_tsv(const std::vector<Resolution>& resolutions) {
    std::string out = "message_id\tresolved\tlabel\trumor\tclarification\tother\tvalid_judgments\tgold\n";
    for (const auto& r : resolutions) {
        out += r.message_id;
        out += r.resolved ? "\t1\t" : "\t0\t";
        if (r.label) out += to_string(*r.label);
        for (Label l : kLabels) out += '\t' + std::to_string(r.tally[l]);
        out += '\t' + std::to_string(r.valid_judgments);
        out += r.gold ? "\t1\n" : "\t0\n";
    }
    return out;
}

namespace {

std::string one_line(std::string s) {
    for (char& c : s) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

}  // namespace

std::string export_task(const AnnotationTask& task, const std::map<std::string, std::string>& texts) {
    std::unordered_map<std::string, Label> gold;
    for (const auto& g : task.definition().gold) gold.emplace(g.message_id, g.label);
    std::string out = "message_id\tis_gold\tgold_label\ttext\n";
    for (const auto& id : task.definition().candidates) {
        const auto g = gold.find(id);
        const auto t = texts.find(id);
        out += id;
        out += g == gold.end() ? "\t0\t" : "\t1\t" + std::string(to_string(g->second));
        out += '\t';
        if (t != texts.end()) out += one_line(t->second);
        out += '\n';
    }
    return out;
}

ImportReport import_judgments(AnnotationTask& task, const std::string& content) {
    ImportReport report;
    const auto lines = split(content, '\n');
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty() || line[0] == '#') continue;
        const auto cols = split(line, '\t');
        if (i == 0 && !cols.empty() && cols[0] == "worker_id") continue;
        const std::string where = "line " + std::to_string(i + 1) + ": ";
        if (cols.size() < 3 || cols.size() > 4) {
            ++report.rejected;
            report.problems.push_back(where + "expected worker_id, message_id, label[, token]");
            continue;
        }
        const auto label = parse_label(cols[2]);
        if (!label) {
            ++report.rejected;
            report.problems.push_back(where + "unknown label '" + cols[2] + "'");
            continue;
        }
        if (!task.contains(cols[1])) {
            ++report.rejected;
            report.problems.push_back(where + "message '" + cols[1] + "' is not in the task");
            continue;
        }
        const auto r = task.submit_judgment(cols[0], cols[1], *label, cols.size() == 4 ? cols[3] : std::string{});
        if (r.replayed) {
            ++report.replayed;
        } else if (r.status == SubmitStatus::Accepted) {
            ++report.accepted;
        } else {
            ++report.rejected;
            report.problems.push_back(where + r.reason);
        }
    }
    return report;
}

}  // namespace rumortrack::annotation
