#include "corpus/dedup.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

#include "corpus/normalize.hpp"
#include "util/error.hpp"
#include "util/text_io.hpp"

namespace rumortrack::corpus {

const DuplicateGroup* DedupResult::group_of_representative(const std::string& id) const {
    for (const auto& g : groups) {
        if (g.representative == id) return &g;
    }
    return nullptr;
}

DedupResult dedup(const std::vector<Message>& messages) {
    DedupResult result;
    result.normalized.reserve(messages.size());

    std::unordered_map<std::string, std::vector<std::size_t>> by_text;
    std::vector<std::string> text_order;
    for (std::size_t i = 0; i < messages.size(); ++i) {
        std::string canonical = normalize(messages[i].text);
        auto [it, inserted] = by_text.try_emplace(canonical);
        if (inserted) text_order.push_back(canonical);
        it->second.push_back(i);
        result.normalized.push_back({messages[i].id, std::move(canonical), {}});
    }

    for (const auto& text : text_order) {
        const auto& idx = by_text[text];
        const auto rep = *std::min_element(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return std::tie(messages[a].created_at, messages[a].id) < std::tie(messages[b].created_at, messages[b].id);
        });
        DuplicateGroup g;
        g.representative = messages[rep].id;
        for (std::size_t i : idx) {
            g.members.push_back(messages[i].id);
            result.normalized[i].duplicate_group = g.representative;
        }
        result.groups.push_back(std::move(g));
    }

    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < messages.size(); ++i) position[messages[i].id] = i;
    std::sort(result.groups.begin(), result.groups.end(), [&](const DuplicateGroup& a, const DuplicateGroup& b) {
        const auto& ma = messages[position[a.representative]];
        const auto& mb = messages[position[b.representative]];
        return std::tie(ma.created_at, ma.id) < std::tie(mb.created_at, mb.id);
    });
    return result;
}

std::string normalized_to_tsv(const std::vector<NormalizedMessage>& rows) {
    std::string out = "message_id\tduplicate_group\tcanonical_text\n";
    for (const auto& r : rows) out += r.message_id + '\t' + r.duplicate_group + '\t' + r.canonical_text + '\n';
    return out;
}

std::vector<NormalizedMessage> normalized_from_tsv(const std::string& content) {
    std::vector<NormalizedMessage> rows;
    std::size_t start = 0;
    bool header = true;
    while (start < content.size()) {
        auto end = content.find('\n', start);
        if (end == std::string::npos) end = content.size();
        const std::string_view line(content.data() + start, end - start);
        start = end + 1;
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != 3) fail(ErrorKind::Parse, "normalized table: expected 3 columns");
        rows.push_back({cols[0], cols[2], cols[1]});
    }
    return rows;
}

std::vector<DuplicateGroup> groups_from_normalized(const std::vector<NormalizedMessage>& rows) {
    std::vector<DuplicateGroup> groups;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& r : rows) {
        auto [it, inserted] = index.try_emplace(r.duplicate_group, groups.size());
        if (inserted) groups.push_back({r.duplicate_group, {}});
        groups[it->second].members.push_back(r.message_id);
    }
    return groups;
}

}  // namespace rumortrack::corpus
