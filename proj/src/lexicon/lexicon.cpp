#include "lexicon/lexicon.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "util/error.hpp"
#include "util/text_io.hpp"
#include "util/utf8.hpp"

namespace rumortrack::lexicon {

std::vector<std::string> lexicon_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    bool digit = false;
    auto flush = [&] {
        if (!cur.empty() && !digit) out.push_back(cur);
        cur.clear();
        digit = false;
    };
    for (char32_t cp : utf8::decode(text)) {
        if (utf8::is_space(cp)) {
            flush();
        } else if (utf8::is_digit(cp)) {
            digit = true;
            cur += static_cast<char>(cp);
        } else if (utf8::is_letter(cp)) {
            utf8::append(cur, utf8::to_lower(cp));
        }
    }
    flush();
    return out;
}

namespace {

std::map<std::string, std::size_t> count_words(const std::vector<std::string>& docs) {
    std::map<std::string, std::size_t> counts;
    for (const auto& d : docs) {
        for (auto& t : lexicon_tokens(d)) ++counts[std::move(t)];
    }
    return counts;
}

}  // namespace

std::vector<LexiconEntry> rank_words(const std::vector<std::string>& corpus_m, const std::vector<std::string>& corpus_w,
                                     bool truncate_general) {
    const auto m = count_words(corpus_m);
    auto w = count_words(corpus_w);
    if (m.empty()) fail(ErrorKind::InvalidArgument, "specialized corpus has no words");
    if (w.empty()) fail(ErrorKind::InvalidArgument, "general corpus has no words");

    if (truncate_general && w.size() > m.size()) {
        std::vector<std::pair<std::string, std::size_t>> by_freq(w.begin(), w.end());
        std::stable_sort(by_freq.begin(), by_freq.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        by_freq.resize(m.size());
        w = std::map<std::string, std::size_t>(by_freq.begin(), by_freq.end());
    }

    std::size_t m_total = 0, w_total = 0;
    for (const auto& [_, c] : m) m_total += c;
    for (const auto& [_, c] : w) w_total += c;

    std::vector<LexiconEntry> out;
    auto add = [&](const std::string& word) {
        LexiconEntry e;
        e.word = word;
        if (auto it = m.find(word); it != m.end()) e.mp = static_cast<double>(it->second) / static_cast<double>(m_total);
        if (auto it = w.find(word); it != w.end()) e.wp = static_cast<double>(it->second) / static_cast<double>(w_total);
        e.p = e.mp - e.wp;
        out.push_back(std::move(e));
    };
    for (const auto& [word, _] : m) add(word);
    for (const auto& [word, _] : w) {
        if (!m.count(word)) add(word);
    }
    std::sort(out.begin(), out.end(), [](const LexiconEntry& a, const LexiconEntry& b) {
        if (a.p != b.p) return a.p > b.p;
        return a.word < b.word;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
    return out;
}

std::vector<LexiconEntry> build_lexicon(const std::vector<std::string>& corpus_m,
                                        const std::vector<std::string>& corpus_w, const LexiconOptions& options) {
    auto ranked = rank_words(corpus_m, corpus_w, options.truncate_general);
    if (options.keep > ranked.size()) {
        fail(ErrorKind::InvalidArgument, "keep=" + std::to_string(options.keep) + " exceeds the " +
                                             std::to_string(ranked.size()) + " ranked words");
    }
    ranked.resize(options.keep);
    return ranked;
}

std::vector<LexiconEntry> build_lexicon_files(const std::filesystem::path& m, const std::filesystem::path& w,
                                              const LexiconOptions& options) {
    return build_lexicon(read_lines(m), read_lines(w), options);
}

std::string lexicon_to_tsv(const std::vector<LexiconEntry>& entries) {
    std::string out;
    for (const auto& e : entries) {
        out += e.word + '\t' + format_double(e.mp) + '\t' + format_double(e.wp) + '\t' + format_double(e.p) + '\t' +
               std::to_string(e.rank) + '\n';
    }
    return out;
}

std::vector<LexiconEntry> lexicon_from_tsv(const std::string& content) {
    std::vector<LexiconEntry> out;
    std::size_t n = 0;
    for (const auto& line : split(content, '\n')) {
        ++n;
        if (line.empty() || line[0] == '#') continue;
        const auto cols = split(line, '\t');
        if (cols.size() == 1) {
            // Plain word list.
            out.push_back({cols[0], 0.0, 0.0, 0.0, out.size() + 1});
            continue;
        }
        if (cols.size() != 5) fail(ErrorKind::Parse, "lexicon line " + std::to_string(n) + ": expected 5 columns");
        out.push_back({cols[0], parse_double(cols[1]), parse_double(cols[2]), parse_double(cols[3]),
                       static_cast<std::size_t>(parse_int(cols[4]))});
    }
    return out;
}

WordSet word_set(const std::vector<LexiconEntry>& entries) {
    WordSet out;
    for (const auto& e : entries) out.insert(e.word);
    return out;
}

}  // namespace rumortrack::lexicon
