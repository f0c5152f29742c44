#include "lexicon/domains.hpp"

#include <set>

#include "httplib.h"
#include "util/error.hpp"
#include "util/text_io.hpp"

namespace rumortrack::lexicon {

std::string_view to_string(DomainClass c) {
    switch (c) {
        case DomainClass::Advocacy: return "advocacy";
        case DomainClass::SocialMedia: return "social_media";
        case DomainClass::News: return "news";
        case DomainClass::Informative: return "informative";
        case DomainClass::NonInformative: return "non_informative";
    }
    return "non_informative";
}

std::optional<DomainClass> parse_domain_class(std::string_view s) {
    if (s == "advocacy") return DomainClass::Advocacy;
    if (s == "social_media") return DomainClass::SocialMedia;
    if (s == "news") return DomainClass::News;
    if (s == "informative" || s == "informational") return DomainClass::Informative;
    if (s == "non_informative") return DomainClass::NonInformative;
    return std::nullopt;
}

std::optional<std::string> url_host(std::string_view url) {
    url = trim(url);
    if (const auto scheme = url.find("://"); scheme != std::string_view::npos) url.remove_prefix(scheme + 3);
    const auto end = url.find_first_of("/?#");
    std::string_view host = url.substr(0, end);
    if (const auto at = host.rfind('@'); at != std::string_view::npos) host.remove_prefix(at + 1);
    if (const auto colon = host.find(':'); colon != std::string_view::npos) host = host.substr(0, colon);
    std::string out;
    for (char c : host) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || c == '-' || c == '.' || u >= 0x80) {
            out += static_cast<char>(std::tolower(u));
        } else {
            return std::nullopt;
        }
    }
    while (!out.empty() && out.back() == '.') out.pop_back();
    if (out.rfind("www.", 0) == 0) out.erase(0, 4);
    if (out.empty() || out.front() == '.' || out.find("..") != std::string::npos) return std::nullopt;
    return out;
}

DomainTable DomainTable::load(const std::filesystem::path& classes, const std::filesystem::path& wikipedia) {
    DomainTable t;
    if (!std::filesystem::exists(classes))
        fail(ErrorKind::Config, "domain table not found: " + classes.string());
    for (const auto& row : read_tsv(classes)) {
        const auto c = row.size() == 2 ? parse_domain_class(row[1]) : std::nullopt;
        if (!c) fail(ErrorKind::Config, "domain table " + classes.string() + ": bad row for '" + row[0] + "'");
        const auto host = url_host(row[0]);
        if (!host) fail(ErrorKind::Config, "domain table: bad domain '" + row[0] + "'");
        t.add(*host, *c);
    }
    if (!wikipedia.empty()) {
        if (!std::filesystem::exists(wikipedia))
            fail(ErrorKind::Config, "wikipedia domain list not found: " + wikipedia.string());
        for (const auto& row : read_tsv(wikipedia)) {
            if (const auto host = url_host(row[0])) t.add_wikipedia(*host);
        }
    }
    return t;
}

void DomainTable::add(const std::string& domain, DomainClass c) {
    const auto [it, inserted] = classes_.emplace(domain, c);
    if (!inserted && it->second != c)
        fail(ErrorKind::InvalidArgument, "domain '" + domain + "' listed under two classes");
}

void DomainTable::add_wikipedia(const std::string& domain) { wikipedia_.insert(domain); }

DomainVerdict DomainTable::classify_host(const std::string& host) const {
    DomainVerdict v;
    v.host = host;
    bool classified = false;
    std::string_view h = host;
    while (true) {
        const std::string key(h);
        if (!classified) {
            if (const auto it = classes_.find(key); it != classes_.end()) {
                v.domain_class = it->second;
                classified = true;
            }
        }
        if (!v.wikipedia && wikipedia_.count(key)) v.wikipedia = true;
        const auto dot = h.find('.');
        if (dot == std::string_view::npos) break;
        const auto parent = h.substr(dot + 1);
        if (parent.find('.') == std::string_view::npos) break;  // stop at two labels
        h = parent;
    }
    return v;
}

DomainVerdict DomainTable::classify(std::string_view url) const {
    const auto host = url_host(url);
    if (!host) {
        DomainVerdict v;
        v.parsed = false;
        return v;
    }
    return classify_host(*host);
}

MapResolver MapResolver::load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) fail(ErrorKind::Config, "redirect map not found: " + path.string());
    MapResolver r;
    for (const auto& row : read_tsv(path)) {
        if (row.size() != 2) fail(ErrorKind::Config, "redirect map: expected from<TAB>to");
        r.add(row[0], row[1]);
    }
    return r;
}

std::optional<std::string> MapResolver::next(const std::string& url) {
    const auto it = map_.find(url);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> HttpResolver::next(const std::string& url) {
    if (url.rfind("http://", 0) != 0) return std::nullopt;
    const auto path_start = url.find('/', 7);
    const std::string origin = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
    httplib::Client client(origin);
    client.set_connection_timeout(timeout_, 0);
    client.set_read_timeout(timeout_, 0);
    client.set_follow_location(false);
    const auto res = client.Head(path);
    if (!res || res->status < 300 || res->status >= 400 || !res->has_header("Location")) return std::nullopt;
    std::string loc = res->get_header_value("Location");
    if (!loc.empty() && loc.front() == '/') loc = origin + loc;
    return loc;
}

Expansion expand_url(const std::string& short_url, Resolver& resolver, std::size_t max_depth) {
    Expansion e;
    const auto original_host = url_host(short_url);
    auto flagged = [&](ExpandFlag f) {
        e.url = short_url;
        e.host = original_host.value_or("");
        e.flag = original_host ? f : ExpandFlag::NoHost;
        return e;
    };
    std::set<std::string> seen{short_url};
    std::string current = short_url;
    while (true) {
        auto next = resolver.next(current);
        if (!next) break;
        if (!seen.insert(*next).second) return flagged(ExpandFlag::Loop);
        if (e.hops == max_depth) return flagged(ExpandFlag::DepthExceeded);
        ++e.hops;
        current = std::move(*next);
    }
    const auto host = url_host(current);
    if (!host) return flagged(ExpandFlag::NoHost);
    e.url = current;
    e.host = *host;
    return e;
}

}  // namespace rumortrack::lexicon
