#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace rumortrack::lexicon {

enum class DomainClass { Advocacy, SocialMedia, News, Informative, NonInformative };

std::string_view to_string(DomainClass c);
std::optional<DomainClass> parse_domain_class(std::string_view s);  // "informational" is accepted too

// Lowercased host without a leading "www.", or nullopt if the URL has none.
std::optional<std::string> url_host(std::string_view url);

struct DomainVerdict {
    DomainClass domain_class = DomainClass::NonInformative;
    bool wikipedia = false;
    bool parsed = true;  // false: URL had no usable host
    std::string host;
};

class DomainTable {
public:
    // `classes`: domain<TAB>class; `wikipedia`: one domain per line (optional).
    static DomainTable load(const std::filesystem::path& classes, const std::filesystem::path& wikipedia = {});

    // Throws Error(InvalidArgument) if the domain already has another class.
    void add(const std::string& domain, DomainClass c);
    void add_wikipedia(const std::string& domain);

    // Exact host first, then parent domains down to two labels.
    DomainVerdict classify_host(const std::string& host) const;
    DomainVerdict classify(std::string_view url) const;

    const std::map<std::string, DomainClass>& classes() const { return classes_; }

private:
    std::map<std::string, DomainClass> classes_;
    std::set<std::string> wikipedia_;
};

// One redirect hop: the Location of `url`, or nullopt when it does not redirect.
class Resolver {
public:
    virtual ~Resolver() = default;
    virtual std::optional<std::string> next(const std::string& url) = 0;
};

// short<TAB>target rows.
class MapResolver : public Resolver {
public:
    static MapResolver load(const std::filesystem::path& path);
    void add(const std::string& from, const std::string& to) { map_[from] = to; }
    std::optional<std::string> next(const std::string& url) override;

private:
    std::map<std::string, std::string> map_;
};

// Issues HEAD requests and reads Location headers. Plain http only.
class HttpResolver : public Resolver {
public:
    explicit HttpResolver(int timeout_seconds = 5) : timeout_(timeout_seconds) {}
    std::optional<std::string> next(const std::string& url) override;

private:
    int timeout_;
};

enum class ExpandFlag { None, Loop, DepthExceeded, NoHost };

struct Expansion {
    std::string url;   // final URL (the original one when flagged)
    std::string host;  // from `url`
    std::size_t hops = 0;
    ExpandFlag flag = ExpandFlag::None;
};

inline constexpr std::size_t kMaxRedirects = 10;

Expansion expand_url(const std::string& short_url, Resolver& resolver, std::size_t max_depth = kMaxRedirects);

}  // namespace rumortrack::lexicon
