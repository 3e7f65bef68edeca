#include "rentscope/extractor.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "rentscope/errors.hpp"

namespace rentscope::extractor {

namespace {

const std::set<std::string> kNormalizers = {"text",     "digits",  "money",   "area",
                                            "bedrooms", "decimal", "datetime"};

std::string trim(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = s.size();
    while (j > i && std::isspace(static_cast<unsigned char>(s[j - 1]))) --j;
    return std::string(s.substr(i, j - i));
}

FieldRule parse_rule(std::string_view rhs, const std::string& where) {
    FieldRule rule;
    std::string body(rhs);

    size_t sep = body.rfind("::");
    if (sep != std::string::npos) {
        rule.normalizer = trim(std::string_view(body).substr(sep + 2));
        body = body.substr(0, sep);
        if (!kNormalizers.count(rule.normalizer))
            throw UsageError(where + ": unknown normalizer '" + rule.normalizer + "'");
    }

    std::string selector_text;
    size_t at = body.find('@');
    if (at == std::string::npos) {
        selector_text = trim(body);
    } else {
        selector_text = trim(std::string_view(body).substr(0, at));
        std::string mode = trim(std::string_view(body).substr(at + 1));
        if (mode == "text") {
            rule.source = FieldRule::Source::Text;
        } else if (mode.rfind("attr", 0) == 0) {
            rule.source = FieldRule::Source::Attr;
            rule.attr = trim(std::string_view(mode).substr(4));
            if (rule.attr.empty()) throw UsageError(where + ": @attr needs an attribute name");
        } else {
            throw UsageError(where + ": expected @text or @attr <name>");
        }
    }
    if (selector_text.empty()) throw UsageError(where + ": empty selector");
    try {
        rule.selector = html::Selector::parse(selector_text);
    } catch (const std::exception& e) {
        throw UsageError(where + ": bad selector '" + selector_text + "': " + e.what());
    }
    return rule;
}

}  // namespace

SelectorSet SelectorSet::parse(std::string_view text, const std::string& origin) {
    SelectorSet set;
    std::map<std::string, FieldRule>* section = nullptr;
    std::string section_name;

    size_t lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view raw =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;

        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::string where = origin + ":" + std::to_string(lineno);

        if (line.front() == '[') {
            if (line.back() != ']') throw UsageError(where + ": unterminated section header");
            section_name = line.substr(1, line.size() - 2);
            if (section_name == "index") {
                section = &set.index_rules;
            } else if (section_name == "listing") {
                section = &set.listing_rules;
            } else {
                throw UsageError(where + ": unknown section [" + section_name + "]");
            }
            continue;
        }
        if (!section) throw UsageError(where + ": rule before any [section]");

        size_t eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(where + ": expected 'name = selector'");
        std::string name = trim(std::string_view(line).substr(0, eq));
        if (name.empty()) throw UsageError(where + ": rule has no field name");
        if (section->count(name))
            throw UsageError(where + ": duplicate rule '" + name + "' in [" + section_name + "]");
        (*section)[name] = parse_rule(std::string_view(line).substr(eq + 1), where);
    }

    for (const char* req : {"page", "item", "listing_id", "url"})
        if (!set.index_rules.count(req))
            throw UsageError(origin + ": [index] section missing rule '" + std::string(req) + "'");
    for (const char* req : {"page", "listing_id"})
        if (!set.listing_rules.count(req))
            throw UsageError(origin + ": [listing] section missing rule '" + std::string(req) +
                             "'");
    return set;
}

SelectorSet SelectorSet::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open selector config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

const FieldRule* SelectorSet::find_index(const std::string& name) const {
    auto it = index_rules.find(name);
    return it == index_rules.end() ? nullptr : &it->second;
}

const FieldRule* SelectorSet::find_listing(const std::string& name) const {
    auto it = listing_rules.find(name);
    return it == listing_rules.end() ? nullptr : &it->second;
}

std::optional<std::string> extract_raw(const html::Node& scope, const FieldRule& rule) {
    const html::Node* n = rule.selector.select_first(scope);
    if (!n) return std::nullopt;
    if (rule.source == FieldRule::Source::Attr) {
        const std::string* v = n->attr(rule.attr);
        if (!v) return std::nullopt;
        return *v;
    }
    return n->text_content();
}

std::vector<ListingRef> parse_index(const Snapshot& snapshot, const SelectorSet& selectors,
                                    std::vector<std::string>* diagnostics) {
    auto diag = [&](const std::string& msg) {
        if (diagnostics) diagnostics->push_back(snapshot.url + ": " + msg);
    };

    html::Document doc = html::parse(snapshot.body);
    const FieldRule& page = selectors.index_rules.at("page");
    if (!page.selector.select_first(*doc.root)) {
        diag("index page probe '" + page.selector.expression() + "' matched nothing");
        return {};
    }

    const FieldRule& item = selectors.index_rules.at("item");
    const FieldRule& id_rule = selectors.index_rules.at("listing_id");
    const FieldRule& url_rule = selectors.index_rules.at("url");

    std::vector<const html::Node*> items = item.selector.select_all(*doc.root);
    if (items.empty()) {
        diag("item selector '" + item.selector.expression() + "' matched nothing");
        return {};
    }

    std::vector<ListingRef> out;
    std::set<std::string> seen;
    for (const html::Node* node : items) {
        auto id_raw = extract_raw(*node, id_rule);
        auto url_raw = extract_raw(*node, url_rule);
        if (!id_raw || !url_raw) {
            diag("item missing listing_id or url, skipped");
            continue;
        }
        ListingRef ref;
        ref.listing_id = id_rule.normalizer == "digits"
                             ? normalize_digits(*id_raw).value_or("")
                             : normalize_text(*id_raw);
        ref.url = normalize_text(*url_raw);
        if (ref.listing_id.empty() || ref.url.empty()) {
            diag("item with empty listing_id or url, skipped");
            continue;
        }
        if (seen.insert(ref.listing_id).second) out.push_back(std::move(ref));
    }
    if (out.empty()) diag("no usable listing references on page");
    return out;
}

std::optional<std::string> index_next_url(const Snapshot& snapshot,
                                          const SelectorSet& selectors) {
    const FieldRule* next = selectors.find_index("next");
    if (!next) return std::nullopt;
    html::Document doc = html::parse(snapshot.body);
    auto raw = extract_raw(*doc.root, *next);
    if (!raw) return std::nullopt;
    std::string url = normalize_text(*raw);
    if (url.empty()) return std::nullopt;
    return url;
}

namespace {

std::optional<long long> to_amount(const std::string& raw, const std::string& normalizer) {
    if (normalizer == "money") return normalize_money(raw);
    if (normalizer == "area") return normalize_area(raw);
    if (normalizer == "digits") {
        auto d = normalize_digits(raw);
        if (!d) return std::nullopt;
        long long v = 0;
        auto [p, ec] = std::from_chars(d->data(), d->data() + d->size(), v);
        if (ec != std::errc{}) return std::nullopt;
        return v;
    }
    if (normalizer == "decimal") {
        auto v = normalize_decimal(raw);
        if (!v) return std::nullopt;
        return static_cast<long long>(*v);
    }
    return std::nullopt;
}

}  // namespace

RawListing parse_listing(const Snapshot& snapshot, const SelectorSet& selectors) {
    html::Document doc = html::parse(snapshot.body);

    const FieldRule& page = selectors.listing_rules.at("page");
    if (!page.selector.select_first(*doc.root))
        throw DataError(snapshot.url + ": listing page probe '" + page.selector.expression() +
                        "' matched nothing");

    auto raw_of = [&](const char* field) -> std::optional<std::string> {
        const FieldRule* rule = selectors.find_listing(field);
        if (!rule) return std::nullopt;
        return extract_raw(*doc.root, *rule);
    };

    RawListing l;
    l.region = snapshot.region;
    l.url = snapshot.url;
    l.collected_at = snapshot.fetched_at;

    {
        const FieldRule& rule = selectors.listing_rules.at("listing_id");
        auto raw = extract_raw(*doc.root, rule);
        std::string id;
        if (raw) {
            id = rule.normalizer == "digits" ? normalize_digits(*raw).value_or("")
                                             : normalize_text(*raw);
        }
        if (id.empty())
            throw DataError(snapshot.url + ": no listing_id on page, record rejected");
        l.listing_id = id;
    }

    if (auto raw = raw_of("title")) l.title = normalize_text(*raw);

    if (auto raw = raw_of("rent")) {
        const FieldRule* rule = selectors.find_listing("rent");
        auto v = to_amount(*raw, rule->normalizer);
        if (v && *v > 0) l.rent = *v;
    }
    if (auto raw = raw_of("sqft")) {
        const FieldRule* rule = selectors.find_listing("sqft");
        auto v = to_amount(*raw, rule->normalizer);
        if (v && *v > 0) l.sqft = *v;
    }
    if (auto raw = raw_of("bedrooms")) {
        auto v = normalize_bedrooms(*raw);
        if (v && *v >= 0) l.bedrooms = *v;
    }
    {
        auto lat = raw_of("latitude");
        auto lon = raw_of("longitude");
        if (lat && lon) l.location = normalize_coords(*lat, *lon);
    }
    if (auto raw = raw_of("posted_at")) {
        auto st = parse_stamp(normalize_text(*raw));
        if (st) l.posted_at = *st;
    }
    if (!l.posted_at.date.valid()) l.posted_at = snapshot.fetched_at;

    return l;
}

}  // namespace rentscope::extractor
