#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rentscope/html.hpp"
#include "rentscope/listing.hpp"
#include "rentscope/normalize.hpp"
#include "rentscope/snapshot.hpp"

namespace rentscope::extractor {

struct ListingRef {
    std::string listing_id;
    std::string url;
};

// One line of selector config: where a field lives in the page and how its
// raw text becomes a value.
struct FieldRule {
    html::Selector selector;
    enum class Source { Text, Attr } source = Source::Text;
    std::string attr;
    std::string normalizer = "text";
};

// Node-selection rules for the index and detail page layouts, loaded from a
// plain-text config so layout drift is a config edit, not a code change.
//
//   [index]
//   page = div#search-results
//   item = li.result-row
//   listing_id = a.result-title @attr data-id
//   url = a.result-title @attr href
//   next = a.next-page @attr href
//
//   [listing]
//   page = section.posting
//   rent = span.price @text :: money
//
// Rule grammar: name = <selector> [@text | @attr <name>] [:: <normalizer>].
// Normalizers: text, digits, money, area, bedrooms, decimal, datetime.
struct SelectorSet {
    std::map<std::string, FieldRule> index_rules;
    std::map<std::string, FieldRule> listing_rules;

    static SelectorSet parse(std::string_view text, const std::string& origin);
    static SelectorSet load_file(const std::string& path);

    const FieldRule* find_index(const std::string& name) const;
    const FieldRule* find_listing(const std::string& name) const;
};

// Applies a rule under `scope`, returning the raw extracted string of the
// first matching node, before any normalizer runs.
std::optional<std::string> extract_raw(const html::Node& scope, const FieldRule& rule);

std::vector<ListingRef> parse_index(const Snapshot& snapshot, const SelectorSet& selectors,
                                    std::vector<std::string>* diagnostics = nullptr);

// Next-page link on an index page, when the layout has one.
std::optional<std::string> index_next_url(const Snapshot& snapshot, const SelectorSet& selectors);

// Throws DataError when the page yields no listing_id; everything else is
// optional and stays absent when missing.
RawListing parse_listing(const Snapshot& snapshot, const SelectorSet& selectors);

}  // namespace rentscope::extractor
