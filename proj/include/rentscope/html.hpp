#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rentscope::html {

// Minimal tolerant HTML document tree. The parser never fails: malformed
// markup degrades to a best-effort tree plus warnings.
struct Node {
    enum class Kind { Document, Element, Text };

    Kind kind = Kind::Element;
    std::string tag;  // lowercased; empty for text/document nodes
    std::vector<std::pair<std::string, std::string>> attrs;  // names lowercased
    std::string text;  // text nodes only, entities decoded
    std::vector<std::unique_ptr<Node>> children;
    Node* parent = nullptr;

    const std::string* attr(std::string_view name) const;
    bool has_class(std::string_view cls) const;
    // Concatenated descendant text with runs of whitespace collapsed to one
    // space and ends trimmed.
    std::string text_content() const;
};

struct Document {
    std::unique_ptr<Node> root;  // Kind::Document
    std::vector<std::string> warnings;
};

Document parse(std::string_view markup);

// Decode the common named entities plus numeric character references.
std::string decode_entities(std::string_view text);

// ---------------------------------------------------------------------------
// Selectors: a small CSS-like subset sufficient for listing extraction.
//   compound  = [tag] ('#' id | '.' class | '[' name [ '=' value ] ']')*
//   selector  = compound ((' ' | '>') compound)*
// Matching is case-insensitive on tag names, case-sensitive on values.
// ---------------------------------------------------------------------------
struct SimpleSelector {
    std::string tag;  // empty = any
    std::string id;
    std::vector<std::string> classes;
    struct AttrTest {
        std::string name;
        std::string value;
        bool check_value = false;
    };
    std::vector<AttrTest> attr_tests;

    bool matches(const Node& n) const;
};

class Selector {
public:
    enum class Combinator { Descendant, Child };

    // Throws DataError on a malformed expression.
    static Selector parse(std::string_view expr);

    // All matching elements under (and excluding) `scope`, in document order.
    std::vector<const Node*> select_all(const Node& scope) const;
    const Node* select_first(const Node& scope) const;

    const std::string& expression() const { return expr_; }

private:
    struct Step {
        SimpleSelector simple;
        Combinator comb = Combinator::Descendant;  // relation to previous step
    };
    std::vector<Step> steps_;
    std::string expr_;

    bool matches_at(const Node& n, size_t step, const Node& scope) const;
};

}  // namespace rentscope::html
