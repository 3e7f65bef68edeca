#include "rentscope/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "rentscope/errors.hpp"

namespace rentscope::html {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool is_void_element(std::string_view tag) {
    static constexpr std::array tags = {"area",  "base", "br",    "col",   "embed",
                                        "hr",    "img",  "input", "link",  "meta",
                                        "param", "source", "track", "wbr"};
    return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

bool is_raw_text_element(std::string_view tag) { return tag == "script" || tag == "style"; }

// Tags whose open implicitly closes a same-tag sibling.
bool self_terminating(std::string_view tag) {
    return tag == "li" || tag == "p" || tag == "option" || tag == "tr" || tag == "td" ||
           tag == "th" || tag == "dt" || tag == "dd";
}

void append_ws_collapsed(const Node& n, std::string& out) {
    if (n.kind == Node::Kind::Text) {
        for (char c : n.text) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!out.empty() && out.back() != ' ') out.push_back(' ');
            } else {
                out.push_back(c);
            }
        }
        return;
    }
    for (const auto& c : n.children) append_ws_collapsed(*c, out);
}

}  // namespace

const std::string* Node::attr(std::string_view name) const {
    for (const auto& [k, v] : attrs)
        if (k == name) return &v;
    return nullptr;
}

bool Node::has_class(std::string_view cls) const {
    const std::string* v = attr("class");
    if (!v) return false;
    size_t i = 0;
    while (i < v->size()) {
        while (i < v->size() && std::isspace(static_cast<unsigned char>((*v)[i]))) ++i;
        size_t j = i;
        while (j < v->size() && !std::isspace(static_cast<unsigned char>((*v)[j]))) ++j;
        if (std::string_view(*v).substr(i, j - i) == cls) return true;
        i = j;
    }
    return false;
}

std::string Node::text_content() const {
    std::string out;
    append_ws_collapsed(*this, out);
    while (!out.empty() && out.back() == ' ') out.pop_back();
    size_t start = out.find_first_not_of(' ');
    return start == std::string::npos ? std::string{} : out.substr(start);
}

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view ent = s.substr(i + 1, semi - i - 1);
        std::string decoded;
        if (ent == "amp") decoded = "&";
        else if (ent == "lt") decoded = "<";
        else if (ent == "gt") decoded = ">";
        else if (ent == "quot") decoded = "\"";
        else if (ent == "apos") decoded = "'";
        else if (ent == "nbsp") decoded = " ";
        else if (!ent.empty() && ent[0] == '#') {
            long cp = -1;
            if (ent.size() > 2 && (ent[1] == 'x' || ent[1] == 'X'))
                cp = std::strtol(std::string(ent.substr(2)).c_str(), nullptr, 16);
            else if (ent.size() > 1)
                cp = std::strtol(std::string(ent.substr(1)).c_str(), nullptr, 10);
            if (cp > 0 && cp < 0x110000) {
                // UTF-8 encode
                if (cp < 0x80) {
                    decoded.push_back(static_cast<char>(cp));
                } else if (cp < 0x800) {
                    decoded.push_back(static_cast<char>(0xC0 | (cp >> 6)));
                    decoded.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
                } else if (cp < 0x10000) {
                    decoded.push_back(static_cast<char>(0xE0 | (cp >> 12)));
                    decoded.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
                    decoded.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
                } else {
                    decoded.push_back(static_cast<char>(0xF0 | (cp >> 18)));
                    decoded.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
                    decoded.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
                    decoded.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
                }
            }
        }
        if (decoded.empty() && ent != "#0") {
            // Unknown entity: keep verbatim.
            out.append(s.substr(i, semi - i + 1));
        } else {
            out.append(decoded);
        }
        i = semi + 1;
    }
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Document run() {
        Document doc;
        doc.root = std::make_unique<Node>();
        doc.root->kind = Node::Kind::Document;
        stack_.push_back(doc.root.get());

        while (pos_ < src_.size()) {
            size_t lt = src_.find('<', pos_);
            if (lt == std::string_view::npos) {
                emit_text(src_.substr(pos_));
                break;
            }
            if (lt > pos_) emit_text(src_.substr(pos_, lt - pos_));
            pos_ = lt;
            if (!parse_angle()) {
                // Stray '<': treat as text.
                emit_text("<");
                ++pos_;
            }
        }
        doc.warnings = std::move(warnings_);
        return doc;
    }

private:
    std::string_view src_;
    size_t pos_ = 0;
    std::vector<Node*> stack_;
    std::vector<std::string> warnings_;

    Node* top() { return stack_.back(); }

    void emit_text(std::string_view raw) {
        if (raw.empty()) return;
        auto node = std::make_unique<Node>();
        node->kind = Node::Kind::Text;
        node->text = decode_entities(raw);
        node->parent = top();
        top()->children.push_back(std::move(node));
    }

    // pos_ is at '<'. Returns false if this is not actually markup.
    bool parse_angle() {
        if (pos_ + 1 >= src_.size()) return false;
        char c = src_[pos_ + 1];
        if (c == '!') return parse_comment_or_doctype();
        if (c == '/') return parse_close_tag();
        if (!std::isalpha(static_cast<unsigned char>(c))) return false;
        return parse_open_tag();
    }

    bool parse_comment_or_doctype() {
        if (src_.compare(pos_, 4, "<!--") == 0) {
            size_t end = src_.find("-->", pos_ + 4);
            pos_ = (end == std::string_view::npos) ? src_.size() : end + 3;
            return true;
        }
        size_t end = src_.find('>', pos_);
        pos_ = (end == std::string_view::npos) ? src_.size() : end + 1;
        return true;
    }

    bool parse_close_tag() {
        size_t end = src_.find('>', pos_);
        if (end == std::string_view::npos) {
            pos_ = src_.size();
            return true;
        }
        std::string tag = lower(trim(src_.substr(pos_ + 2, end - pos_ - 2)));
        pos_ = end + 1;
        // Find a matching open element; close everything above it.
        for (size_t i = stack_.size(); i-- > 1;) {
            if (stack_[i]->tag == tag) {
                stack_.resize(i);
                return true;
            }
        }
        warnings_.push_back("unmatched close tag </" + tag + ">");
        return true;
    }

    static std::string_view trim(std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    }

    bool parse_open_tag() {
        size_t i = pos_ + 1;
        size_t tag_start = i;
        while (i < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i])) ||
                                   src_[i] == '-' || src_[i] == ':'))
            ++i;
        std::string tag = lower(src_.substr(tag_start, i - tag_start));

        auto node = std::make_unique<Node>();
        node->tag = tag;

        bool self_close = false;
        // Attributes until '>' or EOF.
        while (i < src_.size() && src_[i] != '>') {
            if (std::isspace(static_cast<unsigned char>(src_[i]))) {
                ++i;
                continue;
            }
            if (src_[i] == '/') {
                self_close = true;
                ++i;
                continue;
            }
            size_t name_start = i;
            while (i < src_.size() && src_[i] != '=' && src_[i] != '>' && src_[i] != '/' &&
                   !std::isspace(static_cast<unsigned char>(src_[i])))
                ++i;
            std::string name = lower(src_.substr(name_start, i - name_start));
            std::string value;
            // skip ws before possible '='
            size_t j = i;
            while (j < src_.size() && std::isspace(static_cast<unsigned char>(src_[j]))) ++j;
            if (j < src_.size() && src_[j] == '=') {
                i = j + 1;
                while (i < src_.size() && std::isspace(static_cast<unsigned char>(src_[i]))) ++i;
                if (i < src_.size() && (src_[i] == '"' || src_[i] == '\'')) {
                    char q = src_[i++];
                    size_t vstart = i;
                    while (i < src_.size() && src_[i] != q) ++i;
                    value = decode_entities(src_.substr(vstart, i - vstart));
                    if (i < src_.size()) ++i;
                } else {
                    size_t vstart = i;
                    while (i < src_.size() && src_[i] != '>' &&
                           !std::isspace(static_cast<unsigned char>(src_[i])))
                        ++i;
                    value = decode_entities(src_.substr(vstart, i - vstart));
                }
            }
            if (!name.empty()) node->attrs.emplace_back(std::move(name), std::move(value));
        }
        if (i >= src_.size()) {
            warnings_.push_back("unterminated tag <" + tag);
            pos_ = src_.size();
        } else {
            pos_ = i + 1;
        }

        // <li> after an open <li> closes it first (same for p, td, ...).
        if (self_terminating(tag) && top()->tag == tag) stack_.pop_back();

        Node* raw = node.get();
        raw->parent = top();
        top()->children.push_back(std::move(node));

        if (is_raw_text_element(tag) && !self_close) {
            consume_raw_text(*raw, tag);
            return true;
        }
        if (!self_close && !is_void_element(tag)) stack_.push_back(raw);
        return true;
    }

    void consume_raw_text(Node& element, const std::string& tag) {
        std::string closer = "</" + tag;
        size_t end = pos_;
        for (;;) {
            end = src_.find(closer, end);
            if (end == std::string_view::npos) {
                end = src_.size();
                break;
            }
            size_t after = end + closer.size();
            if (after >= src_.size() || src_[after] == '>' ||
                std::isspace(static_cast<unsigned char>(src_[after])))
                break;
            ++end;
        }
        if (end > pos_) {
            auto text = std::make_unique<Node>();
            text->kind = Node::Kind::Text;
            text->text = std::string(src_.substr(pos_, end - pos_));
            text->parent = &element;
            element.children.push_back(std::move(text));
        }
        if (end == src_.size()) {
            pos_ = end;
            return;
        }
        size_t gt = src_.find('>', end);
        pos_ = (gt == std::string_view::npos) ? src_.size() : gt + 1;
    }
};

void collect_matches(const Node& n, const Selector& sel, size_t step_count,
                     std::vector<const Node*>& out);

}  // namespace

Document parse(std::string_view markup) { return Parser(markup).run(); }

// ---------------------------------------------------------------------------

bool SimpleSelector::matches(const Node& n) const {
    if (n.kind != Node::Kind::Element) return false;
    if (!tag.empty() && n.tag != tag) return false;
    if (!id.empty()) {
        const std::string* v = n.attr("id");
        if (!v || *v != id) return false;
    }
    for (const auto& cls : classes)
        if (!n.has_class(cls)) return false;
    for (const auto& t : attr_tests) {
        const std::string* v = n.attr(t.name);
        if (!v) return false;
        if (t.check_value && *v != t.value) return false;
    }
    return true;
}

Selector Selector::parse(std::string_view expr) {
    Selector sel;
    sel.expr_ = std::string(expr);
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
    };
    auto ident = [&]() -> std::string {
        size_t start = i;
        while (i < expr.size() && (std::isalnum(static_cast<unsigned char>(expr[i])) ||
                                   expr[i] == '-' || expr[i] == '_'))
            ++i;
        return std::string(expr.substr(start, i - start));
    };

    Combinator pending = Combinator::Descendant;
    skip_ws();
    while (i < expr.size()) {
        SimpleSelector simple;
        bool any = false;
        if (std::isalnum(static_cast<unsigned char>(expr[i])) || expr[i] == '_') {
            simple.tag = lower(ident());
            any = true;
        } else if (expr[i] == '*') {
            ++i;
            any = true;
        }
        while (i < expr.size()) {
            if (expr[i] == '#') {
                ++i;
                simple.id = ident();
                if (simple.id.empty()) throw DataError("selector: empty #id in '" + sel.expr_ + "'");
            } else if (expr[i] == '.') {
                ++i;
                std::string cls = ident();
                if (cls.empty()) throw DataError("selector: empty .class in '" + sel.expr_ + "'");
                simple.classes.push_back(std::move(cls));
            } else if (expr[i] == '[') {
                ++i;
                SimpleSelector::AttrTest t;
                t.name = lower(ident());
                if (t.name.empty())
                    throw DataError("selector: empty attribute name in '" + sel.expr_ + "'");
                if (i < expr.size() && expr[i] == '=') {
                    ++i;
                    t.check_value = true;
                    if (i < expr.size() && (expr[i] == '"' || expr[i] == '\'')) {
                        char q = expr[i++];
                        size_t start = i;
                        while (i < expr.size() && expr[i] != q) ++i;
                        t.value = std::string(expr.substr(start, i - start));
                        if (i < expr.size()) ++i;
                    } else {
                        size_t start = i;
                        while (i < expr.size() && expr[i] != ']') ++i;
                        t.value = std::string(expr.substr(start, i - start));
                    }
                }
                if (i >= expr.size() || expr[i] != ']')
                    throw DataError("selector: missing ']' in '" + sel.expr_ + "'");
                ++i;
                simple.attr_tests.push_back(std::move(t));
            } else {
                break;
            }
            any = true;
        }
        if (!any) throw DataError("selector: unexpected '" + std::string(1, expr[i]) +
                                  "' in '" + sel.expr_ + "'");
        sel.steps_.push_back({std::move(simple), pending});

        // combinator
        bool saw_ws = false;
        while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) {
            saw_ws = true;
            ++i;
        }
        if (i >= expr.size()) break;
        if (expr[i] == '>') {
            pending = Combinator::Child;
            ++i;
            skip_ws();
        } else if (saw_ws) {
            pending = Combinator::Descendant;
        } else {
            throw DataError("selector: expected combinator in '" + sel.expr_ + "'");
        }
    }
    if (sel.steps_.empty()) throw DataError("selector: empty expression");
    return sel;
}

// Scoped matching: every step of the selector must be satisfied by a strict
// descendant of `scope`.
bool Selector::matches_at(const Node& n, size_t step, const Node& scope) const {
    if (!steps_[step].simple.matches(n)) return false;
    if (step == 0) return true;
    const Node* p = n.parent;
    if (steps_[step].comb == Combinator::Child)
        return p && p != &scope && matches_at(*p, step - 1, scope);
    while (p && p != &scope) {
        if (matches_at(*p, step - 1, scope)) return true;
        p = p->parent;
    }
    return false;
}

std::vector<const Node*> Selector::select_all(const Node& scope) const {
    std::vector<const Node*> out;
    // Depth-first document order.
    std::vector<const Node*> work;
    for (auto it = scope.children.rbegin(); it != scope.children.rend(); ++it)
        work.push_back(it->get());
    while (!work.empty()) {
        const Node* n = work.back();
        work.pop_back();
        if (n->kind == Node::Kind::Element && matches_at(*n, steps_.size() - 1, scope))
            out.push_back(n);
        for (auto it = n->children.rbegin(); it != n->children.rend(); ++it)
            work.push_back(it->get());
    }
    return out;
}

const Node* Selector::select_first(const Node& scope) const {
    auto all = select_all(scope);
    return all.empty() ? nullptr : all.front();
}

}  // namespace rentscope::html
