#include <doctest.h>

#include "rentscope/errors.hpp"
#include "rentscope/html.hpp"

using namespace rentscope;
using html::Node;

namespace {

const Node* first_element(const Node& n, std::string_view tag) {
    return html::Selector::parse(std::string(tag)).select_first(n);
}

}  // namespace

TEST_SUITE("html") {

TEST_CASE("basic tree shape") {
    auto doc = html::parse("<html><body><p id=\"a\">hi <b>there</b></p></body></html>");
    const Node* p = first_element(*doc.root, "p");
    REQUIRE(p != nullptr);
    CHECK(p->tag == "p");
    REQUIRE(p->attr("id") != nullptr);
    CHECK(*p->attr("id") == "a");
    CHECK(p->text_content() == "hi there");
}

TEST_CASE("attribute forms") {
    auto doc = html::parse("<div data-x='single' checked name=plain CLASS=\"a b\"></div>");
    const Node* d = first_element(*doc.root, "div");
    REQUIRE(d != nullptr);
    CHECK(*d->attr("data-x") == "single");
    CHECK(*d->attr("name") == "plain");
    REQUIRE(d->attr("checked") != nullptr);
    CHECK(*d->attr("checked") == "");
    CHECK(d->has_class("a"));
    CHECK(d->has_class("b"));
    CHECK_FALSE(d->has_class("c"));
    CHECK(d->attr("missing") == nullptr);
}

TEST_CASE("entity decoding") {
    CHECK(html::decode_entities("a &amp; b") == "a & b");
    CHECK(html::decode_entities("&lt;tag&gt;") == "<tag>");
    CHECK(html::decode_entities("&quot;x&quot; &apos;y&apos;") == "\"x\" 'y'");
    CHECK(html::decode_entities("&#65;&#x42;") == "AB");
    CHECK(html::decode_entities("900&#178;") == "900\xc2\xb2");
    CHECK(html::decode_entities("&unknown; stays") == "&unknown; stays");
    CHECK(html::decode_entities("bare & ampersand") == "bare & ampersand");
}

TEST_CASE("text content collapses whitespace") {
    auto doc = html::parse("<p>  one\n\t two  <i> three </i>  </p>");
    const Node* p = first_element(*doc.root, "p");
    REQUIRE(p != nullptr);
    CHECK(p->text_content() == "one two three");
}

TEST_CASE("void elements do not swallow siblings") {
    auto doc = html::parse("<p>a<br>b<img src=\"x\">c</p>");
    const Node* p = first_element(*doc.root, "p");
    REQUIRE(p != nullptr);
    CHECK(p->text_content() == "abc");
    CHECK(html::Selector::parse("p img").select_first(*doc.root) != nullptr);
}

TEST_CASE("comments and raw text elements are skipped") {
    auto doc = html::parse(
        "<div><!-- <span>not real</span> --><script>var x = '<span>';</script><span>real</span></div>");
    auto spans = html::Selector::parse("span").select_all(*doc.root);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0]->text_content() == "real");
}

TEST_CASE("malformed markup degrades instead of failing") {
    // unclosed tags, stray close tag, unquoted junk
    auto doc = html::parse("<div><p>one<p>two</div></b><span>tail");
    const Node* span = first_element(*doc.root, "span");
    REQUIRE(span != nullptr);
    CHECK(span->text_content() == "tail");
    auto ps = html::Selector::parse("p").select_all(*doc.root);
    CHECK(ps.size() == 2);
}

TEST_CASE("selector compound matching") {
    auto doc = html::parse(
        "<ul><li class=\"row odd\" data-id=\"1\">a</li>"
        "<li class=\"row\" data-id=\"2\">b</li>"
        "<li id=\"last\" class=\"row\">c</li></ul>");
    CHECK(html::Selector::parse("li").select_all(*doc.root).size() == 3);
    CHECK(html::Selector::parse("li.odd").select_all(*doc.root).size() == 1);
    CHECK(html::Selector::parse(".row").select_all(*doc.root).size() == 3);
    CHECK(html::Selector::parse("li[data-id]").select_all(*doc.root).size() == 2);
    CHECK(html::Selector::parse("li[data-id=2]").select_all(*doc.root).size() == 1);
    CHECK(html::Selector::parse("li[data-id=\"2\"]").select_all(*doc.root).size() == 1);
    const Node* last = html::Selector::parse("#last").select_first(*doc.root);
    REQUIRE(last != nullptr);
    CHECK(last->text_content() == "c");
    CHECK(html::Selector::parse("li.missing").select_first(*doc.root) == nullptr);
}

TEST_CASE("descendant and child combinators") {
    auto doc = html::parse(
        "<div class=\"outer\"><section><p class=\"deep\">x</p></section>"
        "<p class=\"shallow\">y</p></div>");
    CHECK(html::Selector::parse("div p").select_all(*doc.root).size() == 2);
    auto child_only = html::Selector::parse("div > p").select_all(*doc.root);
    REQUIRE(child_only.size() == 1);
    CHECK(child_only[0]->text_content() == "y");
    CHECK(html::Selector::parse("div > section > p").select_all(*doc.root).size() == 1);
}

TEST_CASE("select_all returns document order and excludes the scope node") {
    auto doc = html::parse("<div id=\"top\"><div id=\"a\"><div id=\"b\"></div></div><div id=\"c\"></div></div>");
    const Node* top = html::Selector::parse("#top").select_first(*doc.root);
    REQUIRE(top != nullptr);
    auto inner = html::Selector::parse("div").select_all(*top);
    REQUIRE(inner.size() == 3);  // a, b, c but not top itself
    CHECK(*inner[0]->attr("id") == "a");
    CHECK(*inner[1]->attr("id") == "b");
    CHECK(*inner[2]->attr("id") == "c");
}

TEST_CASE("tag matching is case-insensitive") {
    auto doc = html::parse("<DIV CLASS=\"Big\">x</DIV>");
    CHECK(html::Selector::parse("div").select_first(*doc.root) != nullptr);
    CHECK(html::Selector::parse("DIV").select_first(*doc.root) != nullptr);
    // class values stay case-sensitive
    CHECK(html::Selector::parse(".Big").select_first(*doc.root) != nullptr);
    CHECK(html::Selector::parse(".big").select_first(*doc.root) == nullptr);
}

TEST_CASE("selector parse errors") {
    CHECK_THROWS_AS(html::Selector::parse("li."), DataError);
    CHECK_THROWS_AS(html::Selector::parse("#"), DataError);
    CHECK_THROWS_AS(html::Selector::parse("a[href"), DataError);
    CHECK_THROWS_AS(html::Selector::parse("!bad"), DataError);
}

}  // TEST_SUITE
