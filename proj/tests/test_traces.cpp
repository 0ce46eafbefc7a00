#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fairsynth/fnf.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

using namespace fairsynth;

namespace {

// a shared by p1,p2; b shared by p1,p3; c local to p2; d local to p3.
// Independent pairs: (a,d), (c,d), (b,c).
AlphabetRef demo() {
    return make_alphabet({"a", "b", "c", "d"}, {"p1", "p2", "p3"},
                         {{"a", {"p1", "p2"}},
                          {"b", {"p1", "p3"}},
                          {"c", {"p2"}},
                          {"d", {"p3"}}});
}

// a shared by p1,p2; b shared by p1,p3; c shared by p2,p3; d local to p1.
// Only c and d are independent.
AlphabetRef triangle() {
    return make_alphabet({"a", "b", "c", "d"}, {"p1", "p2", "p3"},
                         {{"a", {"p1", "p2"}},
                          {"b", {"p1", "p3"}},
                          {"c", {"p2", "p3"}},
                          {"d", {"p1"}}});
}

Fnf of(const AlphabetRef& al, const std::string& chars) {
    return fnf_from_word(al, word_from_chars(al, chars));
}

std::vector<bool> procs(const AlphabetRef& al, std::initializer_list<const char*> names) {
    std::vector<bool> mask(al->num_processes(), false);
    for (const char* n : names) mask[al->process_id(n)] = true;
    return mask;
}

} // namespace

TEST_CASE("normal form groups maximal sets of concurrent letters") {
    auto al = demo();
    CHECK(of(al, "abcacd").str() == "{a}{b,c}{a,d}{c}");
    // Equivalent word, same trace, same normal form.
    CHECK(of(al, "acbdac") == of(al, "abcacd"));
    CHECK(of(al, "abd").str() == "{a}{b}{d}");
    CHECK(of(al, "").str() == "{}");
}

TEST_CASE("insertion places a letter after its last dependent step") {
    auto al = demo();
    Fnf t = of(al, "ab");
    t.push(al->letter_id("d")); // d independent of a, dependent on b
    CHECK(t.str() == "{a}{b}{d}");
    t.push(al->letter_id("a")); // a dependent on b only -> joins step 3
    CHECK(t.str() == "{a}{b}{a,d}");
    t.push(al->letter_id("c")); // c dependent on a -> new step
    CHECK(t.str() == "{a}{b}{a,d}{c}");
}

TEST_CASE("step sequences are validated on construction") {
    auto al = demo();
    LetterId a = al->letter_id("a"), b = al->letter_id("b"), d = al->letter_id("d");
    // {a,b} is not a step: a and b share p1.
    CHECK_THROWS_AS(Fnf(al, {{std::min(a, b), std::max(a, b)}}), std::invalid_argument);
    // {a}{d} is not maximal: d could join the first step.
    CHECK_THROWS_AS(Fnf(al, {{a}, {d}}), std::invalid_argument);
    CHECK_NOTHROW(Fnf(al, {{a, d}, {b}}));
}

TEST_CASE("linearisation round-trips through the word reading") {
    auto al = demo();
    Fnf t = of(al, "abcacd");
    auto lin = t.linearisation();
    CHECK(fnf_from_word(al, lin) == t);
    CHECK(t.size() == 6);
    CHECK(t.num_steps() == 4);
}

TEST_CASE("views are downward closures of last events") {
    auto al = demo();
    Fnf t = of(al, "abcacd");
    CHECK(view_of_process(t, al->process_id("p1")).str() == "{a}{b,c}{a}");
    CHECK(view_of_process(t, al->process_id("p2")).str() == "{a}{b,c}{a}{c}");
    CHECK(view_of_process(t, al->process_id("p3")).str() == "{a}{b}{d}");
    CHECK(view(t, procs(al, {"p1", "p3"})).str() == "{a}{b,c}{a,d}");
    // A process with no event has the empty view.
    CHECK(view_of_process(of(al, "c"), al->process_id("p3")).empty());
}

TEST_CASE("stepwise union of per-process views is the joint view") {
    auto al = demo();
    Fnf t = of(al, "abcacd");
    Fnf u = fnf_union(view_of_process(t, 0), view_of_process(t, 2));
    CHECK(u == view(t, procs(al, {"p1", "p3"})));
    // Arbitrary unions that break independence are rejected.
    CHECK_THROWS_AS(fnf_union(of(al, "a"), of(al, "b")), std::invalid_argument);
}

TEST_CASE("an ideal's normal form embeds stepwise into the full trace") {
    auto al = demo();
    Fnf t = of(al, "abcacd");
    Fnf s = of(al, "abd"); // ideal of t
    for (int i = 0; i < s.num_steps(); ++i)
        CHECK(std::includes(t.steps()[i].begin(), t.steps()[i].end(),
                            s.steps()[i].begin(), s.steps()[i].end()));
}

TEST_CASE("partial-order conversion round-trips and validates") {
    auto al = demo();
    Fnf t = of(al, "abcacd");
    auto po = to_partial_order(t);
    CHECK(po.labels.size() == 6);
    CHECK(from_partial_order(po) == t);

    // Breaking comparability of dependent events must be caught.
    po.leq[0][1] = false; // a before b, both on p1
    CHECK_THROWS_AS(from_partial_order(po), std::invalid_argument);
}

TEST_CASE("projection keeps the induced trace") {
    auto al = demo();
    Fnf t = of(al, "abcacd");
    std::vector<bool> keep(al->num_letters(), true);
    keep[al->letter_id("c")] = false;
    CHECK(restrict_to(t, keep).str() == "{a}{b}{a,d}");
}

TEST_CASE("suffix measure finds the last step holding enough letters") {
    auto al = triangle();
    Fnf v = of(al, "abdcbdcb"); // view of p1 after abcdbdcb
    CHECK(v.str() == "{a}{b}{c,d}{b}{c,d}{b}");
    CHECK(f_measure(v, 6) == 3);
    CHECK(f_measure(v, 8) == 1);
    CHECK(f_measure(v, 1) == 6);
    CHECK_THROWS_AS(f_measure(v, 9), std::invalid_argument);
}

TEST_CASE("linearisation enumeration is exact on small traces") {
    auto al = demo();
    CHECK(linearisations(of(al, "ad")).size() == 2);
    CHECK(linearisations(of(al, "abd")).size() == 1); // chain a<b<d
    auto lins = linearisations(of(al, "abcacd"));
    std::set<std::vector<LetterId>> distinct(lins.begin(), lins.end());
    CHECK(lins.size() == distinct.size());
    for (const auto& w : lins) CHECK(fnf_from_word(al, w) == of(al, "abcacd"));
}

TEST_CASE("trace fairness oracle by exhaustive factors") {
    auto al = demo();
    Fnf t = of(al, "abcacd");
    CHECK(is_k_fair_trace(t, 4));
    CHECK(!is_k_fair_trace(t, 3)); // factor cac starves p3
}

TEST_CASE("concatenation matches reading the concatenated words") {
    auto al = demo();
    CHECK(concat(of(al, "ab"), of(al, "cacd")) == of(al, "abcacd"));
    CHECK(concat(of(al, ""), of(al, "ab")) == of(al, "ab"));
}
