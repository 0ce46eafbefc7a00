#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fairsynth/alphabet.hpp"

#include <stdexcept>

using namespace fairsynth;

namespace {

// Three processes, letters a,b shared pairwise, c and d local.
AlphabetRef demo() {
    return make_alphabet({"a", "b", "c", "d"}, {"p1", "p2", "p3"},
                         {{"a", {"p1", "p2"}},
                          {"b", {"p1", "p3"}},
                          {"c", {"p2"}},
                          {"d", {"p3"}}});
}

} // namespace

TEST_CASE("letters and processes are sorted and addressable by name") {
    auto al = make_alphabet({"z", "a", "m"}, {"q", "p"},
                            {{"z", {"p"}}, {"a", {"q"}}, {"m", {"p", "q"}}});
    CHECK(al->letters() == std::vector<std::string>{"a", "m", "z"});
    CHECK(al->processes() == std::vector<std::string>{"p", "q"});
    CHECK(al->letter_id("m") == 1);
    CHECK(al->letter_id("nope") == -1);
    CHECK(al->process_id("q") == 1);
    CHECK(al->process_id("nope") == -1);
}

TEST_CASE("location map, per-process alphabets and independence") {
    auto al = demo();
    LetterId a = al->letter_id("a"), b = al->letter_id("b"), c = al->letter_id("c"),
             d = al->letter_id("d");
    ProcessId p1 = al->process_id("p1"), p2 = al->process_id("p2"), p3 = al->process_id("p3");

    CHECK(al->loc(a) == std::vector<ProcessId>{p1, p2});
    CHECK(al->sigma(p1) == std::vector<LetterId>{a, b});
    CHECK(al->sigma(p2) == std::vector<LetterId>{a, c});
    CHECK(al->sigma(p3) == std::vector<LetterId>{b, d});

    // Independent iff the participant sets are disjoint.
    CHECK(al->independent(a, d));
    CHECK(al->independent(c, d));
    CHECK(al->independent(b, c));
    CHECK(al->dependent(a, b));
    CHECK(al->dependent(a, c));
    CHECK(al->dependent(b, d));
    // Dependence is reflexive: a letter never commutes with itself.
    CHECK(al->dependent(c, c));

    CHECK(al->involves(a, p1));
    CHECK(!al->involves(a, p3));
    CHECK(!al->is_global(a));
}

TEST_CASE("loc of a word accumulates participants") {
    auto al = demo();
    std::vector<LetterId> word{al->letter_id("c"), al->letter_id("c")};
    CHECK(al->loc_of_word(word) == std::vector<ProcessId>{al->process_id("p2")});
    word.push_back(al->letter_id("b"));
    CHECK(al->loc_of_word(word).size() == 3);
}

TEST_CASE("communication graph lists sharing pairs once") {
    auto al = demo();
    auto edges = al->communication_graph();
    // a links p1-p2, b links p1-p3; c,d are local.
    REQUIRE(edges.size() == 2);
    CHECK(edges[0] == std::pair<ProcessId, ProcessId>{0, 1});
    CHECK(edges[1] == std::pair<ProcessId, ProcessId>{0, 2});
}

TEST_CASE("validation rejects malformed alphabets") {
    // Empty location set.
    CHECK_THROWS_AS(make_alphabet({"a"}, {"p"}, {{"a", {}}}), std::invalid_argument);
    // Letter without a location entry.
    CHECK_THROWS_AS(make_alphabet({"a", "b"}, {"p"}, {{"a", {"p"}}}), std::invalid_argument);
    // Unknown process in a location.
    CHECK_THROWS_AS(make_alphabet({"a"}, {"p"}, {{"a", {"q"}}}), std::invalid_argument);
    // Duplicate letter names.
    CHECK_THROWS_AS(make_alphabet({"a", "a"}, {"p"}, {{"a", {"p"}}}), std::invalid_argument);
}
