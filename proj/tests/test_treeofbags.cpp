#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fairsynth/fixtures.hpp"
#include "fairsynth/json_io.hpp"
#include "fairsynth/treeofbags.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <set>
#include <vector>

using namespace fairsynth;

namespace {

// Shuffle of (ab)* and (cd)* over three processes in two bags: a local to p1,
// b shared p1-p2, c shared p2-p3 (the tree edge), d local to p3.
Fixture two_bag_spec() {
    auto al = make_alphabet({"a", "b", "c", "d"}, {"p1", "p2", "p3"},
                            {{"a", {"p1"}},
                             {"b", {"p1", "p2"}},
                             {"c", {"p2", "p3"}},
                             {"d", {"p3"}}});
    Dfa d;
    d.alphabet = al;
    d.states = {"s00", "s10", "s01", "s11"}; // (ab-phase, cd-phase)
    d.initial = 0;
    d.accepting = {true, false, false, false};
    d.delta.assign(4, std::vector<int>(4, -1));
    auto id = [&](int ab, int cd) { return ab + 2 * cd; };
    for (int ab = 0; ab < 2; ++ab)
        for (int cd = 0; cd < 2; ++cd) {
            int s = id(ab, cd);
            if (ab == 0) d.delta[s][al->letter_id("a")] = id(1, cd);
            else d.delta[s][al->letter_id("b")] = id(0, cd);
            if (cd == 0) d.delta[s][al->letter_id("c")] = id(ab, 1);
            else d.delta[s][al->letter_id("d")] = id(ab, 0);
        }
    return {al, d};
}

TreeOfBags two_bag_arch(const AlphabetRef& al) {
    return make_tree(al, {{"B1", {"p1", "p2"}}, {"B2", {"p3"}}},
                     {{"B1", "p2"}, {"B2", "p3"}}, {{"B2", "B1"}});
}

TreeOfBags singleton_arch_fig1(const AlphabetRef& al) {
    return make_tree(al, {{"P1", {"p1"}}, {"P2", {"p2"}}},
                     {{"P1", "p1"}, {"P2", "p2"}}, {{"P2", "P1"}});
}

// Applies one letter to a full global state vector via the joint transition.
bool advance(const TreeSynthesis& syn, std::vector<TreeLocalState>& global, LetterId a) {
    const auto& procs = syn.spec().alphabet->loc(a);
    std::vector<TreeLocalState> parts;
    for (ProcessId p : procs) parts.push_back(global[p]);
    auto next = syn.transition(parts, a);
    if (!next) return false;
    for (size_t i = 0; i < procs.size(); ++i) global[procs[i]] = (*next)[i];
    return true;
}

} // namespace

TEST_CASE("architecture construction and validation") {
    auto [al, d] = two_bag_spec();
    auto tob = two_bag_arch(al);
    CHECK(validate_architecture(al, tob).empty());
    CHECK(tob.root == tob.bag_of[al->process_id("p1")]);

    // The triangle alphabet cannot be split into singleton bags: some letter
    // always connects two non-adjacent outer processes.
    auto fig3 = gen_fig3();
    auto bad = make_tree(fig3.alphabet,
                         {{"P1", {"p1"}}, {"P2", {"p2"}}, {"P3", {"p3"}}},
                         {{"P1", "p1"}, {"P2", "p2"}, {"P3", "p3"}},
                         {{"P2", "P1"}, {"P3", "P1"}});
    auto errs = validate_architecture(fig3.alphabet, bad);
    REQUIRE(!errs.empty());
    CHECK(errs[0].find("c") != std::string::npos);

    // Missing parent links mean several roots.
    auto orphan = make_tree(al, {{"B1", {"p1", "p2"}}, {"B2", {"p3"}}},
                            {{"B1", "p2"}, {"B2", "p3"}}, {});
    CHECK(!validate_architecture(al, orphan).empty());

    auto j = tree_to_json(al, tob);
    auto back = tree_from_json(al, j);
    CHECK(back.bag_names == tob.bag_names);
    CHECK(back.parent == tob.parent);
    CHECK(back.outer == tob.outer);
}

TEST_CASE("per-bag fairness with outside letters as silent moves") {
    auto [al, d] = two_bag_spec();
    auto tob = two_bag_arch(al);
    int b1 = 0, b2 = 1;
    REQUIRE(tob.bag_names[b1] == "B1");
    // Inside B1 a run of two a's is impossible, but one a avoids p2.
    CHECK(bag_fairness_parameter(d, tob, b1) == 2);
    // B2 is a singleton: every internal letter involves p3.
    CHECK(bag_fairness_parameter(d, tob, b2) == 1);

    // A single bag over the whole triangle spec degenerates to plain fairness.
    auto fig3 = gen_fig3();
    auto single = make_tree(fig3.alphabet, {{"B", {"p1", "p2", "p3"}}}, {{"B", "p1"}}, {});
    CHECK(bag_fairness_parameter(fig3.dfa, single, 0) == 4);

    // An unfair bag projection has no parameter.
    auto g = gen_appendixG();
    auto gt = make_tree(g.alphabet, {{"B", {"p1", "p2"}}}, {{"B", "p1"}}, {});
    CHECK(!bag_fairness_parameter(g.dfa, gt, 0).has_value());
}

TEST_CASE("commuting-square completion agrees with direct runs") {
    auto [al, d] = two_bag_spec();
    Dfa t = trim(d);
    DiamOracle oracle(t);

    std::vector<bool> only_p3(3, false);
    only_p3[al->process_id("p3")] = true;
    std::vector<bool> p1p2(3, true);
    p1p2[al->process_id("p3")] = false;

    auto words_over = [&](const std::vector<bool>& X, int len) {
        std::vector<std::vector<LetterId>> out{{}};
        for (int l = 0; l < len; ++l) {
            std::vector<std::vector<LetterId>> next;
            for (const auto& w : out)
                for (LetterId a = 0; a < al->num_letters(); ++a) {
                    bool inside = true;
                    for (ProcessId p : al->loc(a)) inside &= X[p];
                    if (!inside) continue;
                    auto e = w;
                    e.push_back(a);
                    next.push_back(std::move(e));
                }
            for (auto& w : next) out.push_back(std::move(w));
        }
        return out;
    };

    int checked = 0;
    for (const auto& X : {only_p3, p1p2}) {
        std::vector<bool> co(3);
        for (int p = 0; p < 3; ++p) co[p] = !X[p];
        for (int q1 = 0; q1 < t.num_states(); ++q1)
            for (const auto& t2 : words_over(X, 2))
                for (const auto& t3 : words_over(co, 2)) {
                    auto q2 = run_word_from(t, q1, t2);
                    auto q3 = run_word_from(t, q1, t3);
                    if (!q2 || !q3) continue;
                    auto got = oracle.diam(q1, *q2, *q3, X);
                    auto want = run_word_from(t, *q3, t2);
                    REQUIRE(got.has_value());
                    CHECK(*got == *want);
                    ++checked;
                }
    }
    CHECK(checked > 50);
}

TEST_CASE("local data recovers bag view states and subtree states") {
    auto [al, d] = two_bag_spec();
    TreeSynthesis syn(d, two_bag_arch(al));
    Dfa t = syn.spec();

    std::vector<TreeLocalState> init;
    for (ProcessId p = 0; p < 3; ++p) init.push_back(syn.initial_local(p));

    std::set<std::string> rendered;
    int live = 0;
    std::function<void(std::vector<TreeLocalState>&, Fnf&, int)> dfs =
        [&](std::vector<TreeLocalState>& global, Fnf& trace, int depth) {
            for (int bag = 0; bag < 2; ++bag) {
                std::vector<bool> mask(3, false);
                for (ProcessId p : syn.tree().bag_procs[bag]) mask[p] = true;
                auto got = syn.bag_view_state(global, bag);
                auto want = run_trace(t, view(trace, mask));
                REQUIRE(got.has_value());
                REQUIRE(want.has_value());
                CHECK(*got == *want);
            }
            auto whole = run_trace(t, trace);
            REQUIRE(whole.has_value());
            auto root_state = syn.cstate(global, syn.tree().root);
            REQUIRE(root_state.has_value());
            CHECK(*root_state == *whole);
            CHECK(syn.accept(global) == t.accepting[*whole]);
            ++live;
            for (ProcessId p = 0; p < 3; ++p) rendered.insert(syn.render(p, global[p]));

            if (depth == 0) return;
            for (LetterId a = 0; a < al->num_letters(); ++a) {
                auto copy = global;
                if (!advance(syn, copy, a)) continue;
                Fnf ext = trace;
                ext.push(a);
                dfs(copy, ext, depth - 1);
            }
        };
    Fnf empty(al);
    dfs(init, empty, 6);
    CHECK(live > 100);
    CHECK(rendered.size() > 4);
}

TEST_CASE("tree synthesis matches the specification language") {
    SUBCASE("single bag, plain fair construction") {
        auto fig3 = gen_fig3();
        auto tob = make_tree(fig3.alphabet, {{"B", {"p1", "p2", "p3"}}}, {{"B", "p1"}}, {});
        auto aa = synthesize_tree_of_bags(fig3.dfa, tob);
        CHECK(dfa_equivalent(global_semantics(aa).dfa, fig3.dfa).equivalent);
    }
    SUBCASE("singleton bags, pure hierarchy") {
        auto fig1 = gen_fig1();
        auto aa = synthesize_tree_of_bags(fig1.dfa, singleton_arch_fig1(fig1.alphabet));
        CHECK(dfa_equivalent(global_semantics(aa).dfa, fig1.dfa).equivalent);
    }
    SUBCASE("two bags") {
        auto [al, d] = two_bag_spec();
        auto aa = synthesize_tree_of_bags(d, two_bag_arch(al));
        CHECK(dfa_equivalent(global_semantics(aa).dfa, d).equivalent);
    }
    SUBCASE("unfair bag projections are rejected up front") {
        auto g = gen_appendixG();
        auto gt = make_tree(g.alphabet, {{"B", {"p1", "p2"}}}, {{"B", "p1"}}, {});
        CHECK_THROWS_AS(TreeSynthesis(g.dfa, gt), std::invalid_argument);
    }
}
