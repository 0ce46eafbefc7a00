#pragma once

#include "fairsynth/alphabet.hpp"
#include "fairsynth/fnf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fairsynth {

// Deterministic finite automaton over a distributed alphabet. Transitions may
// be partial: delta[q][a] == -1 means undefined.
struct Dfa {
    AlphabetRef alphabet;
    std::vector<std::string> states;
    int initial = 0;
    std::vector<bool> accepting;
    std::vector<std::vector<int>> delta; // [state][letter] -> state or -1

    int num_states() const { return static_cast<int>(states.size()); }
    int next(int q, LetterId a) const { return q < 0 ? -1 : delta[q][a]; }
};

struct DiamondViolation {
    enum class Kind {
        commute,   // both ab and ba defined but end in different states
        closure,   // q -a-> q1 -b-> q2 exists but q -b-> is undefined
    };
    Kind kind;
    int state;
    LetterId a, b;
    std::string describe(const Dfa& d) const;
};

// Empty result means the DFA has the diamond property (independent letters
// commute, and definedness is closed under the half-diamond).
std::vector<DiamondViolation> check_diamond(const Dfa& d);

std::optional<int> run_word(const Dfa& d, std::span<const LetterId> word);
std::optional<int> run_word_from(const Dfa& d, int q, std::span<const LetterId> word);
// Runs a canonical linearisation; requires the diamond property for the
// result to be trace-invariant.
std::optional<int> run_trace(const Dfa& d, const Fnf& t);

bool accepts_word(const Dfa& d, std::span<const LetterId> word);

// Restriction to reachable and co-reachable states. If the language is empty
// the result is a single rejecting initial state with no transitions.
Dfa trim(const Dfa& d);

// Total completion; adds a rejecting sink (named uniquely) only if needed.
// Returns the completed DFA and the sink index (-1 if already complete).
std::pair<Dfa, int> complete_with_sink(const Dfa& d);

// Decision procedure on a trim DFA: least k such that no state admits a
// length-k run that avoids some process (all such runs stay co-reachable in
// a trim DFA). nullopt if no k <= |Q| works, which is equivalent to "none".
std::optional<int> fairness_parameter(const Dfa& d);
bool is_k_fair_dfa(const Dfa& d, int k);

// For a trim DFA that is not k-fair: a word of length k, readable from some
// reachable state, that avoids some process entirely. Deterministic
// (lexicographically least such word over the least offending process).
struct UnfairnessWitness {
    ProcessId avoided;
    int from_state;
    std::vector<LetterId> word;
};
std::optional<UnfairnessWitness> unfairness_witness(const Dfa& d, int k);

struct EquivalenceResult {
    bool equivalent;
    // Shortest separating word when not equivalent.
    std::vector<LetterId> counterexample;
};
// Language equality; alphabets must have identical letter names.
EquivalenceResult dfa_equivalent(const Dfa& a, const Dfa& b);

} // namespace fairsynth
