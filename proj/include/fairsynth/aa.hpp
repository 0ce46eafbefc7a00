#pragma once

#include "fairsynth/alphabet.hpp"
#include "fairsynth/dfa.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fairsynth {

// Global state of an asynchronous automaton: one local-state id per process.
using GlobalState = std::vector<int>;

// Asynchronous automaton with lazily generated local state spaces. Local
// states are provider-scoped integer ids; the provider also renders them.
// A transition returning nullopt is a refusal: the letter is not enabled.
class AsyncAutomaton {
public:
    // participant states are passed in loc(a) order (ascending process id).
    using DeltaFn = std::function<std::optional<std::vector<int>>(LetterId, const std::vector<int>&)>;
    using AcceptFn = std::function<bool(const GlobalState&)>;
    using LabelFn = std::function<std::string(ProcessId, int)>;

    AsyncAutomaton(AlphabetRef alpha, GlobalState initial, DeltaFn delta,
                   AcceptFn accept, LabelFn label);

    const AlphabetRef& alphabet() const { return alpha_; }
    const GlobalState& initial() const { return initial_; }

    std::optional<GlobalState> step(const GlobalState& g, LetterId a) const;
    std::optional<GlobalState> run(std::span<const LetterId> word) const;
    bool accepts(const GlobalState& g) const;

    std::string local_label(ProcessId p, int id) const;
    std::string global_label(const GlobalState& g) const;

private:
    AlphabetRef alpha_;
    GlobalState initial_;
    DeltaFn delta_;
    AcceptFn accept_;
    LabelFn label_;
    mutable std::vector<std::map<std::vector<int>, std::optional<std::vector<int>>>> memo_;
    mutable std::vector<std::map<int, std::string>> label_memo_;
};

// Materialised reachable behaviour of an AA.
struct Semantics {
    Dfa dfa;                                    // partial deterministic automaton
    std::vector<GlobalState> globals;           // global state per dfa state
    std::vector<std::vector<int>> local_states; // per process: sorted reachable ids
};

// BFS over reachable global states, letters in lexicographic order. Throws
// std::runtime_error if more than `cap` global states are reached.
Semantics global_semantics(const AsyncAutomaton& aa, size_t cap = 1000000);

struct ExploreResult {
    std::vector<LetterId> word;
    GlobalState final_state;
    bool deadlocked = false; // stopped early: no letter enabled
    bool accepting = false;
};
// Seeded random walk choosing uniformly among enabled letters.
ExploreResult random_explore(const AsyncAutomaton& aa, int steps, uint64_t seed);

std::string dfa_to_dot(const Dfa& d);
// DOT of the materialised global semantics, nodes labelled by local states.
std::string export_dot(const AsyncAutomaton& aa, size_t cap = 100000);

} // namespace fairsynth
