#pragma once

#include "fairsynth/aa.hpp"
#include "fairsynth/dfa.hpp"
#include "fairsynth/synthesis.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fairsynth {

// A partition of the processes into bags, each with a designated outer
// process; bags form a tree via the parent relation. Every letter must be
// internal to one bag or connect a bag's outer process with its parent's.
struct TreeOfBags {
    std::vector<std::string> bag_names;             // sorted
    std::vector<std::vector<ProcessId>> bag_procs;  // sorted members
    std::vector<ProcessId> outer;                   // per bag
    std::vector<int> parent;                        // per bag; -1 at the root
    int root = -1;
    std::vector<int> bag_of;                        // per process

    int num_bags() const { return static_cast<int>(bag_names.size()); }
};

TreeOfBags make_tree(const AlphabetRef& alpha,
                     const std::map<std::string, std::vector<std::string>>& bags,
                     const std::map<std::string, std::string>& outer,
                     const std::map<std::string, std::string>& parent);

// Human-readable violations; empty means the architecture is well-formed and
// every letter is classifiable.
std::vector<std::string> validate_architecture(const AlphabetRef& alpha, const TreeOfBags& tob);

// Least k such that the internal-letter projection of every run is k-fair
// with respect to the bag's processes (other letters act as epsilon moves).
std::optional<int> bag_fairness_parameter(const Dfa& dfa, const TreeOfBags& tob, int bag);

// Completes the third corner of a commuting square: with q1 = d(q0,t1),
// q2 = d(q0,t1 t2), q3 = d(q0,t1 t3), loc(t2) within X and loc(t3) disjoint
// from X, returns d(q0, t1 t2 t3). Witness search is memoised.
class DiamOracle {
public:
    explicit DiamOracle(const Dfa& d) : dfa_(d) {}
    std::optional<int> diam(int q1, int q2, int q3, const std::vector<bool>& X) const;

private:
    const Dfa& dfa_;
    mutable std::map<std::tuple<int, int, std::vector<bool>>, std::optional<std::vector<LetterId>>> memo_;
};

struct InnerLocalState {
    long long c = 0;
    Fnf phi; // over the bag-internal letters
};
struct OuterLocalState {
    int back_q = 0; // specification state before the last synchronisation with the parent
    int q = 0;      // state after this process's view
    long long c = 0;
    Fnf phi;
};

// Per-process local state of the tree construction.
struct TreeLocalState {
    bool is_outer = false;
    OuterLocalState o;
    InnerLocalState i;
};

class TreeSynthesis {
public:
    TreeSynthesis(const Dfa& spec, TreeOfBags tob);

    const Dfa& spec() const { return spec_; }
    const Dfa& completed() const { return completed_; }
    const TreeOfBags& tree() const { return tob_; }
    int bag_k(int bag) const { return kB_[bag]; }

    TreeLocalState initial_local(ProcessId p) const;
    std::string render(ProcessId p, const TreeLocalState& s) const;

    // One joint transition; participants in ascending process order.
    std::optional<std::vector<TreeLocalState>> transition(
        const std::vector<TreeLocalState>& participants, LetterId a) const;

    // d(q0, view of all bag processes) recovered from local data.
    std::optional<int> bag_view_state(const std::vector<TreeLocalState>& global, int bag) const;
    // d(q0, view of all processes in the bag subtree).
    std::optional<int> cstate(const std::vector<TreeLocalState>& global, int bag) const;

    bool accept(const std::vector<TreeLocalState>& global) const;

private:
    Dfa spec_;
    Dfa completed_;
    int sink_ = -1;
    AlphabetRef alpha_;
    TreeOfBags tob_;
    std::vector<int> kB_;
    std::vector<std::vector<bool>> sigma_in_;     // per bag: letter mask
    std::vector<int> letter_bag_;                 // internal letters: owning bag, else -1
    std::vector<int> letter_edge_;                // outer-pair letters: child bag, else -1
    std::vector<std::vector<bool>> subtree_;      // per bag: process mask of the bag subtree
    std::vector<std::vector<int>> children_;
    std::unique_ptr<DiamOracle> diam_;

    struct BagSync {
        Fnf merged;
        Fnf aligned_outer; // empty when the outer process has no retained events
        long long c;
        Fnf cut_phi;       // shared (c,phi) after the cut
        long long cut_c;
        long long dropped;
    };
    std::optional<BagSync> sync_bag(const std::vector<const TreeLocalState*>& states,
                                    const std::vector<ProcessId>& procs, int bag,
                                    bool with_cut) const;
    // Events of `merged` strictly above the outer process's maximal event.
    std::vector<LetterId> new_for_outer(const Fnf& merged, const Fnf& aligned_outer) const;
};

AsyncAutomaton make_tree_aa(std::shared_ptr<const TreeSynthesis> syn);
AsyncAutomaton synthesize_tree_of_bags(const Dfa& spec, const TreeOfBags& tob);

} // namespace fairsynth
