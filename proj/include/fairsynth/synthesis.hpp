#pragma once

#include "fairsynth/aa.hpp"
#include "fairsynth/alphabet.hpp"
#include "fairsynth/dfa.hpp"
#include "fairsynth/fnf.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace fairsynth {

enum class Mode { fair, unfair };
enum class CutStrategy { standard, optimised };

struct SynthesisConfig {
    int k = 1;
    Mode mode = Mode::fair;
    CutStrategy cut = CutStrategy::standard;
};

// Local state of the synthesized automaton: a specification state reached
// after the forgotten prefix, a letter counter (mod 2k in the synthesized
// machine, unbounded in the counter reference machine), and the retained
// suffix of the process view in normal form.
struct LocalState {
    int q = 0;
    long long c = 0;
    Fnf phi;

    bool operator==(const LocalState& o) const { return q == o.q && c == o.c && phi == o.phi; }
};

// "(q3, 1, {b}{c,d}{b}{a}{b})"
std::string render_local_state(const Dfa& d, const LocalState& s);

struct SyncResult {
    int elected;               // index into the participant vector
    int q;
    long long c;
    std::vector<Fnf> aligned;  // per participant: suffix after dropping alpha letters
    Fnf merged;                // stepwise union of the aligned suffixes
};
enum class SyncError {
    no_window,   // no counter shift places all residues in k consecutive values
    misaligned,  // alignment does not fall on a step boundary / counters disagree
    bad_union,   // stepwise union is not a valid step sequence
};
using SyncOutcome = std::variant<SyncResult, SyncError>;

// Participants come in ascending process order; ties elect the earliest.
// `modular` selects counter arithmetic mod 2k (the synthesized machine)
// versus exact counters (the reference machine).
SyncOutcome op_synchronise(const std::vector<LocalState>& participants, int k, bool modular);

// Appends the new letter as a fresh step.
Fnf op_expand(const Fnf& merged, LetterId a);

// Drops the longest prefix of steps that keeps at least 2k-2 letters in the
// remainder; the specification run advances over the dropped letters and the
// counter grows by their number.
LocalState op_cut(const Dfa& completed, LocalState s, int k, bool modular);

// The standard-cut boundary: largest 1-based step index whose suffix still
// holds at least 2k-2 letters (1 when nothing can be dropped).
int cut_boundary(const Fnf& phi, int k);

// Additionally drops every prefix step all of whose events are below the
// maximal event of every process (within the order induced by phi), never
// touching the final step. Falls back to the standard cut when some process
// has no event in phi; never retains more than the standard cut.
LocalState op_cut_optimised(const Dfa& completed, LocalState s, int k);

// The synthesized construction bound to a specification DFA (trimmed and
// completed internally; the specification must satisfy the diamond property).
class ModSynthesis {
public:
    ModSynthesis(const Dfa& spec, SynthesisConfig cfg);

    const Dfa& spec() const { return spec_; }
    const Dfa& completed() const { return completed_; }
    int sink() const { return sink_; }
    const SynthesisConfig& config() const { return cfg_; }

    LocalState initial_local() const { return {completed_.initial, 0, Fnf(spec_.alphabet)}; }

    // One joint transition; nullopt is a refusal (suffix not k-fair in unfair
    // mode, or the view run leaves the live part of the specification, or the
    // synchronisation invariants fail -- none of which happen on prefixes of
    // accepted traces).
    std::optional<LocalState> transition(const std::vector<LocalState>& participants,
                                         LetterId a) const;

    // Global acceptance: synchronise all processes and run the remainder.
    bool accept(const std::vector<LocalState>& all) const;

private:
    Dfa spec_;
    Dfa completed_;
    int sink_ = -1;
    SynthesisConfig cfg_;
};

// Wraps the construction as a lazily generated asynchronous automaton.
// Local-state id 0 is an absorbing dead state (refusals), id 1 the initial.
AsyncAutomaton make_aa(std::shared_ptr<const ModSynthesis> syn);
AsyncAutomaton synthesize(const Dfa& spec, const SynthesisConfig& cfg);

// Reference machine: every process stores its full view. Oracle use only.
class ReferenceInfinite {
public:
    explicit ReferenceInfinite(const Dfa& spec);
    void reset();
    void step(LetterId a);
    bool accepting() const;
    const Fnf& view_of(ProcessId p) const { return state_[p]; }

private:
    Dfa spec_;
    Dfa completed_;
    std::vector<Fnf> state_;
};

// Reference machine with exact (unbounded) counters. Oracle use only.
class ReferenceCounter {
public:
    ReferenceCounter(const Dfa& spec, int k);
    void reset();
    void step(LetterId a);
    bool accepting() const;
    const LocalState& state_of(ProcessId p) const { return state_[p]; }
    std::string render(ProcessId p) const { return render_local_state(spec_, state_[p]); }

private:
    Dfa spec_;
    Dfa completed_;
    int k_;
    std::vector<LocalState> state_;
};

} // namespace fairsynth
