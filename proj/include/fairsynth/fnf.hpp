#pragma once

#include "fairsynth/alphabet.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fairsynth {

// One step of a Foata normal form: a set of pairwise independent letters,
// kept sorted by letter id.
using Step = std::vector<LetterId>;

// Foata normal form of a Mazurkiewicz trace: the unique decomposition into
// maximal steps. The empty trace has zero steps.
class Fnf {
public:
    Fnf() = default;
    explicit Fnf(AlphabetRef alpha) : alpha_(std::move(alpha)) {}
    Fnf(AlphabetRef alpha, std::vector<Step> steps);

    const AlphabetRef& alphabet() const { return alpha_; }
    const std::vector<Step>& steps() const { return steps_; }
    int num_steps() const { return static_cast<int>(steps_.size()); }
    bool empty() const { return steps_.empty(); }
    // Number of letters (trace length).
    int size() const;

    // Appends a letter using the Foata insertion rule: the letter lands in
    // the step right after the last step containing a dependent letter.
    void push(LetterId a);

    // Letters of all steps in step-major order (a canonical linearisation).
    std::vector<LetterId> linearisation() const;

    // Rendering "{a}{b,c}{d}"; the empty trace renders as "{}".
    std::string str() const;

    bool operator==(const Fnf& o) const { return steps_ == o.steps_; }
    bool operator!=(const Fnf& o) const { return !(*this == o); }
    // Lexicographic on steps; used only for deterministic containers.
    bool operator<(const Fnf& o) const { return steps_ < o.steps_; }

private:
    AlphabetRef alpha_;
    std::vector<Step> steps_;
};

// A trace as a labelled partial order. Events are indexed 0..n-1; leq is the
// full order relation (reflexive).
struct PartialOrderTrace {
    AlphabetRef alphabet;
    std::vector<LetterId> labels;
    std::vector<std::vector<bool>> leq;
};

Fnf fnf_from_word(const AlphabetRef& alpha, std::span<const LetterId> word);
Fnf fnf_from_names(const AlphabetRef& alpha, const std::vector<std::string>& names);
// Convenience for single-character letter names: "abca" -> word.
std::vector<LetterId> word_from_chars(const AlphabetRef& alpha, const std::string& chars);

// Stepwise union of two FNFs that are consistent suffix views of one trace:
// step i of the result is the set union of the (existing) steps i. Throws
// std::invalid_argument if some resulting step contains dependent letters.
Fnf fnf_union(const Fnf& x, const Fnf& y);

// Trace concatenation: re-normalises y's letters after x.
Fnf concat(const Fnf& x, const Fnf& y);

// Projection onto a sub-alphabet (letters not in `keep` are erased).
Fnf restrict_to(const Fnf& t, const std::vector<bool>& keep_letter);

PartialOrderTrace to_partial_order(const Fnf& t);
// Validates the order axioms (labelled partial order, dependence-compatible)
// and rebuilds the FNF; throws std::invalid_argument on violation.
Fnf from_partial_order(const PartialOrderTrace& po);

// view of the trace for a set of processes: the downward closure of the
// maximal events of those processes. `procs` is a membership mask over P.
Fnf view(const Fnf& t, const std::vector<bool>& procs);
Fnf view_of_process(const Fnf& t, ProcessId p);

// f(t, l): the largest step index i (1-based) such that steps i..m together
// contain at least l letters. Requires 1 <= l <= |t|.
int f_measure(const Fnf& t, int l);

// All linearisations (distinct words). Throws std::runtime_error if more
// than `cap` would be produced.
std::vector<std::vector<LetterId>> linearisations(const Fnf& t, size_t cap = 1000000);

// Oracle-grade k-fairness test: every factor of length >= k of every
// linearisation involves all processes. Enumeration-based; small traces only.
bool is_k_fair_trace(const Fnf& t, int k, size_t cap = 1000000);
// Fairness relative to a subset of the processes: every length-k factor of
// every linearisation must touch all processes with procs[p] set.
bool is_k_fair_trace(const Fnf& t, int k, const std::vector<bool>& procs, size_t cap = 1000000);

std::string render_word(const AlphabetRef& alpha, std::span<const LetterId> word);

} // namespace fairsynth
