#include "fairsynth/synthesis.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace fairsynth {

std::string render_local_state(const Dfa& d, const LocalState& s) {
    std::string name = s.q < d.num_states() ? d.states[s.q] : "?";
    return "(" + name + ", " + std::to_string(s.c) + ", " + s.phi.str() + ")";
}

namespace {

// Drops `n` letters from the front; fails unless that lands on a step boundary.
std::optional<Fnf> drop_prefix_letters(const Fnf& t, long long n) {
    if (n < 0) return std::nullopt;
    size_t i = 0;
    while (n > 0 && i < t.steps().size()) {
        n -= static_cast<long long>(t.steps()[i].size());
        ++i;
    }
    if (n != 0) return std::nullopt;
    std::vector<Step> rest(t.steps().begin() + i, t.steps().end());
    return Fnf(t.alphabet(), std::move(rest));
}

long long mod2k(long long v, int k) {
    long long m = 2LL * k;
    return ((v % m) + m) % m;
}

} // namespace

SyncOutcome op_synchronise(const std::vector<LocalState>& participants, int k, bool modular) {
    assert(!participants.empty());
    const int n = static_cast<int>(participants.size());
    std::vector<long long> d(n);
    if (modular) {
        // Place all residues c + |phi| into one window of k consecutive values.
        std::vector<long long> r(n);
        for (int i = 0; i < n; ++i)
            r[i] = mod2k(participants[i].c + participants[i].phi.size(), k);
        bool found = false;
        for (long long s = 0; s < 2LL * k && !found; ++s) {
            bool ok = true;
            for (int i = 0; i < n; ++i) {
                d[i] = mod2k(r[i] + s, k);
                if (d[i] >= k) { ok = false; break; }
            }
            found = ok;
        }
        if (!found) return SyncError::no_window;
    } else {
        for (int i = 0; i < n; ++i)
            d[i] = participants[i].c + participants[i].phi.size();
    }
    // Longest view wins; on ties the most-forgetful (shortest suffix), then
    // the earliest process.
    int e = 0;
    for (int i = 1; i < n; ++i) {
        if (d[i] > d[e] ||
            (d[i] == d[e] && participants[i].phi.size() < participants[e].phi.size()))
            e = i;
    }
    SyncResult out;
    out.elected = e;
    out.q = participants[e].q;
    out.c = participants[e].c;
    out.aligned.reserve(n);
    for (int i = 0; i < n; ++i) {
        long long alpha = modular ? mod2k(participants[e].c - participants[i].c, k)
                                  : participants[e].c - participants[i].c;
        if (alpha < 0 || alpha > participants[i].phi.size()) return SyncError::misaligned;
        auto suffix = drop_prefix_letters(participants[i].phi, alpha);
        if (!suffix) return SyncError::misaligned;
        out.aligned.push_back(std::move(*suffix));
    }
    try {
        Fnf merged = out.aligned[0];
        for (int i = 1; i < n; ++i) merged = fnf_union(merged, out.aligned[i]);
        out.merged = std::move(merged);
    } catch (const std::invalid_argument&) {
        return SyncError::bad_union;
    }
    return out;
}

Fnf op_expand(const Fnf& merged, LetterId a) {
    Fnf out = merged;
    out.push(a);
    return out;
}

namespace {

// Largest 1-based step index whose suffix still holds >= 2k-2 letters;
// 1 when the whole sequence is too short to drop anything.
int cut_index(const Fnf& phi, int k) {
    const long long need = 2LL * k - 2;
    long long suffix = 0;
    for (int i = phi.num_steps() - 1; i >= 0; --i) {
        suffix += static_cast<long long>(phi.steps()[i].size());
        if (suffix >= need) return i + 1;
    }
    return 1;
}

LocalState apply_cut(const Dfa& completed, LocalState s, int j, int k, bool modular) {
    if (j <= 1) return s;
    long long dropped = 0;
    int q = s.q;
    for (int i = 0; i < j - 1; ++i)
        for (LetterId a : s.phi.steps()[i]) {
            q = completed.next(q, a);
            ++dropped;
        }
    std::vector<Step> rest(s.phi.steps().begin() + (j - 1), s.phi.steps().end());
    LocalState out;
    out.q = q;
    out.c = modular ? mod2k(s.c + dropped, k) : s.c + dropped;
    out.phi = Fnf(s.phi.alphabet(), std::move(rest));
    return out;
}

} // namespace

int cut_boundary(const Fnf& phi, int k) { return cut_index(phi, k); }

LocalState op_cut(const Dfa& completed, LocalState s, int k, bool modular) {
    if (s.phi.empty()) return s;
    int j = cut_index(s.phi, k);
    return apply_cut(completed, std::move(s), j, k, modular);
}

LocalState op_cut_optimised(const Dfa& completed, LocalState s, int k) {
    if (s.phi.empty()) return s;
    int j = cut_index(s.phi, k);
    const auto& al = *s.phi.alphabet();
    PartialOrderTrace po = to_partial_order(s.phi);
    const int n = static_cast<int>(po.labels.size());
    std::vector<int> maxev(al.num_processes(), -1);
    bool all_present = true;
    for (ProcessId p = 0; p < al.num_processes() && all_present; ++p) {
        for (int i = n - 1; i >= 0; --i)
            if (al.involves(po.labels[i], p)) { maxev[p] = i; break; }
        if (maxev[p] < 0) all_present = false;
    }
    if (all_present) {
        // Longest step prefix every event of which is already below each
        // process's maximal event; the final step always stays.
        std::vector<bool> known(n, true);
        for (int i = 0; i < n; ++i)
            for (ProcessId p = 0; p < al.num_processes() && known[i]; ++p)
                if (!po.leq[i][maxev[p]]) known[i] = false;
        int idx = 0, full = 0;
        for (int stp = 0; stp + 1 < s.phi.num_steps(); ++stp) {
            bool ok = true;
            for (size_t l = 0; l < s.phi.steps()[stp].size(); ++l)
                if (!known[idx + static_cast<int>(l)]) ok = false;
            if (!ok) break;
            idx += static_cast<int>(s.phi.steps()[stp].size());
            full = stp + 1;
        }
        j = std::max(j, full + 1);
    }
    return apply_cut(completed, std::move(s), j, k, true);
}

ModSynthesis::ModSynthesis(const Dfa& spec, SynthesisConfig cfg) : cfg_(cfg) {
    if (cfg.k < 1) throw std::invalid_argument("k must be >= 1");
    spec_ = trim(spec);
    auto violations = check_diamond(spec_);
    if (!violations.empty())
        throw std::invalid_argument("specification lacks the diamond property: " +
                                    violations.front().describe(spec_));
    auto [completed, sink] = complete_with_sink(spec_);
    completed_ = std::move(completed);
    sink_ = sink;
}

std::optional<LocalState> ModSynthesis::transition(const std::vector<LocalState>& participants,
                                                   LetterId a) const {
    auto outcome = op_synchronise(participants, cfg_.k, /*modular=*/true);
    if (std::holds_alternative<SyncError>(outcome)) return std::nullopt;
    auto& sync = std::get<SyncResult>(outcome);
    LocalState next{sync.q, sync.c, op_expand(sync.merged, a)};
    next = cfg_.cut == CutStrategy::optimised ? op_cut_optimised(completed_, std::move(next), cfg_.k)
                                              : op_cut(completed_, std::move(next), cfg_.k, true);
    if (cfg_.mode == Mode::unfair && !is_k_fair_trace(next.phi, cfg_.k)) return std::nullopt;
    if (sink_ >= 0) {
        // A view run that leaves the live part of the specification cannot be
        // extended to an accepted trace; drop it in either mode.
        auto w = next.phi.linearisation();
        if (run_word_from(completed_, next.q, w) == sink_) return std::nullopt;
    }
    return next;
}

bool ModSynthesis::accept(const std::vector<LocalState>& all) const {
    auto outcome = op_synchronise(all, cfg_.k, /*modular=*/true);
    if (std::holds_alternative<SyncError>(outcome)) return false;
    auto& sync = std::get<SyncResult>(outcome);
    auto w = sync.merged.linearisation();
    auto q = run_word_from(completed_, sync.q, w);
    return q && completed_.accepting[*q];
}

namespace {

struct Intern {
    std::vector<LocalState> table; // id 0 reserved for the dead marker
    std::map<std::pair<std::pair<int, long long>, Fnf>, int> index;

    int intern(const LocalState& s) {
        auto key = std::make_pair(std::make_pair(s.q, s.c), s.phi);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(table.size());
        table.push_back(s);
        index.emplace(std::move(key), id);
        return id;
    }
};

} // namespace

AsyncAutomaton make_aa(std::shared_ptr<const ModSynthesis> syn) {
    auto intern = std::make_shared<Intern>();
    intern->table.push_back(syn->initial_local()); // placeholder at id 0 (dead)
    intern->intern(syn->initial_local());          // id 1: initial
    const AlphabetRef alpha = syn->spec().alphabet;
    GlobalState init(alpha->num_processes(), 1);

    AsyncAutomaton::DeltaFn delta = [syn, intern](LetterId a, const std::vector<int>& in)
        -> std::optional<std::vector<int>> {
        std::vector<LocalState> parts;
        parts.reserve(in.size());
        for (int id : in) {
            if (id == 0) return std::nullopt;
            parts.push_back(intern->table[id]);
        }
        auto next = syn->transition(parts, a);
        if (!next) return std::nullopt;
        int id = intern->intern(*next);
        return std::vector<int>(in.size(), id);
    };
    AsyncAutomaton::AcceptFn accept = [syn, intern](const GlobalState& g) {
        std::vector<LocalState> all;
        all.reserve(g.size());
        for (int id : g) {
            if (id == 0) return false;
            all.push_back(intern->table[id]);
        }
        return syn->accept(all);
    };
    AsyncAutomaton::LabelFn label = [syn, intern](ProcessId, int id) {
        if (id == 0) return std::string("dead");
        return render_local_state(syn->spec(), intern->table[id]);
    };
    return AsyncAutomaton(alpha, std::move(init), std::move(delta), std::move(accept),
                          std::move(label));
}

AsyncAutomaton synthesize(const Dfa& spec, const SynthesisConfig& cfg) {
    return make_aa(std::make_shared<const ModSynthesis>(spec, cfg));
}

ReferenceInfinite::ReferenceInfinite(const Dfa& spec) {
    spec_ = trim(spec);
    completed_ = complete_with_sink(spec_).first;
    reset();
}

void ReferenceInfinite::reset() {
    state_.assign(spec_.alphabet->num_processes(), Fnf(spec_.alphabet));
}

void ReferenceInfinite::step(LetterId a) {
    const auto& procs = spec_.alphabet->loc(a);
    Fnf merged = state_[procs[0]];
    for (size_t i = 1; i < procs.size(); ++i) merged = fnf_union(merged, state_[procs[i]]);
    merged.push(a);
    for (ProcessId p : procs) state_[p] = merged;
}

bool ReferenceInfinite::accepting() const {
    Fnf whole(spec_.alphabet);
    for (const auto& v : state_) whole = fnf_union(whole, v);
    auto w = whole.linearisation();
    auto q = run_word(completed_, w);
    return q && completed_.accepting[*q];
}

ReferenceCounter::ReferenceCounter(const Dfa& spec, int k) : k_(k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    spec_ = trim(spec);
    completed_ = complete_with_sink(spec_).first;
    reset();
}

void ReferenceCounter::reset() {
    state_.assign(spec_.alphabet->num_processes(), LocalState{completed_.initial, 0, Fnf(spec_.alphabet)});
}

void ReferenceCounter::step(LetterId a) {
    const auto& procs = spec_.alphabet->loc(a);
    std::vector<LocalState> parts;
    for (ProcessId p : procs) parts.push_back(state_[p]);
    auto outcome = op_synchronise(parts, k_, /*modular=*/false);
    if (std::holds_alternative<SyncError>(outcome))
        throw std::runtime_error("reference machine synchronisation failed");
    auto& sync = std::get<SyncResult>(outcome);
    LocalState next{sync.q, sync.c, op_expand(sync.merged, a)};
    next = op_cut(completed_, std::move(next), k_, /*modular=*/false);
    for (ProcessId p : procs) state_[p] = next;
}

bool ReferenceCounter::accepting() const {
    auto outcome = op_synchronise(state_, k_, /*modular=*/false);
    if (std::holds_alternative<SyncError>(outcome)) return false;
    auto& sync = std::get<SyncResult>(outcome);
    auto w = sync.merged.linearisation();
    auto q = run_word_from(completed_, sync.q, w);
    return q && completed_.accepting[*q];
}

} // namespace fairsynth
