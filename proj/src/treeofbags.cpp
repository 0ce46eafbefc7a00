#include "fairsynth/treeofbags.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace fairsynth {

TreeOfBags make_tree(const AlphabetRef& alpha,
                     const std::map<std::string, std::vector<std::string>>& bags,
                     const std::map<std::string, std::string>& outer,
                     const std::map<std::string, std::string>& parent) {
    TreeOfBags t;
    for (const auto& [name, _] : bags) t.bag_names.push_back(name);
    std::sort(t.bag_names.begin(), t.bag_names.end());
    auto bag_id = [&](const std::string& n) {
        auto it = std::lower_bound(t.bag_names.begin(), t.bag_names.end(), n);
        if (it == t.bag_names.end() || *it != n)
            throw std::invalid_argument("unknown bag: " + n);
        return static_cast<int>(it - t.bag_names.begin());
    };
    t.bag_procs.resize(t.num_bags());
    t.outer.assign(t.num_bags(), -1);
    t.parent.assign(t.num_bags(), -1);
    t.bag_of.assign(alpha->num_processes(), -1);
    for (const auto& [name, procs] : bags) {
        int b = bag_id(name);
        for (const auto& pn : procs) {
            ProcessId p = alpha->process_id(pn);
            if (p < 0) throw std::invalid_argument("unknown process in bag " + name + ": " + pn);
            t.bag_procs[b].push_back(p);
            if (t.bag_of[p] != -1)
                throw std::invalid_argument("process in two bags: " + pn);
            t.bag_of[p] = b;
        }
        std::sort(t.bag_procs[b].begin(), t.bag_procs[b].end());
    }
    for (const auto& [name, pn] : outer) {
        ProcessId p = alpha->process_id(pn);
        if (p < 0) throw std::invalid_argument("unknown outer process: " + pn);
        t.outer[bag_id(name)] = p;
    }
    for (const auto& [child, par] : parent) t.parent[bag_id(child)] = bag_id(par);
    for (int b = 0; b < t.num_bags(); ++b)
        if (t.parent[b] < 0) {
            if (t.root >= 0) t.root = -2; // more than one root; flagged in validation
            else t.root = b;
        }
    return t;
}

namespace {

// Internal iff every participant lives in the bag.
bool internal_to(const DistributedAlphabet& al, const TreeOfBags& t, LetterId a, int bag) {
    for (ProcessId p : al.loc(a))
        if (t.bag_of[p] != bag) return false;
    return true;
}

} // namespace

std::vector<std::string> validate_architecture(const AlphabetRef& alpha, const TreeOfBags& tob) {
    std::vector<std::string> out;
    const auto& al = *alpha;
    for (ProcessId p = 0; p < al.num_processes(); ++p)
        if (tob.bag_of.size() <= static_cast<size_t>(p) || tob.bag_of[p] < 0)
            out.push_back("process not assigned to a bag: " + al.process_name(p));
    for (int b = 0; b < tob.num_bags(); ++b) {
        if (tob.outer[b] < 0) {
            out.push_back("bag without outer process: " + tob.bag_names[b]);
            continue;
        }
        if (!std::binary_search(tob.bag_procs[b].begin(), tob.bag_procs[b].end(), tob.outer[b]))
            out.push_back("outer process not a member of its bag: " + tob.bag_names[b]);
    }
    if (tob.root == -2) out.push_back("more than one root bag");
    if (tob.root == -1) out.push_back("no root bag");
    // Parent links must reach the root without cycles.
    for (int b = 0; b < tob.num_bags() && tob.root >= 0; ++b) {
        int cur = b, steps = 0;
        while (cur >= 0 && steps <= tob.num_bags()) { cur = tob.parent[cur]; ++steps; }
        if (steps > tob.num_bags()) {
            out.push_back("cycle in bag parent relation at " + tob.bag_names[b]);
            break;
        }
    }
    if (!out.empty()) return out;
    for (LetterId a = 0; a < al.num_letters(); ++a) {
        int bag = tob.bag_of[al.loc(a)[0]];
        if (internal_to(al, tob, a, bag)) continue;
        bool edge = false;
        if (al.loc(a).size() == 2) {
            ProcessId x = al.loc(a)[0], y = al.loc(a)[1];
            for (ProcessId th : {x, y}) {
                ProcessId r = th == x ? y : x;
                int b = tob.bag_of[th];
                if (tob.outer[b] == th && tob.parent[b] >= 0 &&
                    tob.outer[tob.parent[b]] == r) { edge = true; break; }
            }
        }
        if (!edge)
            out.push_back("letter neither bag-internal nor an outer-parent pair: " +
                          al.letter_name(a));
    }
    return out;
}

namespace {

using Rel = std::vector<std::vector<bool>>;

Rel rel_compose(const Rel& x, const Rel& y) {
    const int n = static_cast<int>(x.size());
    Rel out(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
            if (x[i][l])
                for (int j = 0; j < n; ++j)
                    if (y[l][j]) out[i][j] = true;
    return out;
}

bool rel_empty(const Rel& g) {
    for (const auto& row : g)
        for (bool b : row)
            if (b) return false;
    return true;
}

bool rel_cyclic(const Rel& g) {
    const int n = static_cast<int>(g.size());
    Rel reach = g;
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            if (reach[i][l])
                for (int j = 0; j < n; ++j)
                    if (reach[l][j]) reach[i][j] = true;
    for (int i = 0; i < n; ++i)
        if (reach[i][i]) return true;
    return false;
}

Rel reflexive_transitive(Rel g) {
    const int n = static_cast<int>(g.size());
    for (int i = 0; i < n; ++i) g[i][i] = true;
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            if (g[i][l])
                for (int j = 0; j < n; ++j)
                    if (g[l][j]) g[i][j] = true;
    return g;
}

} // namespace

std::optional<int> bag_fairness_parameter(const Dfa& dfa, const TreeOfBags& tob, int bag) {
    Dfa d = trim(dfa);
    const auto& al = *d.alphabet;
    const int n = d.num_states();
    std::vector<bool> in_bag(al.num_letters(), false);
    for (LetterId a = 0; a < al.num_letters(); ++a)
        in_bag[a] = internal_to(al, tob, a, bag);

    Rel eps(n, std::vector<bool>(n, false));
    for (int q = 0; q < n; ++q)
        for (LetterId a = 0; a < al.num_letters(); ++a)
            if (!in_bag[a] && d.delta[q][a] >= 0) eps[q][d.delta[q][a]] = true;
    Rel eps_star = reflexive_transitive(std::move(eps));

    std::vector<Rel> h;
    for (ProcessId p : tob.bag_procs[bag]) {
        Rel edges(n, std::vector<bool>(n, false));
        for (int q = 0; q < n; ++q)
            for (LetterId a = 0; a < al.num_letters(); ++a)
                if (in_bag[a] && !al.involves(a, p) && d.delta[q][a] >= 0)
                    edges[q][d.delta[q][a]] = true;
        Rel hp = rel_compose(eps_star, edges);
        if (rel_cyclic(hp)) return std::nullopt;
        h.push_back(std::move(hp));
    }
    std::vector<Rel> base = h;
    for (int k = 1; k <= n + 1; ++k) {
        bool all_empty = true;
        for (auto& hp : h)
            if (!rel_empty(hp)) { all_empty = false; break; }
        if (all_empty) return k;
        for (size_t i = 0; i < h.size(); ++i)
            if (!rel_empty(h[i])) h[i] = rel_compose(h[i], base[i]);
    }
    return std::nullopt;
}

std::optional<int> DiamOracle::diam(int q1, int q2, int q3, const std::vector<bool>& X) const {
    const auto& al = *dfa_.alphabet;
    if (q1 < 0 || q2 < 0 || q3 < 0 || q1 >= dfa_.num_states() || q2 >= dfa_.num_states() ||
        q3 >= dfa_.num_states())
        return std::nullopt;
    auto key = std::make_tuple(q1, q2, X);
    auto it = memo_.find(key);
    if (it == memo_.end()) {
        // BFS over letters whose participants all lie in X.
        std::optional<std::vector<LetterId>> witness;
        std::vector<int> prev(dfa_.num_states(), -1);
        std::vector<LetterId> via(dfa_.num_states(), -1);
        std::deque<int> queue{q1};
        prev[q1] = q1;
        while (!queue.empty() && prev[q2] < 0) {
            int q = queue.front();
            queue.pop_front();
            for (LetterId a = 0; a < al.num_letters(); ++a) {
                bool inside = true;
                for (ProcessId p : al.loc(a))
                    if (!X[p]) { inside = false; break; }
                int t = inside ? dfa_.delta[q][a] : -1;
                if (t >= 0 && prev[t] < 0) {
                    prev[t] = q;
                    via[t] = a;
                    queue.push_back(t);
                }
            }
        }
        if (prev[q2] >= 0) {
            std::vector<LetterId> w;
            for (int q = q2; q != q1; q = prev[q]) w.push_back(via[q]);
            std::reverse(w.begin(), w.end());
            witness = std::move(w);
        }
        it = memo_.emplace(std::move(key), std::move(witness)).first;
    }
    if (!it->second) return std::nullopt;
    auto r = run_word_from(dfa_, q3, *it->second);
    if (!r) return std::nullopt;
    return *r;
}

TreeSynthesis::TreeSynthesis(const Dfa& spec, TreeOfBags tob) : tob_(std::move(tob)) {
    spec_ = trim(spec);
    alpha_ = spec_.alphabet;
    auto violations = check_diamond(spec_);
    if (!violations.empty())
        throw std::invalid_argument("specification lacks the diamond property: " +
                                    violations.front().describe(spec_));
    auto arch = validate_architecture(alpha_, tob_);
    if (!arch.empty()) throw std::invalid_argument("bad architecture: " + arch.front());
    auto [completed, sink] = complete_with_sink(spec_);
    completed_ = std::move(completed);
    sink_ = sink;

    const int nb = tob_.num_bags();
    sigma_in_.assign(nb, std::vector<bool>(alpha_->num_letters(), false));
    letter_bag_.assign(alpha_->num_letters(), -1);
    letter_edge_.assign(alpha_->num_letters(), -1);
    for (LetterId a = 0; a < alpha_->num_letters(); ++a) {
        int bag = tob_.bag_of[alpha_->loc(a)[0]];
        if (internal_to(*alpha_, tob_, a, bag)) {
            letter_bag_[a] = bag;
            sigma_in_[bag][a] = true;
        } else {
            // Outer-parent pair; the child bag owns the edge.
            ProcessId x = alpha_->loc(a)[0], y = alpha_->loc(a)[1];
            int bx = tob_.bag_of[x], by = tob_.bag_of[y];
            letter_edge_[a] = tob_.parent[bx] == by ? bx : by;
        }
    }
    children_.assign(nb, {});
    for (int b = 0; b < nb; ++b)
        if (tob_.parent[b] >= 0) children_[tob_.parent[b]].push_back(b);
    subtree_.assign(nb, std::vector<bool>(alpha_->num_processes(), false));
    // Bags in reverse BFS order so children are finished first.
    std::vector<int> order{tob_.root};
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : children_[order[i]]) order.push_back(c);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int b = *it;
        for (ProcessId p : tob_.bag_procs[b]) subtree_[b][p] = true;
        for (int c : children_[b])
            for (ProcessId p = 0; p < alpha_->num_processes(); ++p)
                if (subtree_[c][p]) subtree_[b][p] = true;
    }
    kB_.assign(nb, 0);
    for (int b = 0; b < nb; ++b) {
        auto k = bag_fairness_parameter(spec_, tob_, b);
        if (!k)
            throw std::invalid_argument("bag projection is unfair: " + tob_.bag_names[b]);
        kB_[b] = *k;
    }
    diam_ = std::make_unique<DiamOracle>(spec_);
}

TreeLocalState TreeSynthesis::initial_local(ProcessId p) const {
    TreeLocalState s;
    s.is_outer = tob_.outer[tob_.bag_of[p]] == p;
    s.o = {completed_.initial, completed_.initial, 0, Fnf(alpha_)};
    s.i = {0, Fnf(alpha_)};
    return s;
}

std::string TreeSynthesis::render(ProcessId p, const TreeLocalState& s) const {
    if (s.is_outer)
        return "(" + completed_.states[s.o.back_q] + ", " + completed_.states[s.o.q] + ", " +
               std::to_string(s.o.c) + ", " + s.o.phi.str() + ")";
    (void)p;
    return "(" + std::to_string(s.i.c) + ", " + s.i.phi.str() + ")";
}

std::optional<TreeSynthesis::BagSync> TreeSynthesis::sync_bag(
        const std::vector<const TreeLocalState*>& states, const std::vector<ProcessId>& procs,
        int bag, bool with_cut) const {
    const int k = kB_[bag];
    std::vector<LocalState> parts;
    parts.reserve(states.size());
    int outer_idx = -1;
    for (size_t i = 0; i < states.size(); ++i) {
        const TreeLocalState& s = *states[i];
        if (procs[i] == tob_.outer[bag]) outer_idx = static_cast<int>(i);
        if (s.is_outer)
            parts.push_back({0, s.o.c, s.o.phi});
        else
            parts.push_back({0, s.i.c, s.i.phi});
    }
    auto outcome = op_synchronise(parts, k, /*modular=*/true);
    if (std::holds_alternative<SyncError>(outcome)) return std::nullopt;
    auto& sync = std::get<SyncResult>(outcome);
    BagSync out;
    out.merged = sync.merged;
    out.aligned_outer = outer_idx >= 0 ? sync.aligned[outer_idx] : Fnf(alpha_);
    out.c = sync.c;
    out.dropped = 0;
    if (with_cut) {
        int j = cut_boundary(out.merged, k);
        long long dropped = 0;
        std::vector<Step> rest;
        for (int i = 0; i < out.merged.num_steps(); ++i) {
            if (i < j - 1)
                dropped += static_cast<long long>(out.merged.steps()[i].size());
            else
                rest.push_back(out.merged.steps()[i]);
        }
        out.cut_phi = Fnf(alpha_, std::move(rest));
        out.cut_c = (out.c + dropped) % (2LL * k);
        out.dropped = dropped;
    }
    return out;
}

std::vector<LetterId> TreeSynthesis::new_for_outer(const Fnf& merged,
                                                   const Fnf& aligned_outer) const {
    if (aligned_outer.empty()) return merged.linearisation();
    // The outer process's maximal event sits in the last step of its aligned
    // suffix; locate it inside the merged sequence by (step, letter).
    int s = aligned_outer.num_steps() - 1;
    LetterId l = aligned_outer.steps()[s][0];
    PartialOrderTrace po = to_partial_order(merged);
    int idx = 0;
    for (int i = 0; i < s; ++i) idx += static_cast<int>(merged.steps()[i].size());
    int ev = -1;
    for (size_t i = 0; i < merged.steps()[s].size(); ++i)
        if (merged.steps()[s][i] == l) ev = idx + static_cast<int>(i);
    std::vector<LetterId> out;
    if (ev < 0) return merged.linearisation();
    for (size_t i = 0; i < po.labels.size(); ++i)
        if (!po.leq[i][ev]) out.push_back(po.labels[i]);
    return out;
}

std::optional<std::vector<TreeLocalState>> TreeSynthesis::transition(
        const std::vector<TreeLocalState>& participants, LetterId a) const {
    std::vector<ProcessId> procs = alpha_->loc(a);
    std::vector<TreeLocalState> next = participants;

    if (letter_edge_[a] >= 0) {
        int bag = letter_edge_[a];
        ProcessId th = tob_.outer[bag];
        int ti = procs[0] == th ? 0 : 1, ri = 1 - ti;
        const OuterLocalState& so = participants[ti].o;
        const OuterLocalState& sr = participants[ri].o;
        auto q = diam_->diam(so.back_q, so.q, sr.q, subtree_[bag]);
        if (!q) return std::nullopt;
        int t = completed_.next(*q, a);
        if (t == sink_) return std::nullopt;
        next[ti].o.back_q = next[ti].o.q = t;
        next[ri].o.q = t;
        return next;
    }

    int bag = letter_bag_[a];
    std::vector<const TreeLocalState*> states;
    for (const auto& s : participants) states.push_back(&s);
    // Expand before the cut: synchronise, append the letter, then trim.
    auto sync = sync_bag(states, procs, bag, /*with_cut=*/false);
    if (!sync) return std::nullopt;
    const int k = kB_[bag];
    Fnf expanded = op_expand(sync->merged, a);
    int j = cut_boundary(expanded, k);
    long long dropped = 0;
    std::vector<Step> rest;
    for (int i = 0; i < expanded.num_steps(); ++i) {
        if (i < j - 1)
            dropped += static_cast<long long>(expanded.steps()[i].size());
        else
            rest.push_back(expanded.steps()[i]);
    }
    Fnf new_phi(alpha_, std::move(rest));
    long long new_c = (sync->c + dropped) % (2LL * k);

    // The modular counters only stay reconcilable while the bag-internal
    // restriction of the trace is k-fair for the bag's processes; a violation
    // shows up inside the kept suffix, so refuse it here.
    std::vector<bool> bag_mask(alpha_->num_processes(), false);
    for (ProcessId p : tob_.bag_procs[bag]) bag_mask[p] = true;
    if (!is_k_fair_trace(new_phi, k, bag_mask)) return std::nullopt;

    for (size_t i = 0; i < participants.size(); ++i) {
        if (procs[i] == tob_.outer[bag]) {
            auto fresh = new_for_outer(sync->merged, sync->aligned_outer);
            auto q = run_word_from(completed_, participants[i].o.q, fresh);
            int t = q ? completed_.next(*q, a) : -1;
            if (t < 0 || t == sink_) return std::nullopt;
            next[i].o.q = t;
            next[i].o.c = new_c;
            next[i].o.phi = new_phi;
        } else {
            next[i].i.c = new_c;
            next[i].i.phi = new_phi;
        }
    }
    return next;
}

std::optional<int> TreeSynthesis::bag_view_state(const std::vector<TreeLocalState>& global,
                                                 int bag) const {
    std::vector<const TreeLocalState*> states;
    std::vector<ProcessId> procs;
    for (ProcessId p : tob_.bag_procs[bag]) {
        states.push_back(&global[p]);
        procs.push_back(p);
    }
    auto sync = sync_bag(states, procs, bag, /*with_cut=*/false);
    if (!sync) return std::nullopt;
    auto fresh = new_for_outer(sync->merged, sync->aligned_outer);
    auto q = run_word_from(completed_, global[tob_.outer[bag]].o.q, fresh);
    if (!q) return std::nullopt;
    return *q;
}

std::optional<int> TreeSynthesis::cstate(const std::vector<TreeLocalState>& global,
                                         int bag) const {
    auto q = bag_view_state(global, bag);
    if (!q) return std::nullopt;
    for (int child : children_[bag]) {
        auto qc = cstate(global, child);
        if (!qc) return std::nullopt;
        ProcessId th = tob_.outer[child];
        q = diam_->diam(global[th].o.back_q, *qc, *q, subtree_[child]);
        if (!q) return std::nullopt;
    }
    return q;
}

bool TreeSynthesis::accept(const std::vector<TreeLocalState>& global) const {
    auto q = cstate(global, tob_.root);
    return q && *q < completed_.num_states() && completed_.accepting[*q];
}

namespace {

struct TreeIntern {
    std::vector<std::vector<TreeLocalState>> table; // per process
    std::vector<std::map<std::string, int>> index;
};

} // namespace

AsyncAutomaton make_tree_aa(std::shared_ptr<const TreeSynthesis> syn) {
    const AlphabetRef alpha = syn->spec().alphabet;
    auto intern = std::make_shared<TreeIntern>();
    intern->table.resize(alpha->num_processes());
    intern->index.resize(alpha->num_processes());
    GlobalState init;
    for (ProcessId p = 0; p < alpha->num_processes(); ++p) {
        auto s = syn->initial_local(p);
        intern->index[p][syn->render(p, s)] = 0;
        intern->table[p].push_back(std::move(s));
        init.push_back(0);
    }
    auto intern_state = [syn, intern](ProcessId p, const TreeLocalState& s) {
        auto key = syn->render(p, s);
        auto it = intern->index[p].find(key);
        if (it != intern->index[p].end()) return it->second;
        int id = static_cast<int>(intern->table[p].size());
        intern->table[p].push_back(s);
        intern->index[p].emplace(std::move(key), id);
        return id;
    };
    AsyncAutomaton::DeltaFn delta = [syn, intern, intern_state, alpha](
                                        LetterId a, const std::vector<int>& in)
        -> std::optional<std::vector<int>> {
        const auto& procs = alpha->loc(a);
        std::vector<TreeLocalState> parts;
        for (size_t i = 0; i < in.size(); ++i) parts.push_back(intern->table[procs[i]][in[i]]);
        auto next = syn->transition(parts, a);
        if (!next) return std::nullopt;
        std::vector<int> out;
        for (size_t i = 0; i < procs.size(); ++i) out.push_back(intern_state(procs[i], (*next)[i]));
        return out;
    };
    AsyncAutomaton::AcceptFn accept = [syn, intern](const GlobalState& g) {
        std::vector<TreeLocalState> all;
        for (size_t p = 0; p < g.size(); ++p) all.push_back(intern->table[p][g[p]]);
        return syn->accept(all);
    };
    AsyncAutomaton::LabelFn label = [syn, intern](ProcessId p, int id) {
        return syn->render(p, intern->table[p][id]);
    };
    return AsyncAutomaton(alpha, std::move(init), std::move(delta), std::move(accept),
                          std::move(label));
}

AsyncAutomaton synthesize_tree_of_bags(const Dfa& spec, const TreeOfBags& tob) {
    return make_tree_aa(std::make_shared<const TreeSynthesis>(spec, tob));
}

} // namespace fairsynth
