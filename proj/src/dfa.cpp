#include "fairsynth/dfa.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace fairsynth {

std::string DiamondViolation::describe(const Dfa& d) const {
    std::string out = kind == Kind::commute ? "independent letters do not commute"
                                            : "half-diamond definedness gap";
    out += " at state " + d.states[state] + " with letters " +
           d.alphabet->letter_name(a) + "," + d.alphabet->letter_name(b);
    return out;
}

std::vector<DiamondViolation> check_diamond(const Dfa& d) {
    std::vector<DiamondViolation> out;
    const auto& al = *d.alphabet;
    for (int q = 0; q < d.num_states(); ++q) {
        for (LetterId a = 0; a < al.num_letters(); ++a) {
            for (LetterId b = a + 1; b < al.num_letters(); ++b) {
                if (!al.independent(a, b)) continue;
                int da = d.next(q, a), db = d.next(q, b);
                int dab = d.next(da, b), dba = d.next(db, a);
                if (dab >= 0 && db < 0)
                    out.push_back({DiamondViolation::Kind::closure, q, a, b});
                else if (dba >= 0 && da < 0)
                    out.push_back({DiamondViolation::Kind::closure, q, b, a});
                else if (da >= 0 && db >= 0 && (dab >= 0) != (dba >= 0))
                    out.push_back({DiamondViolation::Kind::closure, q, dab >= 0 ? a : b,
                                   dab >= 0 ? b : a});
                else if (dab >= 0 && dba >= 0 && dab != dba)
                    out.push_back({DiamondViolation::Kind::commute, q, a, b});
            }
        }
    }
    return out;
}

std::optional<int> run_word_from(const Dfa& d, int q, std::span<const LetterId> word) {
    for (LetterId a : word) {
        q = d.next(q, a);
        if (q < 0) return std::nullopt;
    }
    return q;
}

std::optional<int> run_word(const Dfa& d, std::span<const LetterId> word) {
    return run_word_from(d, d.initial, word);
}

std::optional<int> run_trace(const Dfa& d, const Fnf& t) {
    auto w = t.linearisation();
    return run_word(d, w);
}

bool accepts_word(const Dfa& d, std::span<const LetterId> word) {
    auto q = run_word(d, word);
    return q && d.accepting[*q];
}

Dfa trim(const Dfa& d) {
    const int n = d.num_states();
    std::vector<bool> fwd(n, false);
    std::deque<int> queue{d.initial};
    fwd[d.initial] = true;
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int t : d.delta[q])
            if (t >= 0 && !fwd[t]) { fwd[t] = true; queue.push_back(t); }
    }
    std::vector<std::vector<int>> rev(n);
    for (int q = 0; q < n; ++q)
        for (int t : d.delta[q])
            if (t >= 0) rev[t].push_back(q);
    std::vector<bool> bwd(n, false);
    for (int q = 0; q < n; ++q)
        if (d.accepting[q] && !bwd[q]) { bwd[q] = true; queue.push_back(q); }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int s : rev[q])
            if (!bwd[s]) { bwd[s] = true; queue.push_back(s); }
    }

    std::vector<int> map(n, -1);
    Dfa out;
    out.alphabet = d.alphabet;
    for (int q = 0; q < n; ++q)
        if (fwd[q] && bwd[q]) {
            map[q] = static_cast<int>(out.states.size());
            out.states.push_back(d.states[q]);
            out.accepting.push_back(d.accepting[q]);
        }
    if (map[d.initial] < 0) {
        // Empty language.
        out.states = {d.states[d.initial]};
        out.accepting = {false};
        out.initial = 0;
        out.delta.assign(1, std::vector<int>(d.alphabet->num_letters(), -1));
        return out;
    }
    out.initial = map[d.initial];
    out.delta.assign(out.states.size(), std::vector<int>(d.alphabet->num_letters(), -1));
    for (int q = 0; q < n; ++q) {
        if (map[q] < 0) continue;
        for (LetterId a = 0; a < d.alphabet->num_letters(); ++a) {
            int t = d.delta[q][a];
            if (t >= 0 && map[t] >= 0) out.delta[map[q]][a] = map[t];
        }
    }
    return out;
}

std::pair<Dfa, int> complete_with_sink(const Dfa& d) {
    bool complete = true;
    for (const auto& row : d.delta)
        for (int t : row)
            if (t < 0) { complete = false; break; }
    if (complete) return {d, -1};
    Dfa out = d;
    std::string name = "sink";
    while (std::find(out.states.begin(), out.states.end(), name) != out.states.end())
        name += "_";
    int sink = out.num_states();
    out.states.push_back(name);
    out.accepting.push_back(false);
    out.delta.emplace_back(d.alphabet->num_letters(), sink);
    for (int q = 0; q < sink; ++q)
        for (auto& t : out.delta[q])
            if (t < 0) t = sink;
    return {out, sink};
}

namespace {

using Rel = std::vector<std::vector<bool>>;

// Edges q -> q' via letters that avoid process p.
Rel avoid_relation(const Dfa& d, ProcessId p) {
    const int n = d.num_states();
    Rel g(n, std::vector<bool>(n, false));
    for (int q = 0; q < n; ++q)
        for (LetterId a = 0; a < d.alphabet->num_letters(); ++a)
            if (!d.alphabet->involves(a, p) && d.delta[q][a] >= 0)
                g[q][d.delta[q][a]] = true;
    return g;
}

bool rel_empty(const Rel& g) {
    for (const auto& row : g)
        for (bool b : row)
            if (b) return false;
    return true;
}

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

bool has_cycle(const Rel& g) {
    const int n = static_cast<int>(g.size());
    std::vector<int> color(n, 0);
    std::vector<int> stack, iter;
    for (int s = 0; s < n; ++s) {
        if (color[s]) continue;
        stack = {s};
        while (!stack.empty()) {
            int v = stack.back();
            if (color[v] == 0) color[v] = 1;
            bool advanced = false;
            for (int w = 0; w < n; ++w) {
                if (!g[v][w]) continue;
                if (color[w] == 1) return true;
                if (color[w] == 0) { stack.push_back(w); advanced = true; break; }
            }
            if (!advanced) { color[v] = 2; stack.pop_back(); }
        }
    }
    return false;
}

} // namespace

std::optional<int> fairness_parameter(const Dfa& d) {
    const int np = d.alphabet->num_processes();
    std::vector<Rel> powers;
    for (ProcessId p = 0; p < np; ++p) {
        Rel g = avoid_relation(d, p);
        if (has_cycle(g)) return std::nullopt; // arbitrarily long runs avoid p
        powers.push_back(std::move(g));
    }
    std::vector<Rel> base = powers;
    for (int k = 1; k <= d.num_states() + 1; ++k) {
        bool all_empty = true;
        for (ProcessId p = 0; p < np; ++p)
            if (!rel_empty(powers[p])) { all_empty = false; break; }
        if (all_empty) return k;
        for (ProcessId p = 0; p < np; ++p)
            if (!rel_empty(powers[p])) powers[p] = rel_compose(powers[p], base[p]);
    }
    return std::nullopt; // unreachable for acyclic relations, kept as guard
}

bool is_k_fair_dfa(const Dfa& d, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    auto param = fairness_parameter(d);
    return param && *param <= k;
}

std::optional<UnfairnessWitness> unfairness_witness(const Dfa& d, int k) {
    const auto& al = *d.alphabet;
    for (ProcessId p = 0; p < al.num_processes(); ++p) {
        // can[i]: states admitting a length-i run avoiding p.
        std::vector<std::vector<bool>> can(1, std::vector<bool>(d.num_states(), true));
        bool any = true;
        for (int i = 1; i <= k && any; ++i) {
            std::vector<bool> cur(d.num_states(), false);
            any = false;
            for (int q = 0; q < d.num_states(); ++q)
                for (LetterId a = 0; a < al.num_letters() && !cur[q]; ++a)
                    if (!al.involves(a, p) && d.delta[q][a] >= 0 && can[i - 1][d.delta[q][a]])
                        cur[q] = any = true;
            can.push_back(std::move(cur));
        }
        if (!any || static_cast<int>(can.size()) <= k) continue;
        // Lexicographically least word of length k read along can[] layers.
        std::vector<bool> frontier = can[k];
        UnfairnessWitness w;
        w.avoided = p;
        for (int i = 0; i < k; ++i) {
            for (LetterId a = 0; a < al.num_letters(); ++a) {
                if (al.involves(a, p)) continue;
                std::vector<bool> next(d.num_states(), false);
                bool ok = false;
                for (int q = 0; q < d.num_states(); ++q)
                    if (frontier[q] && d.delta[q][a] >= 0 && can[k - i - 1][d.delta[q][a]])
                        next[d.delta[q][a]] = ok = true;
                if (ok) {
                    w.word.push_back(a);
                    frontier = std::move(next);
                    break;
                }
            }
        }
        // Recover a start state for the word.
        for (int q = 0; q < d.num_states(); ++q)
            if (run_word_from(d, q, w.word)) { w.from_state = q; break; }
        return w;
    }
    return std::nullopt;
}

EquivalenceResult dfa_equivalent(const Dfa& a, const Dfa& b) {
    if (a.alphabet->letters() != b.alphabet->letters())
        throw std::invalid_argument("equivalence requires identical letter sets");
    auto [ca, sa] = complete_with_sink(a);
    auto [cb, sb] = complete_with_sink(b);
    const int nl = a.alphabet->num_letters();
    const long long nb = cb.num_states();
    std::vector<std::vector<bool>> seen(ca.num_states(), std::vector<bool>(cb.num_states(), false));
    struct Node { int qa, qb, parent; LetterId via; };
    std::vector<Node> nodes{{ca.initial, cb.initial, -1, -1}};
    seen[ca.initial][cb.initial] = true;
    for (size_t head = 0; head < nodes.size(); ++head) {
        auto [qa, qb, parent, via] = nodes[head];
        if (ca.accepting[qa] != cb.accepting[qb]) {
            std::vector<LetterId> word;
            for (int i = static_cast<int>(head); nodes[i].parent >= 0; i = nodes[i].parent)
                word.push_back(nodes[i].via);
            std::reverse(word.begin(), word.end());
            return {false, word};
        }
        for (LetterId l = 0; l < nl; ++l) {
            int ta = ca.delta[qa][l], tb = cb.delta[qb][l];
            if (!seen[ta][tb]) {
                seen[ta][tb] = true;
                nodes.push_back({ta, tb, static_cast<int>(head), l});
            }
        }
    }
    (void)nb; (void)sa; (void)sb;
    return {true, {}};
}

} // namespace fairsynth
