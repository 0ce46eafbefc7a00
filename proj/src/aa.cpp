#include "fairsynth/aa.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fairsynth {

AsyncAutomaton::AsyncAutomaton(AlphabetRef alpha, GlobalState initial, DeltaFn delta,
                               AcceptFn accept, LabelFn label)
    : alpha_(std::move(alpha)),
      initial_(std::move(initial)),
      delta_(std::move(delta)),
      accept_(std::move(accept)),
      label_(std::move(label)) {
    if (static_cast<int>(initial_.size()) != alpha_->num_processes())
        throw std::invalid_argument("initial state arity mismatch");
    memo_.resize(alpha_->num_letters());
    label_memo_.resize(alpha_->num_processes());
}

std::optional<GlobalState> AsyncAutomaton::step(const GlobalState& g, LetterId a) const {
    const auto& procs = alpha_->loc(a);
    std::vector<int> in;
    in.reserve(procs.size());
    for (ProcessId p : procs) in.push_back(g[p]);
    auto& memo = memo_[a];
    auto it = memo.find(in);
    if (it == memo.end()) it = memo.emplace(in, delta_(a, in)).first;
    if (!it->second) return std::nullopt;
    GlobalState out = g;
    for (size_t i = 0; i < procs.size(); ++i) out[procs[i]] = (*it->second)[i];
    return out;
}

std::optional<GlobalState> AsyncAutomaton::run(std::span<const LetterId> word) const {
    GlobalState g = initial_;
    for (LetterId a : word) {
        auto next = step(g, a);
        if (!next) return std::nullopt;
        g = std::move(*next);
    }
    return g;
}

bool AsyncAutomaton::accepts(const GlobalState& g) const { return accept_(g); }

std::string AsyncAutomaton::local_label(ProcessId p, int id) const {
    auto& memo = label_memo_[p];
    auto it = memo.find(id);
    if (it == memo.end()) it = memo.emplace(id, label_(p, id)).first;
    return it->second;
}

std::string AsyncAutomaton::global_label(const GlobalState& g) const {
    std::string out;
    for (ProcessId p = 0; p < alpha_->num_processes(); ++p) {
        if (p) out += " | ";
        out += alpha_->process_name(p) + "=" + local_label(p, g[p]);
    }
    return out;
}

Semantics global_semantics(const AsyncAutomaton& aa, size_t cap) {
    const auto& al = *aa.alphabet();
    Semantics sem;
    sem.dfa.alphabet = aa.alphabet();
    std::map<GlobalState, int> index;
    sem.globals.push_back(aa.initial());
    index[aa.initial()] = 0;
    for (size_t head = 0; head < sem.globals.size(); ++head) {
        GlobalState g = sem.globals[head];
        sem.dfa.delta.emplace_back(al.num_letters(), -1);
        for (LetterId a = 0; a < al.num_letters(); ++a) {
            auto next = aa.step(g, a);
            if (!next) continue;
            auto [it, inserted] = index.emplace(*next, static_cast<int>(sem.globals.size()));
            if (inserted) {
                if (sem.globals.size() >= cap)
                    throw std::runtime_error("global state cap exceeded");
                sem.globals.push_back(*next);
            }
            sem.dfa.delta[head][a] = it->second;
        }
    }
    sem.dfa.initial = 0;
    sem.local_states.assign(al.num_processes(), {});
    for (size_t i = 0; i < sem.globals.size(); ++i) {
        sem.dfa.states.push_back("g" + std::to_string(i));
        sem.dfa.accepting.push_back(aa.accepts(sem.globals[i]));
        for (ProcessId p = 0; p < al.num_processes(); ++p)
            sem.local_states[p].push_back(sem.globals[i][p]);
    }
    for (auto& ids : sem.local_states) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }
    return sem;
}

ExploreResult random_explore(const AsyncAutomaton& aa, int steps, uint64_t seed) {
    std::mt19937_64 rng(seed);
    ExploreResult out;
    GlobalState g = aa.initial();
    for (int i = 0; i < steps; ++i) {
        std::vector<std::pair<LetterId, GlobalState>> enabled;
        for (LetterId a = 0; a < aa.alphabet()->num_letters(); ++a) {
            auto next = aa.step(g, a);
            if (next) enabled.emplace_back(a, std::move(*next));
        }
        if (enabled.empty()) {
            out.deadlocked = true;
            break;
        }
        auto& [a, next] = enabled[std::uniform_int_distribution<size_t>(0, enabled.size() - 1)(rng)];
        out.word.push_back(a);
        g = std::move(next);
    }
    out.final_state = g;
    out.accepting = aa.accepts(g);
    return out;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string dot_of(const Dfa& d, const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  init [shape=point];\n";
    for (int q = 0; q < d.num_states(); ++q)
        os << "  q" << q << " [label=\"" << dot_escape(labels[q]) << "\""
           << (d.accepting[q] ? ", shape=doublecircle" : "") << "];\n";
    os << "  init -> q" << d.initial << ";\n";
    for (int q = 0; q < d.num_states(); ++q) {
        // Group parallel edges on one arrow.
        std::map<int, std::string> byTarget;
        for (LetterId a = 0; a < d.alphabet->num_letters(); ++a) {
            int t = d.delta[q][a];
            if (t < 0) continue;
            auto& lbl = byTarget[t];
            if (!lbl.empty()) lbl += ",";
            lbl += d.alphabet->letter_name(a);
        }
        for (const auto& [t, lbl] : byTarget)
            os << "  q" << q << " -> q" << t << " [label=\"" << dot_escape(lbl) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace

std::string dfa_to_dot(const Dfa& d) { return dot_of(d, d.states); }

std::string export_dot(const AsyncAutomaton& aa, size_t cap) {
    Semantics sem = global_semantics(aa, cap);
    std::vector<std::string> labels;
    labels.reserve(sem.globals.size());
    for (const auto& g : sem.globals) labels.push_back(aa.global_label(g));
    return dot_of(sem.dfa, labels);
}

} // namespace fairsynth
