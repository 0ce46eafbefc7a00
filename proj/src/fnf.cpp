#include "fairsynth/fnf.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairsynth {

namespace {

void validate_fnf(const DistributedAlphabet& al, const std::vector<Step>& steps) {
    for (size_t i = 0; i < steps.size(); ++i) {
        const Step& s = steps[i];
        if (s.empty()) throw std::invalid_argument("empty step in normal form");
        if (!std::is_sorted(s.begin(), s.end()) ||
            std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("step letters must be sorted and distinct");
        for (size_t x = 0; x < s.size(); ++x)
            for (size_t y = x + 1; y < s.size(); ++y)
                if (al.dependent(s[x], s[y]))
                    throw std::invalid_argument("dependent letters in one step");
        if (i > 0) {
            // Maximality: every letter must depend on something one step back.
            for (LetterId a : s) {
                bool anchored = false;
                for (LetterId b : steps[i - 1])
                    if (al.dependent(a, b)) { anchored = true; break; }
                if (!anchored)
                    throw std::invalid_argument("step not maximal: letter could move left");
            }
        }
    }
}

} // namespace

Fnf::Fnf(AlphabetRef alpha, std::vector<Step> steps)
    : alpha_(std::move(alpha)), steps_(std::move(steps)) {
    validate_fnf(*alpha_, steps_);
}

int Fnf::size() const {
    int n = 0;
    for (const Step& s : steps_) n += static_cast<int>(s.size());
    return n;
}

void Fnf::push(LetterId a) {
    int j = -1;
    for (int i = static_cast<int>(steps_.size()) - 1; i >= 0; --i) {
        bool dep = false;
        for (LetterId b : steps_[i])
            if (alpha_->dependent(a, b)) { dep = true; break; }
        if (dep) { j = i; break; }
    }
    if (j + 1 == static_cast<int>(steps_.size())) steps_.emplace_back();
    Step& s = steps_[j + 1];
    s.insert(std::upper_bound(s.begin(), s.end(), a), a);
}

std::vector<LetterId> Fnf::linearisation() const {
    std::vector<LetterId> w;
    for (const Step& s : steps_) w.insert(w.end(), s.begin(), s.end());
    return w;
}

std::string Fnf::str() const {
    if (steps_.empty()) return "{}";
    std::string out;
    for (const Step& s : steps_) {
        out += '{';
        for (size_t i = 0; i < s.size(); ++i) {
            if (i) out += ',';
            out += alpha_->letter_name(s[i]);
        }
        out += '}';
    }
    return out;
}

Fnf fnf_from_word(const AlphabetRef& alpha, std::span<const LetterId> word) {
    Fnf t(alpha);
    for (LetterId a : word) {
        if (a < 0 || a >= alpha->num_letters())
            throw std::invalid_argument("letter id out of range");
        t.push(a);
    }
    return t;
}

Fnf fnf_from_names(const AlphabetRef& alpha, const std::vector<std::string>& names) {
    std::vector<LetterId> w;
    for (const auto& n : names) {
        LetterId a = alpha->letter_id(n);
        if (a < 0) throw std::invalid_argument("unknown letter: " + n);
        w.push_back(a);
    }
    return fnf_from_word(alpha, w);
}

std::vector<LetterId> word_from_chars(const AlphabetRef& alpha, const std::string& chars) {
    std::vector<LetterId> w;
    for (char c : chars) {
        LetterId a = alpha->letter_id(std::string(1, c));
        if (a < 0) throw std::invalid_argument(std::string("unknown letter: ") + c);
        w.push_back(a);
    }
    return w;
}

Fnf fnf_union(const Fnf& x, const Fnf& y) {
    const AlphabetRef& alpha = x.alphabet() ? x.alphabet() : y.alphabet();
    size_t m = std::max(x.steps().size(), y.steps().size());
    std::vector<Step> steps(m);
    for (size_t i = 0; i < m; ++i) {
        Step s;
        if (i < x.steps().size()) s = x.steps()[i];
        if (i < y.steps().size()) {
            for (LetterId a : y.steps()[i])
                if (!std::binary_search(s.begin(), s.end(), a))
                    s.insert(std::upper_bound(s.begin(), s.end(), a), a);
        }
        steps[i] = std::move(s);
    }
    return Fnf(alpha, std::move(steps)); // validates independence + maximality
}

Fnf concat(const Fnf& x, const Fnf& y) {
    Fnf t = x;
    for (LetterId a : y.linearisation()) t.push(a);
    return t;
}

Fnf restrict_to(const Fnf& t, const std::vector<bool>& keep_letter) {
    std::vector<LetterId> w;
    for (LetterId a : t.linearisation())
        if (keep_letter[a]) w.push_back(a);
    return fnf_from_word(t.alphabet(), w);
}

PartialOrderTrace to_partial_order(const Fnf& t) {
    PartialOrderTrace po;
    po.alphabet = t.alphabet();
    po.labels = t.linearisation();
    const int n = static_cast<int>(po.labels.size());
    const auto& al = *po.alphabet;
    po.leq.assign(n, std::vector<bool>(n, false));
    // leq = reflexive-transitive closure of dependent pairs in linear order.
    for (int i = n - 1; i >= 0; --i) {
        po.leq[i][i] = true;
        for (int j = i + 1; j < n; ++j)
            if (al.dependent(po.labels[i], po.labels[j]) && !po.leq[i][j])
                for (int l = j; l < n; ++l)
                    if (po.leq[j][l]) po.leq[i][l] = true;
    }
    return po;
}

Fnf from_partial_order(const PartialOrderTrace& po) {
    const int n = static_cast<int>(po.labels.size());
    const auto& al = *po.alphabet;
    if (static_cast<int>(po.leq.size()) != n)
        throw std::invalid_argument("order relation has wrong size");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(po.leq[i].size()) != n)
            throw std::invalid_argument("order relation has wrong size");
        if (!po.leq[i][i]) throw std::invalid_argument("order not reflexive");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && po.leq[i][j] && po.leq[j][i])
                throw std::invalid_argument("order not antisymmetric");
            if (al.dependent(po.labels[i], po.labels[j]) && i != j &&
                !po.leq[i][j] && !po.leq[j][i])
                throw std::invalid_argument("dependent events must be comparable");
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                if (po.leq[i][j] && po.leq[j][l] && !po.leq[i][l])
                    throw std::invalid_argument("order not transitive");
    // The order must be generated by its dependent pairs.
    std::vector<std::vector<bool>> gen(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) gen[i][i] = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && po.leq[i][j] && al.dependent(po.labels[i], po.labels[j]))
                gen[i][j] = true;
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            if (gen[i][l])
                for (int j = 0; j < n; ++j)
                    if (gen[l][j]) gen[i][j] = true;
    if (gen != po.leq)
        throw std::invalid_argument("order exceeds closure of dependent pairs");

    // Topological linearisation (stable by event index), then renormalise.
    std::vector<int> indeg(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && po.leq[i][j]) ++indeg[j];
    std::vector<bool> used(n, false);
    std::vector<LetterId> w;
    for (int picked = 0; picked < n; ++picked) {
        int chosen = -1;
        for (int i = 0; i < n; ++i)
            if (!used[i] && indeg[i] == 0) { chosen = i; break; }
        if (chosen < 0) throw std::invalid_argument("order contains a cycle");
        used[chosen] = true;
        w.push_back(po.labels[chosen]);
        for (int j = 0; j < n; ++j)
            if (j != chosen && !used[j] && po.leq[chosen][j]) --indeg[j];
    }
    return fnf_from_word(po.alphabet, w);
}

Fnf view(const Fnf& t, const std::vector<bool>& procs) {
    PartialOrderTrace po = to_partial_order(t);
    const auto& al = *t.alphabet();
    const int n = static_cast<int>(po.labels.size());
    std::vector<bool> keep(n, false);
    for (ProcessId p = 0; p < al.num_processes(); ++p) {
        if (!procs[p]) continue;
        for (int i = n - 1; i >= 0; --i)
            if (al.involves(po.labels[i], p)) {
                for (int j = 0; j < n; ++j)
                    if (po.leq[j][i]) keep[j] = true;
                break;
            }
    }
    std::vector<LetterId> w;
    for (int i = 0; i < n; ++i)
        if (keep[i]) w.push_back(po.labels[i]);
    return fnf_from_word(t.alphabet(), w);
}

Fnf view_of_process(const Fnf& t, ProcessId p) {
    std::vector<bool> mask(t.alphabet()->num_processes(), false);
    mask[p] = true;
    return view(t, mask);
}

int f_measure(const Fnf& t, int l) {
    if (l < 1 || l > t.size())
        throw std::invalid_argument("f_measure requires 1 <= l <= |t|");
    int suffix = 0;
    for (int i = t.num_steps() - 1; i >= 0; --i) {
        suffix += static_cast<int>(t.steps()[i].size());
        if (suffix >= l) return i + 1; // 1-based
    }
    return 1;
}

namespace {

void enumerate_linearisations(const PartialOrderTrace& po, std::vector<bool>& used,
                              std::vector<int>& indeg, std::vector<LetterId>& cur,
                              std::vector<std::vector<LetterId>>& out, size_t cap) {
    const int n = static_cast<int>(po.labels.size());
    if (static_cast<int>(cur.size()) == n) {
        if (out.size() >= cap) throw std::runtime_error("too many linearisations");
        out.push_back(cur);
        return;
    }
    for (int i = 0; i < n; ++i) {
        if (used[i] || indeg[i] != 0) continue;
        used[i] = true;
        cur.push_back(po.labels[i]);
        for (int j = 0; j < n; ++j)
            if (j != i && !used[j] && po.leq[i][j]) --indeg[j];
        enumerate_linearisations(po, used, indeg, cur, out, cap);
        for (int j = 0; j < n; ++j)
            if (j != i && !used[j] && po.leq[i][j]) ++indeg[j];
        cur.pop_back();
        used[i] = false;
    }
}

} // namespace

std::vector<std::vector<LetterId>> linearisations(const Fnf& t, size_t cap) {
    PartialOrderTrace po = to_partial_order(t);
    const int n = static_cast<int>(po.labels.size());
    std::vector<int> indeg(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && po.leq[i][j]) ++indeg[j];
    std::vector<bool> used(n, false);
    std::vector<LetterId> cur;
    std::vector<std::vector<LetterId>> out;
    enumerate_linearisations(po, used, indeg, cur, out, cap);
    return out;
}

bool is_k_fair_trace(const Fnf& t, int k, const std::vector<bool>& procs, size_t cap) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const auto& al = *t.alphabet();
    const int np = al.num_processes();
    int wanted = 0;
    for (int p = 0; p < np; ++p)
        if (procs[p]) ++wanted;
    for (const auto& w : linearisations(t, cap)) {
        const int n = static_cast<int>(w.size());
        for (int i = 0; i + k <= n; ++i) {
            std::vector<bool> seen(np, false);
            int count = 0;
            for (int j = i; j < i + k; ++j)
                for (ProcessId p : al.loc(w[j]))
                    if (procs[p] && !seen[p]) { seen[p] = true; ++count; }
            if (count != wanted) return false;
        }
    }
    return true;
}

bool is_k_fair_trace(const Fnf& t, int k, size_t cap) {
    return is_k_fair_trace(t, k, std::vector<bool>(t.alphabet()->num_processes(), true), cap);
}

std::string render_word(const AlphabetRef& alpha, std::span<const LetterId> word) {
    std::string out;
    bool multi = false;
    for (const auto& l : alpha->letters())
        if (l.size() != 1) { multi = true; break; }
    for (size_t i = 0; i < word.size(); ++i) {
        if (i && multi) out += ' ';
        out += alpha->letter_name(word[i]);
    }
    return out;
}

} // namespace fairsynth
