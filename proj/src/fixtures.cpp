#include "fairsynth/fixtures.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace fairsynth {

namespace {

Dfa make_dfa(AlphabetRef alpha, std::vector<std::string> states, const std::string& initial,
             const std::vector<std::string>& accepting,
             const std::vector<std::tuple<std::string, std::string, std::string>>& edges) {
    Dfa d;
    d.alphabet = std::move(alpha);
    d.states = std::move(states);
    auto state_id = [&](const std::string& s) {
        auto it = std::find(d.states.begin(), d.states.end(), s);
        if (it == d.states.end()) throw std::invalid_argument("unknown state " + s);
        return static_cast<int>(it - d.states.begin());
    };
    d.initial = state_id(initial);
    d.accepting.assign(d.states.size(), false);
    for (const auto& s : accepting) d.accepting[state_id(s)] = true;
    d.delta.assign(d.states.size(), std::vector<int>(d.alphabet->num_letters(), -1));
    for (const auto& [from, letter, to] : edges) {
        LetterId a = d.alphabet->letter_id(letter);
        if (a < 0) throw std::invalid_argument("unknown letter " + letter);
        d.delta[state_id(from)][a] = state_id(to);
    }
    return d;
}

} // namespace

Fixture gen_fig1() {
    auto alpha = make_alphabet({"a", "b", "c"}, {"p1", "p2"},
                               {{"a", {"p1"}}, {"b", {"p2"}}, {"c", {"p1", "p2"}}});
    std::vector<std::string> states;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            states.push_back(std::to_string(i) + std::to_string(j));
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto name = std::to_string(i) + std::to_string(j);
            if (i < 2) edges.emplace_back(name, "a", std::to_string(i + 1) + std::to_string(j));
            if (j < 2) edges.emplace_back(name, "b", std::to_string(i) + std::to_string(j + 1));
        }
    edges.emplace_back("11", "c", "00");
    edges.emplace_back("22", "c", "00");
    return {alpha, make_dfa(alpha, states, "00", {"00"}, edges)};
}

AsyncAutomaton gen_fig1_aa() {
    auto alpha = make_alphabet({"a", "b", "c"}, {"p1", "p2"},
                               {{"a", {"p1"}}, {"b", {"p2"}}, {"c", {"p1", "p2"}}});
    LetterId a = alpha->letter_id("a"), b = alpha->letter_id("b");
    AsyncAutomaton::DeltaFn delta = [a, b](LetterId l, const std::vector<int>& in)
        -> std::optional<std::vector<int>> {
        if (l == a || l == b) {
            if (in[0] < 2) return std::vector<int>{in[0] + 1};
            return std::nullopt;
        }
        // c: both processes reset from equal non-zero positions.
        if (in[0] == in[1] && in[0] > 0) return std::vector<int>{0, 0};
        return std::nullopt;
    };
    AsyncAutomaton::AcceptFn accept = [](const GlobalState& g) { return g[0] == 0 && g[1] == 0; };
    AsyncAutomaton::LabelFn label = [](ProcessId, int id) { return std::to_string(id); };
    return AsyncAutomaton(alpha, {0, 0}, std::move(delta), std::move(accept), std::move(label));
}

Fixture gen_fig3() {
    auto alpha = make_alphabet({"a", "b", "c", "d"}, {"p1", "p2", "p3"},
                               {{"a", {"p1", "p2"}},
                                {"b", {"p1", "p3"}},
                                {"c", {"p2", "p3"}},
                                {"d", {"p1"}}});
    return {alpha, make_dfa(alpha, {"q0", "q1", "q2", "q3"}, "q0", {"q3"},
                            {{"q0", "c", "q1"},
                             {"q0", "d", "q2"},
                             {"q0", "a", "q3"},
                             {"q1", "d", "q3"},
                             {"q2", "c", "q3"},
                             {"q3", "b", "q0"}})};
}

Fixture gen_appendixG() {
    auto alpha = make_alphabet({"a", "b", "c"}, {"p1", "p2"},
                               {{"a", {"p1"}}, {"b", {"p2"}}, {"c", {"p1", "p2"}}});
    return {alpha, make_dfa(alpha, {"0", "1"}, "0", {"0"},
                            {{"0", "c", "0"},
                             {"0", "a", "1"},
                             {"0", "b", "1"},
                             {"1", "a", "0"},
                             {"1", "b", "0"}})};
}

Fixture gen_example8(int n) {
    if (n < 2) throw std::invalid_argument("example8 needs n >= 2");
    std::vector<std::string> letters{"c"}, processes;
    std::vector<std::pair<std::string, std::vector<std::string>>> loc;
    std::vector<std::string> all;
    for (int i = 1; i <= n; ++i) {
        processes.push_back("p" + std::to_string(i));
        all.push_back("p" + std::to_string(i));
    }
    for (int i = 1; i <= n; ++i) {
        letters.push_back("a" + std::to_string(i));
        loc.push_back({"a" + std::to_string(i), {"p" + std::to_string(i)}});
    }
    loc.push_back({"c", all});
    auto alpha = make_alphabet(letters, processes, loc);

    std::vector<std::string> states{"q0", "t"};
    for (int i = 1; i <= n; ++i) states.push_back("s" + std::to_string(i));
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    for (int i = 1; i <= n; ++i) {
        edges.emplace_back("q0", "a" + std::to_string(i), "s" + std::to_string(i));
        for (int j = 1; j <= n; ++j)
            if (j != i)
                edges.emplace_back("s" + std::to_string(i), "a" + std::to_string(j), "t");
    }
    edges.emplace_back("t", "c", "q0");
    return {alpha, make_dfa(alpha, states, "q0", {"q0"}, edges)};
}

Fixture gen_lower_bound(int n) {
    if (n < 4 || n % 4 != 0) throw std::invalid_argument("lower-bound family needs n = 4k");
    const int k = n / 4;
    auto pname = [](int i) { return "p" + std::to_string(i); };
    std::vector<std::string> processes;
    for (int i = 0; i <= n; ++i) processes.push_back(pname(i));

    std::set<std::pair<int, int>> pairs;
    auto pair_of = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        pairs.insert({i, j});
        return "x" + std::to_string(i) + "-" + std::to_string(j);
    };
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    std::vector<std::string> states{"f"};
    for (int m = 0; m < k; ++m) {
        const int b = 4 * m;
        states.push_back("u" + std::to_string(m));
        states.push_back("v" + std::to_string(m));
        states.push_back("A" + std::to_string(m));
        states.push_back("B" + std::to_string(m));
        auto next = m + 1 < k ? "u" + std::to_string(m + 1) : std::string("z");
        edges.emplace_back("u" + std::to_string(m), pair_of(b, b + 1), "v" + std::to_string(m));
        edges.emplace_back("v" + std::to_string(m), pair_of(b + 1, b + 2), "A" + std::to_string(m));
        edges.emplace_back("A" + std::to_string(m), pair_of(b + 2, b + 4), next);
        edges.emplace_back("v" + std::to_string(m), pair_of(b, b + 3), "B" + std::to_string(m));
        edges.emplace_back("B" + std::to_string(m), pair_of(b + 3, b + 4), next);
    }
    states.push_back("z");
    for (int m = 0; m < k; ++m)
        edges.emplace_back("z", pair_of(4 * m, n), "f");

    std::vector<std::string> letters;
    std::vector<std::pair<std::string, std::vector<std::string>>> loc;
    for (auto [i, j] : pairs) {
        std::string name = "x" + std::to_string(i) + "-" + std::to_string(j);
        letters.push_back(name);
        loc.push_back({name, {pname(i), pname(j)}});
    }
    auto alpha = make_alphabet(letters, processes, loc);
    return {alpha, make_dfa(alpha, states, "u0", {"f"}, edges)};
}

Fixture gen_philosophers(const PhilosophersConfig& cfg) {
    const int n = cfg.n;
    if (n < 2) throw std::invalid_argument("philosophers needs n >= 2");
    std::vector<std::string> processes;
    for (int i = 0; i < n; ++i) processes.push_back("p" + std::to_string(i));
    std::vector<std::string> letters;
    std::vector<std::pair<std::string, std::vector<std::string>>> loc;
    for (int i = 0; i < n; ++i) {
        std::set<std::string> around{processes[(i + n - 1) % n], processes[i], processes[(i + 1) % n]};
        for (const char* kind : {"pickL_", "pickR_", "putL_", "putR_"}) {
            std::string name = kind + std::to_string(i);
            letters.push_back(name);
            loc.push_back({name, {around.begin(), around.end()}});
        }
    }
    auto alpha = make_alphabet(letters, processes, loc);

    // Chopstick i sits between philosophers i-1 and i; status 0 = on the
    // table, 1 = held by philosopher i (left hand), 2 = by i-1 (right hand).
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    auto name_of = [&](int code) {
        std::string s;
        for (int i = 0; i < n; ++i) {
            s += static_cast<char>('0' + code % 3);
            code /= 3;
        }
        return s;
    };
    auto digit = [&](int code, int i) {
        for (int j = 0; j < i; ++j) code /= 3;
        return code % 3;
    };
    auto with_digit = [&](int code, int i, int v) {
        int pow = 1;
        for (int j = 0; j < i; ++j) pow *= 3;
        return code + (v - digit(code, i)) * pow;
    };

    Dfa d;
    d.alphabet = alpha;
    for (int s = 0; s < total; ++s) d.states.push_back(name_of(s));
    d.initial = 0;
    d.accepting.assign(total, false);
    d.accepting[0] = true;
    d.delta.assign(total, std::vector<int>(alpha->num_letters(), -1));
    for (int s = 0; s < total; ++s) {
        for (int i = 0; i < n; ++i) {
            int left = i, right = (i + 1) % n;
            auto set_edge = [&](const std::string& letter, int target) {
                d.delta[s][alpha->letter_id(letter + std::to_string(i))] = target;
            };
            if (digit(s, left) == 0) set_edge("pickL_", with_digit(s, left, 1));
            // In strict mode a philosopher follows a left-then-right pick
            // discipline: the right chopstick only comes up while the left
            // one is already in hand.
            if (digit(s, right) == 0 && (!cfg.strict_eat || digit(s, left) == 1))
                set_edge("pickR_", with_digit(s, right, 2));
            if (digit(s, left) == 1) set_edge("putL_", with_digit(s, left, 0));
            if (digit(s, right) == 2) set_edge("putR_", with_digit(s, right, 0));
        }
    }
    return {alpha, trim(d)};
}

} // namespace fairsynth
