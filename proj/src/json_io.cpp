#include "fairsynth/json_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

using nlohmann::json;

namespace fairsynth {

json alphabet_to_json(const DistributedAlphabet& al) {
    json loc = json::object();
    for (LetterId a = 0; a < al.num_letters(); ++a) {
        json procs = json::array();
        for (ProcessId p : al.loc(a)) procs.push_back(al.process_name(p));
        loc[al.letter_name(a)] = std::move(procs);
    }
    return json{{"letters", al.letters()}, {"processes", al.processes()}, {"loc", std::move(loc)}};
}

AlphabetRef alphabet_from_json(const json& j) {
    std::vector<std::pair<std::string, std::vector<std::string>>> loc;
    for (const auto& [letter, procs] : j.at("loc").items())
        loc.push_back({letter, procs.get<std::vector<std::string>>()});
    return make_alphabet(j.at("letters").get<std::vector<std::string>>(),
                         j.at("processes").get<std::vector<std::string>>(), loc);
}

json dfa_to_json(const Dfa& d) {
    json trans = json::array();
    for (int q = 0; q < d.num_states(); ++q)
        for (LetterId a = 0; a < d.alphabet->num_letters(); ++a)
            if (d.delta[q][a] >= 0)
                trans.push_back(json{{"from", d.states[q]},
                                     {"letter", d.alphabet->letter_name(a)},
                                     {"to", d.states[d.delta[q][a]]}});
    json accepting = json::array();
    for (int q = 0; q < d.num_states(); ++q)
        if (d.accepting[q]) accepting.push_back(d.states[q]);
    return json{{"states", d.states},
                {"initial", d.states[d.initial]},
                {"accepting", std::move(accepting)},
                {"transitions", std::move(trans)}};
}

Dfa dfa_from_json(const AlphabetRef& alpha, const json& j) {
    Dfa d;
    d.alphabet = alpha;
    d.states = j.at("states").get<std::vector<std::string>>();
    std::map<std::string, int> idx;
    for (int q = 0; q < d.num_states(); ++q) {
        if (!idx.emplace(d.states[q], q).second)
            throw std::invalid_argument("duplicate state name: " + d.states[q]);
    }
    auto state_id = [&](const std::string& s) {
        auto it = idx.find(s);
        if (it == idx.end()) throw std::invalid_argument("unknown state: " + s);
        return it->second;
    };
    d.initial = state_id(j.at("initial").get<std::string>());
    d.accepting.assign(d.num_states(), false);
    for (const auto& s : j.at("accepting")) d.accepting[state_id(s.get<std::string>())] = true;
    d.delta.assign(d.num_states(), std::vector<int>(alpha->num_letters(), -1));
    for (const auto& t : j.at("transitions")) {
        LetterId a = alpha->letter_id(t.at("letter").get<std::string>());
        if (a < 0)
            throw std::invalid_argument("unknown letter: " + t.at("letter").get<std::string>());
        int from = state_id(t.at("from").get<std::string>());
        int to = state_id(t.at("to").get<std::string>());
        if (d.delta[from][a] >= 0 && d.delta[from][a] != to)
            throw std::invalid_argument("nondeterministic transition from " + d.states[from]);
        d.delta[from][a] = to;
    }
    return d;
}

json tree_to_json(const AlphabetRef& alpha, const TreeOfBags& t) {
    json bags = json::object(), outer = json::object(), parent = json::object();
    for (int b = 0; b < t.num_bags(); ++b) {
        json procs = json::array();
        for (ProcessId p : t.bag_procs[b]) procs.push_back(alpha->process_name(p));
        bags[t.bag_names[b]] = std::move(procs);
        outer[t.bag_names[b]] = alpha->process_name(t.outer[b]);
        if (t.parent[b] >= 0) parent[t.bag_names[b]] = t.bag_names[t.parent[b]];
    }
    return json{{"bags", std::move(bags)}, {"outer", std::move(outer)}, {"parent", std::move(parent)}};
}

TreeOfBags tree_from_json(const AlphabetRef& alpha, const json& j) {
    std::map<std::string, std::vector<std::string>> bags;
    std::map<std::string, std::string> outer, parent;
    for (const auto& [name, procs] : j.at("bags").items())
        bags[name] = procs.get<std::vector<std::string>>();
    for (const auto& [name, p] : j.at("outer").items()) outer[name] = p.get<std::string>();
    if (j.contains("parent"))
        for (const auto& [name, p] : j.at("parent").items()) parent[name] = p.get<std::string>();
    return make_tree(alpha, bags, outer, parent);
}

json aa_to_json(const AsyncAutomaton& aa, size_t cap) {
    Semantics sem = global_semantics(aa, cap);
    const auto& al = *aa.alphabet();
    json local = json::object();
    // Reachable local states per process, referenced by their label below.
    for (ProcessId p = 0; p < al.num_processes(); ++p) {
        json labels = json::array();
        for (int id : sem.local_states[p]) labels.push_back(aa.local_label(p, id));
        local[al.process_name(p)] = std::move(labels);
    }
    auto global_json = [&](const GlobalState& g) {
        json o = json::object();
        for (ProcessId p = 0; p < al.num_processes(); ++p)
            o[al.process_name(p)] = aa.local_label(p, g[p]);
        return o;
    };
    json init = global_json(aa.initial());
    json trans = json::array();
    std::map<std::pair<LetterId, std::vector<int>>, bool> emitted;
    for (size_t i = 0; i < sem.globals.size(); ++i) {
        for (LetterId a = 0; a < al.num_letters(); ++a) {
            int t = sem.dfa.delta[i][a];
            if (t < 0) continue;
            std::vector<int> in;
            for (ProcessId p : al.loc(a)) in.push_back(sem.globals[i][p]);
            if (emitted.emplace(std::make_pair(a, in), true).second) {
                json from = json::object(), to = json::object();
                for (ProcessId p : al.loc(a)) {
                    from[al.process_name(p)] = aa.local_label(p, sem.globals[i][p]);
                    to[al.process_name(p)] = aa.local_label(p, sem.globals[t][p]);
                }
                trans.push_back(json{{"letter", al.letter_name(a)},
                                     {"from", std::move(from)},
                                     {"to", std::move(to)}});
            }
        }
    }
    json accepting = json::array();
    for (size_t i = 0; i < sem.globals.size(); ++i)
        if (sem.dfa.accepting[i]) accepting.push_back(global_json(sem.globals[i]));
    return json{{"alphabet", alphabet_to_json(al)},
                {"initial", std::move(init)},
                {"local_states", std::move(local)},
                {"transitions", std::move(trans)},
                {"accepting_globals", std::move(accepting)}};
}

namespace {

struct StoredAa {
    AlphabetRef alpha;
    std::vector<std::vector<std::string>> labels;            // per process
    std::vector<std::map<std::string, int>> label_index;     // per process
    std::map<std::pair<LetterId, std::vector<int>>, std::vector<int>> delta;
    std::set<GlobalState> accepting;
};

} // namespace

AsyncAutomaton aa_from_json(const json& j) {
    auto stored = std::make_shared<StoredAa>();
    stored->alpha = alphabet_from_json(j.at("alphabet"));
    const auto& al = *stored->alpha;
    stored->labels.resize(al.num_processes());
    stored->label_index.resize(al.num_processes());
    auto id_of = [stored](ProcessId p, const std::string& label) {
        auto& index = stored->label_index[p];
        auto it = index.find(label);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(stored->labels[p].size());
        stored->labels[p].push_back(label);
        index.emplace(label, id);
        return id;
    };
    for (ProcessId p = 0; p < al.num_processes(); ++p)
        if (j.at("local_states").contains(al.process_name(p)))
            for (const auto& lbl : j.at("local_states").at(al.process_name(p)))
                id_of(p, lbl.get<std::string>());
    GlobalState init;
    for (ProcessId p = 0; p < al.num_processes(); ++p)
        init.push_back(id_of(p, j.at("initial").at(al.process_name(p)).get<std::string>()));
    for (const auto& t : j.at("transitions")) {
        LetterId a = al.letter_id(t.at("letter").get<std::string>());
        if (a < 0)
            throw std::invalid_argument("unknown letter: " + t.at("letter").get<std::string>());
        std::vector<int> from, to;
        for (ProcessId p : al.loc(a)) {
            from.push_back(id_of(p, t.at("from").at(al.process_name(p)).get<std::string>()));
            to.push_back(id_of(p, t.at("to").at(al.process_name(p)).get<std::string>()));
        }
        stored->delta[{a, std::move(from)}] = std::move(to);
    }
    for (const auto& g : j.at("accepting_globals")) {
        GlobalState s;
        for (ProcessId p = 0; p < al.num_processes(); ++p)
            s.push_back(id_of(p, g.at(al.process_name(p)).get<std::string>()));
        stored->accepting.insert(std::move(s));
    }
    AsyncAutomaton::DeltaFn delta = [stored](LetterId a, const std::vector<int>& in)
        -> std::optional<std::vector<int>> {
        auto it = stored->delta.find({a, in});
        if (it == stored->delta.end()) return std::nullopt;
        return it->second;
    };
    AsyncAutomaton::AcceptFn accept = [stored](const GlobalState& g) {
        return stored->accepting.count(g) > 0;
    };
    AsyncAutomaton::LabelFn label = [stored](ProcessId p, int id) {
        return stored->labels[p][id];
    };
    return AsyncAutomaton(stored->alpha, std::move(init), std::move(delta), std::move(accept),
                          std::move(label));
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace fairsynth
