// Python bindings. All structured data crosses the boundary as JSON text in
// the same schemas the command-line interface reads and writes; the package
// wrapper turns those into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fairsynth/aa.hpp"
#include "fairsynth/dfa.hpp"
#include "fairsynth/fixtures.hpp"
#include "fairsynth/json_io.hpp"
#include "fairsynth/synthesis.hpp"
#include "fairsynth/treeofbags.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace fairsynth;
using nlohmann::json;

namespace {

struct Spec {
    AlphabetRef alphabet;
    Dfa dfa;
};

Spec parse_spec(const std::string& text) {
    json j = json::parse(text);
    auto alpha = alphabet_from_json(j.at("alphabet"));
    return {alpha, dfa_from_json(alpha, j.at("dfa"))};
}

std::vector<LetterId> to_word(const AlphabetRef& alpha, const std::vector<std::string>& names) {
    std::vector<LetterId> word;
    for (const auto& n : names) {
        LetterId a = alpha->letter_id(n);
        if (a < 0) throw std::invalid_argument("unknown letter: " + n);
        word.push_back(a);
    }
    return word;
}

std::string generate(const std::string& family, int n, bool strict) {
    Fixture fx;
    if (family == "fig1") fx = gen_fig1();
    else if (family == "fig3") fx = gen_fig3();
    else if (family == "appendixG") fx = gen_appendixG();
    else if (family == "example8") fx = gen_example8(n);
    else if (family == "lowerbound") fx = gen_lower_bound(n);
    else if (family == "philosophers") fx = gen_philosophers({.n = n, .strict_eat = strict});
    else throw std::invalid_argument("unknown family: " + family);
    json out{{"alphabet", alphabet_to_json(*fx.alphabet)}, {"dfa", dfa_to_json(fx.dfa)}};
    return out.dump();
}

} // namespace

PYBIND11_MODULE(_fairsynth, m) {
    m.doc() = "Fairness analysis and asynchronous-automata synthesis for "
              "trace-closed DFA specifications";

    m.def("generate", &generate, py::arg("family"), py::arg("n") = 3,
          py::arg("strict") = false,
          "Built-in example specification as combined alphabet+DFA JSON");

    m.def("diamond_violations", [](const std::string& spec) {
        auto s = parse_spec(spec);
        std::vector<std::string> out;
        for (const auto& v : check_diamond(s.dfa)) out.push_back(v.describe(s.dfa));
        return out;
    }, py::arg("spec"), "Human-readable diamond-property violations (empty when clean)");

    m.def("fairness_parameter", [](const std::string& spec) {
        return fairness_parameter(trim(parse_spec(spec).dfa));
    }, py::arg("spec"), "Least k making the language k-fair, or None");

    m.def("unfairness_witness", [](const std::string& spec, int k)
              -> std::optional<py::tuple> {
        auto s = parse_spec(spec);
        Dfa t = trim(s.dfa);
        auto w = unfairness_witness(t, k);
        if (!w) return std::nullopt;
        std::vector<std::string> letters;
        for (LetterId a : w->word) letters.push_back(s.alphabet->letter_name(a));
        return py::make_tuple(letters, t.states[w->from_state],
                              s.alphabet->process_name(w->avoided));
    }, py::arg("spec"), py::arg("k"),
          "A word, start state and starved process violating k-fairness, or None");

    m.def("foata_normal_form", [](const std::string& spec,
                                  const std::vector<std::string>& word) {
        auto s = parse_spec(spec);
        Fnf t(s.alphabet);
        for (LetterId a : to_word(s.alphabet, word)) t.push(a);
        return t.str();
    }, py::arg("spec"), py::arg("word"), "Foata normal form of the trace of a word");

    m.def("synthesize", [](const std::string& spec, int k, const std::string& mode,
                           const std::string& cut, size_t cap) {
        SynthesisConfig cfg;
        cfg.k = k;
        cfg.mode = mode == "unfair" ? Mode::unfair : Mode::fair;
        cfg.cut = cut == "optimised" ? CutStrategy::optimised : CutStrategy::standard;
        auto s = parse_spec(spec);
        return aa_to_json(synthesize(s.dfa, cfg), cap).dump();
    }, py::arg("spec"), py::arg("k"), py::arg("mode") = "fair",
          py::arg("cut") = "standard", py::arg("cap") = size_t{1000000},
          "Asynchronous automaton (JSON) for a specification and fairness bound");

    m.def("synthesize_tree", [](const std::string& spec, const std::string& arch,
                                size_t cap) {
        auto s = parse_spec(spec);
        auto tob = tree_from_json(s.alphabet, json::parse(arch));
        return aa_to_json(synthesize_tree_of_bags(s.dfa, tob), cap).dump();
    }, py::arg("spec"), py::arg("arch"), py::arg("cap") = size_t{1000000},
          "Asynchronous automaton (JSON) for a tree-of-bags architecture");

    m.def("bag_fairness", [](const std::string& spec, const std::string& arch) {
        auto s = parse_spec(spec);
        auto tob = tree_from_json(s.alphabet, json::parse(arch));
        Dfa t = trim(s.dfa);
        std::map<std::string, std::optional<int>> out;
        for (int b = 0; b < tob.num_bags(); ++b)
            out[tob.bag_names[b]] = bag_fairness_parameter(t, tob, b);
        return out;
    }, py::arg("spec"), py::arg("arch"), "Per-bag fairness parameters (None = unfair)");

    m.def("run_word", [](const std::string& aa_text, const std::vector<std::string>& word) {
        auto aa = aa_from_json(json::parse(aa_text));
        auto g = aa.run(to_word(aa.alphabet(), word));
        bool accepted = g && aa.accepts(*g);
        std::optional<std::string> label;
        if (g) label = aa.global_label(*g);
        return py::make_tuple(g.has_value(), accepted, label);
    }, py::arg("aa"), py::arg("word"),
          "(enabled, accepted, global state label) after running a word");

    m.def("semantics", [](const std::string& aa_text, size_t cap) {
        auto aa = aa_from_json(json::parse(aa_text));
        auto sem = global_semantics(aa, cap);
        json out{{"alphabet", alphabet_to_json(*aa.alphabet())}, {"dfa", dfa_to_json(sem.dfa)}};
        return out.dump();
    }, py::arg("aa"), py::arg("cap") = size_t{1000000},
          "Reachable global behaviour of an automaton as a DFA (JSON)");

    m.def("equivalent", [](const std::string& aa_text, const std::string& spec, size_t cap) {
        auto aa = aa_from_json(json::parse(aa_text));
        auto s = parse_spec(spec);
        auto r = dfa_equivalent(global_semantics(aa, cap).dfa, s.dfa);
        std::vector<std::string> cex;
        for (LetterId a : r.counterexample) cex.push_back(s.alphabet->letter_name(a));
        return py::make_tuple(r.equivalent, cex);
    }, py::arg("aa"), py::arg("spec"), py::arg("cap") = size_t{1000000},
          "(equivalent, counterexample word) against a specification");

    m.def("export_dot", [](const std::string& aa_text, size_t cap) {
        return export_dot(aa_from_json(json::parse(aa_text)), cap);
    }, py::arg("aa"), py::arg("cap") = size_t{1000000},
          "Deterministic DOT rendering of the global behaviour");
}
