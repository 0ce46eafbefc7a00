// Command-line front end: validation, fairness analysis, synthesis,
// execution, equivalence checking, DOT export and fixture generation.
//
// Exit codes: 0 success, 1 domain failure (validation errors, unfair
// specification, inequivalence), 2 I/O or parse failure.

#include "fairsynth/aa.hpp"
#include "fairsynth/dfa.hpp"
#include "fairsynth/fixtures.hpp"
#include "fairsynth/json_io.hpp"
#include "fairsynth/synthesis.hpp"
#include "fairsynth/treeofbags.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace fairsynth;
using nlohmann::json;

namespace {

struct SpecInput {
    AlphabetRef alphabet;
    Dfa dfa;
};

SpecInput load_spec(const std::string& alphabet_path, const std::string& dfa_path) {
    auto alpha = alphabet_from_json(read_json_file(alphabet_path));
    auto dfa = dfa_from_json(alpha, read_json_file(dfa_path));
    return {alpha, dfa};
}

std::vector<LetterId> parse_word(const AlphabetRef& alpha, const std::string& text) {
    // Comma- or space-separated letter names; single-character shorthand
    // ("abc") is accepted when every letter name has length one.
    std::vector<std::string> names;
    std::string cur;
    for (char ch : text) {
        if (ch == ',' || ch == ' ') {
            if (!cur.empty()) names.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) names.push_back(cur);
    if (names.size() == 1 && alpha->letter_id(names[0]) < 0) {
        bool all_single = true;
        for (const auto& l : alpha->letters()) all_single &= l.size() == 1;
        if (all_single) {
            names.clear();
            for (char ch : text) names.emplace_back(1, ch);
        }
    }
    std::vector<LetterId> word;
    for (const auto& n : names) {
        LetterId a = alpha->letter_id(n);
        if (a < 0) throw std::invalid_argument("unknown letter: " + n);
        word.push_back(a);
    }
    return word;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

long double theorem_bound(const Dfa& trimmed, int k) {
    // n * 2k * |letters|^(3k-3), evaluated in floating point so very large
    // instantiations still print.
    long double bound = static_cast<long double>(trim(trimmed).num_states()) * 2.0L * k;
    return bound * std::pow(static_cast<long double>(trimmed.alphabet->num_letters()),
                            static_cast<long double>(3 * k - 3));
}

int cmd_validate(const SpecInput& in, const std::string& arch_path, bool as_json) {
    json report;
    bool clean = true;

    auto violations = check_diamond(in.dfa);
    report["diamond_violations"] = json::array();
    for (const auto& v : violations) {
        report["diamond_violations"].push_back(v.describe(in.dfa));
        clean = false;
    }
    Dfa trimmed = trim(in.dfa);
    report["states"] = in.dfa.num_states();
    report["trim_states"] = trimmed.num_states();
    report["empty_language"] = trimmed.num_states() == 1 && !trimmed.accepting[0] &&
                               in.dfa.num_states() > 1;

    if (!arch_path.empty()) {
        auto tob = tree_from_json(in.alphabet, read_json_file(arch_path));
        auto arch = validate_architecture(in.alphabet, tob);
        report["architecture_violations"] = arch;
        clean &= arch.empty();
    }
    if (as_json) {
        std::cout << report.dump(2) << '\n';
    } else {
        if (clean) std::cout << "OK: diamond property holds";
        else std::cout << "INVALID";
        std::cout << " (" << report["trim_states"] << " live states of "
                  << report["states"] << ")\n";
        for (const auto& v : report["diamond_violations"])
            std::cout << "  diamond: " << v.get<std::string>() << '\n';
        if (report.contains("architecture_violations"))
            for (const auto& v : report["architecture_violations"])
                std::cout << "  architecture: " << v.get<std::string>() << '\n';
    }
    return clean ? 0 : 1;
}

int cmd_fairness(const SpecInput& in, const std::string& arch_path, bool as_json) {
    Dfa trimmed = trim(in.dfa);
    json report;
    if (arch_path.empty()) {
        auto k = fairness_parameter(trimmed);
        report["fairness"] = k ? json(*k) : json();
        if (as_json) std::cout << report.dump(2) << '\n';
        else if (k) std::cout << *k << '\n';
        else std::cout << "unfair\n";
        return 0;
    }
    auto tob = tree_from_json(in.alphabet, read_json_file(arch_path));
    auto arch = validate_architecture(in.alphabet, tob);
    if (!arch.empty()) {
        for (const auto& v : arch) std::cerr << "architecture: " << v << '\n';
        return 1;
    }
    report["bags"] = json::object();
    for (int b = 0; b < tob.num_bags(); ++b) {
        auto k = bag_fairness_parameter(trimmed, tob, b);
        report["bags"][tob.bag_names[b]] = k ? json(*k) : json();
        if (!as_json)
            std::cout << tob.bag_names[b] << ": " << (k ? std::to_string(*k) : "unfair")
                      << '\n';
    }
    if (as_json) std::cout << report.dump(2) << '\n';
    return 0;
}

int cmd_synthesize(const SpecInput& in, int k, const std::string& mode,
                   const std::string& cut, const std::string& arch_path, size_t cap,
                   const std::string& out_path) {
    Dfa trimmed = trim(in.dfa);
    std::optional<AsyncAutomaton> aa;
    json stats;

    if (!arch_path.empty()) {
        auto tob = tree_from_json(in.alphabet, read_json_file(arch_path));
        auto syn = std::make_shared<const TreeSynthesis>(in.dfa, tob);
        for (int b = 0; b < tob.num_bags(); ++b)
            stats["bag_fairness"][tob.bag_names[b]] = syn->bag_k(b);
        aa = make_tree_aa(syn);
    } else {
        SynthesisConfig cfg;
        cfg.k = k;
        cfg.mode = mode == "unfair" ? Mode::unfair : Mode::fair;
        cfg.cut = cut == "optimised" ? CutStrategy::optimised : CutStrategy::standard;
        if (cfg.mode == Mode::fair) {
            auto param = fairness_parameter(trimmed);
            if (!param || *param > k) {
                int witness_k = k;
                auto w = unfairness_witness(trimmed, witness_k);
                std::cerr << "error: specification is not " << k << "-fair";
                if (w)
                    std::cerr << " (word \"" << render_word(in.alphabet, w->word)
                              << "\" from state " << trimmed.states[w->from_state]
                              << " starves process "
                              << in.alphabet->process_name(w->avoided) << ")";
                std::cerr << '\n';
                return 1;
            }
        }
        aa = synthesize(in.dfa, cfg);
        stats["theorem_bound"] = static_cast<double>(theorem_bound(trimmed, k));
    }

    auto sem = global_semantics(*aa, cap);
    json out = aa_to_json(*aa, cap);
    stats["global_states"] = sem.dfa.num_states();
    for (ProcessId p = 0; p < in.alphabet->num_processes(); ++p)
        stats["local_states"][in.alphabet->process_name(p)] =
            sem.local_states[p].size();
    out["stats"] = stats;
    write_output(out_path, out.dump(2));
    // Stats go to stderr so a piped JSON stream stays clean.
    for (ProcessId p = 0; p < in.alphabet->num_processes(); ++p)
        std::cerr << in.alphabet->process_name(p) << ": "
                  << sem.local_states[p].size() << " local states\n";
    return 0;
}

int cmd_run(const std::string& aa_path, const std::string& word_text, bool as_json) {
    auto aa = aa_from_json(read_json_file(aa_path));
    auto word = parse_word(aa.alphabet(), word_text);
    auto g = aa.run(word);
    json report;
    report["enabled"] = g.has_value();
    report["accepted"] = g && aa.accepts(*g);
    if (g) report["state"] = aa.global_label(*g);
    if (as_json) std::cout << report.dump(2) << '\n';
    else if (g)
        std::cout << (aa.accepts(*g) ? "ACCEPTED" : "REJECTED") << ' '
                  << aa.global_label(*g) << '\n';
    else
        std::cout << "REFUSED (some letter was not enabled)\n";
    return 0;
}

int cmd_explore(const std::string& aa_path, int steps, uint64_t seed, bool as_json) {
    auto aa = aa_from_json(read_json_file(aa_path));
    auto r = random_explore(aa, steps, seed);
    json report;
    report["word"] = render_word(aa.alphabet(), r.word);
    report["steps"] = r.word.size();
    report["deadlocked"] = r.deadlocked;
    report["accepting"] = r.accepting;
    report["state"] = aa.global_label(r.final_state);
    if (as_json) std::cout << report.dump(2) << '\n';
    else
        std::cout << report["word"].get<std::string>() << '\n'
                  << (r.deadlocked ? "deadlocked at " : "stopped at ")
                  << aa.global_label(r.final_state)
                  << (r.accepting ? " (accepting)" : " (not accepting)") << '\n';
    return 0;
}

int cmd_semantics(const std::string& aa_path, size_t cap, const std::string& out_path) {
    auto aa = aa_from_json(read_json_file(aa_path));
    auto sem = global_semantics(aa, cap);
    json out;
    out["alphabet"] = alphabet_to_json(*aa.alphabet());
    out["dfa"] = dfa_to_json(sem.dfa);
    write_output(out_path, out.dump(2));
    std::cerr << sem.dfa.num_states() << " global states\n";
    return 0;
}

int cmd_equiv(const std::string& aa_path, const SpecInput& in, size_t cap, bool as_json) {
    auto aa = aa_from_json(read_json_file(aa_path));
    auto sem = global_semantics(aa, cap);
    auto r = dfa_equivalent(sem.dfa, in.dfa);
    if (as_json) {
        json report;
        report["equivalent"] = r.equivalent;
        if (!r.equivalent)
            report["counterexample"] = render_word(in.alphabet, r.counterexample);
        std::cout << report.dump(2) << '\n';
    } else if (r.equivalent) {
        std::cout << "EQUIVALENT\n";
    } else {
        std::cout << "DIFFER on \"" << render_word(in.alphabet, r.counterexample)
                  << "\"\n";
    }
    return r.equivalent ? 0 : 1;
}

int cmd_dot(const std::string& aa_path, const std::string& alphabet_path,
            const std::string& dfa_path, size_t cap, const std::string& out_path) {
    std::string dot;
    if (!aa_path.empty()) {
        dot = export_dot(aa_from_json(read_json_file(aa_path)), cap);
    } else {
        dot = dfa_to_dot(load_spec(alphabet_path, dfa_path).dfa);
    }
    write_output(out_path, dot);
    return 0;
}

int cmd_gen(const std::string& family, int n, bool strict,
            const std::string& alphabet_out, const std::string& dfa_out) {
    Fixture fx;
    if (family == "fig1") fx = gen_fig1();
    else if (family == "fig3") fx = gen_fig3();
    else if (family == "appendixG") fx = gen_appendixG();
    else if (family == "example8") fx = gen_example8(n);
    else if (family == "lowerbound") fx = gen_lower_bound(n);
    else if (family == "philosophers") fx = gen_philosophers({.n = n, .strict_eat = strict});
    else throw std::invalid_argument("unknown family: " + family);

    json alpha = alphabet_to_json(*fx.alphabet);
    json dfa = dfa_to_json(fx.dfa);
    if (alphabet_out.empty() && dfa_out.empty()) {
        json both;
        both["alphabet"] = std::move(alpha);
        both["dfa"] = std::move(dfa);
        std::cout << both.dump(2) << '\n';
    } else {
        if (!alphabet_out.empty()) write_output(alphabet_out, alpha.dump(2));
        if (!dfa_out.empty()) write_output(dfa_out, dfa.dump(2));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fairness analysis and asynchronous-automata synthesis for "
                 "trace-closed DFA specifications"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string alphabet_path, dfa_path, arch_path, aa_path, out_path;
    std::string word_text, mode = "fair", cut = "standard", family;
    int k = 1, steps = 100, n = 3;
    size_t cap = 1000000;
    uint64_t seed = 0;
    bool strict = false;

    auto* validate = app.add_subcommand("validate", "check diamond property and architecture");
    validate->add_option("alphabet", alphabet_path)->required();
    validate->add_option("dfa", dfa_path)->required();
    validate->add_option("--arch", arch_path);

    auto* fairness = app.add_subcommand("fairness", "minimal fairness parameter or 'unfair'");
    fairness->add_option("alphabet", alphabet_path)->required();
    fairness->add_option("dfa", dfa_path)->required();
    fairness->add_option("--arch", arch_path, "report per-bag parameters instead");

    auto* synth = app.add_subcommand("synthesize", "build an asynchronous automaton");
    synth->add_option("alphabet", alphabet_path)->required();
    synth->add_option("dfa", dfa_path)->required();
    synth->add_option("--k", k)->check(CLI::PositiveNumber);
    synth->add_option("--mode", mode)->check(CLI::IsMember({"fair", "unfair"}));
    synth->add_option("--cut", cut)->check(CLI::IsMember({"standard", "optimised"}));
    synth->add_option("--arch", arch_path, "tree-of-bags synthesis (ignores --k/--mode)");
    synth->add_option("--cap", cap);
    synth->add_option("-o,--output", out_path);

    auto* run = app.add_subcommand("run", "run a word on a synthesized automaton");
    run->add_option("aa", aa_path)->required();
    run->add_option("word", word_text)->required();

    auto* explore = app.add_subcommand("explore", "seeded random exploration");
    explore->add_option("aa", aa_path)->required();
    explore->add_option("--steps", steps)->check(CLI::NonNegativeNumber);
    explore->add_option("--seed", seed);

    auto* semantics = app.add_subcommand("semantics", "materialise the global behaviour");
    semantics->add_option("aa", aa_path)->required();
    semantics->add_option("--cap", cap);
    semantics->add_option("-o,--output", out_path);

    auto* equiv = app.add_subcommand("equiv", "compare automaton language with a DFA");
    equiv->add_option("aa", aa_path)->required();
    equiv->add_option("alphabet", alphabet_path)->required();
    equiv->add_option("dfa", dfa_path)->required();
    equiv->add_option("--cap", cap);

    auto* dot = app.add_subcommand("dot", "deterministic DOT export");
    dot->add_option("--aa", aa_path);
    dot->add_option("--alphabet", alphabet_path);
    dot->add_option("--dfa", dfa_path);
    dot->add_option("--cap", cap);
    dot->add_option("-o,--output", out_path);

    auto* gen = app.add_subcommand("gen", "emit a built-in example family");
    gen->add_option("family", family)
        ->required()
        ->check(CLI::IsMember({"fig1", "fig3", "appendixG", "example8", "lowerbound",
                               "philosophers"}));
    gen->add_option("--n", n);
    gen->add_flag("--strict", strict, "philosophers: left-then-right pick discipline");
    gen->add_option("--alphabet-out", alphabet_path)->default_val("");
    gen->add_option("--dfa-out", dfa_path)->default_val("");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(load_spec(alphabet_path, dfa_path), arch_path, as_json);
        if (*fairness) return cmd_fairness(load_spec(alphabet_path, dfa_path), arch_path, as_json);
        if (*synth)
            return cmd_synthesize(load_spec(alphabet_path, dfa_path), k, mode, cut, arch_path,
                                  cap, out_path);
        if (*run) return cmd_run(aa_path, word_text, as_json);
        if (*explore) return cmd_explore(aa_path, steps, seed, as_json);
        if (*semantics) return cmd_semantics(aa_path, cap, out_path);
        if (*equiv) return cmd_equiv(aa_path, load_spec(alphabet_path, dfa_path), cap, as_json);
        if (*dot) {
            if (aa_path.empty() && (alphabet_path.empty() || dfa_path.empty()))
                throw std::invalid_argument("dot needs --aa or --alphabet with --dfa");
            return cmd_dot(aa_path, alphabet_path, dfa_path, cap, out_path);
        }
        if (*gen) return cmd_gen(family, n, strict, alphabet_path, dfa_path);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
