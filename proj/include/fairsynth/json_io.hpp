#pragma once

#include "fairsynth/aa.hpp"
#include "fairsynth/alphabet.hpp"
#include "fairsynth/dfa.hpp"
#include "fairsynth/treeofbags.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace fairsynth {

// {"letters": [...], "processes": [...], "loc": {"a": ["p1", "p2"], ...}}
nlohmann::json alphabet_to_json(const DistributedAlphabet& al);
AlphabetRef alphabet_from_json(const nlohmann::json& j);

// {"states": [...], "initial": "q0", "accepting": [...],
//  "transitions": [{"from": "q0", "letter": "c", "to": "q1"}, ...]}
nlohmann::json dfa_to_json(const Dfa& d);
Dfa dfa_from_json(const AlphabetRef& alpha, const nlohmann::json& j);

// {"bags": {"B": ["p1", ...]}, "outer": {"B": "p1"}, "parent": {"B2": "B"}}
nlohmann::json tree_to_json(const AlphabetRef& alpha, const TreeOfBags& t);
TreeOfBags tree_from_json(const AlphabetRef& alpha, const nlohmann::json& j);

// Materialised automaton: local-state labels per process, joint transitions,
// and the reachable accepting global states. Loading yields an automaton
// whose transition function is the stored table.
nlohmann::json aa_to_json(const AsyncAutomaton& aa, size_t cap = 1000000);
AsyncAutomaton aa_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

} // namespace fairsynth
