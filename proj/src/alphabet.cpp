#include "fairsynth/alphabet.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace fairsynth {

DistributedAlphabet DistributedAlphabet::create(
        std::vector<std::string> letters,
        std::vector<std::string> processes,
        const std::vector<std::pair<std::string, std::vector<std::string>>>& loc) {
    DistributedAlphabet al;
    std::sort(letters.begin(), letters.end());
    std::sort(processes.begin(), processes.end());
    if (std::adjacent_find(letters.begin(), letters.end()) != letters.end())
        throw std::invalid_argument("duplicate letter name");
    if (std::adjacent_find(processes.begin(), processes.end()) != processes.end())
        throw std::invalid_argument("duplicate process name");
    if (letters.empty()) throw std::invalid_argument("alphabet needs at least one letter");
    if (processes.empty()) throw std::invalid_argument("alphabet needs at least one process");
    al.letters_ = std::move(letters);
    al.processes_ = std::move(processes);

    const int n = al.num_letters();
    const int m = al.num_processes();
    al.loc_.assign(n, {});
    al.involves_.assign(n, std::vector<bool>(m, false));

    std::unordered_set<std::string> seen;
    for (const auto& [letter, procs] : loc) {
        LetterId a = al.letter_id(letter);
        if (a < 0) throw std::invalid_argument("loc refers to unknown letter: " + letter);
        if (!seen.insert(letter).second)
            throw std::invalid_argument("loc given twice for letter: " + letter);
        if (procs.empty())
            throw std::invalid_argument("loc(" + letter + ") must be non-empty");
        for (const auto& pn : procs) {
            ProcessId p = al.process_id(pn);
            if (p < 0) throw std::invalid_argument("loc refers to unknown process: " + pn);
            if (al.involves_[a][p])
                throw std::invalid_argument("duplicate process in loc(" + letter + "): " + pn);
            al.involves_[a][p] = true;
            al.loc_[a].push_back(p);
        }
        std::sort(al.loc_[a].begin(), al.loc_[a].end());
    }
    for (LetterId a = 0; a < n; ++a)
        if (al.loc_[a].empty())
            throw std::invalid_argument("missing loc for letter: " + al.letters_[a]);

    al.sigma_.assign(m, {});
    for (LetterId a = 0; a < n; ++a)
        for (ProcessId p : al.loc_[a]) al.sigma_[p].push_back(a);

    al.dependent_.assign(n, std::vector<bool>(n, false));
    for (LetterId a = 0; a < n; ++a)
        for (LetterId b = 0; b < n; ++b)
            for (ProcessId p : al.loc_[a])
                if (al.involves_[b][p]) { al.dependent_[a][b] = true; break; }
    return al;
}

LetterId DistributedAlphabet::letter_id(const std::string& name) const {
    auto it = std::lower_bound(letters_.begin(), letters_.end(), name);
    if (it == letters_.end() || *it != name) return -1;
    return static_cast<LetterId>(it - letters_.begin());
}

ProcessId DistributedAlphabet::process_id(const std::string& name) const {
    auto it = std::lower_bound(processes_.begin(), processes_.end(), name);
    if (it == processes_.end() || *it != name) return -1;
    return static_cast<ProcessId>(it - processes_.begin());
}

std::vector<ProcessId> DistributedAlphabet::loc_of_word(std::span<const LetterId> word) const {
    std::vector<bool> in(num_processes(), false);
    for (LetterId a : word)
        for (ProcessId p : loc_[a]) in[p] = true;
    std::vector<ProcessId> out;
    for (ProcessId p = 0; p < num_processes(); ++p)
        if (in[p]) out.push_back(p);
    return out;
}

std::vector<std::pair<ProcessId, ProcessId>> DistributedAlphabet::communication_graph() const {
    std::vector<std::vector<bool>> edge(num_processes(), std::vector<bool>(num_processes(), false));
    for (LetterId a = 0; a < num_letters(); ++a)
        for (size_t i = 0; i < loc_[a].size(); ++i)
            for (size_t j = i + 1; j < loc_[a].size(); ++j)
                edge[loc_[a][i]][loc_[a][j]] = true;
    std::vector<std::pair<ProcessId, ProcessId>> out;
    for (ProcessId p = 0; p < num_processes(); ++p)
        for (ProcessId q = p + 1; q < num_processes(); ++q)
            if (edge[p][q]) out.emplace_back(p, q);
    return out;
}

AlphabetRef make_alphabet(std::vector<std::string> letters,
                          std::vector<std::string> processes,
                          const std::vector<std::pair<std::string, std::vector<std::string>>>& loc) {
    return std::make_shared<const DistributedAlphabet>(
        DistributedAlphabet::create(std::move(letters), std::move(processes), loc));
}

} // namespace fairsynth
