#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fairsynth {

using LetterId = int;
using ProcessId = int;

// A distributed alphabet: letters, processes, and a location map assigning
// each letter the non-empty set of processes that participate in it.
// Letters and processes are kept sorted lexicographically; all tie-breaking
// throughout the library relies on this order.
class DistributedAlphabet {
public:
    static DistributedAlphabet create(std::vector<std::string> letters,
                                      std::vector<std::string> processes,
                                      const std::vector<std::pair<std::string, std::vector<std::string>>>& loc);

    int num_letters() const { return static_cast<int>(letters_.size()); }
    int num_processes() const { return static_cast<int>(processes_.size()); }

    const std::string& letter_name(LetterId a) const { return letters_[a]; }
    const std::string& process_name(ProcessId p) const { return processes_[p]; }
    const std::vector<std::string>& letters() const { return letters_; }
    const std::vector<std::string>& processes() const { return processes_; }

    // -1 if unknown.
    LetterId letter_id(const std::string& name) const;
    ProcessId process_id(const std::string& name) const;

    const std::vector<ProcessId>& loc(LetterId a) const { return loc_[a]; }
    const std::vector<LetterId>& sigma(ProcessId p) const { return sigma_[p]; }

    bool independent(LetterId a, LetterId b) const { return !dependent_[a][b]; }
    bool dependent(LetterId a, LetterId b) const { return dependent_[a][b]; }
    bool involves(LetterId a, ProcessId p) const { return involves_[a][p]; }

    // Set of processes participating in at least one letter of the word.
    std::vector<ProcessId> loc_of_word(std::span<const LetterId> word) const;

    bool is_global(LetterId a) const { return static_cast<int>(loc_[a].size()) == num_processes(); }

    // Undirected edges {p,q} such that some letter involves both (p < q).
    std::vector<std::pair<ProcessId, ProcessId>> communication_graph() const;

private:
    std::vector<std::string> letters_;
    std::vector<std::string> processes_;
    std::vector<std::vector<ProcessId>> loc_;
    std::vector<std::vector<LetterId>> sigma_;
    std::vector<std::vector<bool>> dependent_;
    std::vector<std::vector<bool>> involves_;
};

using AlphabetRef = std::shared_ptr<const DistributedAlphabet>;

AlphabetRef make_alphabet(std::vector<std::string> letters,
                          std::vector<std::string> processes,
                          const std::vector<std::pair<std::string, std::vector<std::string>>>& loc);

} // namespace fairsynth
