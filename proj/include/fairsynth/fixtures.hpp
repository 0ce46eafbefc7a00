#pragma once

#include "fairsynth/aa.hpp"
#include "fairsynth/dfa.hpp"

#include <optional>

namespace fairsynth {

struct Fixture {
    AlphabetRef alphabet;
    Dfa dfa;
};

// Two processes stepping a,b in lockstep with a reset letter c enabled after
// one or two rounds; language (([ab] + [aabb]) c)*.
Fixture gen_fig1();
// The hand-built asynchronous automaton for the same language (three local
// states per process, reset synchronises equal positions).
AsyncAutomaton gen_fig1_aa();

// Three processes, four letters, the running four-state specification whose
// fairness parameter is 4.
Fixture gen_fig3();

// Two processes with a shared reset c and local toggles a,b; an even number
// of local moves between resets. Trace closed but not fair.
Fixture gen_appendixG();

// Pairwise rendezvous: ((sum over i<j of [a_i a_j]) c)* with n peers.
Fixture gen_example8(int n);

// Lower-bound family parameterised by n = 4k over processes 0..n; a chain of
// k three-letter branch gadgets followed by one closing letter.
Fixture gen_lower_bound(int n);

struct PhilosophersConfig {
    int n = 3;
    bool strict_eat = false; // picks follow a left-then-right discipline
};
// Dining philosophers over chopstick-status states; actions pickL_i, pickR_i,
// putL_i, putR_i with loc {i-1, i, i+1} mod n; accepting when every chopstick
// is back on the table.
Fixture gen_philosophers(const PhilosophersConfig& cfg);

} // namespace fairsynth
