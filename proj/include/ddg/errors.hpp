#pragma once

#include <stdexcept>
#include <string>

#include "ddg/bitset.hpp"

namespace ddg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// instance size over the configured enumeration cap
struct CapExceeded : Error {
    CapExceeded(const std::string& what, int n, int cap)
        : Error(what + ": n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap)),
          n(n), cap(cap) {}
    int n, cap;
};

struct FormatError : Error {
    FormatError(const std::string& what, int line = -1)
        : Error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what), line(line) {}
    int line;
};

// a documented caller obligation does not hold; `clause` names it
struct PreconditionViolated : Error {
    PreconditionViolated(const std::string& clause, const std::string& detail)
        : Error("precondition '" + clause + "' violated: " + detail), clause(clause) {}
    std::string clause;
};

// classify_pair found mixed neighbour counts where the dichotomy must hold
struct DichotomyViolated : Error {
    using Error::Error;
};

// greedy control construction found no vertex of the degree it needs; by
// Turán this certifies the independence number is at least n
struct DegreeShortfall : Error {
    DegreeShortfall(int level, int need, int have)
        : Error("no vertex of degree >= " + std::to_string(need) + " at level " +
                std::to_string(level) + " (max is " + std::to_string(have) +
                "); independence number must be >= n"),
          level(level), need(need), have(have) {}
    int level, need, have;
};

struct StructureFailure : Error {
    using Error::Error;
};

struct AssemblyFailure : Error {
    AssemblyFailure(int round, const std::string& cause)
        : Error("assembly failed at round " + std::to_string(round) + ": " + cause),
          round(round), cause(cause) {}
    int round;
    std::string cause;
};

// randomized step ran out of attempts; carries the best attempt seen
struct RetriesExhausted : Error {
    RetriesExhausted(const std::string& what, int attempts, Bitset best_subset,
                     Bitset best_detail, int best_score)
        : Error(what + " after " + std::to_string(attempts) + " attempts"),
          attempts(attempts), best_subset(std::move(best_subset)),
          best_detail(std::move(best_detail)), best_score(best_score) {}
    int attempts;
    Bitset best_subset;  // pipeline: U ∪ W of the best attempt; control: best F'
    Bitset best_detail;  // pipeline: its distinct set; control: unused
    int best_score;
};

}  // namespace ddg
