#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "xtalk/bus.hpp"

namespace xtalk {

/// A set of equal-width binary codewords whose pairwise transitions
/// never exceed a class cap.
struct Codebook {
  int width = 0;
  CrosstalkClass class_cap;
  std::vector<uint32_t> codewords;  // bit k = wire k+1
  bool optimal = true;              // false when a search budget truncated

  long transition_count() const {
    const long n = static_cast<long>(codewords.size());
    return n * (n - 1);
  }
};

std::string codeword_string(uint32_t word, int width);
uint32_t parse_codeword(const std::string& bits);

/// Worst per-wire class of the transition u -> v (lambda-independent).
CrosstalkClass pair_class(uint32_t u, uint32_t v, int width);

struct CliqueBudget {
  long max_nodes = 50'000'000;  // branch-and-bound tree nodes
};

/// Maximum set of n-bit codewords whose pairwise transitions stay at or
/// below the cap: exact maximum clique by branch and bound with greedy
/// coloring bounds, then completion to the lexicographically smallest
/// optimal set. A blown budget yields the incumbent flagged non-optimal.
Codebook generate_codebook(int n, CrosstalkClass cap, const CliqueBudget& budget = {});

/// All n-bit strings avoiding the substrings 010 and 101; cardinality
/// 2 Fib(n+1). Pairwise transitions never exceed 2C.
Codebook fpc_set(int n);

struct Violation {
  uint32_t from = 0, to = 0;
  CrosstalkClass cls;
};

/// Independent pairwise re-check of the class cap (separate code path
/// from the generator). Empty result means the book certifies.
std::vector<Violation> certify(const Codebook& book);

/// Per-wire delay evaluator for one transition.
using WireDelayFn =
    std::function<std::vector<DelayEstimate>(const TransitionPattern& pattern)>;

struct WireWorst {
  int wire = 0;
  double delay = 0.0;
  uint32_t from = 0, to = 0;  // arg-max transition
};

struct CodebookDelayReport {
  std::vector<WireWorst> per_wire;
  WireWorst overall;
};

/// Maximum delay per wire over all ordered codeword transitions.
/// Distinct transitions sharing a direction vector are evaluated once.
CodebookDelayReport codebook_worst_delays(const Codebook& book, const WireDelayFn& evaluate);

std::string codebook_to_json(const Codebook& book);
Codebook codebook_from_json(const std::string& text);
std::string certification_json(const Codebook& book);

}  // namespace xtalk
