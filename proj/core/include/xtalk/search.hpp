#pragma once

#include <functional>
#include <vector>

#include "xtalk/bus.hpp"

namespace xtalk {

/// Middle-wire delay of a full-bus transition given by per-wire directions.
using DelayOracle = std::function<double(const std::vector<int>& deltas, int victim)>;

struct SearchReport {
  CrosstalkClass cls;
  TransitionPattern pattern;
  double delay = 0.0;
  long iterations = 0;  // oracle calls
  std::vector<TransitionPattern> trajectory;  // accepted patterns, in order
  std::vector<double> trajectory_delays;
};

/// Middle-three-wire directions representative of each class, victim rising.
std::vector<int> class_representative_middle(CrosstalkClass cls);

/// Greedy symmetric-pair descent: outer wires start opposite to the
/// middle wire; passes flip the directions of symmetric wire pairs from
/// the window outward, keeping a flip iff the middle-wire delay strictly
/// increases (1 fs tolerance), until a full pass accepts nothing.
SearchReport alg1(int m, CrosstalkClass cls, const std::vector<int>& middle,
                  const DelayOracle& oracle);

struct SearchBudget {
  long max_evals = 60000;
};

/// Full 3^(m-3) sweep of the free wires around the fixed middle window.
/// Ties break to the lexicographically smallest pattern under d < - < u.
SearchReport exhaustive(int m, CrosstalkClass cls, const std::vector<int>& middle,
                        const DelayOracle& oracle, const SearchBudget& budget = {});

/// Restricted sweep where each symmetric outer pair is uu or dd.
SearchReport symmetric_enumerate(int m, CrosstalkClass cls, const std::vector<int>& middle,
                                 const DelayOracle& oracle, const SearchBudget& budget = {});

}  // namespace xtalk
