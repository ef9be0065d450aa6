#include "xtalk/search.hpp"

#include <cmath>

namespace xtalk {

namespace {

constexpr double kAcceptTol = 1e-15;  // 1 fs

void check_middle(CrosstalkClass cls, const std::vector<int>& middle) {
  if (middle.size() != 3) throw ModelError("middle window must cover three wires");
  for (int d : middle)
    if (d < -1 || d > 1) throw ModelError("middle directions must be in {-1,0,1}");
  if (middle[1] == 0) throw NoTransitionError("middle wire must transition");
  const int idx = 2 - middle[1] * (middle[0] + middle[2]);
  if (idx != cls.index) throw ModelError("middle window is not in the requested class");
}

SearchReport make_report(CrosstalkClass cls) {
  SearchReport rep;
  rep.cls = cls;
  return rep;
}

void accept(SearchReport& rep, const std::vector<int>& deltas, double delay) {
  DeltaVector dv;
  dv.deltas = deltas;
  rep.pattern = TransitionPattern::from_delta(dv);
  rep.delay = delay;
  rep.trajectory.push_back(rep.pattern);
  rep.trajectory_delays.push_back(delay);
}

}  // namespace

std::vector<int> class_representative_middle(CrosstalkClass cls) {
  switch (cls.index) {
    case 0: return {1, 1, 1};
    case 1: return {1, 1, 0};
    case 2: return {0, 1, 0};
    case 3: return {-1, 1, 0};
    case 4: return {-1, 1, -1};
  }
  throw ModelError("unknown class");
}

SearchReport alg1(int m, CrosstalkClass cls, const std::vector<int>& middle,
                  const DelayOracle& oracle) {
  if (m < 5 || m % 2 == 0) throw ModelError("alg1 needs an odd wire count >= 5");
  check_middle(cls, middle);
  const int mid = (m - 1) / 2;

  // Outer wires initialized opposite to the middle wire's direction.
  std::vector<int> d(m, -middle[1]);
  d[mid - 1] = middle[0];
  d[mid] = middle[1];
  d[mid + 1] = middle[2];

  SearchReport rep = make_report(cls);
  double best = oracle(d, mid);
  rep.iterations = 1;
  accept(rep, d, best);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = mid - 2; j >= 0; --j) {
      std::vector<int> cand = d;
      cand[j] = -cand[j];
      cand[m - 1 - j] = -cand[m - 1 - j];
      const double val = oracle(cand, mid);
      ++rep.iterations;
      if (val > best + kAcceptTol) {
        d = std::move(cand);
        best = val;
        changed = true;
        accept(rep, d, best);
      }
    }
  }
  return rep;
}

SearchReport exhaustive(int m, CrosstalkClass cls, const std::vector<int>& middle,
                        const DelayOracle& oracle, const SearchBudget& budget) {
  if (m < 3 || m % 2 == 0) throw ModelError("exhaustive search needs an odd wire count >= 3");
  check_middle(cls, middle);
  const int mid = (m - 1) / 2;
  const int free = m - 3;

  long total = 1;
  for (int i = 0; i < free; ++i) {
    total *= 3;
    if (total > budget.max_evals)
      throw BudgetError("exhaustive sweep would exceed the evaluation budget");
  }

  SearchReport rep = make_report(cls);
  std::vector<int> digits(free, 0);  // 0 -> d, 1 -> -, 2 -> u
  std::vector<int> d(m, 0);
  d[mid - 1] = middle[0];
  d[mid] = middle[1];
  d[mid + 1] = middle[2];

  double best = -1.0;
  for (long it = 0; it < total; ++it) {
    long rem = it;
    // Most significant digit drives wire 0, so ascending iteration is
    // ascending lexicographic order under d < - < u.
    for (int i = 0; i < free; ++i) {
      long div = 1;
      for (int k = i + 1; k < free; ++k) div *= 3;
      digits[i] = static_cast<int>((rem / div) % 3);
    }
    for (int i = 0; i < free; ++i) {
      const int wire = i < mid - 1 ? i : i + 3;
      d[wire] = digits[i] - 1;
    }
    const double val = oracle(d, mid);
    ++rep.iterations;
    if (val > best + kAcceptTol || rep.trajectory.empty()) {
      best = val;
      accept(rep, d, best);
    }
  }
  return rep;
}

SearchReport symmetric_enumerate(int m, CrosstalkClass cls, const std::vector<int>& middle,
                                 const DelayOracle& oracle, const SearchBudget& budget) {
  if (m < 3 || m % 2 == 0) throw ModelError("symmetric sweep needs an odd wire count >= 3");
  check_middle(cls, middle);
  const int mid = (m - 1) / 2;
  const int pairs = (m - 3) / 2;
  const long total = 1L << pairs;
  if (total > budget.max_evals)
    throw BudgetError("symmetric sweep would exceed the evaluation budget");

  SearchReport rep = make_report(cls);
  std::vector<int> d(m, 0);
  d[mid - 1] = middle[0];
  d[mid] = middle[1];
  d[mid + 1] = middle[2];

  double best = -1.0;
  for (long mask = 0; mask < total; ++mask) {
    for (int j = 0; j < pairs; ++j) {
      const int v = ((mask >> (pairs - 1 - j)) & 1) ? 1 : -1;
      d[j] = v;
      d[m - 1 - j] = v;
    }
    const double val = oracle(d, mid);
    ++rep.iterations;
    if (val > best + kAcceptTol || rep.trajectory.empty()) {
      best = val;
      accept(rep, d, best);
    }
  }
  return rep;
}

}  // namespace xtalk
