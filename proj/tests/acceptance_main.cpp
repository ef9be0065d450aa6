// End-to-end reproduction gates for the delay models, the transient
// simulator, the worst-pattern search, and the codebook generator on
// the 45nm reference bus. Each criterion prints one PASS/FAIL line;
// the exit code is the number of failures.
//
// Usage: acceptance [--only N] [--wide-bus]
//   --only N     run a single criterion (1..11)
//   --wide-bus   also run the 33-wire search reproduction (slow)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "xtalk/cac.hpp"
#include "xtalk/models.hpp"
#include "xtalk/scenario.hpp"
#include "xtalk/search.hpp"
#include "xtalk/simulator.hpp"

using namespace xtalk;

namespace {

struct Gate {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("MISS " + what);
    }
  }

  /// Relative comparison in picoseconds with a pinned tolerance.
  void near(double got_s, double want_ps, double rel, const std::string& what) {
    const double got_ps = got_s * 1e12;
    const double err = std::abs(got_ps - want_ps) / want_ps;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %s: %.2f ps vs %.2f ps (%.2f%%, tol %.0f%%)",
                  err <= rel ? "ok  " : "MISS", what.c_str(), got_ps, want_ps, err * 100.0,
                  rel * 100.0);
    notes.push_back(buf);
    if (err > rel) ok = false;
  }

  void info(const std::string& what) { notes.push_back("note " + what); }
};

std::string complement_arrows(const std::string& s) {
  std::string out = s;
  for (char& ch : out) ch = ch == 'u' ? 'd' : (ch == 'd' ? 'u' : ch);
  return out;
}

DelayOracle bank_oracle(const StepResponseBank& bank) {
  return [&bank](const std::vector<int>& d, int victim) { return bank.delay(d, victim); };
}

bool criterion_baseline(Gate& g) {
  const BusSpec bus = reference_bus(3);
  const char* expected[5] = {"5.55", "73.50", "141.45", "209.40", "277.35"};
  for (int c = 0; c < 5; ++c) {
    DeltaVector d;
    d.deltas = class_representative_middle(CrosstalkClass{c});
    const double v = baseline_delay(d, 1, bus).value;
    char got[32];
    std::snprintf(got, sizeof got, "%.2f", v * 1e12);
    char line[128];
    std::snprintf(line, sizeof line, "%dC lumped prior-work delay %s ps (want %s)", c, got,
                  expected[c]);
    g.expect(std::strcmp(got, expected[c]) == 0, line);
    if (std::strcmp(got, expected[c]) == 0) g.info(line);
  }
  return g.ok;
}

bool criterion_three_wire(Gate& g) {
  const BusSpec bus = reference_bus(3);
  const double want[5] = {4.04, 7.56, 74.55, 152.24, 207.36};
  for (int c = 0; c < 5; ++c)
    g.near(table_delay(CrosstalkClass{c}, WindowModel::three_wire, bus, true), want[c], 0.01,
           std::to_string(c) + "C three-wire");
  return g.ok;
}

bool criterion_five_wire(Gate& g) {
  const BusSpec bus = reference_bus(5);
  const double want[5] = {23.15, 62.09, 106.43, 152.24, 207.36};
  for (int c = 0; c < 5; ++c)
    g.near(table_delay(CrosstalkClass{c}, WindowModel::five_wire, bus, true), want[c], 0.03,
           std::to_string(c) + "C five-wire");
  return g.ok;
}

bool criterion_loaded(Gate& g) {
  BusSpec bus = reference_bus(5);
  bus.load_capacitance = 100e-15;
  const double want[5] = {25.11, 67.35, 123.46, 164.62, 224.41};
  for (int c = 0; c < 5; ++c)
    g.near(table_delay(CrosstalkClass{c}, WindowModel::five_wire, bus, true), want[c], 0.03,
           std::to_string(c) + "C five-wire, 100 fF load");
  return g.ok;
}

bool criterion_sim3(Gate& g) {
  const BusSpec bus = reference_bus(3);
  const double want[5] = {3.96, 7.41, 72.28, 150.74, 206.40};
  for (int c = 0; c < 5; ++c) {
    const TransitionPattern p = worst_pattern(CrosstalkClass{c}, WindowModel::three_wire);
    double got = 0.0;
    for (const auto& est : worst_delay_sim(p, bus))
      if (est.wire == 1) got = est.value;
    g.near(got, want[c], 0.05, std::to_string(c) + "C simulated (" + p.arrows() + ")");
  }
  return g.ok;
}

bool criterion_sim5(Gate& g) {
  const BusSpec bus = reference_bus(5);
  const StepResponseBank bank(bus);
  const double want[5] = {35.30, 63.09, 98.39, 134.19, 218.91};
  for (int c = 0; c < 5; ++c) {
    const TransitionPattern p = worst_pattern(CrosstalkClass{c}, WindowModel::five_wire);
    const double got = bank.delay(delta_of(p).deltas, 2);
    g.near(got, want[c], 0.05, std::to_string(c) + "C simulated (" + p.arrows() + ")");
  }
  return g.ok;
}

bool criterion_search17(Gate& g) {
  const int m = 17;
  const BusSpec bus = reference_bus(m);
  const StepResponseBank bank(bus);
  const DelayOracle oracle = bank_oracle(bank);
  const double want[5] = {42.17, 67.50, 112.82, 165.44, 228.46};
  const char* published[5] = {
      "uuuuddduuuddduuuu", "uuuuudduu-dduuuuu", "dduuuud-u-duuuudd",
      "ddduuuddu-duuuddd", "uddduuududuuudddu"};
  for (int c = 0; c < 5; ++c) {
    const auto rep = alg1(m, CrosstalkClass{c}, class_representative_middle(CrosstalkClass{c}),
                          oracle);
    const std::string got = rep.pattern.arrows();
    g.expect(got == published[c] || got == complement_arrows(published[c]),
             std::to_string(c) + "C pattern " + got + " (want " + published[c] + ")");
    g.near(rep.delay, want[c], 0.05, std::to_string(c) + "C delay (" + got + ")");
  }
  return g.ok;
}

bool criterion_search_equivalence(Gate& g) {
  for (int m : {9, 11}) {
    const BusSpec bus = reference_bus(m);
    const StepResponseBank bank(bus);
    const DelayOracle oracle = bank_oracle(bank);
    const int mid = (m - 1) / 2;
    for (int c = 0; c < 5; ++c) {
      const auto middle = class_representative_middle(CrosstalkClass{c});
      const auto greedy = alg1(m, CrosstalkClass{c}, middle, oracle);
      const auto full = exhaustive(m, CrosstalkClass{c}, middle, oracle,
                                   SearchBudget{200000});
      const double err = std::abs(greedy.delay - full.delay) / full.delay;
      char line[160];
      std::snprintf(line, sizeof line,
                    "m=%d %dC greedy %.2f ps vs exhaustive %.2f ps (%s / %s)", m, c,
                    greedy.delay * 1e12, full.delay * 1e12, greedy.pattern.arrows().c_str(),
                    full.pattern.arrows().c_str());
      g.expect(err <= 1e-6, line);
      if (err <= 1e-6) g.info(line);

      if (m == 11 && c == 2) {
        const std::vector<std::string> steps{"dddd-u-dddd", "ddud-u-dudd", "duud-u-duud",
                                             "uuud-u-duuu"};
        g.expect(greedy.trajectory.size() == steps.size(), "11-wire 2C trajectory length");
        for (size_t i = 0; i < steps.size() && i < greedy.trajectory.size(); ++i)
          g.expect(greedy.trajectory[i].arrows() == steps[i],
                   "11-wire 2C step " + std::to_string(i) + ": " +
                       greedy.trajectory[i].arrows() + " (want " + steps[i] + ")");
      }
      (void)mid;
    }
  }
  return g.ok;
}

bool criterion_codebooks(Gate& g) {
  const Codebook fpc = fpc_set(8);
  g.expect(fpc.codewords.size() == 68,
           "substring-free set size " + std::to_string(fpc.codewords.size()) + " (want 68)");
  g.expect(fpc.transition_count() == 4556,
           "substring-free transitions " + std::to_string(fpc.transition_count()) +
               " (want 4556)");
  g.expect(certify(fpc).empty(), "substring-free set certifies at 2C");

  const Codebook cap2 = generate_codebook(8, CrosstalkClass{2});
  g.expect(cap2.optimal && cap2.codewords.size() == 68,
           "2C-capped book size " + std::to_string(cap2.codewords.size()) + " (want 68)");

  const Codebook cap3 = generate_codebook(8, CrosstalkClass{3});
  g.expect(cap3.optimal && cap3.codewords.size() == 149,
           "3C-capped book size " + std::to_string(cap3.codewords.size()) + " (want 149)");
  g.expect(cap3.transition_count() == 22052,
           "3C-capped transitions " + std::to_string(cap3.transition_count()) +
               " (want 22052)");

  const Codebook cap1 = generate_codebook(8, CrosstalkClass{1});
  g.info("1C-capped search optimum " + std::to_string(cap1.codewords.size()) +
         " codewords (reported count 16; informational, not gated)");
  return g.ok;
}

bool criterion_table_xiv(Gate& g) {
  const BusSpec bus = reference_bus(8);
  const StepResponseBank bank(bus);
  const WireDelayFn evaluate = [&bank](const TransitionPattern& p) {
    const auto deltas = delta_of(p).deltas;
    std::vector<DelayEstimate> out;
    for (int k = 0; k < 8; ++k) {
      if (deltas[k] == 0) continue;
      DelayEstimate est;
      est.wire = k;
      est.source = "simulator";
      est.value = bank.delay(deltas, k);
      out.push_back(est);
    }
    return out;
  };

  struct Family {
    const char* name;
    int cap;
    Codebook book;
    double per_wire[8];
    double t5, tb1, tb2;
  };
  std::vector<Family> families;
  families.push_back({"1C-capped", 1, generate_codebook(8, CrosstalkClass{1}),
                      {55.36, 32.20, 51.40, 51.06, 50.79, 51.39, 32.46, 55.36},
                      62.09, 53.43, 42.52});
  families.push_back({"substring-free", 2, fpc_set(8),
                      {107.43, 102.71, 106.65, 101.91, 101.89, 106.53, 102.72, 107.39},
                      106.43, 98.76, 102.84});
  families.push_back({"3C-capped", 3, generate_codebook(8, CrosstalkClass{3}),
                      {107.73, 159.65, 154.59, 162.61, 162.77, 154.62, 160.61, 108.88},
                      152.24, 98.76, 157.64});

  for (const Family& fam : families) {
    const auto rep = codebook_worst_delays(fam.book, evaluate);
    for (int k = 0; k < 8; ++k)
      g.near(rep.per_wire[k].delay, fam.per_wire[k], 0.05,
             std::string(fam.name) + " wire " + std::to_string(k + 1));
    g.near(table_delay(CrosstalkClass{fam.cap}, WindowModel::five_wire, bus, true), fam.t5,
           0.03, std::string(fam.name) + " interior model row");
    g.near(table_delay(CrosstalkClass{std::min(fam.cap, 2)}, WindowModel::boundary1, bus, true),
           fam.tb1, 0.03, std::string(fam.name) + " edge wire-1 model row");
    g.near(table_delay(CrosstalkClass{fam.cap}, WindowModel::boundary2, bus, true), fam.tb2,
           0.03, std::string(fam.name) + " edge wire-2 model row");
  }
  return g.ok;
}

bool criterion_properties(Gate& g) {
  // Uncoupled bus: the class spread collapses.
  {
    BusSpec flat = reference_bus(3);
    flat.cc = 0.0;
    double lo = 1e9, hi = -1e9;
    for (int c = 0; c < 5; ++c) {
      const TransitionPattern p = worst_pattern(CrosstalkClass{c}, WindowModel::three_wire);
      const double d = crossing_time(three_wire_waveform(p, flat, true));
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    g.expect((hi - lo) / lo <= 1e-6, "zero-coupling class collapse");
  }

  // Superposition error of the transient solver.
  {
    BusSpec bus = reference_bus(5);
    bus.segments = 40;
    SimOptions opts;
    opts.dt = bus.tau0_intrinsic() / 20.0;
    opts.early_stop = false;
    const Network net(bus);
    const TransitionPattern p = TransitionPattern::parse("ududu");
    const Trace direct = simulate(net, p, opts);
    const StepResponseBank bank(bus, opts);
    const auto sup = bank.victim_samples(delta_of(p).deltas, 2);
    double err = 0.0;
    for (size_t i = 0; i < sup.size(); ++i)
      err = std::max(err, std::abs(sup[i] - direct.voltages[2][i]));
    g.expect(err <= 1e-6, "transient linearity (max superposition error " +
                              std::to_string(err) + ")");
  }

  // Step-size and segmentation convergence of the worst 3-wire delay.
  {
    const BusSpec bus = reference_bus(3);
    const TransitionPattern p = TransitionPattern::parse("dud");
    const double base = worst_delay_sim(p, bus)[1].value;
    SimOptions fine;
    fine.dt = bus.tau0_intrinsic() / 1000.0;
    const double half_dt = worst_delay_sim(p, bus, fine)[1].value;
    g.expect(std::abs(half_dt - base) / base < 1e-3, "time-step convergence");

    BusSpec dense = bus;
    dense.segments = 200;
    const double half_h = worst_delay_sim(p, dense)[1].value;
    g.expect(std::abs(half_h - base) / base < 5e-3, "segmentation convergence");
  }

  // Waveform endpoints: exact DC target, 4/pi initial-swing truncation.
  {
    const BusSpec bus = reference_bus(3);
    for (const char* s : {"uuu", "dud", "udu", "du-"}) {
      const TransitionPattern p = TransitionPattern::parse(s);
      const auto w = three_wire_waveform(p, bus, false);
      double amps = 0.0;
      for (const auto& [a, t] : w.terms) amps += a;
      const bool dc = std::abs(w.offset - p.final_state[1]) < 1e-12;
      const bool swing =
          std::abs(amps - 4.0 / 3.141592653589793 * (p.final_state[1] - p.initial[1])) < 1e-12;
      g.expect(dc && swing, std::string("endpoints of ") + s);
    }
  }

  // Classifier and simulator symmetry.
  {
    for (int code = 0; code < 243; ++code) {
      DeltaVector d;
      int rem = code;
      for (int i = 0; i < 5; ++i) {
        d.deltas.push_back(rem % 3 - 1);
        rem /= 3;
      }
      DeltaVector neg = d, rev = d;
      for (auto& x : neg.deltas) x = -x;
      std::reverse(rev.deltas.begin(), rev.deltas.end());
      const auto base = classify_bus(d);
      const auto flipped = classify_bus(neg);
      const auto mirrored = classify_bus(rev);
      for (int k = 0; k < 5; ++k) {
        if (base.per_wire[k] != flipped.per_wire[k] ||
            base.per_wire[k] != mirrored.per_wire[4 - k]) {
          g.expect(false, "classifier symmetry at code " + std::to_string(code));
          break;
        }
      }
    }

    BusSpec bus = reference_bus(3);
    bus.segments = 40;
    SimOptions opts;
    opts.dt = bus.tau0_intrinsic() / 20.0;
    opts.early_stop = false;
    const Network net(bus);
    const Trace a = simulate(net, TransitionPattern::parse("du-"), opts);
    const Trace b = simulate(net, TransitionPattern::parse("ud-"), opts);
    const Trace c = simulate(net, TransitionPattern::parse("-ud"), opts);
    double err = 0.0;
    for (size_t i = 0; i < a.times.size(); ++i) {
      err = std::max(err, std::abs(a.voltages[0][i] + b.voltages[0][i] - 1.0));
      err = std::max(err, std::abs(a.voltages[1][i] - c.voltages[1][i]));
    }
    g.expect(err <= 1e-9, "transient complement/mirror symmetry");
  }

  // Greedy descent terminates at a pair-flip local maximum.
  {
    const BusSpec bus = reference_bus(9);
    const DelayOracle oracle = [&bus](const std::vector<int>& deltas, int victim) {
      DeltaVector dv;
      dv.deltas = deltas;
      ProfileOptions opts;
      opts.buffered = false;
      for (const auto& est : bus_delay_profile(TransitionPattern::from_delta(dv), bus, opts))
        if (est.wire == victim) return est.value;
      throw NoTransitionError("victim does not transition");
    };
    for (int c = 0; c < 5; ++c) {
      const auto rep = alg1(9, CrosstalkClass{c}, class_representative_middle(CrosstalkClass{c}),
                            oracle);
      g.expect(rep.iterations <= 60, "greedy descent termination, class " + std::to_string(c));
      auto deltas = delta_of(rep.pattern).deltas;
      for (int j = 0; j < 3; ++j) {
        auto cand = deltas;
        cand[j] = -cand[j];
        cand[8 - j] = -cand[8 - j];
        g.expect(oracle(cand, 4) <= rep.delay + 1e-15,
                 "local maximality, class " + std::to_string(c));
      }
      for (size_t i = 1; i < rep.trajectory_delays.size(); ++i)
        g.expect(rep.trajectory_delays[i] > rep.trajectory_delays[i - 1],
                 "monotone trajectory, class " + std::to_string(c));
    }
  }
  return g.ok;
}

bool criterion_wide_bus(Gate& g) {
  const int m = 33;
  const BusSpec bus = reference_bus(m);
  const StepResponseBank bank(bus);
  const DelayOracle oracle = bank_oracle(bank);
  const double want[5] = {42.27, 68.30, 113.16, 165.57, 229.02};
  for (int c = 0; c < 5; ++c) {
    const auto rep = alg1(m, CrosstalkClass{c}, class_representative_middle(CrosstalkClass{c}),
                          oracle);
    g.near(rep.delay, want[c], 0.05, std::to_string(c) + "C 33-wire delay");
  }
  return g.ok;
}

struct Criterion {
  int id;
  const char* title;
  bool (*run)(Gate&);
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  bool wide = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--wide-bus") == 0) {
      wide = true;
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N] [--wide-bus]\n");
      return 2;
    }
  }

  std::vector<Criterion> criteria{
      {1, "lumped prior-work delays, exact to the printed precision", criterion_baseline},
      {2, "buffered three-wire class delays within 1%", criterion_three_wire},
      {3, "buffered five-wire class delays within 3%", criterion_five_wire},
      {4, "buffered five-wire class delays at 100 fF load within 3%", criterion_loaded},
      {5, "simulated three-wire worst delays within 5%", criterion_sim3},
      {6, "simulated five-wire worst delays within 5%", criterion_sim5},
      {7, "17-wire greedy search patterns and delays within 5%", criterion_search17},
      {8, "greedy search equals the full sweep on 9 and 11 wires", criterion_search_equivalence},
      {9, "codebook sizes and transition counts", criterion_codebooks},
      {10, "8-wire codebook worst delays and model rows", criterion_table_xiv},
      {11, "property suite: symmetry, linearity, convergence, endpoints", criterion_properties},
  };
  if (wide) criteria.push_back({12, "33-wire greedy search delays within 5%", criterion_wide_bus});

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Gate gate;
    bool ok = false;
    std::string blew;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = c.run(gate);
    } catch (const std::exception& e) {
      gate.ok = false;
      blew = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion-%02d: %s [%.1fs]\n", gate.ok ? "PASS" : "FAIL", c.id, c.title,
                secs);
    if (!blew.empty()) std::printf("    threw: %s\n", blew.c_str());
    for (const std::string& note : gate.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
    if (!gate.ok) ++failures;
    (void)ok;
  }
  return failures;
}
