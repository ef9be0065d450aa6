#include "xtalk/cac.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <unordered_map>

namespace xtalk {

std::string codeword_string(uint32_t word, int width) {
  std::string s;
  for (int k = 0; k < width; ++k) s += char('0' + ((word >> k) & 1));
  return s;
}

uint32_t parse_codeword(const std::string& bits) {
  if (bits.empty() || bits.size() > 32) throw InvalidPatternError("bad codeword width");
  uint32_t w = 0;
  for (size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != '0' && bits[k] != '1') throw InvalidPatternError("bad codeword bit");
    if (bits[k] == '1') w |= 1u << k;
  }
  return w;
}

CrosstalkClass pair_class(uint32_t u, uint32_t v, int width) {
  if (width < 1 || width > 32) throw InvalidPatternError("bad codeword width");
  DeltaVector d;
  d.deltas.resize(width);
  for (int k = 0; k < width; ++k)
    d.deltas[k] = static_cast<int>((v >> k) & 1) - static_cast<int>((u >> k) & 1);
  return classify_bus(d).max;
}

namespace {

class AdjBits {
 public:
  AdjBits(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<size_t>(n) * words_, 0) {}
  void set(int i, int j) { bits_[static_cast<size_t>(i) * words_ + j / 64] |= 1ull << (j % 64); }
  bool get(int i, int j) const {
    return bits_[static_cast<size_t>(i) * words_ + j / 64] >> (j % 64) & 1;
  }

 private:
  int n_, words_;
  std::vector<uint64_t> bits_;
};

/// Branch and bound with greedy coloring bounds; deterministic through
/// the fixed ascending vertex order.
class CliqueSolver {
 public:
  CliqueSolver(const AdjBits& adj, long max_nodes, int stop_at = 0)
      : adj_(adj), max_nodes_(max_nodes), stop_at_(stop_at) {}

  bool aborted() const { return aborted_; }
  const std::vector<int>& best() const { return best_; }

  void run(std::vector<int> candidates) { expand(candidates); }

 private:
  bool done() const { return aborted_ || (stop_at_ > 0 && static_cast<int>(best_.size()) >= stop_at_); }

  void expand(const std::vector<int>& cand) {
    if (++nodes_ > max_nodes_) {
      aborted_ = true;
      return;
    }
    // Greedy coloring: vertices grouped into independent classes; the
    // class number bounds the clique size extendable through a vertex.
    std::vector<std::vector<int>> classes;
    for (int v : cand) {
      size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool ok = true;
        for (int u : classes[c])
          if (adj_.get(v, u)) {
            ok = false;
            break;
          }
        if (ok) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
    }
    std::vector<int> order;
    std::vector<int> color;
    for (size_t c = 0; c < classes.size(); ++c)
      for (int v : classes[c]) {
        order.push_back(v);
        color.push_back(static_cast<int>(c) + 1);
      }

    for (int i = static_cast<int>(order.size()) - 1; i >= 0 && !done(); --i) {
      if (cur_.size() + color[i] <= best_.size()) return;
      const int v = order[i];
      cur_.push_back(v);
      std::vector<int> next;
      for (int j = 0; j < i; ++j)
        if (adj_.get(v, order[j])) next.push_back(order[j]);
      if (next.empty()) {
        if (cur_.size() > best_.size()) best_ = cur_;
      } else {
        expand(next);
      }
      cur_.pop_back();
    }
  }

  const AdjBits& adj_;
  long max_nodes_;
  int stop_at_;
  long nodes_ = 0;
  bool aborted_ = false;
  std::vector<int> cur_, best_;
};

}  // namespace

Codebook generate_codebook(int n, CrosstalkClass cap, const CliqueBudget& budget) {
  if (n < 1 || n > 12) throw BudgetError("codebook width limited to 12 wires");
  if (cap.index < 1) throw ModelError("class cap must be at least 1C");
  const int count = 1 << n;

  AdjBits adj(count);
  for (int u = 0; u < count; ++u)
    for (int v = u + 1; v < count; ++v)
      if (pair_class(u, v, n) <= cap) {
        adj.set(u, v);
        adj.set(v, u);
      }

  std::vector<int> all(count);
  for (int i = 0; i < count; ++i) all[i] = i;

  CliqueSolver solver(adj, budget.max_nodes);
  solver.run(all);

  Codebook book;
  book.width = n;
  book.class_cap = cap;
  book.optimal = !solver.aborted();
  std::vector<int> members = solver.best();

  if (book.optimal) {
    // Rebuild the lexicographically smallest optimal set: keep a vertex
    // iff an optimum-sized clique through the chosen prefix survives.
    const int target = static_cast<int>(members.size());
    std::vector<int> chosen;
    std::vector<int> pool = all;
    while (static_cast<int>(chosen.size()) < target) {
      for (int v : pool) {
        std::vector<int> restricted;
        for (int u : pool)
          if (u != v && adj.get(v, u)) restricted.push_back(u);
        const int need = target - static_cast<int>(chosen.size()) - 1;
        bool feasible = need == 0;
        if (!feasible) {
          CliqueSolver probe(adj, budget.max_nodes, need);
          probe.run(restricted);
          feasible = !probe.aborted() && static_cast<int>(probe.best().size()) >= need;
        }
        if (feasible) {
          chosen.push_back(v);
          pool = std::move(restricted);
          break;
        }
      }
    }
    members = chosen;
  }

  std::sort(members.begin(), members.end());
  for (int v : members) book.codewords.push_back(static_cast<uint32_t>(v));
  return book;
}

Codebook fpc_set(int n) {
  if (n < 1 || n > 24) throw BudgetError("substring-free enumeration limited to 24 wires");
  Codebook book;
  book.width = n;
  book.class_cap = CrosstalkClass(2);
  for (uint32_t w = 0; w < (1u << n); ++w) {
    bool ok = true;
    for (int k = 0; k + 2 < n; ++k) {
      const int a = (w >> k) & 1, b = (w >> (k + 1)) & 1, c = (w >> (k + 2)) & 1;
      if (a == c && b != a) {  // 010 or 101
        ok = false;
        break;
      }
    }
    if (ok) book.codewords.push_back(w);
  }
  return book;
}

std::vector<Violation> certify(const Codebook& book) {
  // Deliberately re-derives the per-wire class from scratch instead of
  // going through pair_class.
  std::vector<Violation> out;
  const int n = book.width;
  for (uint32_t u : book.codewords) {
    for (uint32_t v : book.codewords) {
      if (u == v) continue;
      int worst = 0;
      for (int k = 0; k < n; ++k) {
        const int dk = static_cast<int>((v >> k) & 1) - static_cast<int>((u >> k) & 1);
        if (dk == 0) continue;
        int idx;
        if (n == 1) {
          idx = 0;
        } else if (k == 0 || k == n - 1) {
          const int neighbor = k == 0 ? 1 : n - 2;
          const int dn = static_cast<int>((v >> neighbor) & 1) -
                         static_cast<int>((u >> neighbor) & 1);
          idx = 1 - dk * dn;
        } else {
          const int dl = static_cast<int>((v >> (k - 1)) & 1) -
                         static_cast<int>((u >> (k - 1)) & 1);
          const int dr = static_cast<int>((v >> (k + 1)) & 1) -
                         static_cast<int>((u >> (k + 1)) & 1);
          idx = 2 - dk * (dl + dr);
        }
        worst = std::max(worst, idx);
      }
      if (worst > book.class_cap.index)
        out.push_back({u, v, CrosstalkClass(worst)});
    }
  }
  return out;
}

CodebookDelayReport codebook_worst_delays(const Codebook& book, const WireDelayFn& evaluate) {
  CodebookDelayReport rep;
  rep.per_wire.resize(book.width);
  for (int k = 0; k < book.width; ++k) rep.per_wire[k].wire = k;

  // Transitions sharing a direction vector have identical delays; keep
  // one representative pair per vector.
  std::unordered_map<uint64_t, std::pair<uint32_t, uint32_t>> unique;
  for (uint32_t u : book.codewords)
    for (uint32_t v : book.codewords) {
      if (u == v) continue;
      uint64_t key = 0;
      for (int k = 0; k < book.width; ++k) {
        const int dk = static_cast<int>((v >> k) & 1) - static_cast<int>((u >> k) & 1);
        key = key * 3 + static_cast<uint64_t>(dk + 1);
      }
      unique.emplace(key, std::make_pair(u, v));
    }

  for (const auto& [key, pair] : unique) {
    TransitionPattern p;
    p.initial.resize(book.width);
    p.final_state.resize(book.width);
    for (int k = 0; k < book.width; ++k) {
      p.initial[k] = (pair.first >> k) & 1;
      p.final_state[k] = (pair.second >> k) & 1;
    }
    for (const DelayEstimate& est : evaluate(p)) {
      WireWorst& w = rep.per_wire[est.wire];
      if (est.value > w.delay) {
        w.delay = est.value;
        w.from = pair.first;
        w.to = pair.second;
      }
    }
  }

  for (const WireWorst& w : rep.per_wire)
    if (w.delay > rep.overall.delay) rep.overall = w;
  return rep;
}

std::string codebook_to_json(const Codebook& book) {
  nlohmann::json words = nlohmann::json::array();
  for (uint32_t w : book.codewords) words.push_back(codeword_string(w, book.width));
  nlohmann::json j{{"width", book.width},
                   {"class_cap", book.class_cap.label()},
                   {"optimal", book.optimal},
                   {"codewords", words}};
  return j.dump(2);
}

Codebook codebook_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Codebook book;
  book.width = j.at("width").get<int>();
  const std::string cap = j.at("class_cap").get<std::string>();
  if (cap.size() != 2 || cap[1] != 'C' || cap[0] < '0' || cap[0] > '4')
    throw InvalidPatternError("bad class cap label: " + cap);
  book.class_cap = CrosstalkClass(cap[0] - '0');
  book.optimal = j.value("optimal", true);
  for (const auto& w : j.at("codewords")) {
    const std::string s = w.get<std::string>();
    if (static_cast<int>(s.size()) != book.width)
      throw InvalidPatternError("codeword width mismatch");
    book.codewords.push_back(parse_codeword(s));
  }
  return book;
}

std::string certification_json(const Codebook& book) {
  const auto violations = certify(book);
  nlohmann::json list = nlohmann::json::array();
  for (const Violation& v : violations)
    list.push_back({{"from", codeword_string(v.from, book.width)},
                    {"to", codeword_string(v.to, book.width)},
                    {"class", v.cls.label()}});
  nlohmann::json j{{"valid", violations.empty()}, {"violations", list}};
  return j.dump(2);
}

}  // namespace xtalk
