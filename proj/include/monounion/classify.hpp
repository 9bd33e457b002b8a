#pragma once

// The forward-direction engine: exponent-free landing-factor analysis over
// all association orders (phase 1), bounded exponent elimination through
// probe derivations (phase 2), and the classification drivers for two and
// three copies.

#include <atomic>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "monounion/certs.hpp"
#include "monounion/rewrite.hpp"
#include "monounion/typespace.hpp"
#include "monounion/words.hpp"

namespace monounion {

// ---------------------------------------------------------------------------
// Association strategies: binary trees over the probe's positions.
// ---------------------------------------------------------------------------

struct Strategy {
  struct Node {
    int leaf = -1;  // probe position when >= 0
    int left = -1;
    int right = -1;
  };
  std::vector<Node> nodes;
  int root = -1;

  std::string repr(const Word& probe) const {
    return repr_node(probe, root);
  }

 private:
  std::string repr_node(const Word& probe, int idx) const {
    const Node& n = nodes[static_cast<size_t>(idx)];
    if (n.leaf >= 0) return std::string(1, probe[static_cast<size_t>(n.leaf)]);
    return "(" + repr_node(probe, n.left) + repr_node(probe, n.right) + ")";
  }
};

namespace detail {

inline std::vector<Strategy> strategies_range(int lo, int hi) {
  std::vector<Strategy> out;
  if (hi - lo == 1) {
    Strategy s;
    s.nodes.push_back({lo, -1, -1});
    s.root = 0;
    out.push_back(std::move(s));
    return out;
  }
  for (int mid = lo + 1; mid < hi; ++mid) {
    for (auto& left : strategies_range(lo, mid)) {
      for (auto& right : strategies_range(mid, hi)) {
        Strategy s;
        s.nodes = left.nodes;
        int offset = static_cast<int>(s.nodes.size());
        for (auto node : right.nodes) {
          if (node.leaf < 0) {
            node.left += offset;
            node.right += offset;
          }
          s.nodes.push_back(node);
        }
        s.nodes.push_back({-1, left.root, right.root + offset});
        s.root = static_cast<int>(s.nodes.size()) - 1;
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

}  // namespace detail

// All association orders of a product of n factors (Catalan-many).
inline const std::vector<Strategy>& association_strategies(int n) {
  static std::map<int, std::vector<Strategy>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::strategies_range(0, n)).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// Abstract words and landing outcomes.
//
// A factor is a generator with a multiplicity flag: exactly one, or at
// least one (an unknown positive exponent).  Contracting the leftmost
// adjacent pair (x,y) consumes one x and one y, inserts the landing letter
// of xy with an unknown positive exponent, and branches over whether an
// at-least-one factor is exhausted.
// ---------------------------------------------------------------------------

struct AbstractFactor {
  uint8_t letter;
  bool many;  // at-least-one when true, exactly-one otherwise
};

using AbstractWord = std::vector<AbstractFactor>;

struct LandingOutcome {
  std::string letters;  // sorted landing letters
  bool overflow = false;

  bool disjoint(const LandingOutcome& other) const {
    for (char c : letters)
      if (other.letters.find(c) != std::string::npos) return false;
    return true;
  }
};

namespace detail {

// Set of possible fully-contracted results (letter x flag), plus overflow.
struct PowerSet {
  bool present[3][2] = {{false, false}, {false, false}, {false, false}};
  bool overflow = false;

  void merge(const PowerSet& o) {
    for (int l = 0; l < 3; ++l)
      for (int m = 0; m < 2; ++m) present[l][m] = present[l][m] || o.present[l][m];
    overflow = overflow || o.overflow;
  }
};

inline void append_merged(AbstractWord& w, AbstractFactor f) {
  if (!w.empty() && w.back().letter == f.letter) {
    w.back().many = true;  // joining two positive runs
  } else {
    w.push_back(f);
  }
}

inline std::string key_of(const AbstractWord& w) {
  std::string k;
  for (auto& f : w) {
    k += static_cast<char>('a' + f.letter);
    k += f.many ? '+' : '1';
  }
  return k;
}

inline PowerSet contract_full(const TypeTuple& t, AbstractFactor f1,
                              AbstractFactor f2, int word_cap) {
  PowerSet out;
  AbstractWord start;
  append_merged(start, f1);
  append_merged(start, f2);
  std::set<std::string> seen{key_of(start)};
  std::deque<AbstractWord> queue{start};
  while (!queue.empty()) {
    AbstractWord w = queue.front();
    queue.pop_front();
    if (w.size() == 1) {
      out.present[w[0].letter][w[0].many ? 1 : 0] = true;
      continue;
    }
    if (static_cast<int>(w.size()) > word_cap) {
      out.overflow = true;
      continue;
    }
    AbstractFactor x = w[0], y = w[1];
    uint8_t z = t.landing(x.letter, y.letter);
    int nx = x.many ? 2 : 1;
    int ny = y.many ? 2 : 1;
    for (int kx = 0; kx < nx; ++kx) {    // kx == 1: some x remains
      for (int ky = 0; ky < ny; ++ky) {  // ky == 1: some y remains
        AbstractWord next;
        if (kx == 1) next.push_back({x.letter, true});
        append_merged(next, {z, true});
        if (ky == 1) append_merged(next, {y.letter, true});
        for (size_t i = 2; i < w.size(); ++i) append_merged(next, w[i]);
        if (seen.insert(key_of(next)).second) queue.push_back(std::move(next));
      }
    }
  }
  return out;
}

struct ContractMemo {
  PowerSet sets[3][2][3][2];
  bool ready[3][2][3][2] = {};

  const PowerSet& get(const TypeTuple& t, AbstractFactor f1, AbstractFactor f2,
                      int word_cap) {
    bool& r = ready[f1.letter][f1.many][f2.letter][f2.many];
    PowerSet& ps = sets[f1.letter][f1.many][f2.letter][f2.many];
    if (!r) {
      ps = contract_full(t, f1, f2, word_cap);
      r = true;
    }
    return ps;
  }
};

inline PowerSet eval_strategy(const TypeTuple& t, const Word& probe,
                              const Strategy& strat, int node, int word_cap,
                              ContractMemo& memo) {
  const Strategy::Node& n = strat.nodes[static_cast<size_t>(node)];
  PowerSet out;
  if (n.leaf >= 0) {
    size_t idx = alphabet_for(t.copies()).find(probe[static_cast<size_t>(n.leaf)]);
    out.present[idx][0] = true;
    return out;
  }
  PowerSet left = eval_strategy(t, probe, strat, n.left, word_cap, memo);
  PowerSet right = eval_strategy(t, probe, strat, n.right, word_cap, memo);
  out.overflow = left.overflow || right.overflow;
  for (int l1 = 0; l1 < 3; ++l1)
    for (int m1 = 0; m1 < 2; ++m1) {
      if (!left.present[l1][m1]) continue;
      for (int l2 = 0; l2 < 3; ++l2)
        for (int m2 = 0; m2 < 2; ++m2) {
          if (!right.present[l2][m2]) continue;
          out.merge(memo.get(t,
                             {static_cast<uint8_t>(l1), m1 == 1},
                             {static_cast<uint8_t>(l2), m2 == 1}, word_cap));
        }
    }
  return out;
}

}  // namespace detail

inline LandingOutcome landing_outcomes(const TypeTuple& t, const Word& probe,
                                       const Strategy& strat, int word_cap = 8) {
  if (!word_over(probe, alphabet_for(t.copies())))
    throw Error(ErrorKind::usage, "probe uses letters outside the alphabet");
  if (word_cap < 1) throw Error(ErrorKind::usage, "bounds must be positive");
  detail::ContractMemo memo;
  detail::PowerSet ps =
      detail::eval_strategy(t, probe, strat, strat.root, word_cap, memo);
  LandingOutcome out;
  out.overflow = ps.overflow;
  for (int l = 0; l < 3; ++l)
    if (ps.present[l][0] || ps.present[l][1])
      out.letters += static_cast<char>('a' + l);
  return out;
}

// ---------------------------------------------------------------------------
// Phase 1: a probe with two overflow-free strategies whose landing outcome
// sets are disjoint refutes the type outright, for every exponent choice.
// ---------------------------------------------------------------------------

struct Phase1Evidence {
  Word probe;
  std::string strategy_a;
  std::string strategy_b;
  std::string outcomes_a;
  std::string outcomes_b;
};

struct Phase1Result {
  bool eliminated = false;
  std::optional<Phase1Evidence> evidence;
};

inline Phase1Result phase1_eliminate(const TypeTuple& t, int word_cap = 8,
                                     const std::vector<int>& probe_lengths = {3, 4}) {
  Phase1Result res;
  detail::ContractMemo memo;
  for (const Word& probe :
       default_probes(alphabet_for(t.copies()), probe_lengths)) {
    auto& strats = association_strategies(static_cast<int>(probe.size()));
    std::vector<LandingOutcome> outcomes;
    outcomes.reserve(strats.size());
    for (auto& s : strats) {
      detail::PowerSet ps =
          detail::eval_strategy(t, probe, s, s.root, word_cap, memo);
      LandingOutcome o;
      o.overflow = ps.overflow;
      for (int l = 0; l < 3; ++l)
        if (ps.present[l][0] || ps.present[l][1])
          o.letters += static_cast<char>('a' + l);
      outcomes.push_back(o);
    }
    for (size_t i = 0; i < outcomes.size(); ++i) {
      if (outcomes[i].overflow) continue;
      for (size_t j = i + 1; j < outcomes.size(); ++j) {
        if (outcomes[j].overflow) continue;
        if (outcomes[i].disjoint(outcomes[j])) {
          res.eliminated = true;
          res.evidence =
              Phase1Evidence{probe, strats[i].repr(probe), strats[j].repr(probe),
                             outcomes[i].letters, outcomes[j].letters};
          return res;
        }
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Phase 2: concrete exponents up to a bound, eliminated by probe
// derivations.
// ---------------------------------------------------------------------------

// The presentation <letters | xy = T(x,y)^e(x,y)> of a type with concrete
// exponents, one per pair slot.
inline Presentation type_presentation(const TypeTuple& t,
                                      const std::vector<int>& exps) {
  auto& pairs = pair_order(t.copies());
  if (exps.size() != pairs.size())
    throw Error(ErrorKind::usage, "one exponent per generator pair required");
  Presentation p;
  p.alphabet = alphabet_for(t.copies());
  for (size_t s = 0; s < pairs.size(); ++s) {
    Word lhs;
    lhs += pairs[s].first;
    lhs += pairs[s].second;
    char base = p.alphabet[t.entry(static_cast<int>(s))];
    p.relations.push_back({lhs, pure_power(base, exps[s])});
  }
  return p;
}

struct Phase2Limits {
  int depth = 24;
  size_t maxlen = 10;  // minimum; raised to bound*(bound-1)+2 when needed
  int threads = 1;
  std::vector<int> probe_lengths = {3, 4};
};

namespace detail {

inline std::vector<int> assignment_of_rank(size_t rank, int bound, size_t slots) {
  std::vector<int> exps(slots);
  for (size_t s = slots; s-- > 0;) {
    exps[s] = static_cast<int>(rank % static_cast<size_t>(bound)) + 1;
    rank /= static_cast<size_t>(bound);
  }
  return exps;
}

}  // namespace detail

// Surviving exponent assignments (no contradiction found at the bounds), in
// lexicographic order.  Deterministic regardless of the worker count.
inline std::vector<std::vector<int>> phase2_eliminate(const TypeTuple& t, int bound,
                                                      const Phase2Limits& lim = {}) {
  if (bound < 1) throw Error(ErrorKind::usage, "exponent bound must be positive");
  size_t slots = pair_order(t.copies()).size();
  size_t count = 1;
  for (size_t s = 0; s < slots; ++s) count *= static_cast<size_t>(bound);
  std::vector<Word> probes =
      default_probes(alphabet_for(t.copies()), lim.probe_lengths);
  // The pair eliminations evaluate chains like a^(n(m-1)+1); the rewrite
  // length cap must admit them for exponents up to the bound.
  size_t maxlen = std::max(lim.maxlen,
                           static_cast<size_t>(bound * (bound - 1) + 2));

  std::vector<uint8_t> survived(count, 0);
  auto run_range = [&](std::atomic<size_t>& next) {
    while (true) {
      size_t rank = next.fetch_add(1);
      if (rank >= count) break;
      std::vector<int> exps = detail::assignment_of_rank(rank, bound, slots);
      Presentation p = type_presentation(t, exps);
      EliminateResult r = probe_eliminate(p, probes, lim.depth, maxlen);
      survived[rank] = r.eliminated() ? 0 : 1;
    }
  };

  int workers = std::max(1, lim.threads);
  if (workers == 1 || count < 8) {
    std::atomic<size_t> next{0};
    run_range(next);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back([&] { run_range(next); });
    for (auto& th : pool) th.join();
  }

  std::vector<std::vector<int>> out;
  for (size_t rank = 0; rank < count; ++rank) {
    if (survived[rank])
      out.push_back(detail::assignment_of_rank(rank, bound, slots));
  }
  return out;
}

// ---------------------------------------------------------------------------
// End-to-end classification.
// ---------------------------------------------------------------------------

struct ClassifyLimits {
  int exp_bound = 3;
  int depth = 24;
  size_t maxlen = 10;   // rewrite word cap
  int word_cap = 8;     // abstract contraction cap
  int threads = 4;
  long max_weight = 6;
};

struct SurvivorReport {
  std::optional<Family> family;
  TypeTuple family_type;  // the type the survivors are reported under
  TypeTuple canonical;
  size_t orbit_size = 0;
  std::vector<std::vector<int>> assignments;  // family frame, lex order
  std::vector<ParamMap> params;
  bool certified = false;
};

struct EliminatedReport {
  TypeTuple canonical;
  size_t orbit_size = 0;
  int phase = 0;
  std::optional<Phase1Evidence> evidence;  // phase 1
  int exp_bound = 0;                       // phase 2: eliminated up to here
};

struct ClassificationReport {
  int copies = 3;
  ClassifyLimits limits;
  size_t type_count = 0;
  size_t orbit_count = 0;
  std::vector<SurvivorReport> survivors;
  std::vector<EliminatedReport> eliminated;
  std::vector<std::string> errors;
};

// Exponents of the image presentation under a symmetry: the same index pull
// that apply_symmetry uses on landing letters.
inline std::vector<int> transport_assignment(const Symmetry& g, int copies,
                                             const std::vector<int>& exps) {
  auto& pairs = pair_order(copies);
  std::array<int, 3> inv{};
  for (int i = 0; i < copies; ++i) inv[g.perm[static_cast<size_t>(i)]] = i;
  auto slot_of = [&](int x, int y) {
    for (size_t s = 0; s < pairs.size(); ++s)
      if (pairs[s].first - 'a' == x && pairs[s].second - 'a' == y)
        return s;
    throw Error(ErrorKind::usage, "bad pair");
  };
  std::vector<int> out(pairs.size());
  for (size_t s = 0; s < pairs.size(); ++s) {
    int x = inv[static_cast<size_t>(pairs[s].first - 'a')];
    int y = inv[static_cast<size_t>(pairs[s].second - 'a')];
    if (g.rev) std::swap(x, y);
    out[s] = exps[slot_of(x, y)];
  }
  return out;
}

inline ClassificationReport classify(int copies, const ClassifyLimits& lim = {}) {
  if (copies != 2 && copies != 3)
    throw Error(ErrorKind::usage, "copies must be 2 or 3");
  ClassificationReport report;
  report.copies = copies;
  report.limits = lim;
  report.type_count = TypeTuple::count(copies);

  std::vector<Family> families;
  for (Family f : all_families)
    if (family_copies(f) == copies) families.push_back(f);
  auto group = all_symmetries(copies);

  std::vector<Orbit> orbit_list = orbits(copies);
  report.orbit_count = orbit_list.size();
  std::set<size_t> matched_family_orbits;

  for (auto& orbit : orbit_list) {
    const TypeTuple& canon = orbit.canonical;

    // Which family (if any) lives in this orbit, and through which symmetry.
    std::optional<Family> matched;
    Symmetry align;
    TypeTuple family_type(copies);
    for (Family f : families) {
      TypeTuple ft = TypeTuple::from_string(family_landing(f));
      for (auto& g : group) {
        if (apply_symmetry(g, canon) == ft) {
          matched = f;
          align = g;
          family_type = ft;
          break;
        }
      }
      if (matched) break;
    }

    Phase1Result p1 = phase1_eliminate(canon, lim.word_cap);
    if (p1.eliminated) {
      if (matched) {
        report.errors.push_back("phase 1 eliminated the orbit of family " +
                                std::string(family_info(*matched).label));
      }
      report.eliminated.push_back(
          {canon, orbit.size(), 1, p1.evidence, 0});
      continue;
    }

    Phase2Limits p2lim{lim.depth, lim.maxlen, lim.threads, {3, 4}};
    std::vector<std::vector<int>> survivors =
        phase2_eliminate(canon, lim.exp_bound, p2lim);

    if (!matched) {
      if (survivors.empty()) {
        report.eliminated.push_back({canon, orbit.size(), 2, std::nullopt,
                                     lim.exp_bound});
      } else {
        SurvivorReport sr;
        sr.family = std::nullopt;
        sr.family_type = canon;
        sr.canonical = canon;
        sr.orbit_size = orbit.size();
        sr.assignments = survivors;
        sr.certified = false;
        report.errors.push_back(
            "surviving type " + canon.str() +
            " matches no family; assignments survive at bound " +
            std::to_string(lim.exp_bound));
        report.survivors.push_back(std::move(sr));
      }
      continue;
    }

    if (matched_family_orbits.count(canon.index())) {
      report.errors.push_back("orbit matched twice");
    }
    matched_family_orbits.insert(canon.index());

    SurvivorReport sr;
    sr.family = matched;
    sr.family_type = family_type;
    sr.canonical = canon;
    sr.orbit_size = orbit.size();
    sr.certified = true;
    std::vector<std::pair<std::vector<int>, std::optional<ParamMap>>> rows;
    for (auto& e : survivors) {
      std::vector<int> aligned = transport_assignment(align, copies, e);
      auto params = family_match_assignment(*matched, aligned);
      if (!params) {
        report.errors.push_back(
            "survivor of type " + canon.str() + " does not satisfy the " +
            family_info(*matched).label + " constraint");
        sr.certified = false;
        rows.push_back({std::move(aligned), std::nullopt});
        continue;
      }
      Presentation instance = instantiate_family(*matched, *params);
      VerifyResult vr = verify_instance(instance, {lim.max_weight});
      if (!vr.ok()) {
        report.errors.push_back("certification failed for family " +
                                std::string(family_info(*matched).label) + ": " +
                                vr.failure->message);
        sr.certified = false;
      }
      rows.push_back({std::move(aligned), std::move(params)});
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [aligned, params] : rows) {
      sr.assignments.push_back(aligned);
      if (params) sr.params.push_back(*params);
    }
    report.survivors.push_back(std::move(sr));
  }

  std::sort(report.survivors.begin(), report.survivors.end(),
            [](const SurvivorReport& a, const SurvivorReport& b) {
              if (a.family.has_value() != b.family.has_value())
                return a.family.has_value();
              if (a.family != b.family) return a.family < b.family;
              return a.canonical < b.canonical;
            });
  return report;
}

}  // namespace monounion
