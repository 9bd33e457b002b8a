#pragma once

// Positive certificates: additive weight witnesses (with an absorbing sink
// value), finite quotient multiplication tables, two-letter suffix and
// prefix invariants, generator irreducibility, and the per-family assembly
// of a full certificate bundle.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monounion/rewrite.hpp"
#include "monounion/words.hpp"

namespace monounion {

// ---------------------------------------------------------------------------
// Weight witnesses.
//
// A letter weight is a non-negative integer or the absorbing sink.  The
// induced word weight is additive, with the sink absorbing.  A valid witness
// certifies every letter of strictly positive finite weight as a generator
// of an infinite subsemigroup.
// ---------------------------------------------------------------------------

struct Weight {
  bool sink = false;
  long value = 0;

  static Weight bottom() { return {true, 0}; }
  static Weight of(long v) { return {false, v}; }
  friend bool operator==(const Weight&, const Weight&) = default;

  std::string str() const { return sink ? "_" : std::to_string(value); }
};

struct WeightWitness {
  std::map<char, Weight> weights;
  std::string targets;  // letters this witness is meant to certify

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (auto& [c, w] : weights) {
      if (!first) out += ",";
      first = false;
      out += c;
      out += ":";
      out += w.str();
    }
    return out + "}";
  }
};

// Word weight; nullopt is the sink.
inline std::optional<long> word_weight(const WeightWitness& wit, const Word& w) {
  long total = 0;
  for (char c : w) {
    auto it = wit.weights.find(c);
    if (it == wit.weights.end())
      throw Error(ErrorKind::usage, "witness does not weight letter '" +
                                        std::string(1, c) + "'");
    if (it->second.sink) return std::nullopt;
    total += it->second.value;
  }
  return total;
}

struct WitnessVerdict {
  bool ok = false;
  std::string certified;  // letters of strictly positive finite weight
  // failure details
  int relation = -1;
  std::optional<long> lhs_weight, rhs_weight;
  std::string reason;
};

inline WitnessVerdict validate_weight_witness(const Presentation& p,
                                              const WeightWitness& wit) {
  WitnessVerdict v;
  for (char c : p.alphabet) {
    if (!wit.weights.count(c))
      throw Error(ErrorKind::usage, "witness does not weight letter '" +
                                        std::string(1, c) + "'");
  }
  for (size_t r = 0; r < p.relations.size(); ++r) {
    auto lw = word_weight(wit, p.relations[r].lhs);
    auto rw = word_weight(wit, p.relations[r].rhs);
    if (lw != rw) {
      v.relation = static_cast<int>(r);
      v.lhs_weight = lw;
      v.rhs_weight = rw;
      v.reason = "relation " + render_word(p.relations[r].lhs) + "=" +
                 render_word(p.relations[r].rhs) + " has unequal weights";
      return v;
    }
  }
  for (char c : p.alphabet) {
    const Weight& w = wit.weights.at(c);
    if (!w.sink && w.value > 0) v.certified += c;
  }
  for (char t : wit.targets) {
    if (v.certified.find(t) == std::string::npos) {
      v.reason = std::string("target letter '") + t +
                 "' has weight 0 or sink and is not certified";
      return v;
    }
  }
  v.ok = true;
  return v;
}

// Exhaustive search over weight assignments (each letter gets sink or
// 0..maxweight, the target forced positive finite); returns the
// lexicographically least valid witness under the value order
// 0 < 1 < ... < maxweight < sink, letters in alphabet order.
inline std::optional<WeightWitness> search_weight_witness(const Presentation& p,
                                                          char target,
                                                          long maxweight = 6) {
  if (!p.has_letter(target))
    throw Error(ErrorKind::usage, "target letter is not in the alphabet");
  size_t n = p.alphabet.size();
  std::vector<long> state(n, 0);  // 0..maxweight, maxweight+1 = sink
  auto to_weight = [&](long s) {
    return s > maxweight ? Weight::bottom() : Weight::of(s);
  };
  while (true) {
    WeightWitness wit;
    for (size_t i = 0; i < n; ++i) wit.weights[p.alphabet[i]] = to_weight(state[i]);
    wit.targets = std::string(1, target);
    Weight tw = wit.weights.at(target);
    if (!tw.sink && tw.value >= 1) {
      WitnessVerdict verdict = validate_weight_witness(p, wit);
      if (verdict.ok) return wit;
    }
    size_t pos = n;
    while (pos > 0) {
      --pos;
      if (state[pos] <= maxweight) {
        ++state[pos];
        break;
      }
      state[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

// ---------------------------------------------------------------------------
// Finite quotient tables.
// ---------------------------------------------------------------------------

struct CayleyTable {
  std::vector<std::string> elements;
  std::vector<int> mul;  // row-major, n*n entries
  std::map<char, int> gens;

  int n() const { return static_cast<int>(elements.size()); }
  int at(int i, int j) const {
    return mul[static_cast<size_t>(i) * elements.size() + static_cast<size_t>(j)];
  }
  void set(int i, int j, int v) {
    mul[static_cast<size_t>(i) * elements.size() + static_cast<size_t>(j)] = v;
  }
};

// Text format: line 1 "elements e1 e2 ...", line 2 "map a=e1 b=e2 ...",
// then n rows of n element names.
inline CayleyTable parse_cayley_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CayleyTable t;
  auto next_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      size_t a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      size_t b = line.find_last_not_of(" \t\r");
      return line.substr(a, b - a + 1);
    }
    throw Error(ErrorKind::parse, "truncated table");
  };

  {
    std::istringstream ls(next_line());
    std::string tok;
    ls >> tok;
    if (tok != "elements") throw Error(ErrorKind::parse, "expected 'elements'");
    while (ls >> tok) t.elements.push_back(tok);
    if (t.elements.empty()) throw Error(ErrorKind::parse, "no elements");
  }
  auto element_index = [&](const std::string& name) {
    for (size_t i = 0; i < t.elements.size(); ++i)
      if (t.elements[i] == name) return static_cast<int>(i);
    throw Error(ErrorKind::parse, "unknown element '" + name + "'");
  };
  {
    std::istringstream ls(next_line());
    std::string tok;
    ls >> tok;
    if (tok != "map") throw Error(ErrorKind::parse, "expected 'map'");
    while (ls >> tok) {
      size_t eq = tok.find('=');
      if (eq != 1 || tok.size() < 3)
        throw Error(ErrorKind::parse, "bad generator mapping '" + tok + "'");
      t.gens[tok[0]] = element_index(tok.substr(2));
    }
  }
  size_t n = t.elements.size();
  t.mul.assign(n * n, 0);
  for (size_t i = 0; i < n; ++i) {
    std::istringstream ls(next_line());
    std::string tok;
    for (size_t j = 0; j < n; ++j) {
      if (!(ls >> tok)) throw Error(ErrorKind::parse, "short table row");
      t.set(static_cast<int>(i), static_cast<int>(j), element_index(tok));
    }
  }
  return t;
}

struct TableVerdict {
  bool ok = false;
  int x = -1, y = -1, z = -1;  // failing associativity triple
  std::string reason;
};

inline TableVerdict validate_cayley_table(const CayleyTable& t) {
  TableVerdict v;
  size_t n = t.elements.size();
  if (t.mul.size() != n * n)
    throw Error(ErrorKind::usage, "malformed table: wrong entry count");
  for (int e : t.mul) {
    if (e < 0 || e >= static_cast<int>(n))
      throw Error(ErrorKind::usage, "malformed table: index out of range");
  }
  for (int x = 0; x < static_cast<int>(n); ++x)
    for (int y = 0; y < static_cast<int>(n); ++y)
      for (int z = 0; z < static_cast<int>(n); ++z)
        if (t.at(t.at(x, y), z) != t.at(x, t.at(y, z))) {
          v.x = x;
          v.y = y;
          v.z = z;
          v.reason = "associativity fails at (" + t.elements[static_cast<size_t>(x)] +
                     "," + t.elements[static_cast<size_t>(y)] + "," +
                     t.elements[static_cast<size_t>(z)] + ")";
          return v;
        }
  v.ok = true;
  return v;
}

inline int table_eval(const CayleyTable& t, const Word& w) {
  auto it = t.gens.find(w[0]);
  if (it == t.gens.end())
    throw Error(ErrorKind::usage, "generator map does not cover letter '" +
                                      std::string(1, w[0]) + "'");
  int acc = it->second;
  for (size_t i = 1; i < w.size(); ++i) {
    auto jt = t.gens.find(w[i]);
    if (jt == t.gens.end())
      throw Error(ErrorKind::usage, "generator map does not cover letter '" +
                                        std::string(1, w[i]) + "'");
    acc = t.at(acc, jt->second);
  }
  return acc;
}

struct SeparationVerdict {
  bool ok = false;
  std::string reason;
};

// ok iff the table is associative, every relation of P holds in it under the
// generator map, and the power-image sets of distinct generators are
// pairwise disjoint.
inline SeparationVerdict check_quotient_separation(const Presentation& p,
                                                   const CayleyTable& t) {
  SeparationVerdict v;
  TableVerdict tv = validate_cayley_table(t);
  if (!tv.ok) {
    v.reason = tv.reason;
    return v;
  }
  for (char c : p.alphabet) {
    if (!t.gens.count(c)) {
      v.reason = std::string("generator map does not cover letter '") + c + "'";
      return v;
    }
  }
  for (auto& r : p.relations) {
    if (table_eval(t, r.lhs) != table_eval(t, r.rhs)) {
      v.reason = "relation " + render_word(r.lhs) + "=" + render_word(r.rhs) +
                 " does not hold in the table";
      return v;
    }
  }
  // The set of all powers of an element of an n-element semigroup is the set
  // of its first n powers.
  std::map<char, std::set<int>> powers;
  for (char c : p.alphabet) {
    int acc = t.gens.at(c);
    std::set<int>& s = powers[c];
    for (int i = 0; i < t.n(); ++i) {
      s.insert(acc);
      acc = t.at(acc, t.gens.at(c));
    }
  }
  for (size_t i = 0; i < p.alphabet.size(); ++i) {
    for (size_t j = i + 1; j < p.alphabet.size(); ++j) {
      char x = p.alphabet[i], y = p.alphabet[j];
      for (int e : powers[x]) {
        if (powers[y].count(e)) {
          v.reason = std::string("power images of '") + x + "' and '" + y +
                     "' meet at " + t.elements[static_cast<size_t>(e)];
          return v;
        }
      }
    }
  }
  v.ok = true;
  return v;
}

// ---------------------------------------------------------------------------
// Two-letter suffix and prefix invariants.
// ---------------------------------------------------------------------------

struct SuffixVerdict {
  bool ok = false;
  int relation = -1;
  bool forward = true;  // orientation that breaks the invariant
  std::string context;  // "" for the empty context, else one letter
  std::string reason;
};

inline Word suffix2(const Word& w) { return w.substr(w.size() - 2); }

// ok iff for every relation side u -> v (both orientations) and every
// context q in {empty} u alphabet: suffix2(u q) in S implies
// suffix2(v q) in S.  Requires every relation side to have length >= 2;
// then one-step rewriting preserves "ends in S" for all words.
inline SuffixVerdict check_suffix_invariant(const Presentation& p,
                                            const std::vector<Word>& sigma) {
  for (auto& s : sigma) {
    if (s.size() != 2)
      throw Error(ErrorKind::usage, "suffix invariants use length-2 words");
  }
  for (auto& r : p.relations) {
    if (r.lhs.size() < 2 || r.rhs.size() < 2)
      throw Error(ErrorKind::usage,
                  "suffix invariants require all relation sides of length >= 2");
  }
  auto in_sigma = [&](const Word& w) {
    return std::find(sigma.begin(), sigma.end(), w) != sigma.end();
  };
  SuffixVerdict v;
  std::vector<std::string> contexts{""};
  for (char c : p.alphabet) contexts.push_back(std::string(1, c));
  for (size_t r = 0; r < p.relations.size(); ++r) {
    for (int dir = 0; dir < 2; ++dir) {
      const Word& u = dir == 0 ? p.relations[r].lhs : p.relations[r].rhs;
      const Word& w = dir == 0 ? p.relations[r].rhs : p.relations[r].lhs;
      for (auto& q : contexts) {
        if (in_sigma(suffix2(u + q)) && !in_sigma(suffix2(w + q))) {
          v.relation = static_cast<int>(r);
          v.forward = dir == 0;
          v.context = q;
          v.reason = "suffix " + suffix2(u + q) + " maps to " + suffix2(w + q) +
                     " outside the set (context '" + q + "')";
          return v;
        }
      }
    }
  }
  v.ok = true;
  return v;
}

inline Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

inline Presentation reversed(const Presentation& p) {
  Presentation out;
  out.alphabet = p.alphabet;
  for (auto& r : p.relations) out.relations.push_back({reversed(r.lhs), reversed(r.rhs)});
  return out;
}

// Prefix invariants are the mirror image: a prefix set P is invariant for a
// presentation exactly when the reversed prefixes are suffix-invariant for
// the reversed presentation.
inline SuffixVerdict check_prefix_invariant(const Presentation& p,
                                            const std::vector<Word>& pi) {
  std::vector<Word> reversed_set;
  for (auto& w : pi) reversed_set.push_back(reversed(w));
  return check_suffix_invariant(reversed(p), reversed_set);
}

// ---------------------------------------------------------------------------
// Irreducible generators.
// ---------------------------------------------------------------------------

struct IrreducibleVerdict {
  bool ok = false;
  int relation = -1;
  Word side;  // the offending pure power of x
};

// ok iff no relation side is a pure power of x; then every power of x is a
// singleton congruence class, so <x> is free and disjoint from everything.
inline IrreducibleVerdict check_irreducible_generator(const Presentation& p,
                                                      char x) {
  if (!p.has_letter(x))
    throw Error(ErrorKind::usage, "letter is not in the alphabet");
  IrreducibleVerdict v;
  for (size_t r = 0; r < p.relations.size(); ++r) {
    for (const Word* side : {&p.relations[r].lhs, &p.relations[r].rhs}) {
      if (is_pure_power(*side) && (*side)[0] == x) {
        v.relation = static_cast<int>(r);
        v.side = *side;
        return v;
      }
    }
  }
  v.ok = true;
  return v;
}

// ---------------------------------------------------------------------------
// Built-in quotient table fixtures, exactly as printed.
// ---------------------------------------------------------------------------

inline const std::string& fixture_table_text(Family f) {
  static const std::map<Family, std::string> fixtures{
      {Family::three_ii,
       "elements a' b' c'\n"
       "map a=a' b=b' c=c'\n"
       "a' a' a'\n"
       "a' b' b'\n"
       "a' b' c'\n"},
      {Family::three_iii,
       "elements a' b' c'\n"
       "map a=a' b=b' c=c'\n"
       "a' a' a'\n"
       "a' b' c'\n"
       "a' b' c'\n"},
      {Family::three_iv,
       "elements a' b' c'\n"
       "map a=a' b=b' c=c'\n"
       "a' a' c'\n"
       "a' b' c'\n"
       "a' a' c'\n"},
      {Family::three_v,
       "elements a' b' c'\n"
       "map a=a' b=b' c=c'\n"
       "a' a' c'\n"
       "a' b' c'\n"
       "a' c' c'\n"},
      {Family::three_vi,
       "elements a' b' c'\n"
       "map a=a' b=b' c=c'\n"
       "a' b' c'\n"
       "a' b' c'\n"
       "a' b' c'\n"},
      // The four-element table is printed with the label (xi) in its source;
      // it certifies case (ix) and is stored under that id.
      {Family::three_ix,
       "elements 1 a' b' c'\n"
       "map a=a' b=b' c=c'\n"
       "1 a' b' c'\n"
       "a' a' b' b'\n"
       "b' a' b' a'\n"
       "c' a' b' 1\n"},
  };
  auto it = fixtures.find(f);
  if (it == fixtures.end())
    throw Error(ErrorKind::usage, "family has no table fixture");
  return it->second;
}

inline bool family_has_fixture_table(Family f) {
  switch (f) {
    case Family::three_ii:
    case Family::three_iii:
    case Family::three_iv:
    case Family::three_v:
    case Family::three_vi:
    case Family::three_ix:
      return true;
    default:
      return false;
  }
}

inline CayleyTable fixture_table(Family f) {
  return parse_cayley_table(fixture_table_text(f));
}

// ---------------------------------------------------------------------------
// The per-family witness seeds (one additive weighting per family, with the
// parameterized letter weights).
// ---------------------------------------------------------------------------

inline WeightWitness family_weight_seed(Family f, const ParamMap& pm) {
  auto get = [&](char name) { return static_cast<long>(pm.at(name)); };
  WeightWitness w;
  switch (f) {
    case Family::two_i:
      w.weights = {{'a', Weight::of(1)}, {'b', Weight::of(get('k') - 1)}};
      break;
    case Family::two_ii:
      w.weights = {{'a', Weight::of(1)}, {'b', Weight::of(1)}};
      break;
    case Family::three_i:
    case Family::three_ii:
      w.weights = {{'a', Weight::of(1)},
                   {'b', Weight::of(get('i') - 1)},
                   {'c', Weight::of(get('j') - 1)}};
      break;
    case Family::three_iii:
      w.weights = {{'a', Weight::of(1)},
                   {'b', Weight::of(get('i') - 1)},
                   {'c', Weight::of(get('i') - 1)}};
      break;
    case Family::three_iv:
    case Family::three_v:
      w.weights = {{'a', Weight::of(1)},
                   {'b', Weight::of(get('i') - 1)},
                   {'c', Weight::of(1)}};
      break;
    case Family::three_vi:
    case Family::three_vii:
    case Family::three_viii:
      w.weights = {{'a', Weight::of(1)}, {'b', Weight::of(1)}, {'c', Weight::of(1)}};
      break;
    case Family::three_ix:
      w.weights = {{'a', Weight::of(1)},
                   {'b', Weight::of(1)},
                   {'c', Weight::of(get('i') - 1)}};
      break;
  }
  for (auto& [c, wt] : w.weights) {
    if (!wt.sink && wt.value > 0) w.targets += c;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Certificate bundles.
// ---------------------------------------------------------------------------

struct DisjointnessEvidence {
  enum class Kind { irreducible, table, suffix, prefix };
  Kind kind = Kind::irreducible;
  char pair_x = 0;
  char pair_y = 0;
  // irreducible
  char letter = 0;
  // table
  std::optional<CayleyTable> table;
  // suffix / prefix
  std::vector<Word> invariant_set;
  char separated = 0;  // the generator whose square lies in the set

  std::string kind_str() const {
    switch (kind) {
      case Kind::irreducible: return "irreducible";
      case Kind::table: return "table";
      case Kind::suffix: return "suffix";
      case Kind::prefix: return "prefix";
    }
    return "";
  }
};

struct CertificateBundle {
  Family family;
  ParamMap params;
  std::map<char, WeightWitness> witnesses;  // per generator
  std::vector<DisjointnessEvidence> disjointness;
};

struct BundleVerdict {
  bool ok = false;
  std::string detail;
};

inline bool evidence_covers_pair(const DisjointnessEvidence& e, char x, char y) {
  return (e.pair_x == x && e.pair_y == y) || (e.pair_x == y && e.pair_y == x);
}

inline BundleVerdict validate_evidence(const Presentation& p,
                                       const DisjointnessEvidence& e) {
  BundleVerdict v;
  std::string pair = std::string(1, e.pair_x) + e.pair_y;
  switch (e.kind) {
    case DisjointnessEvidence::Kind::irreducible: {
      if (e.letter != e.pair_x && e.letter != e.pair_y) {
        v.detail = "irreducible letter outside pair " + pair;
        return v;
      }
      IrreducibleVerdict iv = check_irreducible_generator(p, e.letter);
      if (!iv.ok) {
        v.detail = std::string("'") + e.letter + "' is not irreducible: side " +
                   render_word(iv.side);
        return v;
      }
      break;
    }
    case DisjointnessEvidence::Kind::table: {
      if (!e.table) {
        v.detail = "missing table";
        return v;
      }
      SeparationVerdict sv = check_quotient_separation(p, *e.table);
      if (!sv.ok) {
        v.detail = sv.reason;
        return v;
      }
      break;
    }
    case DisjointnessEvidence::Kind::suffix:
    case DisjointnessEvidence::Kind::prefix: {
      bool suffix = e.kind == DisjointnessEvidence::Kind::suffix;
      SuffixVerdict sv = suffix ? check_suffix_invariant(p, e.invariant_set)
                                : check_prefix_invariant(p, e.invariant_set);
      if (!sv.ok) {
        v.detail = sv.reason;
        return v;
      }
      if (e.separated != e.pair_x && e.separated != e.pair_y) {
        v.detail = "separated letter outside pair " + pair;
        return v;
      }
      char other = e.separated == e.pair_x ? e.pair_y : e.pair_x;
      auto member = [&](char c) {
        Word sq(2, c);
        return std::find(e.invariant_set.begin(), e.invariant_set.end(), sq) !=
               e.invariant_set.end();
      };
      if (!member(e.separated)) {
        v.detail = std::string("square of '") + e.separated +
                   "' is not in the invariant set";
        return v;
      }
      if (member(other)) {
        v.detail = std::string("square of '") + other +
                   "' is in the invariant set; no separation";
        return v;
      }
      break;
    }
  }
  v.ok = true;
  return v;
}

inline BundleVerdict validate_bundle(const Presentation& p,
                                     const CertificateBundle& bundle) {
  BundleVerdict v;
  for (char c : p.alphabet) {
    auto it = bundle.witnesses.find(c);
    if (it == bundle.witnesses.end()) {
      v.detail = std::string("no infinite-order witness for '") + c + "'";
      return v;
    }
    WitnessVerdict wv = validate_weight_witness(p, it->second);
    if (!wv.ok) {
      v.detail = std::string("witness for '") + c + "' invalid: " + wv.reason;
      return v;
    }
    if (wv.certified.find(c) == std::string::npos) {
      v.detail = std::string("witness for '") + c + "' does not certify it";
      return v;
    }
  }
  for (size_t i = 0; i < p.alphabet.size(); ++i) {
    for (size_t j = i + 1; j < p.alphabet.size(); ++j) {
      char x = p.alphabet[i], y = p.alphabet[j];
      bool covered = false;
      for (auto& e : bundle.disjointness) {
        if (!evidence_covers_pair(e, x, y)) continue;
        BundleVerdict ev = validate_evidence(p, e);
        if (ev.ok) {
          covered = true;
          break;
        }
        v.detail = ev.detail;
        return v;
      }
      if (!covered) {
        v.detail = std::string("pair {") + x + "," + y +
                   "} has no disjointness evidence";
        return v;
      }
    }
  }
  v.ok = true;
  return v;
}

// ---------------------------------------------------------------------------
// verify_instance: assemble the certificate bundle for a family instance.
// ---------------------------------------------------------------------------

struct VerifyBounds {
  long max_weight = 6;
};

struct VerifyFailure {
  char generator = 0;
  long bound = 0;
  std::string message;
};

struct VerifyResult {
  std::optional<CertificateBundle> bundle;
  std::optional<VerifyFailure> failure;
  bool ok() const { return bundle.has_value(); }
};

namespace detail {

inline DisjointnessEvidence irr_evidence(char x, char y, char letter) {
  DisjointnessEvidence e;
  e.kind = DisjointnessEvidence::Kind::irreducible;
  e.pair_x = x;
  e.pair_y = y;
  e.letter = letter;
  return e;
}

inline DisjointnessEvidence table_evidence(char x, char y, CayleyTable t) {
  DisjointnessEvidence e;
  e.kind = DisjointnessEvidence::Kind::table;
  e.pair_x = x;
  e.pair_y = y;
  e.table = std::move(t);
  return e;
}

inline DisjointnessEvidence suffix_evidence(char x, char y,
                                            std::vector<Word> sigma,
                                            char separated) {
  DisjointnessEvidence e;
  e.kind = DisjointnessEvidence::Kind::suffix;
  e.pair_x = x;
  e.pair_y = y;
  e.invariant_set = std::move(sigma);
  e.separated = separated;
  return e;
}

inline DisjointnessEvidence prefix_evidence(char x, char y,
                                            std::vector<Word> pi,
                                            char separated) {
  DisjointnessEvidence e;
  e.kind = DisjointnessEvidence::Kind::prefix;
  e.pair_x = x;
  e.pair_y = y;
  e.invariant_set = std::move(pi);
  e.separated = separated;
  return e;
}

}  // namespace detail

// Assembles certificates along each family's strategy: weight witnesses for
// infiniteness (the family seed when it certifies the letter, otherwise an
// exhaustive search), plus disjointness evidence per generator pair.  An
// optional override replaces the built-in table fixture.
inline VerifyResult verify_instance(
    const Presentation& p, const VerifyBounds& bounds = {},
    const std::optional<CayleyTable>& table_override = std::nullopt) {
  if (!p.tag)
    throw Error(ErrorKind::usage, "presentation is not a family instance");
  Family f = p.tag->family;
  const ParamMap& pm = p.tag->params;

  VerifyResult out;
  CertificateBundle bundle;
  bundle.family = f;
  bundle.params = pm;

  WeightWitness seed = family_weight_seed(f, pm);
  WitnessVerdict seed_verdict = validate_weight_witness(p, seed);
  for (char x : p.alphabet) {
    if (seed_verdict.ok && seed_verdict.certified.find(x) != std::string::npos) {
      WeightWitness wit = seed;
      wit.targets = std::string(1, x);
      bundle.witnesses[x] = wit;
      continue;
    }
    auto found = search_weight_witness(p, x, bounds.max_weight);
    if (!found) {
      out.failure = VerifyFailure{x, bounds.max_weight,
                                  std::string("no weight witness for '") + x +
                                      "' within weight bound"};
      return out;
    }
    bundle.witnesses[x] = *found;
  }

  switch (f) {
    case Family::two_i:
      bundle.disjointness.push_back(detail::irr_evidence('a', 'b', 'b'));
      break;
    case Family::two_ii:
      bundle.disjointness.push_back(
          detail::prefix_evidence('a', 'b', {Word("aa"), Word("ab")}, 'a'));
      break;
    case Family::three_i:
      bundle.disjointness.push_back(detail::irr_evidence('a', 'b', 'b'));
      bundle.disjointness.push_back(detail::irr_evidence('a', 'c', 'c'));
      bundle.disjointness.push_back(detail::irr_evidence('b', 'c', 'b'));
      break;
    case Family::three_ii:
    case Family::three_iii:
    case Family::three_iv:
    case Family::three_v:
    case Family::three_vi:
    case Family::three_ix: {
      CayleyTable t = table_override ? *table_override : fixture_table(f);
      bundle.disjointness.push_back(detail::table_evidence('a', 'b', t));
      bundle.disjointness.push_back(detail::table_evidence('a', 'c', t));
      bundle.disjointness.push_back(detail::table_evidence('b', 'c', t));
      break;
    }
    case Family::three_vii: {
      std::vector<Word> sigma1{Word("aa"), Word("cb"), Word("ba")};
      std::vector<Word> sigma2{Word("ab"), Word("ca"), Word("bb")};
      bundle.disjointness.push_back(detail::suffix_evidence('a', 'b', sigma1, 'a'));
      bundle.disjointness.push_back(detail::suffix_evidence('a', 'c', sigma1, 'a'));
      bundle.disjointness.push_back(detail::suffix_evidence('b', 'c', sigma2, 'b'));
      break;
    }
    case Family::three_viii: {
      std::vector<Word> ends_c{Word("ac"), Word("bc"), Word("cc")};
      std::vector<Word> sigma4{Word("ab"), Word("bb")};
      bundle.disjointness.push_back(detail::suffix_evidence('a', 'b', sigma4, 'b'));
      bundle.disjointness.push_back(detail::suffix_evidence('a', 'c', ends_c, 'c'));
      bundle.disjointness.push_back(detail::suffix_evidence('b', 'c', ends_c, 'c'));
      break;
    }
  }

  BundleVerdict bv = validate_bundle(p, bundle);
  if (!bv.ok) {
    out.failure = VerifyFailure{0, 0, bv.detail};
    return out;
  }
  out.bundle = std::move(bundle);
  return out;
}

}  // namespace monounion
