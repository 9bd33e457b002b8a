#pragma once

// The derivation engine: elementary rewriting steps, bounded consequence
// search, congruence closure on a bounded ball of words, and probe-based
// contradiction search.
//
// Non-derivability is never asserted; every negative verdict is
// "unknown within bounds".

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "monounion/words.hpp"

namespace monounion {

struct RewriteStep {
  Word source;
  Word target;
  int relation = -1;   // index into the presentation's relations
  bool forward = true; // lhs -> rhs when true
  int position = 0;    // 0-based start of the replaced factor
  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

// Replays a single step; used by tests and by path validation.
inline bool step_valid(const RewriteStep& st, const Presentation& p) {
  if (st.relation < 0 || st.relation >= static_cast<int>(p.relations.size()))
    return false;
  const Relation& r = p.relations[static_cast<size_t>(st.relation)];
  const Word& from = st.forward ? r.lhs : r.rhs;
  const Word& to = st.forward ? r.rhs : r.lhs;
  size_t pos = static_cast<size_t>(st.position);
  if (pos + from.size() > st.source.size()) return false;
  if (st.source.compare(pos, from.size(), from) != 0) return false;
  Word expect = st.source.substr(0, pos) + to + st.source.substr(pos + from.size());
  return expect == st.target;
}

inline std::vector<std::pair<Word, RewriteStep>> one_step_rewrites_steps(
    const Word& w, const Presentation& p) {
  std::vector<std::pair<Word, RewriteStep>> out;
  for (size_t r = 0; r < p.relations.size(); ++r) {
    const Relation& rel = p.relations[r];
    for (int dir = 0; dir < 2; ++dir) {
      const Word& from = dir == 0 ? rel.lhs : rel.rhs;
      const Word& to = dir == 0 ? rel.rhs : rel.lhs;
      if (from == to) continue;
      if (from.size() > w.size()) continue;
      for (size_t i = 0; i + from.size() <= w.size(); ++i) {
        if (w.compare(i, from.size(), from) != 0) continue;
        Word next = w.substr(0, i) + to + w.substr(i + from.size());
        out.push_back({std::move(next),
                       RewriteStep{w, {}, static_cast<int>(r), dir == 0,
                                   static_cast<int>(i)}});
        out.back().second.target = out.back().first;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.second.relation != b.second.relation)
      return a.second.relation < b.second.relation;
    if (a.second.forward != b.second.forward) return a.second.forward;
    return a.second.position < b.second.position;
  });
  return out;
}

// All words obtainable from w by one elementary rewrite, duplicate-free and
// in lexicographic order.
inline std::vector<Word> one_step_rewrites(const Word& w, const Presentation& p) {
  std::vector<Word> out;
  for (auto& [next, step] : one_step_rewrites_steps(w, p)) out.push_back(next);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Bounded consequence search.
// ---------------------------------------------------------------------------

enum class ConsequenceKind { derivable, unknown };

struct ConsequenceResult {
  ConsequenceKind kind = ConsequenceKind::unknown;
  std::vector<RewriteStep> path;  // u to v when derivable
  // True when the whole congruence class of u was enumerated without hitting
  // any bound; then "unknown" is in fact a definite "no" within A+.
  bool class_complete = false;
  size_t visited = 0;
};

inline ConsequenceResult is_consequence(const Word& u, const Word& v,
                                        const Presentation& p, size_t maxlen,
                                        size_t maxnodes) {
  if (maxlen < 1 || maxnodes < 1)
    throw Error(ErrorKind::usage, "bounds must be positive");
  if (u.empty() || v.empty())
    throw Error(ErrorKind::usage, "words must be non-empty");
  if (!word_over(u, p.alphabet) || !word_over(v, p.alphabet))
    throw Error(ErrorKind::usage, "word uses letters outside the alphabet");

  ConsequenceResult res;
  if (u == v) {
    res.kind = ConsequenceKind::derivable;
    res.class_complete = false;
    res.visited = 1;
    return res;
  }

  std::unordered_map<Word, std::pair<Word, RewriteStep>> parent;
  std::unordered_set<Word> seen{u};
  std::deque<Word> queue{u};
  bool truncated = false;
  size_t visited = 0;
  while (!queue.empty()) {
    Word w = queue.front();
    queue.pop_front();
    ++visited;
    if (visited > maxnodes) {
      truncated = true;
      break;
    }
    for (auto& [next, step] : one_step_rewrites_steps(w, p)) {
      if (next.size() > maxlen) {
        truncated = true;
        continue;
      }
      if (!seen.insert(next).second) continue;
      parent.emplace(next, std::make_pair(w, step));
      if (next == v) {
        res.kind = ConsequenceKind::derivable;
        res.visited = visited;
        Word cur = v;
        while (cur != u) {
          auto& [prev, st] = parent.at(cur);
          res.path.push_back(st);
          cur = prev;
        }
        std::reverse(res.path.begin(), res.path.end());
        return res;
      }
      queue.push_back(next);
    }
  }
  res.kind = ConsequenceKind::unknown;
  res.class_complete = !truncated;
  res.visited = visited;
  return res;
}

// ---------------------------------------------------------------------------
// Congruence ball: union-find closure over all words of length <= L.
// ---------------------------------------------------------------------------

struct MergeCollision {
  char x;
  int p;
  char y;
  int q;
  friend bool operator==(const MergeCollision&, const MergeCollision&) = default;
};

struct MergeReport {
  std::vector<MergeCollision> collisions;
  bool empty() const { return collisions.empty(); }
};

struct BallEdge {
  size_t from;  // ranks
  size_t to;
  RewriteStep step;
};

class Ball {
 public:
  int length_bound = 0;
  std::string alphabet;
  std::vector<Word> words;             // rank -> word, (length, lex) order
  std::vector<int> class_of;           // rank -> class id (ids by least rank)
  std::vector<std::vector<size_t>> classes;  // class id -> sorted ranks
  std::vector<BallEdge> edges;         // spanning forest of the closure
  MergeReport merges;

  size_t class_count() const { return classes.size(); }

  // Number of distinct classes among the pure powers x^n, n <= L.  For a
  // genuine disjoint union of free monogenic semigroups this is
  // copies * L at every bound.
  size_t pure_power_class_count() const {
    std::set<int> ids;
    for (char x : alphabet)
      for (int n = 1; n <= length_bound; ++n)
        ids.insert(class_of[rank_of(pure_power(x, n))]);
    return ids.size();
  }

  size_t rank_of(const Word& w) const {
    size_t k = alphabet.size();
    size_t offset = 0;
    size_t layer = 1;
    for (size_t l = 1; l < w.size(); ++l) {
      layer *= k;
      offset += layer;
    }
    // offset now counts words shorter than w (layer sizes k^1..k^(|w|-1))
    size_t value = 0;
    for (char c : w) value = value * k + alphabet.find(c);
    return offset + value;
  }

  const Word& word_at(size_t rank) const { return words[rank]; }

  bool same_class(const Word& a, const Word& b) const {
    return class_of[rank_of(a)] == class_of[rank_of(b)];
  }

  // Derivation between two same-class words through the spanning forest.
  std::vector<RewriteStep> derivation(const Word& from, const Word& to) const;
};

namespace detail {

class DenseUf {
 public:
  explicit DenseUf(size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }
  size_t find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<size_t> parent_;
  std::vector<size_t> size_;
};

}  // namespace detail

inline Ball congruence_ball(const Presentation& p, int L,
                            size_t word_limit = 2'000'000) {
  if (L < 1) throw Error(ErrorKind::usage, "length bound must be positive");
  size_t k = p.alphabet.size();
  size_t total = 0;
  size_t layer = 1;
  for (int l = 1; l <= L; ++l) {
    if (layer > word_limit / k) {
      throw Error(ErrorKind::resource,
                  "ball of length " + std::to_string(L) + " over " +
                      std::to_string(k) +
                      " letters exceeds the word limit; lower the length");
    }
    layer *= k;
    total += layer;
    if (total > word_limit) {
      throw Error(ErrorKind::resource,
                  "ball of length " + std::to_string(L) + " over " +
                      std::to_string(k) +
                      " letters exceeds the word limit; lower the length");
    }
  }

  Ball ball;
  ball.length_bound = L;
  ball.alphabet = p.alphabet;
  ball.words.reserve(total);
  for (int l = 1; l <= L; ++l) {
    Word w(static_cast<size_t>(l), p.alphabet[0]);
    while (true) {
      ball.words.push_back(w);
      int pos = l - 1;
      while (pos >= 0) {
        size_t idx = p.alphabet.find(w[static_cast<size_t>(pos)]);
        if (idx + 1 < k) {
          w[static_cast<size_t>(pos)] = p.alphabet[idx + 1];
          break;
        }
        w[static_cast<size_t>(pos)] = p.alphabet[0];
        --pos;
      }
      if (pos < 0) break;
    }
  }

  detail::DenseUf uf(ball.words.size());
  for (size_t rank = 0; rank < ball.words.size(); ++rank) {
    for (auto& [next, step] : one_step_rewrites_steps(ball.words[rank], p)) {
      if (static_cast<int>(next.size()) > L) continue;
      size_t nrank = ball.rank_of(next);
      if (uf.unite(rank, nrank)) {
        ball.edges.push_back({rank, nrank, step});
      }
    }
  }

  std::unordered_map<size_t, int> root_to_id;
  ball.class_of.assign(ball.words.size(), -1);
  for (size_t rank = 0; rank < ball.words.size(); ++rank) {
    size_t root = uf.find(rank);
    auto [it, inserted] = root_to_id.emplace(root, static_cast<int>(ball.classes.size()));
    if (inserted) ball.classes.emplace_back();
    ball.class_of[rank] = it->second;
    ball.classes[static_cast<size_t>(it->second)].push_back(rank);
  }

  // Pure-power collisions, each witnessed by a derivation inside the ball.
  std::vector<std::pair<std::pair<char, int>, int>> powers;
  for (char x : p.alphabet)
    for (int n = 1; n <= L; ++n)
      powers.push_back({{x, n}, ball.class_of[ball.rank_of(pure_power(x, n))]});
  for (size_t i = 0; i < powers.size(); ++i) {
    for (size_t j = i + 1; j < powers.size(); ++j) {
      if (powers[i].second != powers[j].second) continue;
      auto [x, pe] = powers[i].first;
      auto [y, qe] = powers[j].first;
      ball.merges.collisions.push_back({x, pe, y, qe});
    }
  }
  return ball;
}

inline std::vector<RewriteStep> Ball::derivation(const Word& from,
                                                 const Word& to) const {
  size_t a = rank_of(from), b = rank_of(to);
  if (class_of[a] != class_of[b])
    throw Error(ErrorKind::usage, "words are not in the same ball class");
  if (a == b) return {};
  std::unordered_map<size_t, std::vector<std::pair<size_t, const BallEdge*>>> adj;
  for (auto& e : edges) {
    adj[e.from].push_back({e.to, &e});
    adj[e.to].push_back({e.from, &e});
  }
  std::unordered_map<size_t, std::pair<size_t, const BallEdge*>> parent;
  std::deque<size_t> queue{a};
  std::unordered_set<size_t> seen{a};
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    if (cur == b) break;
    for (auto& [next, edge] : adj[cur]) {
      if (!seen.insert(next).second) continue;
      parent[next] = {cur, edge};
      queue.push_back(next);
    }
  }
  std::vector<RewriteStep> path;
  size_t cur = b;
  while (cur != a) {
    auto& [prev, edge] = parent.at(cur);
    RewriteStep st = edge->step;
    if (edge->from != prev) {
      // Traverse the recorded edge backwards: swap endpoints, flip direction.
      std::swap(st.source, st.target);
      st.forward = !st.forward;
    }
    path.push_back(st);
    cur = prev;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// ---------------------------------------------------------------------------
// Probe elimination: breadth-first derivation neighborhoods of short probe
// words; two distinct pure powers in one neighborhood refute the instance.
// ---------------------------------------------------------------------------

struct PowerHit {
  char letter = 0;
  int exp = 0;
  std::vector<RewriteStep> path;  // probe -> this power
};

struct Contradiction {
  Word probe;
  PowerHit first;
  PowerHit second;
};

struct EliminateResult {
  std::optional<Contradiction> contradiction;
  bool eliminated() const { return contradiction.has_value(); }
};

inline std::vector<Word> default_probes(const std::string& alphabet,
                                        std::vector<int> lengths = {3, 4}) {
  std::vector<Word> probes;
  for (int len : lengths) {
    Word w(static_cast<size_t>(len), alphabet[0]);
    size_t k = alphabet.size();
    while (true) {
      probes.push_back(w);
      int pos = len - 1;
      while (pos >= 0) {
        size_t idx = alphabet.find(w[static_cast<size_t>(pos)]);
        if (idx + 1 < k) {
          w[static_cast<size_t>(pos)] = alphabet[idx + 1];
          break;
        }
        w[static_cast<size_t>(pos)] = alphabet[0];
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return probes;
}

inline EliminateResult probe_eliminate(const Presentation& p,
                                       const std::vector<Word>& probes,
                                       int depth, size_t maxlen) {
  if (depth < 1 || maxlen < 1)
    throw Error(ErrorKind::usage, "bounds must be positive");
  EliminateResult result;
  for (const Word& probe : probes) {
    if (!word_over(probe, p.alphabet))
      throw Error(ErrorKind::usage, "probe uses letters outside the alphabet");

    std::unordered_map<Word, std::pair<Word, RewriteStep>> parent;
    std::unordered_set<Word> seen{probe};
    std::deque<std::pair<Word, int>> queue{{probe, 0}};
    std::optional<PowerHit> first_hit;

    auto path_to = [&](const Word& w) {
      std::vector<RewriteStep> path;
      Word cur = w;
      while (cur != probe) {
        auto& [prev, st] = parent.at(cur);
        path.push_back(st);
        cur = prev;
      }
      std::reverse(path.begin(), path.end());
      return path;
    };

    auto check_power = [&](const Word& w) -> bool {
      if (!is_pure_power(w)) return false;
      PowerHit hit{w[0], static_cast<int>(w.size()), path_to(w)};
      if (!first_hit) {
        first_hit = std::move(hit);
        return false;
      }
      if (first_hit->letter == hit.letter && first_hit->exp == hit.exp)
        return false;
      result.contradiction = Contradiction{probe, *first_hit, std::move(hit)};
      return true;
    };

    if (check_power(probe)) return result;
    while (!queue.empty()) {
      auto [w, d] = queue.front();
      queue.pop_front();
      if (d >= depth) continue;
      for (auto& [next, step] : one_step_rewrites_steps(w, p)) {
        if (next.size() > maxlen) continue;
        if (!seen.insert(next).second) continue;
        parent.emplace(next, std::make_pair(w, step));
        if (check_power(next)) return result;
        queue.push_back({next, d + 1});
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Generator-map checking: do the images of src's relations hold in dst?
// ---------------------------------------------------------------------------

enum class MapVerdict { ok, fail, unknown };

struct GeneratorMapResult {
  MapVerdict verdict = MapVerdict::unknown;
  int relation = -1;        // first failing / undecided relation
  Relation image;           // its image in dst
};

inline Word map_word(const Word& w, const std::map<char, char>& gmap) {
  Word out;
  out.reserve(w.size());
  for (char c : w) out += gmap.at(c);
  return out;
}

inline GeneratorMapResult check_generator_map(const Presentation& src,
                                              const Presentation& dst,
                                              const std::map<char, char>& gmap,
                                              size_t maxlen, size_t maxnodes) {
  for (char c : src.alphabet) {
    auto it = gmap.find(c);
    if (it == gmap.end())
      throw Error(ErrorKind::usage, "generator map is not total on the source alphabet");
    if (!dst.has_letter(it->second))
      throw Error(ErrorKind::usage, "generator map leaves the target alphabet");
  }
  GeneratorMapResult res;
  int first_unknown = -1;
  Relation unknown_image;
  for (size_t r = 0; r < src.relations.size(); ++r) {
    Relation image{map_word(src.relations[r].lhs, gmap),
                   map_word(src.relations[r].rhs, gmap)};
    ConsequenceResult c = is_consequence(image.lhs, image.rhs, dst, maxlen, maxnodes);
    if (c.kind == ConsequenceKind::derivable) continue;
    if (c.class_complete) {
      // The whole class of the image lhs was enumerated; the rhs is not in it.
      res.verdict = MapVerdict::fail;
      res.relation = static_cast<int>(r);
      res.image = image;
      return res;
    }
    if (first_unknown < 0) {
      first_unknown = static_cast<int>(r);
      unknown_image = image;
    }
  }
  if (first_unknown >= 0) {
    res.verdict = MapVerdict::unknown;
    res.relation = first_unknown;
    res.image = unknown_image;
    return res;
  }
  res.verdict = MapVerdict::ok;
  return res;
}

}  // namespace monounion
