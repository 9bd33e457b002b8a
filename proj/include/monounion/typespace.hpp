#pragma once

// Type tuples, the symmetry group generated by generator relabelings and
// multiplication reversal, orbit enumeration with canonical representatives,
// and closed-pair detection.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "monounion/words.hpp"

namespace monounion {

// Assignment of a landing letter to each ordered pair of distinct
// generators, in the fixed slot order of pair_order(copies).  Landing
// letters are stored as indices into the alphabet.
class TypeTuple {
 public:
  TypeTuple() = default;
  explicit TypeTuple(int copies) : copies_(copies) {
    pairs_ = static_cast<int>(pair_order(copies).size());
    v_.fill(0);
  }

  static TypeTuple from_string(const std::string& s) {
    int copies = s.size() == 2 ? 2 : (s.size() == 6 ? 3 : 0);
    if (copies == 0)
      throw Error(ErrorKind::usage, "a type has 2 or 6 landing letters");
    TypeTuple t(copies);
    for (int i = 0; i < t.pairs_; ++i) {
      size_t idx = alphabet_for(copies).find(s[static_cast<size_t>(i)]);
      if (idx == std::string::npos)
        throw Error(ErrorKind::usage,
                    "type entry outside the alphabet: " + s);
      t.v_[static_cast<size_t>(i)] = static_cast<uint8_t>(idx);
    }
    return t;
  }

  static TypeTuple from_index(int copies, size_t index) {
    TypeTuple t(copies);
    size_t k = static_cast<size_t>(copies);
    for (int s = t.pairs_ - 1; s >= 0; --s) {
      t.v_[static_cast<size_t>(s)] = static_cast<uint8_t>(index % k);
      index /= k;
    }
    return t;
  }

  size_t index() const {
    size_t k = static_cast<size_t>(copies_);
    size_t out = 0;
    for (int s = 0; s < pairs_; ++s) out = out * k + v_[static_cast<size_t>(s)];
    return out;
  }

  static size_t count(int copies) {
    size_t k = static_cast<size_t>(copies);
    size_t n = 1;
    for (size_t s = 0; s < pair_order(copies).size(); ++s) n *= k;
    return n;  // 4 for two copies, 729 for three
  }

  int copies() const { return copies_; }
  int pairs() const { return pairs_; }

  uint8_t entry(int slot) const { return v_[static_cast<size_t>(slot)]; }
  void set_entry(int slot, uint8_t letter) { v_[static_cast<size_t>(slot)] = letter; }

  // Landing letter of the product xy, by letter index.
  uint8_t landing(int x, int y) const {
    auto& pairs = pair_order(copies_);
    for (size_t s = 0; s < pairs.size(); ++s) {
      if (pairs[s].first - 'a' == x && pairs[s].second - 'a' == y)
        return v_[s];
    }
    throw Error(ErrorKind::usage, "not an ordered pair of distinct generators");
  }

  std::string str() const {
    std::string out;
    for (int s = 0; s < pairs_; ++s)
      out += alphabet_for(copies_)[v_[static_cast<size_t>(s)]];
    return out;
  }

  friend bool operator==(const TypeTuple& a, const TypeTuple& b) {
    return a.copies_ == b.copies_ &&
           std::equal(a.v_.begin(), a.v_.begin() + a.pairs_, b.v_.begin());
  }
  friend bool operator<(const TypeTuple& a, const TypeTuple& b) {
    return std::lexicographical_compare(a.v_.begin(), a.v_.begin() + a.pairs_,
                                        b.v_.begin(), b.v_.begin() + b.pairs_);
  }

 private:
  int copies_ = 3;
  int pairs_ = 6;
  std::array<uint8_t, 6> v_{};
};

// A relabeling permutation together with an optional multiplication
// reversal.  The twelve (or four, for two copies) values form a group.
struct Symmetry {
  std::array<uint8_t, 3> perm{0, 1, 2};  // letter index -> letter index
  bool rev = false;

  friend bool operator==(const Symmetry&, const Symmetry&) = default;

  std::string str(int copies) const {
    std::string out;
    for (int i = 0; i < copies; ++i)
      out += static_cast<char>('a' + perm[static_cast<size_t>(i)]);
    if (rev) out += "*";
    return out;
  }
};

inline Symmetry compose(const Symmetry& g, const Symmetry& h) {
  // (g o h)(T) = g(h(T)); reversal commutes with relabelings.
  Symmetry out;
  for (size_t i = 0; i < 3; ++i) out.perm[i] = g.perm[h.perm[i]];
  out.rev = g.rev != h.rev;
  return out;
}

inline std::vector<Symmetry> all_symmetries(int copies) {
  std::vector<Symmetry> out;
  std::array<uint8_t, 3> p{0, 1, 2};
  std::vector<std::array<uint8_t, 3>> perms;
  if (copies == 2) {
    perms = {{0, 1, 2}, {1, 0, 2}};
  } else {
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  for (bool rev : {false, true})
    for (auto& q : perms) out.push_back(Symmetry{q, rev});
  return out;
}

inline TypeTuple apply_symmetry(const Symmetry& g, const TypeTuple& t) {
  int copies = t.copies();
  std::array<int, 3> inv{};
  for (int i = 0; i < copies; ++i) inv[g.perm[static_cast<size_t>(i)]] = i;
  TypeTuple out(copies);
  auto& pairs = pair_order(copies);
  for (size_t s = 0; s < pairs.size(); ++s) {
    int x = inv[static_cast<size_t>(pairs[s].first - 'a')];
    int y = inv[static_cast<size_t>(pairs[s].second - 'a')];
    if (g.rev) std::swap(x, y);
    out.set_entry(static_cast<int>(s), g.perm[t.landing(x, y)]);
  }
  return out;
}

inline TypeTuple canonical_rep(const TypeTuple& t) {
  TypeTuple best = t;
  for (auto& g : all_symmetries(t.copies())) {
    TypeTuple image = apply_symmetry(g, t);
    if (image < best) best = image;
  }
  return best;
}

struct Orbit {
  TypeTuple canonical;              // lexicographically least member
  std::vector<TypeTuple> members;   // sorted
  size_t size() const { return members.size(); }
};

inline std::vector<Orbit> orbits(int copies) {
  std::vector<Orbit> out;
  size_t n = TypeTuple::count(copies);
  std::vector<bool> seen(n, false);
  auto group = all_symmetries(copies);
  for (size_t idx = 0; idx < n; ++idx) {
    if (seen[idx]) continue;
    TypeTuple t = TypeTuple::from_index(copies, idx);
    Orbit orbit;
    for (auto& g : group) {
      TypeTuple image = apply_symmetry(g, t);
      if (!seen[image.index()]) {
        seen[image.index()] = true;
        orbit.members.push_back(image);
      }
    }
    std::sort(orbit.members.begin(), orbit.members.end());
    orbit.canonical = orbit.members.front();
    out.push_back(std::move(orbit));
  }
  return out;
}

// Independent orbit count via the orbit-counting (Burnside) lemma: the
// average number of tuples fixed by each group element.
inline size_t orbit_count_burnside(int copies) {
  auto group = all_symmetries(copies);
  size_t n = TypeTuple::count(copies);
  size_t fixed_total = 0;
  for (auto& g : group) {
    for (size_t idx = 0; idx < n; ++idx) {
      TypeTuple t = TypeTuple::from_index(copies, idx);
      if (apply_symmetry(g, t) == t) ++fixed_total;
    }
  }
  if (fixed_total % group.size() != 0)
    throw Error(ErrorKind::usage, "fixed-point total not divisible by group order");
  return fixed_total / group.size();
}

// Pair {x,y} is closed when both cross products land inside {x,y}; then
// <x> u <y> is a subsemigroup.
inline std::vector<std::pair<char, char>> closed_pairs(const TypeTuple& t) {
  std::vector<std::pair<char, char>> out;
  int copies = t.copies();
  for (int x = 0; x < copies; ++x) {
    for (int y = x + 1; y < copies; ++y) {
      uint8_t xy = t.landing(x, y);
      uint8_t yx = t.landing(y, x);
      bool closed = (xy == x || xy == y) && (yx == x || yx == y);
      if (closed)
        out.push_back({static_cast<char>('a' + x), static_cast<char>('a' + y)});
    }
  }
  return out;
}

}  // namespace monounion
