#pragma once

// Letters, words, relations, presentations, and the eleven parameterized
// presentation families together with their arithmetic side constraints.

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monounion {

// A word is a non-empty string over the presentation's alphabet.  Elements
// of the free semigroup, never of the free monoid: the empty string is not
// a word.
using Word = std::string;

using ParamMap = std::map<char, int>;

enum class ErrorKind { usage, parse, constraint, resource };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Word pure_power(char letter, int exp) {
  if (exp < 1) throw Error(ErrorKind::usage, "exponent must be positive");
  return Word(static_cast<size_t>(exp), letter);
}

inline bool is_pure_power(const Word& w) {
  return !w.empty()
         && std::all_of(w.begin(), w.end(), [&](char c) { return c == w[0]; });
}

// Run-length view; round-trips losslessly with word_from_runs.
inline std::vector<std::pair<char, int>> word_runs(const Word& w) {
  std::vector<std::pair<char, int>> runs;
  for (char c : w) {
    if (!runs.empty() && runs.back().first == c) {
      ++runs.back().second;
    } else {
      runs.emplace_back(c, 1);
    }
  }
  return runs;
}

inline Word word_from_runs(const std::vector<std::pair<char, int>>& runs) {
  Word w;
  for (auto [c, n] : runs) w.append(pure_power(c, n));
  return w;
}

// Power notation: "aaab" renders as "a^3b".
inline std::string render_word(const Word& w) {
  std::string out;
  for (auto [c, n] : word_runs(w)) {
    out += c;
    if (n > 1) out += "^" + std::to_string(n);
  }
  return out;
}

struct Relation {
  Word lhs;
  Word rhs;
  friend bool operator==(const Relation&, const Relation&) = default;
};

enum class Family {
  two_i,
  two_ii,
  three_i,
  three_ii,
  three_iii,
  three_iv,
  three_v,
  three_vi,
  three_vii,
  three_viii,
  three_ix,
};

inline constexpr std::array<Family, 11> all_families{
    Family::two_i,    Family::two_ii,  Family::three_i,  Family::three_ii,
    Family::three_iii, Family::three_iv, Family::three_v, Family::three_vi,
    Family::three_vii, Family::three_viii, Family::three_ix};

struct FamilyTag {
  Family family;
  ParamMap params;
  friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

struct Presentation {
  std::string alphabet;             // ordered, distinct single-character letters
  std::vector<Relation> relations;  // declared order preserved
  std::optional<FamilyTag> tag;

  bool has_letter(char c) const {
    return alphabet.find(c) != std::string::npos;
  }
};

inline bool word_over(const Word& w, const std::string& alphabet) {
  return std::all_of(w.begin(), w.end(), [&](char c) {
    return alphabet.find(c) != std::string::npos;
  });
}

// Ordered generator pairs, in the fixed display order used everywhere:
// (a,b),(b,a) for two generators and (a,b),(b,a),(a,c),(c,a),(b,c),(c,b)
// for three.
inline const std::vector<std::pair<char, char>>& pair_order(int copies) {
  static const std::vector<std::pair<char, char>> two{{'a', 'b'}, {'b', 'a'}};
  static const std::vector<std::pair<char, char>> three{
      {'a', 'b'}, {'b', 'a'}, {'a', 'c'}, {'c', 'a'}, {'b', 'c'}, {'c', 'b'}};
  if (copies == 2) return two;
  if (copies == 3) return three;
  throw Error(ErrorKind::usage, "copies must be 2 or 3");
}

inline std::string alphabet_for(int copies) {
  if (copies == 2) return "ab";
  if (copies == 3) return "abc";
  throw Error(ErrorKind::usage, "copies must be 2 or 3");
}

// ---------------------------------------------------------------------------
// Presentation text format.
//
// One line or ';'-separated: a header "letters <l1> <l2> ..." with
// single-character letters, followed by relations "<word>=<word>" where a
// word is a concatenation of letters, each optionally followed by
// "^<positive int>".  Whitespace is insignificant.
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

inline Word parse_word_text(const std::string& text, size_t stmt_base,
                            const std::string& stmt, size_t& k,
                            const std::string& alphabet) {
  Word w;
  while (k < stmt.size()) {
    char ch = stmt[k];
    if (is_space(ch)) {
      ++k;
      continue;
    }
    if (ch == '=') break;
    if (alphabet.find(ch) == std::string::npos) {
      if (std::isalpha(static_cast<unsigned char>(ch)) != 0) {
        throw Error(ErrorKind::parse,
                    "undeclared letter '" + std::string(1, ch) +
                        "' at position " + std::to_string(stmt_base + k));
      }
      throw Error(ErrorKind::parse, "syntax error at position " +
                                        std::to_string(stmt_base + k));
    }
    ++k;
    while (k < stmt.size() && is_space(stmt[k])) ++k;
    int exp = 1;
    if (k < stmt.size() && stmt[k] == '^') {
      ++k;
      while (k < stmt.size() && is_space(stmt[k])) ++k;
      size_t dig_start = k;
      long value = 0;
      while (k < stmt.size() && std::isdigit(static_cast<unsigned char>(stmt[k])) != 0) {
        value = value * 10 + (stmt[k] - '0');
        if (value > 1000000) {
          throw Error(ErrorKind::parse, "exponent too large at position " +
                                            std::to_string(stmt_base + dig_start));
        }
        ++k;
      }
      if (k == dig_start) {
        throw Error(ErrorKind::parse, "expected exponent digits at position " +
                                          std::to_string(stmt_base + k));
      }
      if (value < 1) {
        throw Error(ErrorKind::parse, "exponent must be positive at position " +
                                          std::to_string(stmt_base + dig_start));
      }
      exp = static_cast<int>(value);
    }
    w.append(static_cast<size_t>(exp), ch);
  }
  (void)text;
  return w;
}

// Orientation-normalized copy, used only for duplicate detection.
inline Relation normalized(const Relation& r) {
  if (r.rhs < r.lhs) return {r.rhs, r.lhs};
  return r;
}

}  // namespace detail

// A single word in the external syntax (letters with optional ^exponent).
inline Word parse_word(const std::string& text, const std::string& alphabet) {
  size_t k = 0;
  Word w = detail::parse_word_text(text, 0, text, k, alphabet);
  if (k < text.size())
    throw Error(ErrorKind::parse, "syntax error at position " + std::to_string(k));
  if (w.empty()) throw Error(ErrorKind::parse, "empty word");
  return w;
}

inline Presentation parse_presentation(const std::string& text) {
  Presentation p;
  std::vector<std::pair<size_t, std::string>> stmts;
  size_t start = 0;
  for (size_t j = 0; j <= text.size(); ++j) {
    if (j == text.size() || text[j] == ';' || text[j] == '\n') {
      stmts.emplace_back(start, text.substr(start, j - start));
      start = j + 1;
    }
  }

  bool saw_header = false;
  std::vector<Relation> normalized_seen;
  for (auto& [base, stmt] : stmts) {
    size_t k = 0;
    while (k < stmt.size() && detail::is_space(stmt[k])) ++k;
    if (k == stmt.size()) continue;  // blank statement

    if (!saw_header) {
      static const std::string kw = "letters";
      if (stmt.compare(k, kw.size(), kw) != 0) {
        throw Error(ErrorKind::parse, "expected 'letters' header at position " +
                                          std::to_string(base + k));
      }
      k += kw.size();
      while (k < stmt.size()) {
        if (detail::is_space(stmt[k])) {
          ++k;
          continue;
        }
        char ch = stmt[k];
        if (std::isalpha(static_cast<unsigned char>(ch)) == 0) {
          throw Error(ErrorKind::parse, "syntax error at position " +
                                            std::to_string(base + k));
        }
        if (p.has_letter(ch)) {
          throw Error(ErrorKind::parse, "duplicate letter '" +
                                            std::string(1, ch) +
                                            "' at position " +
                                            std::to_string(base + k));
        }
        p.alphabet += ch;
        ++k;
      }
      if (p.alphabet.empty()) {
        throw Error(ErrorKind::parse, "empty alphabet");
      }
      saw_header = true;
      continue;
    }

    Word lhs = detail::parse_word_text(text, base, stmt, k, p.alphabet);
    if (k >= stmt.size() || stmt[k] != '=') {
      throw Error(ErrorKind::parse,
                  "expected '=' at position " + std::to_string(base + k));
    }
    ++k;
    Word rhs = detail::parse_word_text(text, base, stmt, k, p.alphabet);
    if (k < stmt.size()) {
      throw Error(ErrorKind::parse,
                  "syntax error at position " + std::to_string(base + k));
    }
    if (lhs.empty() || rhs.empty()) {
      throw Error(ErrorKind::parse, "empty relation side at position " +
                                        std::to_string(base));
    }
    Relation rel{lhs, rhs};
    Relation norm = detail::normalized(rel);
    for (auto& seen : normalized_seen) {
      if (seen == norm) {
        throw Error(ErrorKind::parse, "duplicate relation at position " +
                                          std::to_string(base));
      }
    }
    normalized_seen.push_back(norm);
    p.relations.push_back(rel);
  }
  if (!saw_header) throw Error(ErrorKind::parse, "missing 'letters' header");
  return p;
}

inline std::string render_presentation(const Presentation& p) {
  std::string out = "letters";
  for (char c : p.alphabet) {
    out += ' ';
    out += c;
  }
  for (auto& r : p.relations) {
    out += "; " + render_word(r.lhs) + "=" + render_word(r.rhs);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Presentation families.
//
// Each family fixes, per ordered generator pair, the letter its product
// lands on and the exponent (a named parameter or a fixed value).  The slot
// order follows pair_order(copies).
// ---------------------------------------------------------------------------

struct RhsPattern {
  char base;
  char param;  // '\0' when the exponent is fixed
  int exp;     // used when param == '\0'
};

struct FamilyInfo {
  Family id;
  const char* label;
  int copies;
  const char* params;  // parameter names in canonical order
  std::array<RhsPattern, 6> rhs;
  const char* constraint;  // human-readable arithmetic side constraint
};

namespace detail {

constexpr RhsPattern pp(char base, char param) { return {base, param, 0}; }
constexpr RhsPattern pf(char base, int exp) { return {base, '\0', exp}; }
constexpr RhsPattern pz() { return {'\0', '\0', 0}; }

inline const std::array<FamilyInfo, 11>& family_table() {
  static const std::array<FamilyInfo, 11> table{{
      {Family::two_i, "2-i", 2, "k",
       {pp('a', 'k'), pp('a', 'k'), pz(), pz(), pz(), pz()},
       ""},
      {Family::two_ii, "2-ii", 2, "",
       {pf('a', 2), pf('b', 2), pz(), pz(), pz(), pz()},
       ""},
      {Family::three_i, "3-i", 3, "ijk",
       {pp('a', 'i'), pp('a', 'i'), pp('a', 'j'), pp('a', 'j'), pp('a', 'k'),
        pp('a', 'k')},
       "i+j = k+2"},
      {Family::three_ii, "3-ii", 3, "ijk",
       {pp('a', 'i'), pp('a', 'i'), pp('a', 'j'), pp('a', 'j'), pp('b', 'k'),
        pp('b', 'k')},
       "i+j+k-i*k = 2"},
      {Family::three_iii, "3-iii", 3, "i",
       {pp('a', 'i'), pp('a', 'i'), pp('a', 'i'), pp('a', 'i'), pf('c', 2),
        pf('b', 2)},
       ""},
      {Family::three_iv, "3-iv", 3, "i",
       {pp('a', 'i'), pp('a', 'i'), pf('c', 2), pf('a', 2), pp('c', 'i'),
        pp('a', 'i')},
       ""},
      {Family::three_v, "3-v", 3, "i",
       {pp('a', 'i'), pp('a', 'i'), pf('c', 2), pf('a', 2), pp('c', 'i'),
        pp('c', 'i')},
       ""},
      {Family::three_vi, "3-vi", 3, "",
       {pf('b', 2), pf('a', 2), pf('c', 2), pf('a', 2), pf('c', 2), pf('b', 2)},
       ""},
      {Family::three_vii, "3-vii", 3, "",
       {pf('b', 2), pf('a', 2), pf('c', 2), pf('b', 2), pf('c', 2), pf('a', 2)},
       ""},
      {Family::three_viii, "3-viii", 3, "",
       {pf('b', 2), pf('a', 2), pf('c', 2), pf('a', 2), pf('c', 2), pf('a', 2)},
       ""},
      {Family::three_ix, "3-ix", 3, "i",
       {pf('b', 2), pf('a', 2), pp('b', 'i'), pp('a', 'i'), pp('a', 'i'),
        pp('b', 'i')},
       ""},
  }};
  return table;
}

}  // namespace detail

inline const FamilyInfo& family_info(Family f) {
  for (auto& fi : detail::family_table()) {
    if (fi.id == f) return fi;
  }
  throw Error(ErrorKind::usage, "unknown family");
}

inline Family family_from_label(const std::string& label) {
  for (auto& fi : detail::family_table()) {
    if (label == fi.label) return fi.id;
  }
  throw Error(ErrorKind::usage, "unknown family label '" + label + "'");
}

inline int family_copies(Family f) { return family_info(f).copies; }

// The landing letters of a family's products, in slot order ("aaaaaa" for
// the family whose six products are all powers of a).
inline std::string family_landing(Family f) {
  const FamilyInfo& fi = family_info(f);
  std::string out;
  for (int s = 0; s < (fi.copies == 2 ? 2 : 6); ++s) out += fi.rhs[s].base;
  return out;
}

// Arithmetic side constraint, beyond positivity of every parameter.
inline bool family_constraint_ok(Family f, const ParamMap& params) {
  auto get = [&](char name) { return params.at(name); };
  switch (f) {
    case Family::three_i:
      return get('i') + get('j') == get('k') + 2;
    case Family::three_ii:
      return get('i') + get('j') + get('k') - get('i') * get('k') == 2;
    default:
      return true;
  }
}

inline Presentation instantiate_family(Family f, const ParamMap& params = {}) {
  const FamilyInfo& fi = family_info(f);
  for (const char* n = fi.params; *n; ++n) {
    auto it = params.find(*n);
    if (it == params.end()) {
      throw Error(ErrorKind::usage, std::string("missing parameter '") + *n +
                                        "' for family " + fi.label);
    }
    if (it->second < 1) {
      throw Error(ErrorKind::usage, std::string("non-positive exponent for '") +
                                        *n + "'");
    }
  }
  for (auto& [name, value] : params) {
    if (std::string(fi.params).find(name) == std::string::npos) {
      throw Error(ErrorKind::usage, std::string("unknown parameter '") + name +
                                        "' for family " + fi.label);
    }
  }
  if (!family_constraint_ok(f, params)) {
    throw Error(ErrorKind::constraint,
                std::string("constraint violation for family ") + fi.label +
                    ": requires " + fi.constraint);
  }

  Presentation p;
  p.alphabet = alphabet_for(fi.copies);
  auto& pairs = pair_order(fi.copies);
  for (size_t s = 0; s < pairs.size(); ++s) {
    const RhsPattern& r = fi.rhs[s];
    int exp = r.param ? params.at(r.param) : r.exp;
    Word lhs;
    lhs += pairs[s].first;
    lhs += pairs[s].second;
    p.relations.push_back({lhs, pure_power(r.base, exp)});
  }
  p.tag = FamilyTag{f, params};
  return p;
}

// Matches one exponent per pair slot against the family's pattern and
// recovers the parameter values; nullopt when the assignment does not fit.
inline std::optional<ParamMap> family_match_assignment(
    Family f, const std::vector<int>& exps) {
  const FamilyInfo& fi = family_info(f);
  size_t slots = pair_order(fi.copies).size();
  if (exps.size() != slots) return std::nullopt;
  ParamMap params;
  for (size_t s = 0; s < slots; ++s) {
    const RhsPattern& r = fi.rhs[s];
    if (exps[s] < 1) return std::nullopt;
    if (r.param == '\0') {
      if (exps[s] != r.exp) return std::nullopt;
    } else {
      auto [it, inserted] = params.emplace(r.param, exps[s]);
      if (!inserted && it->second != exps[s]) return std::nullopt;
    }
  }
  if (!family_constraint_ok(f, params)) return std::nullopt;
  return params;
}

}  // namespace monounion
