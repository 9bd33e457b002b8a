// Acceptance suite: runs every criterion at its stated bound and prints one
// pass/fail line per criterion.  Exits non-zero if any criterion fails.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "property_checks.hpp"

using namespace monounion;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::string join_assignment(const std::vector<int>& a) {
  std::string out = "(";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(a[i]);
  }
  return out + ")";
}

// The family's constraint predicate restricted to exponents <= bound, as
// the set of exponent assignments its presentations realize.
std::vector<std::vector<int>> expected_assignments(Family f, int bound) {
  const FamilyInfo& fi = family_info(f);
  std::string names = fi.params;
  size_t slots = pair_order(fi.copies).size();
  std::vector<std::vector<int>> out;
  std::vector<int> state(names.size(), 1);
  while (true) {
    ParamMap pm;
    for (size_t i = 0; i < names.size(); ++i) pm[names[i]] = state[i];
    if (family_constraint_ok(f, pm)) {
      std::vector<int> exps(slots);
      bool in_range = true;
      for (size_t s = 0; s < slots; ++s) {
        exps[s] = fi.rhs[s].param ? pm.at(fi.rhs[s].param) : fi.rhs[s].exp;
        if (exps[s] > bound) in_range = false;
      }
      if (in_range) out.push_back(exps);
    }
    if (names.empty()) break;
    size_t pos = names.size();
    bool done = false;
    while (pos > 0) {
      --pos;
      if (state[pos] < bound) {
        ++state[pos];
        break;
      }
      state[pos] = 1;
      if (pos == 0) done = true;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Criterion criterion1() {
  Criterion c{1, "two-copy classification (classify --copies 2 --exp-bound 6)",
              true, ""};
  auto start = Clock::now();
  ClassifyLimits lim;
  lim.exp_bound = 6;
  ClassificationReport r = classify(2, lim);
  std::ostringstream detail;
  if (!r.errors.empty()) {
    c.pass = false;
    detail << r.errors.size() << " classification error(s); ";
  }
  if (r.survivors.size() != 2 || !r.eliminated.empty()) {
    c.pass = false;
    detail << r.survivors.size() << " survivors / " << r.eliminated.size()
           << " eliminated; ";
  } else {
    for (size_t i = 0; i < 2; ++i) {
      Family f = i == 0 ? Family::two_i : Family::two_ii;
      const SurvivorReport& s = r.survivors[i];
      if (s.family != f || s.assignments != expected_assignments(f, 6) ||
          !s.certified) {
        c.pass = false;
        detail << "family " << family_info(f).label << " mismatch; ";
      }
    }
  }
  detail << "2-i survives with k=1..6, 2-ii with (2,2), all certified; "
         << std::fixed << std::setprecision(1) << seconds_since(start) << "s";
  c.detail = detail.str();
  return c;
}

Criterion criterion2() {
  Criterion c{2, "three-copy classification (classify --copies 3 --exp-bound 3)",
              true, ""};
  auto start = Clock::now();
  ClassificationReport r = classify(3, {});
  std::ostringstream detail;
  static const std::vector<std::pair<Family, std::string>> expected_types{
      {Family::three_i, "aaaaaa"},    {Family::three_ii, "aaaabb"},
      {Family::three_iii, "aaaacb"},  {Family::three_iv, "aacaca"},
      {Family::three_v, "aacacc"},    {Family::three_vi, "bacacb"},
      {Family::three_vii, "bacbca"},  {Family::three_viii, "bacaca"},
      {Family::three_ix, "babaab"}};
  if (!r.errors.empty()) {
    c.pass = false;
    detail << r.errors.size() << " classification error(s); ";
  }
  if (r.survivors.size() != 9 || r.eliminated.size() != 65) {
    c.pass = false;
    detail << r.survivors.size() << " survivors / " << r.eliminated.size()
           << " eliminated; ";
  } else {
    for (size_t i = 0; i < 9; ++i) {
      const SurvivorReport& s = r.survivors[i];
      auto [f, type] = expected_types[i];
      if (s.family != f || s.family_type.str() != type) {
        c.pass = false;
        detail << "survivor " << i << " is not " << type << "; ";
        continue;
      }
      if (s.assignments != expected_assignments(f, 3)) {
        c.pass = false;
        detail << "family " << family_info(f).label
               << " parameter set mismatch; ";
      }
      if (!s.certified) {
        c.pass = false;
        detail << "family " << family_info(f).label << " not certified; ";
      }
    }
  }
  detail << "nine types with constraint-exact parameter sets, certified; "
         << std::fixed << std::setprecision(1) << seconds_since(start) << "s";
  c.detail = detail.str();
  return c;
}

Criterion criterion3() {
  Criterion c{3, "orbit count 74 by direct enumeration and Burnside", true, ""};
  size_t direct = orbits(3).size();
  size_t burnside = orbit_count_burnside(3);
  c.pass = direct == 74 && burnside == 74;
  c.detail = "direct " + std::to_string(direct) + ", Burnside " +
             std::to_string(burnside);
  return c;
}

Criterion criterion4() {
  Criterion c{4, "every type without a closed pair is phase-1 eliminated",
              true, ""};
  checks::CheckResult r = checks::check_no_closed_pair_eliminated();
  c.pass = r.ok;
  c.detail = r.ok ? "exhaustive over all 729 types" : r.detail;
  return c;
}

Criterion criterion5() {
  Criterion c{5, "certificate suite over the parameter grid (exponents <= 5)",
              true, ""};
  auto start = Clock::now();
  std::ostringstream detail;
  size_t instances = 0;
  size_t table_checks = 0, table_misses = 0;
  size_t witness_checks = 0;
  std::vector<std::string> witness_misses;

  for (auto& p : checks::family_grid(5)) {
    ++instances;
    Family f = p.tag->family;
    VerifyResult vr = verify_instance(p);
    if (!vr.ok()) {
      c.pass = false;
      detail << "verify_instance failed for " << family_info(f).label << "; ";
      continue;
    }

    if (family_has_fixture_table(f)) {
      CayleyTable base = fixture_table(f);
      int n = base.n();
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int d : {1, n - 1}) {
            CayleyTable t = base;
            t.set(i, j, (base.at(i, j) + d) % n);
            ++table_checks;
            if (check_quotient_separation(p, t).ok) ++table_misses;
          }
        }
      }
    }

    for (auto& [gen, wit] : vr.bundle->witnesses) {
      for (auto& [letter, w] : wit.weights) {
        if (w.sink) continue;
        for (long d : {1L, -1L}) {
          if (w.value + d < 0) continue;
          WeightWitness corrupted = wit;
          corrupted.weights[letter] = Weight::of(w.value + d);
          ++witness_checks;
          if (validate_weight_witness(p, corrupted).ok) {
            std::ostringstream what;
            what << family_info(f).label << "(";
            bool first = true;
            for (auto& [k, v] : p.tag->params) {
              if (!first) what << ",";
              first = false;
              what << k << "=" << v;
            }
            what << ") " << letter << (d > 0 ? "+1" : "-1") << " -> "
                 << corrupted.str();
            witness_misses.push_back(what.str());
          }
        }
      }
    }
  }

  if (table_misses > 0) c.pass = false;
  if (!witness_misses.empty()) c.pass = false;
  detail << instances << " instances certified; " << table_checks
         << " table corruptions all rejected";
  if (table_misses) detail << " EXCEPT " << table_misses;
  detail << "; " << witness_checks << " witness corruptions";
  if (witness_misses.empty()) {
    detail << " all rejected";
  } else {
    detail << ", " << witness_misses.size()
           << " remain valid witnesses (the corrupted weighting is itself a "
              "sound witness, e.g. "
           << witness_misses.front() << ")";
  }
  detail << "; " << std::fixed << std::setprecision(1) << seconds_since(start)
         << "s";
  c.detail = detail.str();
  return c;
}

Criterion criterion6() {
  Criterion c{6, "normal forms: copies*8 pure-power classes, no merges, at L=8",
              true, ""};
  std::ostringstream detail;
  size_t instances = 0;
  for (auto& p : checks::family_grid(3)) {
    ++instances;
    Ball b = congruence_ball(p, 8);
    size_t want = p.alphabet.size() * 8;
    if (b.pure_power_class_count() != want || !b.merges.empty()) {
      c.pass = false;
      detail << family_info(p.tag->family).label << " has "
             << b.pure_power_class_count() << " pure-power classes and "
             << b.merges.collisions.size() << " merges; ";
    }
  }
  detail << instances << " certified instances checked";
  c.detail = detail.str();
  return c;
}

Criterion criterion7() {
  Criterion c{7, "negative instances are detected", true, ""};
  std::ostringstream detail;

  Presentation shape = parse_presentation(
      "letters a b c; ab=a^2; ba=a^2; ac=a^2; ca=a^2; bc=a^3; cb=a^3");
  Ball ball = congruence_ball(shape, 5);
  bool merge_found = false;
  for (auto& m : ball.merges.collisions) {
    if (m.x == 'a' && m.p == 4 && m.y == 'a' && m.q == 5) merge_found = true;
  }
  if (!merge_found) {
    c.pass = false;
    detail << "missing merge a^4 ~ a^5 at L=5; ";
  }

  auto survivors = phase2_eliminate(TypeTuple::from_string("ab"), 4);
  if (survivors != std::vector<std::vector<int>>{{2, 2}}) {
    c.pass = false;
    detail << "two-generator (a,b) shape: expected only (2,2) to survive, got "
           << survivors.size() << " survivors; ";
  }

  detail << "a^4 ~ a^5 merge found; (m,n) != (2,2) all eliminated for m,n <= 4";
  c.detail = detail.str();
  return c;
}

Criterion criterion8() {
  Criterion c{8, "property suites at their exhaustive bounds", true, ""};
  auto start = Clock::now();
  std::ostringstream detail;
  struct Named {
    const char* name;
    checks::CheckResult result;
  };
  std::vector<Named> results{
      {"rewriting symmetry", checks::check_rewriting_symmetry()},
      {"ball monotonicity", checks::check_ball_monotonicity()},
      {"group action laws", checks::check_group_action_laws()},
      {"orbit equivariance", checks::check_closed_pairs_equivariance()},
      {"witness soundness", checks::check_witness_soundness()},
      {"suffix soundness", checks::check_suffix_soundness()},
      {"irreducibility soundness", checks::check_irreducibility_soundness()},
      {"phase-1 orbit invariance", checks::check_phase1_orbit_invariance()},
      {"phase-1/phase-2 soundness", checks::check_phase1_phase2_soundness()},
      {"landing soundness", checks::check_landing_soundness()},
      {"path replay", checks::check_path_replay()},
  };
  size_t passed = 0;
  for (auto& [name, result] : results) {
    if (result.ok) {
      ++passed;
    } else {
      c.pass = false;
      detail << name << ": " << result.detail << "; ";
    }
  }
  double elapsed = seconds_since(start);
  if (elapsed > 300.0) {
    c.pass = false;
    detail << "exceeded the five-minute budget; ";
  }
  detail << passed << "/" << results.size() << " suites, " << std::fixed
         << std::setprecision(1) << elapsed << "s";
  c.detail = detail.str();
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results{criterion1(), criterion2(), criterion3(),
                                 criterion4(), criterion5(), criterion6(),
                                 criterion7(), criterion8()};
  int failed = 0;
  for (auto& c : results) {
    if (!c.pass) ++failed;
    std::cout << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": "
              << c.name << " — " << c.detail << "\n";
  }
  std::cout << (results.size() - static_cast<size_t>(failed)) << "/"
            << results.size() << " acceptance criteria passed\n";
  return failed == 0 ? 0 : 1;
}
