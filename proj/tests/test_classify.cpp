#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "monounion/classify.hpp"

using namespace monounion;

namespace {

LandingOutcome outcome_for(const std::string& type, const Word& probe,
                           const std::string& strat_repr) {
  TypeTuple t = TypeTuple::from_string(type);
  for (auto& s : association_strategies(static_cast<int>(probe.size()))) {
    if (s.repr(probe) == strat_repr) return landing_outcomes(t, probe, s);
  }
  throw std::runtime_error("no such strategy " + strat_repr);
}

}  // namespace

TEST_CASE("association strategies are Catalan-many") {
  REQUIRE(association_strategies(3).size() == 2);
  REQUIRE(association_strategies(4).size() == 5);
  std::set<std::string> reprs;
  for (auto& s : association_strategies(4)) reprs.insert(s.repr("abca"));
  REQUIRE(reprs == std::set<std::string>{"(((ab)c)a)", "((a(bc))a)", "((ab)(ca))",
                                         "(a((bc)a))", "(a(b(ca)))"});
}

TEST_CASE("landing outcomes reproduce the worked contractions") {
  // ab in <c>, bc in <a>: the two bracketings of abc land apart.
  LandingOutcome left = outcome_for("ccbbaa", "abc", "((ab)c)");
  LandingOutcome right = outcome_for("ccbbaa", "abc", "(a(bc))");
  REQUIRE(left.letters == "c");
  REQUIRE(right.letters == "a");
  REQUIRE(!left.overflow);
  REQUIRE(!right.overflow);

  // The constant type sends every contraction into <a>.
  REQUIRE(outcome_for("aaaaaa", "abc", "((ab)c)").letters == "a");
  REQUIRE(outcome_for("aaaaaa", "abc", "(a(bc))").letters == "a");

  // Case (e): c(ab) lands in <c> but (ca)b lands in <b>.
  REQUIRE(outcome_for("bacacc", "cab", "(c(ab))").letters == "c");
  REQUIRE(outcome_for("bacacc", "cab", "((ca)b)").letters == "b");

  // ac in <b> under an (a,a,...) type: outcomes overlap, the exponent
  // case split shows up as the two-letter outcome set.
  REQUIRE(outcome_for("aabaaa", "bac", "(b(ac))").letters == "b");
  REQUIRE(outcome_for("aabaaa", "bac", "((ba)c)").letters == "ab");
}

TEST_CASE("phase 1 eliminates letter-level conflicts") {
  Phase1Result r = phase1_eliminate(TypeTuple::from_string("ccbbaa"));
  REQUIRE(r.eliminated);
  REQUIRE(r.evidence->probe == "abc");
  REQUIRE(r.evidence->outcomes_a == "a");
  REQUIRE(r.evidence->outcomes_b == "c");

  Phase1Result r2 = phase1_eliminate(TypeTuple::from_string("aabbaa"));
  REQUIRE(r2.eliminated);
  REQUIRE(r2.evidence->probe == "acb");

  REQUIRE(!phase1_eliminate(TypeTuple::from_string("aaaaaa")).eliminated);
}

TEST_CASE("phase 2 recovers the exponent constraints") {
  // Type (a,a,a,a,a,a): survivors are the paired assignments with i+j=k+2.
  auto survivors = phase2_eliminate(TypeTuple::from_string("aaaaaa"), 3);
  std::vector<std::vector<int>> expected{
      {1, 1, 2, 2, 1, 1}, {1, 1, 3, 3, 2, 2}, {2, 2, 1, 1, 1, 1},
      {2, 2, 2, 2, 2, 2}, {2, 2, 3, 3, 3, 3}, {3, 3, 1, 1, 2, 2},
      {3, 3, 2, 2, 3, 3}};
  REQUIRE(survivors == expected);

  // Two-generator analogues: ab in <a>, ba in <b> forces (2,2); the
  // commuting shape forces equal exponents.
  REQUIRE(phase2_eliminate(TypeTuple::from_string("ab"), 3) ==
          std::vector<std::vector<int>>{{2, 2}});
  REQUIRE(phase2_eliminate(TypeTuple::from_string("aa"), 3) ==
          std::vector<std::vector<int>>{{1, 1}, {2, 2}, {3, 3}});
}

TEST_CASE("type presentations spell out the relations") {
  Presentation p =
      type_presentation(TypeTuple::from_string("bacaca"), {2, 2, 2, 2, 2, 2});
  REQUIRE(p.relations == std::vector<Relation>{{"ab", "bb"},
                                               {"ba", "aa"},
                                               {"ac", "cc"},
                                               {"ca", "aa"},
                                               {"bc", "cc"},
                                               {"cb", "aa"}});
}

TEST_CASE("classify on two copies") {
  ClassifyLimits lim;
  lim.exp_bound = 4;
  lim.threads = 1;
  ClassificationReport r = classify(2, lim);
  REQUIRE(r.orbit_count == 2);
  REQUIRE(r.errors.empty());
  REQUIRE(r.eliminated.empty());
  REQUIRE(r.survivors.size() == 2);

  REQUIRE(r.survivors[0].family == Family::two_i);
  REQUIRE(r.survivors[0].family_type.str() == "aa");
  REQUIRE(r.survivors[0].assignments ==
          std::vector<std::vector<int>>{{1, 1}, {2, 2}, {3, 3}, {4, 4}});
  REQUIRE(r.survivors[0].certified);

  REQUIRE(r.survivors[1].family == Family::two_ii);
  REQUIRE(r.survivors[1].family_type.str() == "ab");
  REQUIRE(r.survivors[1].assignments ==
          std::vector<std::vector<int>>{{2, 2}});
  REQUIRE(r.survivors[1].certified);
}

TEST_CASE("classify on three copies at bound 1") {
  ClassifyLimits lim;
  lim.exp_bound = 1;
  lim.threads = 1;
  ClassificationReport r = classify(3, lim);
  REQUIRE(r.orbit_count == 74);
  REQUIRE(r.errors.empty());
  REQUIRE(r.survivors.size() == 9);
  REQUIRE(r.eliminated.size() == 65);

  std::set<std::string> types;
  for (auto& s : r.survivors) {
    REQUIRE(s.family.has_value());
    types.insert(s.family_type.str());
    if (s.family == Family::three_ii) {
      // The all-ones instance is the only family instance inside bound 1.
      REQUIRE(s.assignments ==
              std::vector<std::vector<int>>{{1, 1, 1, 1, 1, 1}});
      REQUIRE(s.params == std::vector<ParamMap>{{{'i', 1}, {'j', 1}, {'k', 1}}});
      REQUIRE(s.certified);
    } else {
      // Every other family needs an exponent 2 somewhere, out of reach at
      // bound 1; the type is retained with no surviving assignment.
      REQUIRE(s.assignments.empty());
    }
  }
  REQUIRE(types == std::set<std::string>{"aaaaaa", "aaaabb", "aaaacb",
                                         "aacaca", "aacacc", "bacacb",
                                         "bacbca", "bacaca", "babaab"});
}

TEST_CASE("transport_assignment mirrors apply_symmetry") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<size_t> tdist(0, 728);
  std::uniform_int_distribution<int> edist(1, 3);
  for (auto& g : all_symmetries(3)) {
    for (int trial = 0; trial < 10; ++trial) {
      TypeTuple t = TypeTuple::from_index(3, tdist(rng));
      std::vector<int> e(6);
      for (auto& x : e) x = edist(rng);
      TypeTuple ft = apply_symmetry(g, t);
      std::vector<int> fe = transport_assignment(g, 3, e);
      // The transported presentation is the relabeled/reversed original:
      // relation xy = z^e maps slotwise, so landing letters and exponents
      // must travel together.
      Presentation orig = type_presentation(t, e);
      Presentation image = type_presentation(ft, fe);
      // Relabel orig by g and compare as sets of relations.
      std::array<char, 3> to;
      for (int i = 0; i < 3; ++i)
        to[static_cast<size_t>(i)] = static_cast<char>('a' + g.perm[static_cast<size_t>(i)]);
      auto map_word = [&](const Word& w) {
        Word out;
        for (char c : w) {
          char m = to[static_cast<size_t>(c - 'a')];
          out += m;
        }
        if (g.rev) std::reverse(out.begin(), out.end());
        return out;
      };
      std::set<std::pair<Word, Word>> expect, got;
      for (auto& r : orig.relations) expect.insert({map_word(r.lhs), map_word(r.rhs)});
      for (auto& r : image.relations) got.insert({r.lhs, r.rhs});
      REQUIRE(expect == got);
    }
  }
}
