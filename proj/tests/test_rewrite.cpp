#include <catch2/catch_amalgamated.hpp>

#include "monounion/rewrite.hpp"
#include "monounion/words.hpp"

using namespace monounion;

namespace {

// Replays a path from `from`: every step must validate and chain.
void require_path_connects(const std::vector<RewriteStep>& path, const Word& from,
                           const Word& to, const Presentation& p) {
  Word cur = from;
  for (auto& st : path) {
    REQUIRE(st.source == cur);
    REQUIRE(step_valid(st, p));
    cur = st.target;
  }
  REQUIRE(cur == to);
}

}  // namespace

TEST_CASE("one_step_rewrites enumerates factor replacements") {
  Presentation p = parse_presentation("letters a b; ab=aa");
  REQUIRE(one_step_rewrites("aab", p) == std::vector<Word>{"aaa", "abb"});

  Presentation q = parse_presentation("letters a b; ab=a^2; ba=b^2");
  REQUIRE(one_step_rewrites("bb", q) == std::vector<Word>{"ba"});

  // All sides of this family have length 2, so single letters are stuck.
  REQUIRE(one_step_rewrites("a", instantiate_family(Family::three_vi)).empty());

  // With k=1 a side is the single letter a, so "a" expands.
  Presentation deg = instantiate_family(Family::two_i, {{'k', 1}});
  REQUIRE(one_step_rewrites("a", deg) == std::vector<Word>{"ab", "ba"});
}

TEST_CASE("one_step_rewrites steps validate") {
  Presentation p = instantiate_family(Family::three_i, {{'i', 2}, {'j', 2}, {'k', 2}});
  for (Word w : {Word("abca"), Word("aabc"), Word("cab")}) {
    for (auto& [next, step] : one_step_rewrites_steps(w, p)) {
      REQUIRE(step.source == w);
      REQUIRE(step.target == next);
      REQUIRE(step_valid(step, p));
    }
  }
}

TEST_CASE("is_consequence finds short derivations") {
  Presentation p = parse_presentation("letters a b; ab=a^2; ba=a^2");
  ConsequenceResult r = is_consequence("ab", "ba", p, 8, 10000);
  REQUIRE(r.kind == ConsequenceKind::derivable);
  REQUIRE(r.path.size() == 2);
  require_path_connects(r.path, "ab", "ba", p);

  Presentation fam =
      instantiate_family(Family::three_i, {{'i', 2}, {'j', 2}, {'k', 2}});
  ConsequenceResult r2 = is_consequence("abca", "aaaa", fam, 10, 100000);
  REQUIRE(r2.kind == ConsequenceKind::derivable);
  require_path_connects(r2.path, "abca", "aaaa", fam);
}

TEST_CASE("is_consequence reports unknown without asserting non-derivability") {
  Presentation p = parse_presentation("letters a b; ab=a^2; ba=b^2");
  ConsequenceResult r = is_consequence("bb", "aa", p, 12, 100000);
  REQUIRE(r.kind == ConsequenceKind::unknown);
  // bb ~ ba is the whole class; the search saw all of it.
  REQUIRE(r.class_complete);

  REQUIRE_THROWS_AS(is_consequence("a", "b", p, 0, 10), Error);
  REQUIRE_THROWS_AS(is_consequence("a", "b", p, 10, 0), Error);
}

TEST_CASE("congruence_ball on ab=a^2, ba=b^2 at length 3") {
  Presentation p = parse_presentation("letters a b; ab=a^2; ba=b^2");
  Ball ball = congruence_ball(p, 3);
  REQUIRE(ball.words.size() == 14);
  REQUIRE(ball.class_count() == 6);
  REQUIRE(ball.pure_power_class_count() == 6);
  REQUIRE(ball.merges.empty());

  auto same = [&](const Word& a, const Word& b) { return ball.same_class(a, b); };
  REQUIRE(!same("a", "b"));
  REQUIRE(same("aa", "ab"));
  REQUIRE(same("bb", "ba"));
  REQUIRE(!same("aa", "ba"));
  for (Word w : {Word("aab"), Word("aba"), Word("abb")}) REQUIRE(same("aaa", w));
  for (Word w : {Word("bba"), Word("bab"), Word("baa")}) REQUIRE(same("bbb", w));
  REQUIRE(!same("aaa", "bbb"));
  REQUIRE(!same("aaa", "aa"));
}

TEST_CASE("congruence_ball normal forms for a certified instance") {
  Presentation p =
      instantiate_family(Family::three_i, {{'i', 2}, {'j', 2}, {'k', 2}});
  Ball ball = congruence_ball(p, 4);
  REQUIRE(ball.class_count() == 12);  // 3 * L
  REQUIRE(ball.pure_power_class_count() == 12);
  REQUIRE(ball.merges.empty());
}

TEST_CASE("congruence_ball detects the constraint-violating merge") {
  // The 3-i shape with (i,j,k) = (2,2,3); the constraint 2+2 = 3+2 fails.
  Presentation p = parse_presentation(
      "letters a b c; ab=a^2; ba=a^2; ac=a^2; ca=a^2; bc=a^3; cb=a^3");
  Ball ball = congruence_ball(p, 5);
  REQUIRE(!ball.merges.empty());
  bool found = false;
  for (auto& c : ball.merges.collisions) {
    if (c.x == 'a' && c.y == 'a' && c.p == 4 && c.q == 5) found = true;
  }
  REQUIRE(found);

  auto path = ball.derivation("aaaa", "aaaaa");
  require_path_connects(path, "aaaa", "aaaaa", p);
}

TEST_CASE("congruence_ball with no relations is discrete") {
  Presentation p = parse_presentation("letters a b");
  REQUIRE(p.relations.empty());
  Ball ball = congruence_ball(p, 4);
  REQUIRE(ball.class_count() == ball.words.size());
  for (auto& cls : ball.classes) REQUIRE(cls.size() == 1);
}

TEST_CASE("congruence_ball enforces the resource cap") {
  Presentation p = instantiate_family(Family::three_vi);
  REQUIRE_THROWS_AS(congruence_ball(p, 13), Error);
  try {
    congruence_ball(p, 13);
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::resource);
  }
}

TEST_CASE("probe_eliminate reproduces the two-generator contradiction") {
  // ab=a^2, ba=a^3: evaluating aba two ways gives a^3 and a^4.
  Presentation p = parse_presentation("letters a b; ab=a^2; ba=a^3");
  EliminateResult r = probe_eliminate(p, {Word("aba")}, 24, 10);
  REQUIRE(r.eliminated());
  auto& c = *r.contradiction;
  REQUIRE(c.probe == "aba");
  REQUIRE(c.first.letter == 'a');
  REQUIRE(c.second.letter == 'a');
  std::set<int> exps{c.first.exp, c.second.exp};
  REQUIRE(exps == std::set<int>{3, 4});
  require_path_connects(c.first.path, c.probe,
                        pure_power(c.first.letter, c.first.exp), p);
  require_path_connects(c.second.path, c.probe,
                        pure_power(c.second.letter, c.second.exp), p);
}

TEST_CASE("probe_eliminate finds nothing on a genuine instance") {
  Presentation p = instantiate_family(Family::two_ii);
  EliminateResult r = probe_eliminate(p, default_probes("ab", {3}), 24, 10);
  REQUIRE(!r.eliminated());
}

TEST_CASE("probe_eliminate catches the 3-i shape with broken constraint") {
  Presentation p = parse_presentation(
      "letters a b c; ab=a^2; ba=a^2; ac=a^2; ca=a^2; bc=a^3; cb=a^3");
  EliminateResult r = probe_eliminate(p, {Word("abca")}, 24, 10);
  REQUIRE(r.eliminated());
  auto& c = *r.contradiction;
  std::set<int> exps{c.first.exp, c.second.exp};
  REQUIRE(c.first.letter == 'a');
  REQUIRE(c.second.letter == 'a');
  REQUIRE(exps == std::set<int>{4, 5});
}

TEST_CASE("check_generator_map classifies maps") {
  Presentation p2i = instantiate_family(Family::two_i, {{'k', 2}});
  std::map<char, char> id{{'a', 'a'}, {'b', 'b'}};
  REQUIRE(check_generator_map(p2i, p2i, id, 10, 100000).verdict == MapVerdict::ok);

  Presentation p2ii = instantiate_family(Family::two_ii);
  std::map<char, char> swap{{'a', 'b'}, {'b', 'a'}};
  REQUIRE(check_generator_map(p2ii, p2ii, swap, 10, 100000).verdict ==
          MapVerdict::ok);

  // The swapped image relation ba=b^2 is not derivable: b^2 is irreducible.
  GeneratorMapResult r = check_generator_map(p2i, p2i, swap, 10, 100000);
  REQUIRE(r.verdict == MapVerdict::fail);
  REQUIRE(r.relation == 0);
  REQUIRE(r.image == Relation{"ba", "bb"});

  REQUIRE_THROWS_AS(check_generator_map(p2i, p2i, {{'a', 'b'}}, 10, 1000), Error);
}
