#include "doctest.h"
#include "rowlab/dynamics.hpp"
#include "rowlab/statics.hpp"
#include "rowlab/text.hpp"

using namespace rowlab;

namespace {

TermP M(const std::string& s) { return parseTerm(s); }

std::vector<std::string> rules(const std::vector<Step>& steps) {
  std::vector<std::string> out;
  for (auto& s : steps) out.push_back(s.rule);
  return out;
}

RelationSet with(bool RelationSet::*flag) {
  RelationSet r;
  r.*flag = true;
  return r;
}

}  // namespace

TEST_CASE("beta rules") {
  auto s = stepAll(M("(\\x:Int. x) 1"), RelationSet::betaOnly());
  REQUIRE(s.size() == 1);
  CHECK(s[0].rule == "beta-lam");
  CHECK(s[0].position.empty());
  CHECK(alphaEq(s[0].result, M("1")));

  s = stepAll(M("case (<b 2> : [a:Int; b:Int]) { a x -> x; b y -> y + 1 }"), {});
  REQUIRE(s.size() == 1);
  CHECK(s[0].rule == "beta-case");
  CHECK(alphaEq(s[0].result, M("2 + 1")));

  s = stepAll(M("{a = 1, b = 2}.b"), {});
  REQUIRE(s.size() == 1);
  CHECK(s[0].rule == "beta-project");
  CHECK(alphaEq(s[0].result, M("2")));

  s = stepAll(M("let f = \\x. x in f 1"), {});
  REQUIRE(s.size() == 1);
  CHECK(s[0].rule == "beta-let");

  s = stepAll(M("2023 - 1984"), {});
  REQUIRE(s.size() == 1);
  CHECK(s[0].rule == "delta");
  CHECK(alphaEq(s[0].result, M("39")));
}

TEST_CASE("compatible closure enumerates every position") {
  auto s = stepAll(M("(\\x:Int. x) ((\\y:Int. y) 1)"), {});
  REQUIRE(s.size() == 2);
  CHECK(s[0].position.empty());
  CHECK(s[1].position == Path{1});
  // Reduction under binders.
  s = stepAll(M("\\z:Int. (\\x:Int. x) z"), {});
  REQUIRE(s.size() == 1);
  CHECK(s[0].position == Path{0});
}

TEST_CASE("upcast rules") {
  auto s = stepAll(M("(<Year 1984> : [Year:Int]) :> [Age:Int; Year:Int]"), with(&RelationSet::upcast));
  REQUIRE(s.size() == 1);
  CHECK(s[0].rule == "upcast-variant");
  CHECK(alphaEq(s[0].result, M("<Year 1984> : [Age:Int; Year:Int]")));

  s = stepAll(M("{Name = \"Alice\", Age = 9} :> {Name:String}"), with(&RelationSet::upcast));
  REQUIRE(s.size() == 1);
  CHECK(s[0].rule == "upcast-record");
  CHECK(alphaEq(s[0].result, M("{Name = \"Alice\"}")));

  s = stepAll(M("({a = 1, b = 2} :> {a:Int; b:Int}) :> {a:Int}"), with(&RelationSet::nested));
  REQUIRE(s.size() == 1);
  CHECK(s[0].rule == "nested");
  CHECK(alphaEq(s[0].result, M("{a = 1, b = 2} :> {a:Int}")));

  // Without the upcast relations an upcast is stuck.
  CHECK(stepAll(M("{a = 1} :> {}"), {}).empty());

  RelationSet full = with(&RelationSet::upcastFull);
  s = stepAll(M("((\\x:{Name:String}. x.Name) :> ({Name:String; Age:Int} -> String)) {Name = \"A\", Age = 9}"), full);
  REQUIRE_FALSE(s.empty());
  CHECK(s[0].rule == "upcast-lam");
}

TEST_CASE("type application steps are split by origin") {
  TermP src = M("(/\\r. <l 1> : [l:Int; r]) @ []");
  TermP up = M("(/\\r. <l 1> : [l:Int; r]) @@ []");
  CHECK(stepAll(src, {}).empty());
  CHECK(rules(stepAll(src, with(&RelationSet::tau))) == std::vector<std::string>{"tau"});
  CHECK(stepAll(src, with(&RelationSet::nu)).empty());
  CHECK(rules(stepAll(up, with(&RelationSet::nu))) == std::vector<std::string>{"nu"});
  CHECK(stepAll(up, with(&RelationSet::tau)).empty());
  auto s = stepAll(M("(/\\p. {l = 1} : {l^p:Int}) @ *"), with(&RelationSet::tau));
  REQUIRE(s.size() == 1);
  CHECK(alphaEq(s[0].result, M("{l = 1} : {l:Int}")));
}

TEST_CASE("evaluating the worked examples") {
  RelationSet r = RelationSet::forConfig(configById("var-sub"));
  TermP v = normalize(M("(\\x:[Age:Int; Year:Int]. case x { Age y -> y; Year y -> 2023 - y }) ((<Year 1984> : [Year:Int]) :> [Age:Int; Year:Int])"), r);
  CHECK(alphaEq(v, intLit(2023 - 1984)));
  v = normalize(M("(\\x:{Name:String}. x.Name) ({Name = \"Alice\", Age = 9} :> {Name:String})"),
                RelationSet::forConfig(configById("rec-sub")));
  CHECK(alphaEq(v, strLit("Alice")));

  std::vector<Step> trace;
  normalize(M("(\\x:Int. x + 1) 2"), {}, 100, &trace);
  CHECK(rules(trace) == std::vector<std::string>{"beta-lam", "delta"});
}

TEST_CASE("fuel") {
  // Self application diverges; reduction stops with a fuel error.
  TermP omega = M("(\\x. x x) (\\x. x x)");
  CHECK_THROWS_AS(normalize(omega, {}, 50), Error);
  try {
    normalize(omega, {}, 50);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Fuel);
  }
}

TEST_CASE("relation sets per calculus") {
  auto r = RelationSet::forConfig(configById("rec-sub"));
  CHECK(r.upcast);
  CHECK(r.nested);
  CHECK_FALSE(r.upcastFull);
  r = RelationSet::forConfig(configById("rec-sub-full"));
  CHECK(r.upcastFull);
  r = RelationSet::forConfig(configById("var-row"));
  CHECK(r.tau);
  CHECK(r.nu);
  r = RelationSet::forConfig(configById("var"));
  CHECK_FALSE(r.upcast);
  CHECK_FALSE(r.tau);
}

TEST_CASE("erasure and the untyped preorder") {
  CHECK(alphaEq(erase(M("(/\\r. \\x:{l:Int; r}. x.l) @ [m:Int] ({l = 1, m = 2} :> {l:Int})")),
                M("(\\x. x.l) {l = 1, m = 2}")));
  CHECK(alphaEq(erase(M("(/\\p. {l = 1} : {l^p:Int}) @@ o")), M("{l = 1}")));
  CHECK(termPreorder(M("{a = 1, b = 2}"), M("{a = 1}")));
  CHECK_FALSE(termPreorder(M("{a = 1}"), M("{a = 1, b = 2}")));
  CHECK(termPreorder(M("\\x. {a = x, b = x}"), M("\\y. {a = y}")));
  CHECK(isValue(M("\\x. x")));
  CHECK(isValue(M("{a = 1}")));
  CHECK_FALSE(isValue(M("(\\x. x) 1")));
}
