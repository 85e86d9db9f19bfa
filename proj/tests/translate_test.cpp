#include "doctest.h"
#include "rowlab/dynamics.hpp"
#include "rowlab/translate.hpp"

using namespace rowlab;

namespace {

TypeP T(const std::string& s) { return parseType(s); }
TermP M(const std::string& s) { return parseTerm(s); }

TranslationResult run(TranslationId id, const std::string& src, LabelOrder order = {}, bool norm = false) {
  auto& info = translationInfo(id);
  Derivation d = typeCheck(configById(info.from), {}, M(src));
  TranslateOptions opt;
  opt.order = std::move(order);
  opt.normalize = norm;
  return translate(id, d, {}, opt);
}

const char* kGetAgeYear =
    "(\\x:[Age:Int; Year:Int]. case x { Age y -> y; Year y -> 2023 - y }) ((<Year 1984> : [Year:Int]) :> [Age:Int; Year:Int])";

}  // namespace

TEST_CASE("registry") {
  CHECK(findTranslation("var-sub", "var").id == TranslationId::T1);
  CHECK(findTranslation("rec-sub-co", "rec-pre").id == TranslationId::T6);
  CHECK(findTranslation("var-sub-full", "var").id == TranslationId::T5);
  CHECK(translationByName("T7-rec-row").from == "rec-sub-full-rank2");
  try {
    findTranslation("rec-sub", "rec-row");
    FAIL("found");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
  CHECK_THROWS_AS(findTranslation("var-sub-co", "var-row"), Error);
}

TEST_CASE("T1 deconstructs and rebuilds the variant") {
  auto r = run(TranslationId::T1, kGetAgeYear);
  CHECK(alphaEq(r.term, M("(\\x:[Age:Int; Year:Int]. case x { Age y -> y; Year y -> 2023 - y }) "
                          "(case (<Year 1984> : [Year:Int]) { Year y -> <Year y> : [Age:Int; Year:Int] })")));
  CHECK(typeEqual(typeCheck(configById("var"), {}, r.term).type, T("Int")));
}

TEST_CASE("T2 makes variants row-polymorphic") {
  Fresh f;
  CHECK(typeEqual(t2Type(T("[Age:Int; Year:Int] -> Int"), f),
                  T("(forall r:Row!{Age,Year}. [Age:Int; Year:Int; r]) -> Int")));
  auto r = run(TranslationId::T2, kGetAgeYear);
  CHECK(alphaEq(r.term, M("(\\x:forall r. [Age:Int; Year:Int; r]. case (x @ []) { Age y -> y; Year y -> 2023 - y }) "
                          "(/\\r. (/\\s. <Year 1984> : [Year:Int; s]) @@ [Age:Int; r])")));

  // A case on a translated injection needs a type step before the case fires.
  auto c = run(TranslationId::T2, "case (<a 1> : [a:Int]) { a y -> y }");
  CHECK(stepAll(c.term, RelationSet::betaOnly()).empty());
  RelationSet tau;
  tau.tau = true;
  auto s = stepAll(c.term, tau);
  REQUIRE(s.size() == 1);
  CHECK(s[0].rule == "tau");
  auto b = stepAll(s[0].result, RelationSet::betaOnly());
  REQUIRE(b.size() == 1);
  CHECK(b[0].rule == "beta-case");
}

TEST_CASE("T3 and T4 on getName alice") {
  const char* src = "(\\x:{Name:String}. x.Name) ({Name = \"Alice\", Age = 9} :> {Name:String})";
  CHECK(alphaEq(run(TranslationId::T3, src).term,
                M("(\\x:{Name:String}. x.Name) {Name = {Name = \"Alice\", Age = 9}.Name}")));
  auto r = run(TranslationId::T4, src, {{"Name", "Age"}});
  CHECK(alphaEq(r.term, M("(\\x:forall p. {Name^p:String}. (x @ *).Name) "
                          "(/\\p. (/\\p1. /\\p2. {Name = \"Alice\", Age = 9} : {Name^p1:String; Age^p2:Int}) @@ p @@ o)")));
  CHECK(typeEqual(r.type, T("String")));
  // Another label order only permutes the presence binders.
  auto other = run(TranslationId::T4, src);
  CHECK(alphaEq(erase(other.term), erase(r.term)));
}

TEST_CASE("T5 coercions") {
  auto ev = subtype(SubMode::Full, T("{Name:String; Child:{Name:String; Age:Int}}"), T("{Child:{Name:String}}"));
  REQUIRE(ev);
  Fresh f;
  TermP c = normalize(coerce(*ev, f), RelationSet::betaOnly());
  CHECK(alphaEq(c, M("\\x:{Name:String; Child:{Name:String; Age:Int}}. {Child = {Name = x.Child.Name}}")));

  auto var = subtype(SubMode::Full, T("[a:Int]"), T("[a:Int; b:Int]"));
  REQUIRE(var);
  TermP cv = normalize(coerce(*var, f), RelationSet::betaOnly());
  CHECK(alphaEq(cv, M("\\x:[a:Int]. case x { a y -> <a y> : [a:Int; b:Int] }")));

  // A contravariant coercion wraps the function.
  auto fn = subtype(SubMode::Full, T("{a:Int} -> Int"), T("{a:Int; b:Int} -> Int"));
  REQUIRE(fn);
  TermP cf = normalize(coerce(*fn, f), RelationSet::betaOnly());
  CHECK(alphaEq(cf, M("\\g:{a:Int} -> Int. \\x:{a:Int; b:Int}. g {a = x.a}")));
}

TEST_CASE("T6 hoists nested presence quantifiers") {
  LabelOrder order{{"Name", "Child", "Age"}};
  Fresh f;
  TypeP carol = T("{Name:String; Child:{Name:String; Age:Int}}");
  CHECK(typeEqual(t6Type(carol, order, f),
                  T("forall p1. forall p2. forall p3. forall p4. {Name^p1:String; Child^p2:{Name^p3:String; Age^p4:Int}}")));
  CHECK(presSeq(Presence::present(), carol, order, f).size() == 4);

  auto r = run(TranslationId::T6, "{Name = \"Carol\", Child = {Name = \"Alice\", Age = 9}} :> {Child:{Name:String}}", order);
  CHECK(alphaEq(r.term,
                M("/\\q1. /\\q2. (/\\p1. /\\p2. /\\p3. /\\p4. {Name = \"Carol\", Child = (/\\t1. /\\t2. {Name = \"Alice\", Age = 9} "
                  ": {Name^t1:String; Age^t2:Int}) @ p3 @ p4} : {Name^p1:String; Child^p2:{Name^p3:String; Age^p4:Int}}) "
                  "@@ o @@ q1 @@ q2 @@ o")));
  CHECK(alphaEq(erase(r.term), M("{Name = \"Carol\", Child = {Name = \"Alice\", Age = 9}}")));
}

TEST_CASE("T7 erases into the rank-1 calculi") {
  auto r = run(TranslationId::T7RecRow, "((\\x:{Name:String}. x.Name) :> ({Name:String; Age:Int} -> String)) {Name = \"Alice\", Age = 9}");
  CHECK(alphaEq(r.term, M("(\\x. x.Name) {Name = \"Alice\", Age = 9}")));
  REQUIRE(r.scheme);
  CHECK(typeEqual(r.scheme->body, T("String")));
}

TEST_CASE("rank-2 record type translation and weak subsumption") {
  Fresh f;
  TypeScheme a = translA(T("{Name:String} -> String"), f);
  REQUIRE(a.vars.size() == 1);
  CHECK(a.vars[0].second.tag == Kind::Tag::Row);
  TypeScheme want{{{"r", Kind::row({"Name"})}}, T("{Name:String; r} -> String")};
  CHECK(schemeEquivalent(a, want));

  TypeScheme sigma{{{"r", Kind::row({"Name"})}}, T("{Name:String; r} -> String")};
  TypeScheme tau1{{{"s", Kind::row({"Name"})}}, T("{Name:String; s} -> String")};
  CHECK(weakSub(tau1, sigma));
  TypeScheme tau2{{}, T("{Name:String; Age:Int} -> String")};
  CHECK_FALSE(weakSub(tau2, sigma));

  // The record in argument position of the result is not generalised.
  TypeScheme b = translA(T("Int -> {a:Int}"), f);
  CHECK(b.vars.empty());
}
