#include <random>

#include "doctest.h"
#include "json.hpp"
#include "rowlab/statics.hpp"
#include "rowlab/text.hpp"

using namespace rowlab;

namespace {

TypeP T(const std::string& s) { return parseType(s); }
TermP M(const std::string& s) { return parseTerm(s); }

const CalculusConfig& C(const std::string& id) { return configById(id); }

TypeP check(const std::string& calc, const std::string& term, const Env& env = {}) {
  return typeCheck(C(calc), env, M(term)).type;
}

ErrorKind rejection(const std::string& calc, const std::string& term, const Env& env = {}) {
  try {
    typeCheck(C(calc), env, M(term));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("accepted " << term << " in " << calc);
  return ErrorKind::Internal;
}

// Largest number of arrows whose domain lies on the path to a record (or variant) node.
int leftDepth(const TypeP& a, Type::Tag target, int here = 0) {
  switch (a->tag) {
    case Type::Tag::Arrow: return std::max(leftDepth(a->dom, target, here + 1), leftDepth(a->cod, target, here));
    case Type::Tag::Variant:
    case Type::Tag::Record: {
      int best = a->tag == target ? here : -1;
      for (auto& e : a->row.entries) best = std::max(best, leftDepth(e.type, target, here));
      return best;
    }
    default: return -1;
  }
}

TypeP randomType(std::mt19937& rng, int depth) {
  int pick = std::uniform_int_distribution<int>(0, depth > 0 ? 3 : 0)(rng);
  switch (pick) {
    case 0: return baseType(BaseType::Int);
    case 1: return arrow(randomType(rng, depth - 1), randomType(rng, depth - 1));
    case 2: return record(closedRow({{"a", randomType(rng, depth - 1)}}));
    default: return variant(closedRow({{"b", randomType(rng, depth - 1)}}));
  }
}

}  // namespace

TEST_CASE("kinding") {
  Env env;
  env.delta = {{"r", Kind::row({"l"})}, {"a0", Kind::type()}};
  // The tail's lacks set must be exactly the labels in front of it.
  CHECK_NOTHROW(kindCheck(env, T("{l:a0; r}")));
  CHECK_THROWS_AS(kindCheck(env, T("{m:a0; r}")), Error);
  CHECK_THROWS_AS(kindCheck(env, T("{r}")), Error);
  CHECK_THROWS_AS(kindCheck(env, T("{m:b}")), Error);
  CHECK_NOTHROW(kindCheck({}, T("forall r:Row!{l}. {l:Int; r}")));
  CHECK_THROWS_AS(kindCheck({}, T("forall r:Row!{}. {l:Int; r}")), Error);
}

TEST_CASE("simple, covariant and full subtyping") {
  CHECK(isSubtype(SubMode::Simple, T("[Year:Int]"), T("[Age:Int; Year:Int]")));
  CHECK_FALSE(isSubtype(SubMode::Simple, T("[Age:Int; Year:Int]"), T("[Year:Int]")));
  CHECK(isSubtype(SubMode::Simple, T("{Name:String; Age:Int}"), T("{Name:String}")));
  CHECK_FALSE(isSubtype(SubMode::Simple, T("{Name:String}"), T("{Name:String; Age:Int}")));
  // Simple subtyping is shallow.
  TypeP carol = T("{Name:String; Child:{Name:String; Age:Int}}");
  TypeP want = T("{Child:{Name:String}}");
  CHECK_FALSE(isSubtype(SubMode::Simple, carol, want));
  CHECK(isSubtype(SubMode::Covariant, carol, want));
  CHECK(isSubtype(SubMode::Full, carol, want));
  // Contravariance needs the full relation.
  TypeP getName = T("{Name:String} -> String");
  TypeP wider = T("{Name:String; Age:Int} -> String");
  CHECK_FALSE(isSubtype(SubMode::Covariant, getName, wider));
  CHECK(isSubtype(SubMode::Full, getName, wider));
  CHECK_FALSE(isSubtype(SubMode::Full, wider, getName));
  CHECK(isSubtype(SubMode::Covariant, T("Int -> {a:Int; b:Int}"), T("Int -> {a:Int}")));

  auto ev = subtype(SubMode::Full, carol, want);
  REQUIRE(ev);
  CHECK(ev->rule == SubtypeEvidence::Rule::Record);
  REQUIRE(ev->labels == std::vector<Label>{"Child"});
  CHECK(ev->premises.at(0).rule == SubtypeEvidence::Rule::Record);
}

TEST_CASE("typing the worked examples") {
  CHECK(typeEqual(check("var-sub", "\\x:[Age:Int; Year:Int]. case x { Age y -> y; Year y -> 2023 - y }"),
                  T("[Age:Int; Year:Int] -> Int")));
  CHECK(typeEqual(check("rec-sub", "(\\x:{Name:String}. x.Name) ({Name = \"Alice\", Age = 9} :> {Name:String})"),
                  T("String")));
  CHECK(typeEqual(check("var-row", "/\\r. <Year 1984> : [Year:Int; r]"), T("forall r:Row!{Year}. [Year:Int; r]")));
  CHECK(typeEqual(check("rec-pre", "/\\p. /\\q. {Name = \"Alice\", Age = 9} : {Name^p:String; Age^q:Int}"),
                  T("forall p. forall q. {Name^p:String; Age^q:Int}")));
  // Absent fields do not count when comparing.
  CHECK(typeEqual(check("rec-pre", "(\\x:{Name:String}. x.Name) ((/\\q. {Name = \"A\", Age = 9} : {Name:String; Age^q:Int}) @ o)"),
                  T("String")));

  CHECK(rejection("var", "(\\x:[Age:Int; Year:Int]. x) (<Year 1984> : [Year:Int])") == ErrorKind::Type);
  CHECK(rejection("rec-sub", "{Name = \"Alice\"} :> {Name:String; Age:Int}") == ErrorKind::Subtype);
  CHECK(rejection("rec", "{a = 1} :> {}") == ErrorKind::Type);
  CHECK(rejection("rec", "<l 1> : [l:Int]") == ErrorKind::Type);
  CHECK(rejection("var", "{a = 1}") == ErrorKind::Type);
  CHECK(rejection("rec-pre", "{a = 1}") == ErrorKind::Type);  // presence records need their annotation
  CHECK(rejection("rec-sub", "(\\x:{a:Int}. x.b) {a = 1}") == ErrorKind::Type);
  CHECK(rejection("lambda", "1 + \"s\"") == ErrorKind::Type);
  CHECK(rejection("rec", "let x = 1 in x") == ErrorKind::Type);
}

TEST_CASE("derivations record rules and serialise to JSON") {
  Derivation d = typeCheck(C("rec-sub"), {}, M("(\\x:{Name:String}. x.Name) ({Name = \"Alice\", Age = 9} :> {Name:String})"));
  CHECK(d.rule == "App");
  REQUIRE(d.premises.size() == 2);
  CHECK(d.premises[1].rule == "Upcast");
  CHECK(d.premises[1].evidence.has_value());
  auto j = nlohmann::json::parse(derivationJson(d));
  CHECK(j["rule"] == "App");
  CHECK(j["premises"].size() == 2);
  CHECK(j.contains("type"));
}

TEST_CASE("rank predicates") {
  CHECK(recrank(2, T("{Name:String} -> String")));
  CHECK_FALSE(recrank(2, T("({Name:String} -> String) -> String")));
  CHECK(recrank(1, T("Int -> {a:Int}")));
  CHECK_FALSE(recrank(1, T("{a:Int} -> Int")));
  CHECK(varrank(1, T("Int -> [a:Int]")));
  CHECK_FALSE(varrank(1, T("[a:Int] -> Int")));

  std::mt19937 rng(11);
  for (int i = 0; i < 400; ++i) {
    TypeP a = randomType(rng, 4);
    for (int n = 1; n <= 3; ++n) {
      INFO(show(a), " n=", n);
      CHECK(recrank(n, a) == (leftDepth(a, Type::Tag::Record) < n));
      CHECK(varrank(n, a) == (leftDepth(a, Type::Tag::Variant) < n));
    }
  }

  auto& r2 = C("rec-sub-full-rank2");
  CHECK(checkRankLimit(r2, T("{Name:String} -> String")));
  CHECK_FALSE(checkRankLimit(r2, T("({Name:String} -> String) -> String")));
  TermP f = M("(\\f:{Name:String} -> String. f ({Name = \"Alice\", Age = 9} :> {Name:String}) ++ f ({Name = \"Bob\", Year = 1984} :> {Name:String})) (\\x:{Name:String}. x.Name)");
  Derivation d = typeCheck(C("rec-sub-full"), {}, f);
  CHECK_FALSE(checkRankLimit(r2, d));
  CHECK(rejection("rec-sub-full-rank2", show(f)) == ErrorKind::Rank);
}

TEST_CASE("algorithmic typing finds minimal types") {
  TypeP a = algType({}, M("(\\x:{Name:String}. x.Name) {Name = \"Alice\", Age = 9}"));
  CHECK(typeEqual(a, T("String")));
  TypeP b = algType({}, M("{Name = \"Alice\", Age = 9} :> {Name:String}"));
  CHECK(typeEqual(b, T("{Name:String; Age:Int}")));
  CHECK(isSubtype(SubMode::Full, b, T("{Name:String}")));
}

TEST_CASE("joins and meets under full subtyping") {
  CHECK(typeEqual(joinFull(T("{a:Int; b:Int}"), T("{a:Int; c:Int}")), T("{a:Int}")));
  CHECK(typeEqual(joinFull(T("[a:Int]"), T("[b:Int]")), T("[a:Int; b:Int]")));
  CHECK(typeEqual(meetFull(T("{a:Int}"), T("{b:Int}")), T("{a:Int; b:Int}")));
}
