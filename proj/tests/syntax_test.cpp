#include <algorithm>
#include <random>

#include "doctest.h"
#include "rowlab/syntax.hpp"
#include "rowlab/text.hpp"

using namespace rowlab;

namespace {

TypeP T(const std::string& s) { return parseType(s); }
TermP M(const std::string& s) { return parseTerm(s); }

// Substitution with no binder renaming. Only valid when the replacement is closed.
TermP naiveSubst(const TermP& m, const TermP& n, const Name& x) {
  auto t = std::make_shared<Term>(*m);
  switch (m->tag) {
    case Term::Tag::Var: return m->name == x ? n : m;
    case Term::Tag::Lam:
    case Term::Tag::Let:
      if (t->b) t->b = naiveSubst(m->b, n, x);
      if (m->tag == Term::Tag::Let) t->a = naiveSubst(m->a, n, x);
      else if (m->name != x) t->a = naiveSubst(m->a, n, x);
      if (m->tag == Term::Tag::Let && m->name == x) t->b = m->b;
      return t;
    default: break;
  }
  if (t->a) t->a = naiveSubst(m->a, n, x);
  if (t->b) t->b = naiveSubst(m->b, n, x);
  for (auto& b : t->branches)
    if (b.var != x) b.body = naiveSubst(b.body, n, x);
  for (auto& f : t->fields) f.term = naiveSubst(f.term, n, x);
  return t;
}

}  // namespace

TEST_CASE("substitution") {
  CHECK(alphaEq(substTerm(M("x"), M("n"), "x"), M("n")));
  CHECK(alphaEq(substTerm(M("y"), M("n"), "x"), M("y")));

  // The replacement mentions the bound name, so the binder must move.
  TermP r = substTerm(M("\\y:a0. x"), M("y"), "x");
  REQUIRE(r->tag == Term::Tag::Lam);
  CHECK(r->name != "y");
  CHECK(r->a->tag == Term::Tag::Var);
  CHECK(r->a->name == "y");
  CHECK(alphaEq(r, M("\\w:a0. y")));

  TermP inj = M("<l 1> : [l:Int]");
  TermP body = M("case x { l z -> z }");
  CHECK(alphaEq(substTerm(body, inj, "x"), naiveSubst(body, inj, "x")));
  CHECK(alphaEq(substTerm(body, inj, "x"), M("case (<l 1> : [l:Int]) { l z -> z }")));

  // Shadowing binders stop the substitution.
  CHECK(alphaEq(substTerm(M("case x { l x -> x }"), inj, "x"), M("case (<l 1> : [l:Int]) { l x -> x }")));
  CHECK(alphaEq(substTerm(M("\\x:Int. x"), inj, "x"), M("\\x:Int. x")));
  CHECK(alphaEq(substTerm(M("let x = x in x"), M("1"), "x"), M("let x = 1 in x")));
}

TEST_CASE("substitution against a naive oracle on closed replacements") {
  const char* bodies[] = {
      "\\y:a0. x y",
      "{a = x, b = \\x:a0. x}",
      "case x { a y -> y x; b z -> x }",
      "(x :> {a:Int}).a",
      "/\\r. x @ [b:Int; r]",
      "let y = x in y x",
  };
  TermP n = M("\\q:a1. q");
  for (auto* b : bodies) {
    INFO(b);
    CHECK(alphaEq(substTerm(M(b), n, "x"), naiveSubst(M(b), n, "x")));
  }
}

TEST_CASE("type-level substitution") {
  TypeP body = T("forall r:Row!{l}. {l:a0; r}")->cod;
  CHECK(typeEqual(substTypeInType(body, Row{}, "r"), T("{l:a0}")));

  TypeP p = T("{l^t:a0}");
  CHECK(show(substTypeInType(p, Presence::absent(), "t")) == "{l^o:a0}");

  // Appending a row: an oracle builds the expected entries directly.
  Row arg;
  arg.entries.push_back({"m", Presence::present(), tvar("b")});
  arg.tail = "s";
  TypeP got = substTypeInType(T("[l:a0; r]"), arg, "r");
  Row want;
  want.entries.push_back({"l", Presence::present(), tvar("a0")});
  want.entries.push_back({"m", Presence::present(), tvar("b")});
  want.tail = "s";
  CHECK(typeEqual(got, variant(want)));

  // Capture: the bound row variable is renamed away from the argument's tail.
  Row tailR;
  tailR.tail = "s";
  TypeP q = substTypeInType(T("forall s:Row!{}. {l:a0; r}"), tailR, "r");
  REQUIRE(q->tag == Type::Tag::ForallRow);
  CHECK(q->name != "s");
}

TEST_CASE("row normalisation") {
  Row r = parseRow("Year:Int; Age:Int");
  Row n = normalizeRow(r);
  REQUIRE(n.entries.size() == 2);
  CHECK(n.entries[0].label == "Age");
  CHECK(n.entries[1].label == "Year");
  CHECK(normalizeRow(parseRow("l^o:a0")).entries.empty());
  CHECK(normalizeRow(parseRow("l^o:a0"), false).entries.size() == 1);
  CHECK_THROWS_AS(normalizeRow(parseRow("l:a0; l:a1")), Error);

  std::mt19937 rng(7);
  std::vector<std::string> labels{"a", "b", "c", "d", "e"};
  for (int i = 0; i < 50; ++i) {
    std::shuffle(labels.begin(), labels.end(), rng);
    Row x;
    for (auto& l : labels) x.entries.push_back({l, Presence::present(), tvar("t" + l)});
    Row once = normalizeRow(x);
    CHECK(rowEqual(normalizeRow(once), once));
    CHECK(std::is_sorted(once.entries.begin(), once.entries.end(),
                         [](const RowEntry& p, const RowEntry& q) { return p.label < q.label; }));
  }
}

TEST_CASE("type equality") {
  CHECK(typeEqual(T("{Age:Int; Year:Int; r}"), T("{Year:Int; Age:Int; r}")));
  CHECK(typeEqual(T("{l^t:String}"), T("{l^t:String; m^o:Int}")));
  CHECK(typeEqual(T("forall r:Row!{}. {r}"), T("forall s:Row!{}. {s}")));
  CHECK_FALSE(typeEqual(T("{l:Int}"), T("[l:Int]")));
  CHECK_FALSE(typeEqual(T("{l:Int}"), T("{l:Int; m:Int}")));
  CHECK_FALSE(typeEqual(T("forall r:Row!{}. {r}"), T("forall r:Row!{l}. {r}")));

  // Equivalence relation on random triples drawn from a small pool.
  std::vector<TypeP> pool = {T("{a:Int; b:Int}"), T("{b:Int; a:Int}"), T("{a:Int; b:Int; c^o:Int}"),
                             T("{a:Int}"),          T("[a:Int]"),          T("forall p. {a^p:Int}"),
                             T("forall q. {a^q:Int}")};
  std::mt19937 rng(3);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < 300; ++i) {
    auto a = pool[pick(rng)], b = pool[pick(rng)], c = pool[pick(rng)];
    CHECK(typeEqual(a, a));
    CHECK(typeEqual(a, b) == typeEqual(b, a));
    if (typeEqual(a, b) && typeEqual(b, c)) CHECK(typeEqual(a, c));
  }
}

TEST_CASE("row difference and restriction") {
  Row r = parseRow("Age:Int; Year:Int");
  CHECK(rowEqual(rowDifference(r, parseRow("Year:Int")), parseRow("Age:Int")));
  CHECK(rowDifference(r, r).entries.empty());
  CHECK(rowEqual(rowDifference(r, Row{}), r));
  // A label with a different type is not removed.
  CHECK(rowEqual(rowDifference(r, parseRow("Year:String")), r));

  Row s = parseRow("Name:String; Age:Int");
  CHECK(rowEqual(rowRestrict(s, {"Name"}), parseRow("Name:String")));
  CHECK(rowEqual(rowRestrict(s, s.labels()), s));
  CHECK(Row{}.labels().empty());
  CHECK_THROWS_AS(rowRestrict(s, {"Year"}), Error);

  // Difference and intersection recover the row.
  Row sub = parseRow("Year:Int; Other:Int");
  Row diff = rowDifference(r, sub);
  Row inter;
  for (auto& e : r.entries)
    if (sub.find(e.label) && typeEqual(sub.find(e.label)->type, e.type)) inter.entries.push_back(e);
  CHECK(rowEqual(rowConcat(diff, inter), r));
}

TEST_CASE("alpha equivalence") {
  CHECK(alphaEq(M("\\x:a0. x"), M("\\y:a0. y")));
  CHECK_FALSE(alphaEq(M("\\x:a0. x"), M("\\x:a0. \\y:a0. x")));
  CHECK(alphaEq(M("case z { l x -> x }"), M("case z { l y -> y }")));
  CHECK(alphaEq(M("/\\r. (\\x:{l:Int; r}. x)"), M("/\\s. (\\x:{l:Int; s}. x)")));
  CHECK(alphaEq(M("{a = 1, b = 2}"), M("{b = 2, a = 1}")));
  CHECK_FALSE(alphaEq(M("x @ *"), M("x @@ *")));
  CHECK(alphaEq(M("\\x:{Age:Int; Year:Int}. x"), M("\\x:{Year:Int; Age:Int}. x")));
}

TEST_CASE("parser and printer") {
  const char* terms[] = {
      "\\x:[Age:Int; Year:Int]. case x { Age y -> y; Year y -> 2023 - y }",
      "{Name = \"Alice\", Age = 9} :> {Name:String}",
      "/\\r:Row!{l}. \\x:{l:a0; r}. x.l",
      "(/\\p. {l = 1} : {l^p:Int}) @@ o",
      "let f = \\x. x in f f",
      "\"a\" ++ \"b\"",
  };
  for (auto* s : terms) {
    INFO(s);
    TermP m = M(s);
    CHECK(alphaEq(M(show(m)), m));
  }
  CHECK_THROWS_AS(parseProgram(""), Error);
  CHECK_THROWS_AS(parseProgram("-- only a comment\n"), Error);
  CHECK_THROWS_AS(M("\\x. "), Error);
  CHECK_THROWS_AS(M("case x { l y -> y; l z -> z }"), Error);

  Program p = parseProgram("-- env: a0 : Type\n-- env: z : a0\n-- env: let g : a0 -> a0\ng z\n");
  CHECK(p.env.delta.size() == 1);
  REQUIRE(p.env.gamma.size() == 2);
  CHECK(p.env.gamma[1].letBound);
  try {
    parseTerm("\\x:a0.\n  (x");
    FAIL("no parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("2:") != std::string::npos);
  }
}

TEST_CASE("fresh names are deterministic") {
  Fresh a, b;
  CHECK(a("x") == b("x"));
  CHECK(a("x") != a("x"));
  CHECK(stripSuffix("x$12") == "x");
}
