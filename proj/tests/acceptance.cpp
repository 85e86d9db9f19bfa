// Acceptance run: one line per criterion, then the details of anything that failed.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "golden.hpp"
#include "rowlab/dynamics.hpp"
#include "rowlab/harness.hpp"
#include "rowlab/infer.hpp"
#include "rowlab/statics.hpp"
#include "rowlab/translate.hpp"

#ifndef ROWLAB_CORPUS
#error "ROWLAB_CORPUS must name the corpus directory"
#endif

using namespace rowlab;

namespace {

struct Result {
  bool pass = true;
  long cases = 0, failed = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok) {
      pass = false;
      ++failed;
      notes.push_back(what);
    }
  }
};

// Runs a property and folds its report into r.
void property(Result& r, VerifyOptions o) {
  PropertyReport rep = verify(o);
  r.cases += rep.cases;
  r.failed += rep.failures.size();
  if (!rep.pass()) {
    r.pass = false;
    auto& f = rep.failures.front();
    std::ostringstream os;
    os << rep.property << " " << rep.subject << ": " << rep.failures.size() << "/" << rep.cases
       << " failed; smallest (seed " << f.seed << ", size " << f.size << "): " << f.term << "\n      " << f.got;
    r.notes.push_back(os.str());
  }
}

VerifyOptions opts(const std::string& prop, const std::string& t, const std::string& calc, int count) {
  VerifyOptions o;
  o.property = prop;
  o.translation = t;
  o.calculus = calc;
  o.count = count;
  o.seed = 20231984;
  o.depth = 3;
  o.maxSize = 12;
  return o;
}

// Golden expectations from the named corpus files, filtered by command.
void goldens(Result& r, const std::vector<std::string>& files, const std::vector<std::string>& commands) {
  for (auto& f : files) {
    std::string path = std::string(ROWLAB_CORPUS) + "/" + f;
    for (auto& e : golden::expectations(path)) {
      if (std::find(commands.begin(), commands.end(), e.command) == commands.end()) continue;
      auto o = golden::run(path, e);
      r.expect(o.ok, f + ":" + std::to_string(e.line) + " " + e.command + ": want " + e.expected + ", got " + o.got);
    }
  }
}

TermP M(const std::string& s) { return parseTerm(s); }
TypeP T(const std::string& s) { return parseType(s); }

// The five translations with a source calculus each, T5 once per source.
const std::vector<std::pair<std::string, std::string>> kTyped = {
    {"T1", "var-sub"},           {"T2", "var-sub"},      {"T3", "rec-sub"},      {"T4", "rec-sub"},
    {"T5", "var-rec-sub-full"}, {"T5", "var-sub-full"}, {"T5", "rec-sub-full"}, {"T6", "rec-sub-co"},
};

Result golden1() {
  Result r;
  // Oracles computed here rather than read from the corpus.
  RelationSet vs = RelationSet::forConfig(configById("var-sub"));
  TermP getAgeYear = M("(\\x:[Age:Int; Year:Int]. case x { Age y -> y; Year y -> 2023 - y }) ((<Year 1984> : [Year:Int]) :> [Age:Int; Year:Int])");
  r.expect(typeEqual(typeCheck(configById("var-sub"), {}, getAgeYear).type, baseType(BaseType::Int)), "getAge year does not check");
  r.expect(alphaEq(normalize(getAgeYear, vs), intLit(2023 - 1984)), "getAge year does not evaluate to 2023 - 1984");
  TermP getNameAlice = M("(\\x:{Name:String}. x.Name) ({Name = \"Alice\", Age = 9} :> {Name:String})");
  r.expect(alphaEq(normalize(getNameAlice, RelationSet::forConfig(configById("rec-sub"))), strLit("Alice")),
           "getName alice does not evaluate to Alice");
  goldens(r,
          {"getAge.row", "getAge_year.row", "getAge_age.row", "alice_upcast.row", "getName_alice.row", "getName_bob.row",
           "carol.row", "carol_upcast.row", "getChildName.row", "drop_field.row", "drop_field_upcast.row",
           "getName_row.row", "getName_full.row", "data_upcast.row", "parseAge.row", "getUnit.row"},
          {"check", "eval", "translate", "normalize", "erase", "reject"});
  return r;
}

Result coercion2() {
  Result r;
  auto ev = subtype(SubMode::Full, T("{Name:String; Child:{Name:String; Age:Int}}"), T("{Child:{Name:String}}"));
  r.expect(ev.has_value(), "carol's subtyping is not derivable");
  if (ev) {
    Fresh f;
    TermP c = normalize(coerce(*ev, f), RelationSet::betaOnly());
    r.expect(alphaEq(c, M("\\x:{Name:String; Child:{Name:String; Age:Int}}. {Child = {Name = x.Child.Name}}")),
             "coercion normal form is " + show(c));
  }
  goldens(r, {"carol_coercion.row"}, {"translate-nf"});
  return r;
}

Result preservation3() {
  Result r;
  for (auto& [t, c] : kTyped) property(r, opts("type-preservation", t, c, 1000));
  return r;
}

Result correspondence4() {
  Result r;
  for (const char* t : {"T1", "T2", "T3", "T4"})
    for (const char* p : {"simulation", "reflection"}) property(r, opts(p, t, "", 200));
  return r;
}

Result erasure5() {
  Result r;
  for (const char* t : {"T2", "T4", "T6", "T7-rec-row", "T7-rec-pre", "T7-var-row", "T7-var-pre"})
    property(r, opts("erasure", t, "", 1000));
  property(r, opts("erasure-correspondence", "", "var-rec-sub-full", 200));
  return r;
}

Result rank6() {
  Result r;
  r.expect(recrank(2, T("{Name:String} -> String")), "recrank(2, {Name:String} -> String) is false");
  r.expect(!recrank(2, T("({Name:String} -> String) -> String")), "recrank(2, ({Name:String} -> String) -> String) is true");
  goldens(r, {"f_lambda.row", "f_lambda_erased.row"}, {"reject"});
  return r;
}

Result inference7() {
  Result r;
  goldens(r, {"getName_infer.row", "alice_infer.row", "getName_alice_infer.row", "getAge_pre1.row", "getAge_infer.row"},
          {"infer"});
  InferResult full = inferFull(configById("rec-row1"), {}, M("(\\x. x.Name) {Name = \"Alice\", Age = 9}"));
  bool age = false;
  for (auto& [v, x] : full.substitution)
    if (auto* row = std::get_if<Row>(&x)) age |= rowEqual(normalizeRow(*row), parseRow("Age:Int"));
  r.expect(age, "getName's row is not instantiated with Age:Int");
  r.expect(typeEqual(full.scheme.body, baseType(BaseType::String)) && full.scheme.vars.empty(), "getName alice is not String");
  return r;
}

Result weak8() {
  Result r;
  property(r, opts("weak-preservation", "", "rec-sub-full-rank2", 300));
  return r;
}

Result subst9() {
  Result r;
  for (auto& [t, c] : kTyped) property(r, opts("subst-lemma", t, c, 500));
  return r;
}

Result subject10() {
  Result r;
  for (auto& c : allConfigs()) property(r, opts("subject-reduction", "", c.id, 500));
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Result()> run;
  };
  std::vector<Criterion> all = {
      {1, "golden corpus", golden1},
      {2, "coercion normal form", coercion2},
      {3, "type preservation", preservation3},
      {4, "operational correspondence", correspondence4},
      {5, "erasure laws", erasure5},
      {6, "rank predicates", rank6},
      {7, "inference goldens", inference7},
      {8, "weak preservation", weak8},
      {9, "substitution lemmas", subst9},
      {10, "subject reduction", subject10},
  };
  auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<int, Result>> done;
  bool ok = true;
  for (auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.pass = false;
      r.notes.push_back(std::string("aborted: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s  %s (%ld checks, %ld failed, %.1fs)\n", c.id, r.pass ? "PASS" : "FAIL", c.name, r.cases,
                r.failed, s);
    std::fflush(stdout);
    ok = ok && r.pass;
    done.push_back({c.id, std::move(r)});
  }
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("total %.1fs\n", total);
  for (auto& [id, r] : done)
    for (auto& n : r.notes) std::printf("  [%d] %s\n", id, n.c_str());
  return ok ? 0 : 1;
}
