#include <algorithm>
#include <chrono>
#include <map>
#include <tuple>
#include <set>

#include "json.hpp"
#include "rowlab/dynamics.hpp"
#include "rowlab/harness.hpp"
#include "rowlab/infer.hpp"

namespace rowlab {

namespace {

RelationSet rels(bool beta, bool upcast, bool nested, bool tau, bool nu, bool full = false) {
  RelationSet r;
  r.beta = beta;
  r.upcast = upcast;
  r.nested = nested;
  r.tau = tau;
  r.nu = nu;
  r.upcastFull = full;
  return r;
}

const RelationSet kBeta = rels(true, false, false, false, false);
const RelationSet kTau = rels(false, false, false, true, false);
const RelationSet kNu = rels(false, false, false, false, true);
const RelationSet kSrcBetaUp = rels(true, true, false, false, false);
const RelationSet kSrcUpNested = rels(false, true, true, false, false);
const RelationSet kSrcUp = rels(false, true, false, false, false);
const RelationSet kSrcAll = rels(true, true, true, false, false);
const RelationSet kFull = rels(true, false, false, false, false, true);
const RelationSet kFullUp = rels(false, false, false, false, false, true);

constexpr int kExploreCap = 40;
constexpr int kClosureCap = 2000;

const TranslationInfo& infoFor(TranslationId id, const std::string& from) {
  for (auto& t : translations())
    if (t.id == id && (from.empty() || t.from == from)) return t;
  fail(ErrorKind::Unsupported, translationInfo(id).name + " does not translate from " + from);
}

std::vector<TermP> results(const std::vector<Step>& ss) {
  std::vector<TermP> out;
  for (auto& s : ss) out.push_back(s.result);
  return out;
}

bool containsAlpha(const std::vector<TermP>& xs, const TermP& t) {
  for (auto& x : xs)
    if (alphaEq(x, t)) return true;
  return false;
}

// Every term reachable in zero or more steps, breadth first, capped.
std::vector<TermP> closure(const TermP& m, const RelationSet& r, int cap = kClosureCap) {
  std::vector<TermP> out{m};
  std::set<std::string> seen{show(m)};
  for (size_t i = 0; i < out.size() && (int)out.size() < cap; ++i)
    for (auto& s : stepAll(out[i], r))
      if (seen.insert(show(s.result)).second) out.push_back(s.result);
  return out;
}

// m with every child replaced by a hole, so node-local data can be compared with alphaEq.
TermP shell(const TermP& m) {
  static const TermP hole = var("_hole");
  auto t = std::make_shared<Term>(*m);
  if (t->a) t->a = hole;
  if (t->b) t->b = hole;
  for (auto& f : t->fields) f.term = hole;
  for (auto& br : t->branches) br.body = hole;
  return t;
}

TermP renameTerm(const TermP& m, const Name& from, const Name& to) {
  return from == to ? m : substTerm(m, var(to), from);
}

// Children of m paired with the corresponding children of n, binders renamed to m's: fields and
// branches by label, the rest by position. Index is the child position in m. Empty when the nodes
// themselves differ.
std::optional<std::vector<std::tuple<int, TermP, TermP>>> pairUp(const TermP& m, const TermP& n) {
  if (m->tag != n->tag || !alphaEq(shell(m), shell(n))) return std::nullopt;
  auto cm = children(m), cn = children(n);
  if (cm.size() != cn.size()) return std::nullopt;
  std::vector<std::tuple<int, TermP, TermP>> out;
  switch (m->tag) {
    case Term::Tag::Record:
      for (size_t i = 0; i < m->fields.size(); ++i)
        for (auto& f : n->fields)
          if (f.label == m->fields[i].label) out.push_back({int(i), cm[i], f.term});
      break;
    case Term::Tag::Case:
      out.push_back({0, cm[0], cn[0]});
      for (size_t i = 0; i < m->branches.size(); ++i)
        for (auto& br : n->branches)
          if (br.label == m->branches[i].label)
            out.push_back({int(i) + 1, cm[i + 1], renameTerm(br.body, br.var, m->branches[i].var)});
      break;
    case Term::Tag::Lam: out.push_back({0, cm[0], renameTerm(cn[0], n->name, m->name)}); break;
    case Term::Tag::Let:
      out.push_back({0, cm[0], cn[0]});
      out.push_back({1, cm[1], renameTerm(cn[1], n->name, m->name)});
      break;
    case Term::Tag::RowAbs: {
      Row r;
      r.tail = m->name;
      out.push_back({0, cm[0], m->name == n->name ? cn[0] : substTypeInTerm(cn[0], n->name, TyArg(r))});
      break;
    }
    case Term::Tag::PresAbs:
      out.push_back({0, cm[0], m->name == n->name ? cn[0] : substTypeInTerm(cn[0], n->name, TyArg(Presence::variable(m->name)))});
      break;
    default:
      for (size_t i = 0; i < cm.size(); ++i) out.push_back({int(i), cm[i], cn[i]});
  }
  if (out.size() != cm.size()) return std::nullopt;
  return out;
}

// Head reducts of m: contractions at the root, or else head reducts of the child a root redex waits on.
std::vector<TermP> headSteps(const TermP& m, const RelationSet& r) {
  std::vector<TermP> out;
  for (auto& s : stepAll(m, r))
    if (s.position.empty()) out.push_back(s.result);
  if (!out.empty()) return out;
  int principal = -1;
  switch (m->tag) {
    case Term::Tag::App:
    case Term::Tag::Project:
    case Term::Tag::Case:
    case Term::Tag::Upcast:
    case Term::Tag::RowApp:
    case Term::Tag::PresApp: principal = 0; break;
    case Term::Tag::Prim: principal = m->a->tag == Term::Tag::Lit ? 1 : 0; break;
    default: return out;
  }
  auto cs = children(m);
  for (auto& c : headSteps(cs[principal], r)) {
    auto t = std::make_shared<Term>(*m);
    if (principal == 0) t->a = c;
    else t->b = c;
    out.push_back(t);
  }
  return out;
}

// Decides from ->* target by head/internal factorisation: either some head reduct reaches the
// target, or the two have the same shape and the children reach pointwise.
struct Reach {
  const RelationSet& r;
  std::map<std::pair<std::string, std::string>, bool> memo;
  int budget = 20000;

  bool operator()(const TermP& p, const TermP& q) {
    if (alphaEq(p, q)) return true;
    if (--budget < 0) return false;
    auto key = std::make_pair(show(p), show(q));
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    memo[key] = false;  // cut cycles
    bool ok = false;
    if (auto ps = pairUp(p, q)) {
      ok = true;
      for (auto& [i, x, y] : *ps)
        if (!(ok = (*this)(x, y))) break;
    }
    if (!ok)
      for (auto& h : headSteps(p, r))
        if ((ok = (*this)(h, q))) break;
    return memo[key] = ok;
  }
};

bool reachable(const TermP& from, const TermP& target, const RelationSet& r) {
  Reach reach{r, {}};
  return reach(from, target);
}

// Source terms within `depth` steps, capped.
std::vector<TermP> explore(const TermP& m, const RelationSet& r, int depth) {
  std::vector<TermP> out{m};
  std::set<std::string> seen{show(m)};
  std::vector<TermP> frontier{m};
  for (int d = 0; d < depth && (int)out.size() < kExploreCap; ++d) {
    std::vector<TermP> next;
    for (auto& t : frontier)
      for (auto& s : stepAll(t, r))
        if ((int)out.size() < kExploreCap && seen.insert(show(s.result)).second) {
          out.push_back(s.result);
          next.push_back(s.result);
        }
    frontier = std::move(next);
  }
  return out;
}

struct Translator {
  TranslationId id;
  const CalculusConfig& src;
  const Env& env;

  TermP operator()(const TermP& m) const {
    Derivation d;
    try {
      d = typeCheck(src, env, m);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string("reduct is not typable in ") + src.id + ": " + e.what());
    }
    return translate(id, d, env).term;
  }

  std::vector<TermP> all(const std::vector<TermP>& ms) const {
    std::vector<TermP> out;
    for (auto& m : ms) out.push_back((*this)(m));
    return out;
  }
};

// Builtin arithmetic belongs with beta.
bool isBetaRule(const std::string& rule) { return rule.rfind("beta", 0) == 0 || rule == "delta"; }

std::string stepDesc(const TermP& m, const Step& s) { return s.rule + " at " + showPath(s.position) + " of " + show(m); }

std::vector<TermP> betaAfter(const std::vector<TermP>& ts) {
  std::vector<TermP> out;
  for (auto& t : ts)
    for (auto& s : stepAll(t, kBeta)) out.push_back(s.result);
  return out;
}

std::vector<TermP> tauOptBeta(const TermP& p) {
  std::vector<TermP> starts{p};
  for (auto& s : stepAll(p, kTau)) starts.push_back(s.result);
  return betaAfter(starts);
}

std::vector<TermP> tauStarBeta(const TermP& p) { return betaAfter(closure(p, kTau)); }

}  // namespace

std::optional<std::string> checkTypePreservation(TranslationId id, const Generated& g) {
  auto& info = infoFor(id, g.config);
  auto r = translate(id, g.derivation, g.env);
  Derivation d;
  try {
    d = typeCheck(configById(info.to), r.env, r.term);
  } catch (const Error& e) {
    return std::string("translation is not typable in ") + info.to + ": " + e.what() + "\n  output: " + show(r.term);
  }
  if (r.type && !typeEqual(d.type, r.type))
    return "translated term has type " + show(d.type) + " but the type translation gives " + show(r.type) + "\n  output: " + show(r.term);
  return std::nullopt;
}

std::optional<std::string> checkSimulation(TranslationId id, const Generated& g, int depth) {
  const CalculusConfig& src = configById(g.config);
  Translator tr{id, src, g.env};
  for (auto& s : explore(g.term, kSrcAll, depth)) {
    TermP ps = tr(s);
    for (auto& st : stepAll(s, kSrcBetaUp)) {
      TermP pn = tr(st.result);
      bool isBeta = isBetaRule(st.rule);
      bool ok = false;
      switch (id) {
        case TranslationId::T1: ok = containsAlpha(results(stepAll(ps, kBeta)), pn); break;
        case TranslationId::T2:
          ok = isBeta ? containsAlpha(tauOptBeta(ps), pn) : containsAlpha(results(stepAll(ps, kNu)), pn);
          break;
        case TranslationId::T3: ok = reachable(ps, pn, kBeta); break;
        case TranslationId::T4: ok = isBeta ? containsAlpha(tauStarBeta(ps), pn) : reachable(ps, pn, kNu); break;
        default: fail(ErrorKind::Unsupported, "simulation is defined for T1-T4");
      }
      if (!ok)
        return "source step " + stepDesc(s, st) + " has no matching target reduction\n  from: " + show(ps) + "\n  want: " + show(pn);
    }
  }
  return std::nullopt;
}

std::optional<std::string> checkReflection(TranslationId id, const Generated& g, int depth) {
  const CalculusConfig& src = configById(g.config);
  Translator tr{id, src, g.env};
  for (auto& s : explore(g.term, kSrcAll, depth)) {
    TermP ps = tr(s);
    auto srcBeta = tr.all(results(stepAll(s, kBeta)));
    auto srcUpNested = tr.all(results(stepAll(s, kSrcUpNested)));
    auto srcUp = tr.all(results(stepAll(s, kSrcUp)));
    auto anySrc = srcBeta;
    anySrc.insert(anySrc.end(), srcUpNested.begin(), srcUpNested.end());
    auto fail = [&](const std::string& what, const TermP& p) {
      return what + "\n  source: " + show(s) + "\n  target: " + show(ps) + "\n  reduct: " + show(p);
    };
    switch (id) {
      case TranslationId::T1:
        for (auto& p : results(stepAll(ps, kBeta)))
          if (!containsAlpha(srcBeta, p) && !containsAlpha(srcUp, p)) return fail("target beta step with no source step", p);
        break;
      case TranslationId::T3:
        for (auto& st : stepAll(ps, kBeta)) {
          const TermP& p = st.result;
          bool ok = false;
          for (auto& n : srcBeta) ok = ok || reachable(p, n, kBeta);
          for (auto& n : srcUp) ok = ok || reachable(p, n, kBeta);
          if (!ok) return fail("target step " + st.rule + " at " + showPath(st.position) + " not joinable with any source step", p);
        }
        break;
      case TranslationId::T2:
      case TranslationId::T4: {
        for (auto& p : results(stepAll(ps, kBeta)))
          if (!containsAlpha(srcBeta, p)) return fail("direct target beta step with no source beta step", p);
        auto viaTau = id == TranslationId::T2 ? tauOptBeta(ps) : tauStarBeta(ps);
        for (auto& p : viaTau)
          if (containsAlpha(anySrc, p) && !containsAlpha(srcBeta, p)) return fail("type-then-beta path lands on a non-beta source reduct", p);
        for (auto& p : results(stepAll(ps, kNu))) {
          bool ok = false;
          if (id == TranslationId::T2)
            ok = containsAlpha(srcUpNested, p);
          else
            for (auto& n : srcUpNested) ok = ok || reachable(p, n, kNu);
          if (!ok) return fail("upcast-origin type application with no source upcast step", p);
        }
        break;
      }
      default: ::rowlab::fail(ErrorKind::Unsupported, "reflection is defined for T1-T4");
    }
  }
  return std::nullopt;
}

std::optional<std::string> checkErasureLaw(TranslationId id, const Generated& g) {
  auto& info = infoFor(id, g.config);
  auto r = translate(id, g.derivation, g.env);
  TermP lhs = erase(r.term), rhs = erase(g.term);
  if (!alphaEq(lhs, rhs)) return "erasures differ\n  translated: " + show(lhs) + "\n  source:     " + show(rhs);
  if (!info.typed) {
    try {
      typeCheck(configById(info.to), r.env, r.term);
    } catch (const Error& e) {
      return std::string("erased term is not typable in ") + info.to + ": " + e.what() + "\n  term: " + show(r.term);
    }
  }
  return std::nullopt;
}

namespace {

// Adds a spare field to the first record literal, keeping M' ⊑ erase(M).
TermP widen(const TermP& m, bool& done) {
  if (done) return m;
  if (m->tag == Term::Tag::Record) {
    for (auto& l : {"a", "b", "c", "d"}) {
      bool has = false;
      for (auto& f : m->fields) has = has || f.label == l;
      if (!has) {
        auto fs = m->fields;
        fs.push_back({l, var("z0")});
        done = true;
        return recordIntro(fs);
      }
    }
  }
  auto t = std::make_shared<Term>(*m);
  switch (m->tag) {
    case Term::Tag::Lam: t->a = widen(m->a, done); break;
    case Term::Tag::App:
    case Term::Tag::Let:
    case Term::Tag::Prim:
      t->a = widen(m->a, done);
      t->b = widen(m->b, done);
      break;
    case Term::Tag::Inject:
    case Term::Tag::Project: t->a = widen(m->a, done); break;
    case Term::Tag::Case:
      t->a = widen(m->a, done);
      for (auto& b : t->branches) b.body = widen(b.body, done);
      break;
    case Term::Tag::Record:
      for (auto& f : t->fields) f.term = widen(f.term, done);
      break;
    default: break;
  }
  return t;
}

}  // namespace

std::optional<std::string> checkErasureCorrespondence(const Generated& g, int depth) {
  bool done = false;
  TermP e = erase(g.term);
  std::vector<std::pair<TermP, TermP>> frontier{{g.term, e}, {g.term, widen(e, done)}};
  int visited = 0;
  for (int d = 0; d <= depth && !frontier.empty(); ++d) {
    std::vector<std::pair<TermP, TermP>> next;
    for (auto& [m, mp] : frontier) {
      if (++visited > kExploreCap) return std::nullopt;
      if (!termPreorder(mp, erase(m))) return "invariant lost: " + show(mp) + " is not below " + show(erase(m));
      auto mpBeta = results(stepAll(mp, kBeta));
      for (auto& st : stepAll(m, kFull)) {
        TermP en = erase(st.result);
        if (isBetaRule(st.rule)) {
          const TermP* match = nullptr;
          for (auto& np : mpBeta)
            if (termPreorder(np, en)) {
              match = &np;
              break;
            }
          if (!match) return "typed beta step " + stepDesc(m, st) + " has no untyped counterpart from " + show(mp);
          if (d < depth) next.push_back({st.result, *match});
        } else {
          if (!termPreorder(erase(m), en)) return "upcast step does not shrink: " + stepDesc(m, st);
          if (!termPreorder(mp, en)) return "after upcast step " + stepDesc(m, st) + ", " + show(mp) + " is not below " + show(en);
          if (d < depth) next.push_back({st.result, mp});
        }
      }
      for (auto& np : mpBeta) {
        bool ok = false;
        for (auto& u : closure(m, kFullUp, 200)) {
          for (auto& n : results(stepAll(u, kBeta)))
            if (termPreorder(np, erase(n))) {
              ok = true;
              break;
            }
          if (ok) break;
        }
        if (!ok) return "untyped beta step to " + show(np) + " is not reflected by " + show(m);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

std::optional<std::string> checkSubjectReduction(const CalculusConfig& c, const Generated& g, int depth) {
  RelationSet r = RelationSet::forConfig(c);
  if (c.rank1()) {
    TypeScheme s0 = infer(c, g.env, g.term);
    LabelSet labels = termLabels(g.term);
    for (auto& n : explore(g.term, r, depth)) {
      TypeScheme s1;
      try {
        s1 = infer(c, g.env, n, labels);
      } catch (const Error& e) {
        return "reduct " + show(n) + " does not infer: " + e.what();
      }
      if (!schemeInstanceOf(s1, s0)) return "reduct " + show(n) + " : " + show(s1) + " is less general than " + show(s0);
    }
    return std::nullopt;
  }
  for (auto& n : explore(g.term, r, depth)) {
    Derivation d;
    try {
      d = typeCheck(c, g.env, n);
    } catch (const Error& e) {
      return "reduct " + show(n) + " is ill-typed: " + e.what();
    }
    if (!typeEqual(d.type, g.derivation.type)) return "reduct " + show(n) + " : " + show(d.type) + ", expected " + show(g.derivation.type);
  }
  return std::nullopt;
}

std::optional<std::string> checkWeakPreservation(const Generated& g) {
  TypeP a = g.derivation.type;
  TypeP a1 = algType(g.env, g.term);
  if (!isSubtype(SubMode::Full, a1, a)) return "algorithmic type " + show(a1) + " is not a subtype of " + show(a);
  Fresh fresh(1000);
  Env env9 = envTranslate9(g.env, fresh);
  TermP m = t7(configById("rec-sub-full-rank2"), g.derivation);
  TypeScheme tau;
  try {
    tau = infer(configById("rec-row1"), env9, m);
  } catch (const Error& e) {
    return std::string("erased term does not infer: ") + e.what() + "\n  term: " + show(m);
  }
  TypeScheme sigma = translA(a1, fresh);
  if (!weakSub(tau, sigma)) return "inferred " + show(tau) + " is not weakly below " + show(sigma) + "\n  term: " + show(m);
  return std::nullopt;
}

std::optional<std::string> checkSubstLemma(TranslationId id, const Generator::Pair& p) {
  const CalculusConfig& src = configById(p.open.config);
  TermP sub = substTerm(p.open.term, p.arg.term, p.x);
  Derivation ds;
  try {
    ds = typeCheck(src, p.arg.env, sub);
  } catch (const Error& e) {
    return std::string("substituted term is ill-typed: ") + e.what();
  }
  TermP lhs = translate(id, ds, p.arg.env).term;
  TermP m = translate(id, p.open.derivation, p.open.env).term;
  TermP n = translate(id, p.arg.derivation, p.arg.env).term;
  TermP rhs = substTerm(m, n, p.x);
  if (!alphaEq(lhs, rhs)) return "translation does not commute with substitution\n  [[M[N/x]]]    = " + show(lhs) + "\n  [[M]][[[N]]/x] = " + show(rhs);
  return std::nullopt;
}

const std::vector<std::string>& propertyIds() {
  static const std::vector<std::string> ids = {"generator",   "type-preservation", "simulation",        "reflection",        "erasure",
                                               "subst-lemma", "subject-reduction", "erasure-correspondence", "weak-preservation"};
  return ids;
}

std::string reportJson(const PropertyReport& r, int indent) {
  nlohmann::json j;
  j["property"] = r.property;
  j["subject"] = r.subject;
  j["seed"] = r.seed;
  j["depth"] = r.depth;
  j["cases"] = r.cases;
  j["pass"] = r.pass();
  j["elapsed_ms"] = r.elapsedMs;
  j["stats"] = r.stats;
  j["failures"] = nlohmann::json::array();
  for (auto& f : r.failures)
    j["failures"].push_back({{"seed", f.seed}, {"size", f.size}, {"term", f.term}, {"expected", f.expected}, {"got", f.got}});
  return j.dump(indent);
}

namespace {

bool hasUpcast(const TermP& m) {
  if (m->tag == Term::Tag::Upcast) return true;
  for (auto& c : children(m))
    if (hasUpcast(c)) return true;
  return false;
}

}  // namespace

PropertyReport verify(const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  PropertyReport rep;
  rep.property = opt.property;
  rep.seed = opt.seed;
  rep.depth = opt.depth;
  bool known = false;
  for (auto& p : propertyIds()) known = known || p == opt.property;
  if (!known) fail(ErrorKind::Unsupported, "unknown property " + opt.property);

  std::optional<TranslationId> id;
  std::string calculus = opt.calculus;
  if (!opt.translation.empty()) {
    auto& t = translationByName(opt.translation);
    id = t.id;
    if (calculus.empty()) calculus = t.from;
    infoFor(t.id, calculus);
  }
  if (calculus.empty()) {
    if (opt.property == "erasure-correspondence") calculus = "var-rec-sub-full";
    else if (opt.property == "weak-preservation") calculus = "rec-sub-full-rank2";
    else fail(ErrorKind::Unsupported, opt.property + " needs --translation or --calculus");
  }
  bool needsTranslation = opt.property == "type-preservation" || opt.property == "simulation" || opt.property == "reflection" ||
                          opt.property == "erasure" || opt.property == "subst-lemma";
  if (needsTranslation && !id) fail(ErrorKind::Unsupported, opt.property + " needs --translation");
  rep.subject = (id ? translationInfo(*id).name + " " : std::string()) + calculus;

  GenSpec spec;
  spec.config = calculus;
  spec.seed = opt.seed;
  spec.maxSize = opt.maxSize;
  Generator gen(spec);
  const CalculusConfig& c = configById(calculus);

  int upcastBig = 0, big = 0;
  for (int i = 0; i < opt.count; ++i) {
    std::optional<std::string> err;
    Failure f;
    try {
      if (opt.property == "subst-lemma") {
        auto p = gen.pairAt(i);
        f.seed = p.open.seed;
        f.size = termSize(p.open.term);
        f.term = show(p.open.term) + "  with  " + p.x + " := " + show(p.arg.term);
        err = checkSubstLemma(*id, p);
      } else {
        Generated g = gen.at(i);
        f.seed = g.seed;
        f.size = termSize(g.term);
        f.term = show(g.term);
        if (opt.property == "generator") {
          Generated again = gen.at(i);
          if (!alphaEq(g.term, again.term) || show(g.term) != show(again.term)) err = "generation is not deterministic";
          else if (!c.rank1() && !typeEqual(typeCheck(c, g.env, g.term).type, g.derivation.type)) err = "re-checking gives another type";
          if (f.size >= 8) {
            ++big;
            upcastBig += hasUpcast(g.term);
          }
        } else if (opt.property == "type-preservation") {
          err = checkTypePreservation(*id, g);
        } else if (opt.property == "simulation") {
          err = checkSimulation(*id, g, opt.depth);
        } else if (opt.property == "reflection") {
          err = checkReflection(*id, g, opt.depth);
        } else if (opt.property == "erasure") {
          err = checkErasureLaw(*id, g);
        } else if (opt.property == "subject-reduction") {
          err = checkSubjectReduction(c, g, opt.depth);
        } else if (opt.property == "erasure-correspondence") {
          err = checkErasureCorrespondence(g, opt.depth);
        } else if (opt.property == "weak-preservation") {
          err = checkWeakPreservation(g);
        }
      }
    } catch (const Error& e) {
      err = std::string(errorKindName(e.kind())) + ": " + e.what();
    }
    ++rep.cases;
    if (err) {
      f.got = *err;
      f.expected = opt.property + " holds";
      rep.failures.push_back(f);
    }
  }
  std::sort(rep.failures.begin(), rep.failures.end(), [](const Failure& a, const Failure& b) { return a.size < b.size; });
  if (opt.property == "generator" && big > 0) {
    rep.stats["terms_size_ge_8"] = big;
    rep.stats["upcast_rate_size_ge_8"] = double(upcastBig) / big;
  }
  rep.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace rowlab
