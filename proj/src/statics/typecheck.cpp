#include "json.hpp"

#include "rowlab/infer.hpp"
#include "rowlab/statics.hpp"

namespace rowlab {

namespace {

using EnvP = std::shared_ptr<const Env>;

EnvP withVar(const EnvP& e, const Name& x, TypeP a, bool letBound = false) {
  auto n = std::make_shared<Env>(*e);
  n->gamma.push_back({x, std::move(a), letBound});
  return n;
}

EnvP withTyVar(const EnvP& e, const Name& v, Kind k) {
  auto n = std::make_shared<Env>(*e);
  n->delta.push_back({v, std::move(k)});
  return n;
}

bool freeInGamma(const Env& e, const Name& v) {
  for (auto& g : e.gamma)
    if (ftv(g.type).count(v)) return true;
  return false;
}

struct Checker {
  const CalculusConfig& c;

  [[noreturn]] void err(const TermP& m, const std::string& msg) { fail(ErrorKind::Type, msg + " in " + show(m)); }

  void wellFormed(const EnvP& env, const TypeP& a) {
    checkTypeFeatures(c, a);
    kindCheck(*env, a);
  }

  Derivation node(std::string rule, const EnvP& env, const TermP& m, TypeP t, std::vector<Derivation> ps = {}) {
    Derivation d;
    d.rule = std::move(rule);
    d.env = env;
    d.term = m;
    d.type = std::move(t);
    d.premises = std::move(ps);
    return d;
  }

  void expectEqual(const TermP& m, const TypeP& want, const TypeP& got) {
    if (!typeEqual(want, got)) err(m, "type mismatch: expected " + show(want) + " but found " + show(got));
  }

  Derivation go(const EnvP& env, const TermP& m) {
    switch (m->tag) {
      case Term::Tag::Var: {
        auto g = env->lookup(m->name);
        if (!g) fail(ErrorKind::Type, "unbound variable " + m->name);
        return node("Var", env, m, g->type);
      }
      case Term::Tag::Lam: {
        if (!m->annot) err(m, "unannotated lambda in an explicitly typed calculus");
        wellFormed(env, m->annot);
        auto body = go(withVar(env, m->name, m->annot), m->a);
        auto t = arrow(m->annot, body.type);
        return node("Lam", env, m, t, {body});
      }
      case Term::Tag::App: {
        auto f = go(env, m->a);
        auto x = go(env, m->b);
        if (f.type->tag != Type::Tag::Arrow) err(m, "applying a term of non-function type " + show(f.type));
        expectEqual(m, f.type->dom, x.type);
        auto t = f.type->cod;
        return node("App", env, m, t, {f, x});
      }
      case Term::Tag::Inject: {
        if (!c.variants) err(m, "injection outside a variant calculus");
        if (!m->annot || m->annot->tag != Type::Tag::Variant) err(m, "injection needs a variant annotation");
        wellFormed(env, m->annot);
        auto e = m->annot->row.find(m->label);
        if (!e) err(m, "label " + m->label + " is not in the annotation");
        if (e->pre.tag != Presence::Tag::Present) err(m, "injected label " + m->label + " must be present");
        auto p = go(env, m->a);
        expectEqual(m, e->type, p.type);
        return node("Inject", env, m, m->annot, {p});
      }
      case Term::Tag::Case: {
        if (!c.variants) err(m, "case outside a variant calculus");
        auto s = go(env, m->a);
        if (s.type->tag != Type::Tag::Variant) err(m, "case on non-variant type " + show(s.type));
        const Row& r = s.type->row;
        if (r.tail) err(m, "case needs a closed variant row, found " + show(s.type));
        if (m->branches.empty()) err(m, "case with no branches has no determined type");
        LabelSet covered;
        std::vector<Derivation> ps{s};
        TypeP result;
        for (auto& b : m->branches) {
          auto e = r.find(b.label);
          if (!e) err(m, "branch for label " + b.label + " not in " + show(s.type));
          if (!covered.insert(b.label).second) err(m, "duplicate branch " + b.label);
          auto d = go(withVar(env, b.var, e->type), b.body);
          if (!result)
            result = d.type;
          else
            expectEqual(m, result, d.type);
          ps.push_back(d);
        }
        for (auto& e : r.entries)
          if (!covered.count(e.label) && e.pre.tag != Presence::Tag::Absent) err(m, "missing branch for label " + e.label);
        return node("Case", env, m, result, ps);
      }
      case Term::Tag::Record: {
        if (!c.records) err(m, "record outside a record calculus");
        std::vector<Derivation> ps;
        Row r;
        LabelSet seen;
        for (auto& f : m->fields) {
          if (!seen.insert(f.label).second) err(m, "duplicate field " + f.label);
          auto d = go(env, f.term);
          r.entries.push_back({f.label, Presence::present(), d.type});
          ps.push_back(d);
        }
        TypeP t = record(r);
        if (c.presence() && !m->annot) err(m, "record needs a presence annotation in " + c.id);
        if (m->annot) {
          if (m->annot->tag != Type::Tag::Record || m->annot->row.tail) err(m, "record annotation must be a closed record type");
          wellFormed(env, m->annot);
          if (m->annot->row.labels() != seen) err(m, "record annotation labels differ from the fields");
          for (auto& f : r.entries) expectEqual(m, m->annot->row.find(f.label)->type, f.type);
          t = m->annot;
        }
        return node("Record", env, m, t, ps);
      }
      case Term::Tag::Project: {
        if (!c.records) err(m, "projection outside a record calculus");
        auto d = go(env, m->a);
        if (d.type->tag != Type::Tag::Record) err(m, "projection from non-record type " + show(d.type));
        auto e = d.type->row.find(m->label);
        if (!e) err(m, "label " + m->label + " is not in " + show(d.type));
        if (e->pre.tag != Presence::Tag::Present) err(m, "projected label " + m->label + " must be present");
        return node("Project", env, m, e->type, {d});
      }
      case Term::Tag::Upcast: {
        if (c.sub == SubMode::None) err(m, "upcast outside a subtyping calculus");
        wellFormed(env, m->annot);
        auto d = go(env, m->a);
        auto ev = subtype(c.sub, d.type, m->annot);
        if (!ev)
          fail(ErrorKind::Subtype, std::string("no ") + subModeName(c.sub) + " subtyping " + show(d.type) + " <= " + show(m->annot) +
                                       " in " + show(m));
        auto n = node("Upcast", env, m, m->annot, {d});
        n.evidence = ev;
        return n;
      }
      case Term::Tag::RowAbs:
      case Term::Tag::PresAbs: {
        bool isRow = m->tag == Term::Tag::RowAbs;
        if ((isRow ? c.rowPoly : c.presPoly) != Poly::Higher) err(m, "type abstraction outside a higher-rank calculus");
        Name v = m->name;
        TermP body = m->a;
        if (env->kindOf(v)) {
          NameSet used = ftvTerm(body);
          for (auto& [n, k] : env->delta) used.insert(n);
          v = freshAvoiding(v, used);
          body = substTypeInTerm(body, m->name, isRow ? TyArg(Row{{}, v}) : TyArg(Presence::variable(v)));
        }
        if (freeInGamma(*env, v)) err(m, "abstracted variable " + v + " is free in the context");
        auto d = go(withTyVar(env, v, isRow ? m->kind : Kind::pre()), body);
        auto t = isRow ? forallRow(v, m->kind, d.type) : forallPres(v, d.type);
        return node(isRow ? "RowLam" : "PreLam", env, m, t, {d});
      }
      case Term::Tag::RowApp: {
        if (c.rowPoly != Poly::Higher) err(m, "row application outside a row calculus");
        auto d = go(env, m->a);
        if (d.type->tag != Type::Tag::ForallRow) err(m, "row application to non-row-polymorphic type " + show(d.type));
        for (auto& e : m->row.entries) checkTypeFeatures(c, e.type);
        kindCheckRow(*env, m->row, d.type->kind.lacks);
        auto t = substTypeInType(d.type->cod, m->row, d.type->name);
        return node("RowApp", env, m, t, {d});
      }
      case Term::Tag::PresApp: {
        if (c.presPoly != Poly::Higher) err(m, "presence application outside a presence calculus");
        auto d = go(env, m->a);
        if (d.type->tag != Type::Tag::ForallPres) err(m, "presence application to non-presence-polymorphic type " + show(d.type));
        if (m->pre.isVar()) {
          auto k = env->kindOf(m->pre.var);
          if (!k || k->tag != Kind::Tag::Pre) fail(ErrorKind::Kind, "presence variable " + m->pre.var + " not in scope");
        }
        auto t = substTypeInType(d.type->cod, m->pre, d.type->name);
        return node("PreApp", env, m, t, {d});
      }
      case Term::Tag::Let: {
        if (!c.allowLet()) err(m, "let outside a calculus with let");
        auto b = go(env, m->a);
        auto body = go(withVar(env, m->name, b.type, true), m->b);
        return node("Let", env, m, body.type, {b, body});
      }
      case Term::Tag::Lit: {
        if (!c.builtins) err(m, "literal with builtins disabled");
        return node("Lit", env, m, baseType(m->lit.isInt ? BaseType::Int : BaseType::String));
      }
      case Term::Tag::Prim: {
        if (!c.builtins) err(m, "primitive with builtins disabled");
        auto l = go(env, m->a);
        auto r = go(env, m->b);
        auto t = baseType(m->op == PrimOp::Concat ? BaseType::String : BaseType::Int);
        expectEqual(m, t, l.type);
        expectEqual(m, t, r.type);
        return node("Prim", env, m, t, {l, r});
      }
    }
    fail(ErrorKind::Internal, "unhandled term");
  }
};

}  // namespace

Derivation typeCheck(const CalculusConfig& c, const Env& env, const TermP& m) {
  if (c.rank1()) return inferDerivation(c, env, m);
  auto e = std::make_shared<const Env>(env);
  for (auto& g : env.gamma) {
    checkTypeFeatures(c, g.type);
    kindCheck(env, g.type);
  }
  Checker ch{c};
  auto d = ch.go(e, m);
  if ((c.recordRankLimit || c.variantRankLimit) && !checkRankLimit(c, d))
    fail(ErrorKind::Rank, "term exceeds the rank limit of " + c.id);
  return d;
}

TypeP typeOf(const CalculusConfig& c, const Env& env, const TermP& m) { return typeCheck(c, env, m).type; }

bool recrank(int n, const TypeP& a) {
  switch (a->tag) {
    case Type::Tag::Arrow: return (n == 0 ? recrank(0, a->dom) : recrank(n - 1, a->dom)) && recrank(n, a->cod);
    case Type::Tag::Record:
      if (n == 0) return false;
      [[fallthrough]];
    case Type::Tag::Variant:
      for (auto& e : a->row.entries)
        if (!recrank(n, e.type)) return false;
      return true;
    case Type::Tag::ForallRow:
    case Type::Tag::ForallPres: return recrank(n, a->cod);
    default: return true;
  }
}

bool varrank(int n, const TypeP& a) {
  switch (a->tag) {
    case Type::Tag::Arrow: return (n == 0 ? varrank(0, a->dom) : varrank(n - 1, a->dom)) && varrank(n, a->cod);
    case Type::Tag::Variant:
      if (n == 0) return false;
      [[fallthrough]];
    case Type::Tag::Record:
      for (auto& e : a->row.entries)
        if (!varrank(n, e.type)) return false;
      return true;
    case Type::Tag::ForallRow:
    case Type::Tag::ForallPres: return varrank(n, a->cod);
    default: return true;
  }
}

bool checkRankLimit(const CalculusConfig& c, const TypeP& a) {
  if (c.recordRankLimit && !recrank(*c.recordRankLimit, a)) return false;
  if (c.variantRankLimit && !varrank(*c.variantRankLimit, a)) return false;
  return true;
}

bool checkRankLimit(const CalculusConfig& c, const Derivation& d) {
  if (!checkRankLimit(c, d.type)) return false;
  if (d.term->annot && !checkRankLimit(c, d.term->annot)) return false;
  for (auto& p : d.premises)
    if (!checkRankLimit(c, p)) return false;
  return true;
}

std::string judgment(const Derivation& d) {
  std::string s;
  if (d.env) {
    for (auto& [n, k] : d.env->delta) s += (s.empty() ? "" : ", ") + n + ":" + show(k);
    for (auto& g : d.env->gamma) s += (s.empty() ? "" : ", ") + g.name + ":" + show(g.type);
  }
  return s + " |- " + show(d.term) + " : " + show(d.type);
}

namespace {

nlohmann::json evidenceJson(const SubtypeEvidence& e) {
  nlohmann::json j;
  j["rule"] = ruleName(e.rule);
  j["mode"] = subModeName(e.mode);
  j["judgment"] = show(e.lhs) + " <= " + show(e.rhs);
  j["premises"] = nlohmann::json::array();
  for (auto& p : e.premises) j["premises"].push_back(evidenceJson(p));
  return j;
}

nlohmann::json toJson(const Derivation& d) {
  nlohmann::json j;
  j["rule"] = d.rule;
  j["judgment"] = judgment(d);
  j["term"] = show(d.term);
  j["type"] = show(d.type);
  j["premises"] = nlohmann::json::array();
  for (auto& p : d.premises) j["premises"].push_back(toJson(p));
  if (d.evidence) j["evidence"] = evidenceJson(*d.evidence);
  return j;
}

}  // namespace

std::string derivationJson(const Derivation& d, int indent) { return toJson(d).dump(indent); }

}  // namespace rowlab
