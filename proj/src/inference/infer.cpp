#include <algorithm>
#include <functional>

#include "rowlab/infer.hpp"

namespace rowlab {

std::string show(const TypeScheme& s) {
  std::string out;
  for (auto& [n, k] : s.vars) out += "forall " + n + ":" + show(k) + ". ";
  return out + show(s.body);
}

TypeScheme schemeOf(const TypeP& a) {
  TypeScheme s;
  TypeP t = a;
  while (t->tag == Type::Tag::ForallRow || t->tag == Type::Tag::ForallPres) {
    s.vars.push_back({t->name, t->tag == Type::Tag::ForallRow ? t->kind : Kind::pre()});
    t = t->cod;
  }
  s.body = t;
  return s;
}

namespace {

void occurrenceOrder(const TypeP& a, std::vector<Name>& out);

void occurrenceOrderRow(const Row& r, std::vector<Name>& out) {
  for (auto& e : r.entries) {
    if (e.pre.isVar()) out.push_back(e.pre.var);
    occurrenceOrder(e.type, out);
  }
  if (r.tail) out.push_back(*r.tail);
}

void occurrenceOrder(const TypeP& a, std::vector<Name>& out) {
  switch (a->tag) {
    case Type::Tag::Var: out.push_back(a->name); return;
    case Type::Tag::Arrow:
      occurrenceOrder(a->dom, out);
      occurrenceOrder(a->cod, out);
      return;
    case Type::Tag::Variant:
    case Type::Tag::Record: occurrenceOrderRow(normalizeRow(a->row, false), out); return;
    case Type::Tag::ForallRow:
    case Type::Tag::ForallPres: occurrenceOrder(a->cod, out); return;
    default: return;
  }
}

}  // namespace

TypeScheme canonicalize(const TypeScheme& s) {
  std::vector<Name> order;
  occurrenceOrder(s.body, order);
  std::map<Name, Kind> kinds(s.vars.begin(), s.vars.end());
  std::vector<std::pair<Name, Kind>> sorted;
  NameSet seen;
  for (auto& n : order)
    if (kinds.count(n) && seen.insert(n).second) sorted.push_back({n, kinds[n]});
  for (auto& v : s.vars)
    if (seen.insert(v.first).second) sorted.push_back(v);
  // Free variables keep their names, so canonical names skip them.
  NameSet avoid = ftv(s.body);
  for (auto& v : s.vars) avoid.erase(v.first);
  int na = 0, nr = 0, np = 0;
  auto next = [&](const char* prefix, int& i) {
    Name nn;
    do nn = prefix + std::to_string(i++);
    while (avoid.count(nn));
    return nn;
  };
  TySubst ren;
  TypeScheme out;
  for (auto& [n, k] : sorted) {
    Name nn;
    switch (k.tag) {
      case Kind::Tag::Type: nn = next("a", na); ren[n] = tvar(nn); break;
      case Kind::Tag::Row: nn = next("r", nr); ren[n] = Row{{}, nn}; break;
      case Kind::Tag::Pre: nn = next("p", np); ren[n] = Presence::variable(nn); break;
    }
    out.vars.push_back({nn, k});
  }
  out.body = applyType(s.body, ren);
  return out;
}

namespace {

struct Binding {
  Name name;
  TypeScheme scheme;
  bool letBound;
};

void labelsOf(const TypeP& a, LabelSet& out) {
  switch (a->tag) {
    case Type::Tag::Arrow:
      labelsOf(a->dom, out);
      labelsOf(a->cod, out);
      break;
    case Type::Tag::Variant:
    case Type::Tag::Record:
      for (auto& e : a->row.entries) {
        out.insert(e.label);
        labelsOf(e.type, out);
      }
      break;
    case Type::Tag::ForallRow:
    case Type::Tag::ForallPres: labelsOf(a->cod, out); break;
    default: break;
  }
}

void labelsOf(const TermP& m, LabelSet& out) {
  if (!m->label.empty()) out.insert(m->label);
  if (m->annot) labelsOf(m->annot, out);
  for (auto& f : m->fields) out.insert(f.label);
  for (auto& b : m->branches) out.insert(b.label);
  for (auto& c : children(m)) labelsOf(c, out);
}

struct Inferer {
  const CalculusConfig& c;
  Unifier u;
  std::vector<Binding> env;
  // Labels of the program. Closed presence-polymorphic variant rows range over all of them.
  LabelSet universe;

  explicit Inferer(const CalculusConfig& cfg) : c(cfg), u(cfg.presPoly == Poly::Rank1) {}

  TypeP instantiate(const TypeScheme& s) {
    TySubst sub;
    for (auto& [n, k] : s.vars) {
      switch (k.tag) {
        case Kind::Tag::Type: sub[n] = tvar(u.freshType()); break;
        case Kind::Tag::Row: sub[n] = Row{{}, u.freshRow(k.lacks)}; break;
        case Kind::Tag::Pre: sub[n] = Presence::variable(u.freshPre()); break;
      }
    }
    return applyType(s.body, sub);
  }

  NameSet envFtv() const {
    NameSet out;
    for (auto& b : env) {
      auto f = ftv(u.zonk(b.scheme.body));
      for (auto& [n, k] : b.scheme.vars) f.erase(n);
      out.insert(f.begin(), f.end());
    }
    return out;
  }

  TypeScheme generalize(const TypeP& t) {
    TypeP z = u.zonk(t);
    NameSet fixed = envFtv();
    std::vector<Name> order;
    occurrenceOrder(z, order);
    TypeScheme s;
    NameSet seen;
    for (auto& n : order) {
      if (!u.isFlex(n) || u.isBound(n) || fixed.count(n) || !seen.insert(n).second) continue;
      s.vars.push_back({n, *u.flexKind(n)});
    }
    s.body = z;
    return s;
  }

  std::shared_ptr<const Env> snapshot() const {
    auto e = std::make_shared<Env>();
    for (auto& b : env) e->gamma.push_back({b.name, b.scheme.body, b.letBound});
    return e;
  }

  Derivation node(std::string rule, const TermP& m, TypeP t, std::vector<Derivation> ps = {}) {
    Derivation d;
    d.rule = std::move(rule);
    d.env = snapshot();
    d.term = m;
    d.type = std::move(t);
    d.premises = std::move(ps);
    return d;
  }

  [[noreturn]] void unsupported(const TermP& m) {
    fail(ErrorKind::Unsupported, "term form not in " + c.id + ": " + show(m));
  }

  Derivation go(const TermP& m) {
    switch (m->tag) {
      case Term::Tag::Var: {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->name == m->name) return node(it->scheme.vars.empty() ? "Var" : "Var+Inst", m, instantiate(it->scheme));
        fail(ErrorKind::Type, "unbound variable " + m->name);
      }
      case Term::Tag::Lam: {
        TypeP a = m->annot ? m->annot : tvar(u.freshType());
        env.push_back({m->name, {{}, a}, false});
        auto body = go(m->a);
        env.pop_back();
        return node("Lam", m, arrow(a, body.type), {body});
      }
      case Term::Tag::App: {
        auto f = go(m->a);
        auto x = go(m->b);
        TypeP r = tvar(u.freshType());
        u.unify(f.type, arrow(x.type, r));
        return node("App", m, r, {f, x});
      }
      case Term::Tag::Let: {
        auto b = go(m->a);
        auto s = generalize(b.type);
        env.push_back({m->name, s, true});
        auto body = go(m->b);
        env.pop_back();
        return node("Let", m, body.type, {b, body});
      }
      case Term::Tag::Inject: {
        if (!c.variants) unsupported(m);
        auto p = go(m->a);
        Row r;
        if (c.presPoly == Poly::Rank1) {
          r.entries.push_back({m->label, Presence::present(), p.type});
          for (auto& l : universe)
            if (l != m->label) r.entries.push_back({l, Presence::variable(u.freshPre()), tvar(u.freshType())});
        } else {
          r.entries.push_back({m->label, Presence::present(), p.type});
          r.tail = u.freshRow({m->label});
        }
        return node("Inject", m, variant(r), {p});
      }
      case Term::Tag::Case: {
        if (!c.variants) unsupported(m);
        auto s = go(m->a);
        Row r;
        std::vector<TypeP> payloads;
        for (auto& b : m->branches) {
          TypeP a = tvar(u.freshType());
          payloads.push_back(a);
          Presence p = c.presPoly == Poly::Rank1 ? Presence::variable(u.freshPre()) : Presence::present();
          if (r.find(b.label)) fail(ErrorKind::Type, "duplicate branch " + b.label);
          r.entries.push_back({b.label, p, a});
        }
        u.unify(s.type, variant(r));
        TypeP result = tvar(u.freshType());
        std::vector<Derivation> ps{s};
        for (size_t i = 0; i < m->branches.size(); ++i) {
          env.push_back({m->branches[i].var, {{}, payloads[i]}, false});
          auto d = go(m->branches[i].body);
          env.pop_back();
          u.unify(result, d.type);
          ps.push_back(d);
        }
        return node("Case", m, result, ps);
      }
      case Term::Tag::Record: {
        if (!c.records) unsupported(m);
        Row r;
        std::vector<Derivation> ps;
        for (auto& f : m->fields) {
          auto d = go(f.term);
          if (r.find(f.label)) fail(ErrorKind::Type, "duplicate field " + f.label);
          Presence p = c.presPoly == Poly::Rank1 ? Presence::variable(u.freshPre()) : Presence::present();
          r.entries.push_back({f.label, p, d.type});
          ps.push_back(d);
        }
        return node("Record", m, record(r), ps);
      }
      case Term::Tag::Project: {
        if (!c.records) unsupported(m);
        auto d = go(m->a);
        TypeP a = tvar(u.freshType());
        Row r;
        r.entries.push_back({m->label, Presence::present(), a});
        if (c.presPoly != Poly::Rank1) r.tail = u.freshRow({m->label});
        u.unify(d.type, record(r));
        return node("Project", m, a, {d});
      }
      case Term::Tag::Lit:
        if (!c.builtins) unsupported(m);
        return node("Lit", m, baseType(m->lit.isInt ? BaseType::Int : BaseType::String));
      case Term::Tag::Prim: {
        if (!c.builtins) unsupported(m);
        auto l = go(m->a);
        auto r = go(m->b);
        auto t = baseType(m->op == PrimOp::Concat ? BaseType::String : BaseType::Int);
        u.unify(l.type, t);
        u.unify(r.type, t);
        return node("Prim", m, t, {l, r});
      }
      default: unsupported(m);
    }
  }

  void zonkDerivation(Derivation& d) {
    d.type = u.zonk(d.type);
    if (d.env) {
      auto e = std::make_shared<Env>(*d.env);
      for (auto& g : e->gamma) g.type = u.zonk(g.type);
      d.env = e;
    }
    for (auto& p : d.premises) zonkDerivation(p);
  }
};

}  // namespace

InferResult inferFull(const CalculusConfig& c, const Env& env, const TermP& m, const LabelSet& labels) {
  if (!c.rank1()) fail(ErrorKind::Unsupported, "inference is only defined for the rank-1 calculi, not " + c.id);
  Inferer inf(c);
  for (auto& [n, k] : env.delta) inf.u.setRigidKind(n, k);
  for (auto& g : env.gamma) inf.env.push_back({g.name, schemeOf(g.type), g.letBound});
  if (c.variants && c.presPoly == Poly::Rank1) {
    inf.universe = labels;
    labelsOf(m, inf.universe);
    for (auto& g : env.gamma) labelsOf(g.type, inf.universe);
  }
  auto d = inf.go(m);
  InferResult r;
  r.type = inf.u.zonk(d.type);
  r.scheme = canonicalize(inf.generalize(d.type));
  inf.zonkDerivation(d);
  r.derivation = d;
  r.substitution = inf.u.bindings();
  return r;
}

TypeScheme infer(const CalculusConfig& c, const Env& env, const TermP& m, const LabelSet& labels) {
  return inferFull(c, env, m, labels).scheme;
}

Derivation inferDerivation(const CalculusConfig& c, const Env& env, const TermP& m) { return inferFull(c, env, m).derivation; }

LabelSet termLabels(const TermP& m) {
  LabelSet out;
  labelsOf(m, out);
  return out;
}

bool schemeInstanceOf(const TypeScheme& general, const TypeScheme& specific) {
  Unifier u(true);
  TySubst sk, fl;
  for (auto& [n, k] : specific.vars) {
    Name s = u.fresh("s");
    u.setRigidKind(s, k);
    if (k.tag == Kind::Tag::Type)
      sk[n] = tvar(s);
    else if (k.tag == Kind::Tag::Row)
      sk[n] = Row{{}, s};
    else
      sk[n] = Presence::variable(s);
  }
  for (auto& [n, k] : general.vars) {
    if (k.tag == Kind::Tag::Type)
      fl[n] = tvar(u.freshType());
    else if (k.tag == Kind::Tag::Row)
      fl[n] = Row{{}, u.freshRow(k.lacks)};
    else
      fl[n] = Presence::variable(u.freshPre());
  }
  try {
    u.unify(applyType(general.body, fl), applyType(specific.body, sk));
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool schemeEquivalent(const TypeScheme& a, const TypeScheme& b) { return schemeInstanceOf(a, b) && schemeInstanceOf(b, a); }

}  // namespace rowlab
