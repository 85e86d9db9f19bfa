#include <algorithm>

#include "rowlab/statics.hpp"

namespace rowlab {

namespace {

struct Alg {
  std::vector<GammaEntry> local;
  const Env& env;

  TypeP lookup(const Name& x) const {
    for (auto it = local.rbegin(); it != local.rend(); ++it)
      if (it->name == x) return it->type;
    if (auto g = env.lookup(x)) return g->type;
    fail(ErrorKind::Type, "unbound variable " + x);
  }

  TypeP under(const Name& x, const TypeP& a, const TermP& body) {
    local.push_back({x, a, false});
    TypeP t = go(body);
    local.pop_back();
    return t;
  }

  TypeP go(const TermP& m) {
    switch (m->tag) {
      case Term::Tag::Var: return lookup(m->name);
      case Term::Tag::Lam:
        if (!m->annot) fail(ErrorKind::Type, "unannotated lambda");
        return arrow(m->annot, under(m->name, m->annot, m->a));
      case Term::Tag::App: {
        TypeP f = go(m->a), x = go(m->b);
        if (f->tag != Type::Tag::Arrow) fail(ErrorKind::Type, "applying a non-function of type " + show(f));
        if (!isSubtype(SubMode::Full, x, f->dom))
          fail(ErrorKind::Subtype, show(x) + " is not a subtype of " + show(f->dom));
        return f->cod;
      }
      case Term::Tag::Inject: {
        if (!m->annot || m->annot->tag != Type::Tag::Variant) fail(ErrorKind::Type, "injection needs a variant annotation");
        auto e = m->annot->row.find(m->label);
        if (!e) fail(ErrorKind::Type, "label " + m->label + " not in " + show(m->annot));
        TypeP x = go(m->a);
        if (!isSubtype(SubMode::Full, x, e->type)) fail(ErrorKind::Subtype, show(x) + " is not a subtype of " + show(e->type));
        return m->annot;
      }
      case Term::Tag::Case: {
        TypeP s = go(m->a);
        if (s->tag != Type::Tag::Variant || !s->row.closed()) fail(ErrorKind::Type, "case on " + show(s));
        TypeP out;
        for (auto& e : s->row.entries)
          if (std::none_of(m->branches.begin(), m->branches.end(), [&](const Branch& b) { return b.label == e.label; }))
            fail(ErrorKind::Type, "no branch for " + e.label);
        for (auto& b : m->branches) {
          auto e = s->row.find(b.label);
          if (!e) continue;  // unreachable branch under a smaller scrutinee type
          TypeP t = under(b.var, e->type, b.body);
          out = out ? joinFull(out, t) : t;
          if (!out) fail(ErrorKind::Subtype, "branches have no common supertype");
        }
        if (!out) fail(ErrorKind::Type, "empty case");
        return out;
      }
      case Term::Tag::Record: {
        Row r;
        for (auto& f : m->fields) r.entries.push_back({f.label, Presence::present(), go(f.term)});
        normalizeRow(r);
        return record(r);
      }
      case Term::Tag::Project: {
        TypeP t = go(m->a);
        if (t->tag != Type::Tag::Record) fail(ErrorKind::Type, "projecting from " + show(t));
        auto e = t->row.find(m->label);
        if (!e) fail(ErrorKind::Type, "label " + m->label + " not in " + show(t));
        return e->type;
      }
      case Term::Tag::Upcast: return go(m->a);
      case Term::Tag::Let: return under(m->name, go(m->a), m->b);
      case Term::Tag::Lit: return baseType(m->lit.isInt ? BaseType::Int : BaseType::String);
      case Term::Tag::Prim: {
        BaseType want = m->op == PrimOp::Concat ? BaseType::String : BaseType::Int;
        for (auto& s : {m->a, m->b}) {
          TypeP t = go(s);
          if (t->tag != Type::Tag::Base || t->base != want) fail(ErrorKind::Type, "bad operand type " + show(t));
        }
        return baseType(want);
      }
      default: fail(ErrorKind::Unsupported, "no algorithmic rule for " + show(m));
    }
  }
};

}  // namespace

TypeP algType(const Env& env, const TermP& m) {
  Alg a{{}, env};
  return a.go(m);
}

}  // namespace rowlab
