#include <algorithm>

#include "rowlab/syntax.hpp"

namespace rowlab {

static void ftvInto(const TypeP& a, NameSet& bound, NameSet& out);

static void ftvRowInto(const Row& r, NameSet& bound, NameSet& out) {
  for (auto& e : r.entries) {
    if (e.pre.isVar() && !bound.count(e.pre.var)) out.insert(e.pre.var);
    ftvInto(e.type, bound, out);
  }
  if (r.tail && !bound.count(*r.tail)) out.insert(*r.tail);
}

static void ftvInto(const TypeP& a, NameSet& bound, NameSet& out) {
  if (!a) return;
  switch (a->tag) {
    case Type::Tag::Var:
      if (!bound.count(a->name)) out.insert(a->name);
      break;
    case Type::Tag::Arrow:
      ftvInto(a->dom, bound, out);
      ftvInto(a->cod, bound, out);
      break;
    case Type::Tag::Variant:
    case Type::Tag::Record: ftvRowInto(a->row, bound, out); break;
    case Type::Tag::ForallRow:
    case Type::Tag::ForallPres: {
      bool had = bound.count(a->name);
      bound.insert(a->name);
      ftvInto(a->cod, bound, out);
      if (!had) bound.erase(a->name);
      break;
    }
    case Type::Tag::Base: break;
  }
}

NameSet ftv(const TypeP& a) {
  NameSet b, o;
  ftvInto(a, b, o);
  return o;
}

NameSet ftv(const Row& r) {
  NameSet b, o;
  ftvRowInto(r, b, o);
  return o;
}

NameSet ftv(const Presence& p) {
  if (p.isVar()) return {p.var};
  return {};
}

NameSet ftv(const TyArg& x) {
  return std::visit([](auto& v) { return ftv(v); }, x);
}

static void ftvTermInto(const TermP& m, NameSet& bound, NameSet& out) {
  if (m->annot) ftvInto(m->annot, bound, out);
  if (m->tag == Term::Tag::RowApp) ftvRowInto(m->row, bound, out);
  if (m->tag == Term::Tag::PresApp && m->pre.isVar() && !bound.count(m->pre.var)) out.insert(m->pre.var);
  if (m->tag == Term::Tag::RowAbs || m->tag == Term::Tag::PresAbs) {
    bool had = bound.count(m->name);
    bound.insert(m->name);
    ftvTermInto(m->a, bound, out);
    if (!had) bound.erase(m->name);
    return;
  }
  for (auto& c : children(m)) ftvTermInto(c, bound, out);
}

NameSet ftvTerm(const TermP& m) {
  NameSet b, o;
  ftvTermInto(m, b, o);
  return o;
}

static void fvInto(const TermP& m, NameSet& bound, NameSet& out) {
  auto under = [&](const Name& x, const TermP& body) {
    bool had = bound.count(x);
    bound.insert(x);
    fvInto(body, bound, out);
    if (!had) bound.erase(x);
  };
  switch (m->tag) {
    case Term::Tag::Var:
      if (!bound.count(m->name)) out.insert(m->name);
      return;
    case Term::Tag::Lam: under(m->name, m->a); return;
    case Term::Tag::Let:
      fvInto(m->a, bound, out);
      under(m->name, m->b);
      return;
    case Term::Tag::Case:
      fvInto(m->a, bound, out);
      for (auto& b : m->branches) under(b.var, b.body);
      return;
    default:
      for (auto& c : children(m)) fvInto(c, bound, out);
  }
}

NameSet fvTerm(const TermP& m) {
  NameSet b, o;
  fvInto(m, b, o);
  return o;
}

// ---- type substitution ----

Presence applyPres(const Presence& p, const TySubst& s) {
  if (!p.isVar()) return p;
  auto it = s.find(p.var);
  if (it == s.end()) return p;
  if (auto q = std::get_if<Presence>(&it->second)) return *q;
  return p;
}

Row applyRow(const Row& r, const TySubst& s) {
  Row out;
  for (auto& e : r.entries) out.entries.push_back({e.label, applyPres(e.pre, s), applyType(e.type, s)});
  if (r.tail) {
    auto it = s.find(*r.tail);
    if (it != s.end()) {
      if (auto rr = std::get_if<Row>(&it->second)) {
        for (auto& e : rr->entries) out.entries.push_back(e);
        out.tail = rr->tail;
        return out;
      }
    }
    out.tail = r.tail;
  }
  return out;
}

static TySubst without(const TySubst& s, const Name& n) {
  if (!s.count(n)) return s;
  TySubst c = s;
  c.erase(n);
  return c;
}

// Shared binder handling: returns the binder name to use and the substitution for the body.
static std::pair<Name, TySubst> underBinder(const Name& binder, bool isRow, const TySubst& s, const NameSet& bodyFtv) {
  TySubst inner = without(s, binder);
  NameSet relevant;
  for (auto& [k, v] : inner)
    if (bodyFtv.count(k)) {
      auto f = ftv(v);
      relevant.insert(f.begin(), f.end());
    }
  if (!relevant.count(binder)) return {binder, inner};
  NameSet used = relevant;
  used.insert(bodyFtv.begin(), bodyFtv.end());
  for (auto& [k, v] : inner) used.insert(k);
  Name nb = freshAvoiding(binder, used);
  if (isRow)
    inner[binder] = Row{{}, nb};
  else
    inner[binder] = Presence::variable(nb);
  return {nb, inner};
}

TypeP applyType(const TypeP& a, const TySubst& s) {
  if (!a || s.empty()) return a;
  switch (a->tag) {
    case Type::Tag::Var: {
      auto it = s.find(a->name);
      if (it == s.end()) return a;
      if (auto t = std::get_if<TypeP>(&it->second)) return *t;
      return a;
    }
    case Type::Tag::Arrow: return arrow(applyType(a->dom, s), applyType(a->cod, s));
    case Type::Tag::Variant: return variant(applyRow(a->row, s));
    case Type::Tag::Record: return record(applyRow(a->row, s));
    case Type::Tag::ForallRow:
    case Type::Tag::ForallPres: {
      bool isRow = a->tag == Type::Tag::ForallRow;
      auto [nb, inner] = underBinder(a->name, isRow, s, ftv(a->cod));
      auto body = applyType(a->cod, inner);
      return isRow ? forallRow(nb, a->kind, body) : forallPres(nb, body);
    }
    case Type::Tag::Base: return a;
  }
  return a;
}

TypeP substTypeInType(const TypeP& a, const TyArg& arg, const Name& v) { return applyType(a, TySubst{{v, arg}}); }

TermP substTypeInTerm(const TermP& m, const TySubst& s) {
  if (s.empty()) return m;
  auto t = std::make_shared<Term>(*m);
  if (t->annot) t->annot = applyType(t->annot, s);
  switch (m->tag) {
    case Term::Tag::RowApp:
      t->row = applyRow(m->row, s);
      t->a = substTypeInTerm(m->a, s);
      return t;
    case Term::Tag::PresApp:
      t->pre = applyPres(m->pre, s);
      t->a = substTypeInTerm(m->a, s);
      return t;
    case Term::Tag::RowAbs:
    case Term::Tag::PresAbs: {
      bool isRow = m->tag == Term::Tag::RowAbs;
      auto [nb, inner] = underBinder(m->name, isRow, s, ftvTerm(m->a));
      t->name = nb;
      t->a = substTypeInTerm(m->a, inner);
      return t;
    }
    default: break;
  }
  if (t->a) t->a = substTypeInTerm(m->a, s);
  if (t->b) t->b = substTypeInTerm(m->b, s);
  for (auto& b : t->branches) b.body = substTypeInTerm(b.body, s);
  for (auto& f : t->fields) f.term = substTypeInTerm(f.term, s);
  return t;
}

TermP substTypeInTerm(const TermP& m, const Name& v, const TyArg& arg) { return substTypeInTerm(m, TySubst{{v, arg}}); }

// ---- term substitution ----

namespace {
struct TermSubst {
  TermP n;
  Name x;
  NameSet fvN, ftvN;

  // Renames a term binder if it would capture a free variable of n.
  std::pair<Name, TermP> binder(const Name& y, const TermP& body) {
    if (!fvN.count(y)) return {y, body};
    NameSet used = fvN;
    auto fb = fvTerm(body);
    used.insert(fb.begin(), fb.end());
    used.insert(x);
    Name y2 = freshAvoiding(y, used);
    return {y2, substTerm(body, var(y2), y)};
  }

  TermP go(const TermP& m) {
    switch (m->tag) {
      case Term::Tag::Var: return m->name == x ? n : m;
      case Term::Tag::Lit: return m;
      case Term::Tag::Lam: {
        if (m->name == x) return m;
        if (!fvTerm(m->a).count(x)) return m;
        auto [y, body] = binder(m->name, m->a);
        return lam(y, m->annot, go(body));
      }
      case Term::Tag::Let: {
        auto bound = go(m->a);
        if (m->name == x) return let(m->name, bound, m->b);
        auto [y, body] = binder(m->name, m->b);
        return let(y, bound, go(body));
      }
      case Term::Tag::Case: {
        auto t = std::make_shared<Term>(*m);
        t->a = go(m->a);
        for (auto& b : t->branches) {
          if (b.var == x) continue;
          auto [y, body] = binder(b.var, b.body);
          b.var = y;
          b.body = go(body);
        }
        return t;
      }
      case Term::Tag::RowAbs:
      case Term::Tag::PresAbs: {
        auto t = std::make_shared<Term>(*m);
        if (ftvN.count(m->name)) {
          NameSet used = ftvN;
          auto fb = ftvTerm(m->a);
          used.insert(fb.begin(), fb.end());
          Name nb = freshAvoiding(m->name, used);
          TyArg arg = m->tag == Term::Tag::RowAbs ? TyArg(Row{{}, nb}) : TyArg(Presence::variable(nb));
          t->name = nb;
          t->a = go(substTypeInTerm(m->a, m->name, arg));
        } else {
          t->a = go(m->a);
        }
        return t;
      }
      default: {
        auto t = std::make_shared<Term>(*m);
        if (t->a) t->a = go(m->a);
        if (t->b) t->b = go(m->b);
        for (auto& f : t->fields) f.term = go(f.term);
        return t;
      }
    }
  }
};
}  // namespace

TermP substTerm(const TermP& m, const TermP& n, const Name& x) {
  TermSubst s{n, x, fvTerm(n), ftvTerm(n)};
  return s.go(m);
}

// ---- rows ----

Row normalizeRow(const Row& r, bool presenceAware) {
  Row out;
  out.tail = r.tail;
  for (auto& e : r.entries) {
    if (presenceAware && e.pre.tag == Presence::Tag::Absent) continue;
    out.entries.push_back(e);
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const RowEntry& a, const RowEntry& b) { return a.label < b.label; });
  LabelSet seen;
  for (auto& e : r.entries)
    if (!seen.insert(e.label).second) fail(ErrorKind::Malformed, "duplicate label " + e.label + " in row");
  return out;
}

Row rowDifference(const Row& r, const Row& sub) {
  Row out;
  for (auto& e : r.entries) {
    auto o = sub.find(e.label);
    if (o && typeEqual(o->type, e.type) && o->pre == e.pre) continue;
    out.entries.push_back(e);
  }
  return out;
}

Row rowRestrict(const Row& r, const LabelSet& l) {
  Row out;
  for (auto& lab : l)
    if (!r.find(lab)) fail(ErrorKind::Malformed, "label " + lab + " not in row");
  for (auto& e : r.entries)
    if (l.count(e.label)) out.entries.push_back(e);
  return out;
}

Row rowConcat(const Row& r, const Row& s) {
  Row out = r;
  for (auto& e : s.entries) out.entries.push_back(e);
  out.tail = s.tail;
  return out;
}

}  // namespace rowlab
