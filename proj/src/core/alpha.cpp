#include <algorithm>

#include "rowlab/syntax.hpp"

namespace rowlab {

namespace {

// Paired binder stacks; a variable pair matches when both resolve to the same binding depth.
struct Scope {
  std::vector<std::pair<Name, Name>> stack;

  bool same(const Name& a, const Name& b) const {
    int ia = -1, ib = -1;
    for (int i = int(stack.size()) - 1; i >= 0; --i) {
      if (ia < 0 && stack[i].first == a) ia = i;
      if (ib < 0 && stack[i].second == b) ib = i;
    }
    if (ia != ib) return false;
    return ia >= 0 || a == b;
  }
};

struct Eq {
  Scope tys, tms;

  bool pres(const Presence& p, const Presence& q) {
    if (p.tag != q.tag) return false;
    return !p.isVar() || tys.same(p.var, q.var);
  }

  bool row(const Row& r0, const Row& s0) {
    Row r = normalizeRow(r0), s = normalizeRow(s0);
    if (r.entries.size() != s.entries.size()) return false;
    if (r.tail.has_value() != s.tail.has_value()) return false;
    if (r.tail && !tys.same(*r.tail, *s.tail)) return false;
    for (size_t i = 0; i < r.entries.size(); ++i) {
      auto &e = r.entries[i], &f = s.entries[i];
      if (e.label != f.label || !pres(e.pre, f.pre) || !type(e.type, f.type)) return false;
    }
    return true;
  }

  bool type(const TypeP& a, const TypeP& b) {
    if (!a || !b) return !a && !b;
    if (a->tag != b->tag) return false;
    switch (a->tag) {
      case Type::Tag::Var: return tys.same(a->name, b->name);
      case Type::Tag::Arrow: return type(a->dom, b->dom) && type(a->cod, b->cod);
      case Type::Tag::Variant:
      case Type::Tag::Record: return row(a->row, b->row);
      case Type::Tag::ForallRow:
      case Type::Tag::ForallPres: {
        if (a->tag == Type::Tag::ForallRow && a->kind.lacks != b->kind.lacks) return false;
        tys.stack.push_back({a->name, b->name});
        bool ok = type(a->cod, b->cod);
        tys.stack.pop_back();
        return ok;
      }
      case Type::Tag::Base: return a->base == b->base;
    }
    return false;
  }

  // Fields whose annotation marks them absent are not observable.
  static std::vector<Field> visibleFields(const TermP& m) {
    std::vector<Field> out;
    for (auto& f : m->fields) {
      if (m->annot && m->annot->tag == Type::Tag::Record) {
        auto e = m->annot->row.find(f.label);
        if (e && e->pre.tag == Presence::Tag::Absent) continue;
      }
      out.push_back(f);
    }
    std::sort(out.begin(), out.end(), [](const Field& x, const Field& y) { return x.label < y.label; });
    return out;
  }

  bool bind(const Name& x, const Name& y, const TermP& m, const TermP& n) {
    tms.stack.push_back({x, y});
    bool ok = term(m, n);
    tms.stack.pop_back();
    return ok;
  }

  bool term(const TermP& m, const TermP& n) {
    if (m->tag != n->tag) return false;
    switch (m->tag) {
      case Term::Tag::Var: return tms.same(m->name, n->name);
      case Term::Tag::Lam: return type(m->annot, n->annot) && bind(m->name, n->name, m->a, n->a);
      case Term::Tag::App: return term(m->a, n->a) && term(m->b, n->b);
      case Term::Tag::Inject: return m->label == n->label && type(m->annot, n->annot) && term(m->a, n->a);
      case Term::Tag::Case: {
        if (m->branches.size() != n->branches.size() || !term(m->a, n->a)) return false;
        auto bm = m->branches, bn = n->branches;
        auto byLabel = [](const Branch& x, const Branch& y) { return x.label < y.label; };
        std::sort(bm.begin(), bm.end(), byLabel);
        std::sort(bn.begin(), bn.end(), byLabel);
        for (size_t i = 0; i < bm.size(); ++i)
          if (bm[i].label != bn[i].label || !bind(bm[i].var, bn[i].var, bm[i].body, bn[i].body)) return false;
        return true;
      }
      case Term::Tag::Record: {
        if (!type(m->annot, n->annot)) return false;
        auto fm = visibleFields(m), fn = visibleFields(n);
        if (fm.size() != fn.size()) return false;
        for (size_t i = 0; i < fm.size(); ++i)
          if (fm[i].label != fn[i].label || !term(fm[i].term, fn[i].term)) return false;
        return true;
      }
      case Term::Tag::Project: return m->label == n->label && term(m->a, n->a);
      case Term::Tag::Upcast: return type(m->annot, n->annot) && term(m->a, n->a);
      case Term::Tag::RowAbs:
      case Term::Tag::PresAbs: {
        if (m->tag == Term::Tag::RowAbs && m->kind.lacks != n->kind.lacks) return false;
        tys.stack.push_back({m->name, n->name});
        bool ok = term(m->a, n->a);
        tys.stack.pop_back();
        return ok;
      }
      case Term::Tag::RowApp: return m->origin == n->origin && row(m->row, n->row) && term(m->a, n->a);
      case Term::Tag::PresApp: return m->origin == n->origin && pres(m->pre, n->pre) && term(m->a, n->a);
      case Term::Tag::Let: return term(m->a, n->a) && bind(m->name, n->name, m->b, n->b);
      case Term::Tag::Lit: return m->lit == n->lit;
      case Term::Tag::Prim: return m->op == n->op && term(m->a, n->a) && term(m->b, n->b);
    }
    return false;
  }
};

}  // namespace

bool typeEqual(const TypeP& a, const TypeP& b) {
  Eq e;
  return e.type(a, b);
}

bool rowEqual(const Row& a, const Row& b) {
  Eq e;
  return e.row(a, b);
}

bool alphaEq(const TermP& m, const TermP& n) {
  Eq e;
  return e.term(m, n);
}

}  // namespace rowlab
