#pragma once

#include "rowlab/statics.hpp"

namespace rowlab::detail {

// Rebuilds a derivation's term from translated premises, mapping annotations through `ty`.
template <class Rec, class TyF>
TermP homomorphic(const Derivation& d, Rec&& rec, TyF&& ty) {
  const TermP& m = d.term;
  auto p = [&](size_t i) { return rec(d.premises.at(i)); };
  auto t = [&](const TypeP& a) { return a ? ty(a) : a; };
  switch (m->tag) {
    case Term::Tag::Var:
    case Term::Tag::Lit: return m;
    case Term::Tag::Lam: return lam(m->name, t(m->annot), p(0));
    case Term::Tag::App: return app(p(0), p(1));
    case Term::Tag::Inject: return inject(m->label, p(0), t(m->annot));
    case Term::Tag::Case: {
      auto scrut = p(0);
      std::vector<Branch> bs;
      for (size_t i = 0; i < m->branches.size(); ++i) bs.push_back({m->branches[i].label, m->branches[i].var, p(i + 1)});
      return caseOf(scrut, bs);
    }
    case Term::Tag::Record: {
      std::vector<Field> fs;
      for (size_t i = 0; i < m->fields.size(); ++i) fs.push_back({m->fields[i].label, p(i)});
      return recordIntro(fs, t(m->annot));
    }
    case Term::Tag::Project: return project(p(0), m->label);
    case Term::Tag::Upcast: return upcast(p(0), t(m->annot));
    case Term::Tag::Let: return let(m->name, p(0), p(1));
    case Term::Tag::Prim: return prim(m->op, p(0), p(1));
    default: fail(ErrorKind::Unsupported, "no translation for " + show(m));
  }
}

}  // namespace rowlab::detail
