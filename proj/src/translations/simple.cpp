#include <functional>

#include "homomorphic.hpp"
#include "rowlab/dynamics.hpp"
#include "rowlab/translate.hpp"

namespace rowlab {

const std::vector<TranslationInfo>& translations() {
  static const std::vector<TranslationInfo> ts = {
      {TranslationId::T1, "T1", "var-sub", "var", true},
      {TranslationId::T2, "T2", "var-sub", "var-row", true},
      {TranslationId::T3, "T3", "rec-sub", "rec", true},
      {TranslationId::T4, "T4", "rec-sub", "rec-pre", true},
      {TranslationId::T5, "T5", "var-rec-sub-full", "var-rec", true},
      {TranslationId::T5, "T5", "var-sub-full", "var", true},
      {TranslationId::T5, "T5", "rec-sub-full", "rec", true},
      {TranslationId::T6, "T6", "rec-sub-co", "rec-pre", true},
      {TranslationId::T7RecRow, "T7-rec-row", "rec-sub-full-rank2", "rec-row1", false},
      {TranslationId::T7RecPre, "T7-rec-pre", "rec-sub-full-rank1", "rec-pre1", false},
      {TranslationId::T7VarRow, "T7-var-row", "var-sub-full-rank1", "var-row1", false},
      {TranslationId::T7VarPre, "T7-var-pre", "var-sub-full-rank2", "var-pre1", false},
  };
  return ts;
}

const TranslationInfo& translationInfo(TranslationId id) {
  for (auto& t : translations())
    if (t.id == id) return t;
  fail(ErrorKind::Internal, "unknown translation");
}

const TranslationInfo& findTranslation(const std::string& from, const std::string& to) {
  configById(from);
  configById(to);
  for (auto& t : translations())
    if (t.from == from && t.to == to) return t;
  std::string known;
  for (auto& t : translations()) known += "\n  " + t.from + " -> " + t.to + " (" + t.name + ")";
  fail(ErrorKind::Unsupported, "no translation from " + from + " to " + to + "; supported pairs:" + known);
}

const TranslationInfo& translationByName(const std::string& name) {
  for (auto& t : translations())
    if (t.name == name) return t;
  fail(ErrorKind::Unsupported, "unknown translation " + name);
}

namespace {

TypeP same(const TypeP& a) { return a; }

Row mapRow(const Row& r, const std::function<TypeP(const TypeP&)>& f) {
  Row o = r;
  for (auto& e : o.entries) e.type = f(e.type);
  return o;
}

}  // namespace

// ---- variants into plain variants: upcasts become case-and-reinject ----

TermP t1(const Derivation& d, Fresh& fresh) {
  auto rec = [&](const Derivation& p) { return t1(p, fresh); };
  if (d.term->tag != Term::Tag::Upcast) return detail::homomorphic(d, rec, same);
  const Derivation& inner = d.premises.at(0);
  TermP m = rec(inner);
  std::vector<Branch> bs;
  for (auto& e : inner.type->row.entries) {
    Name x = fresh("x");
    bs.push_back({e.label, x, inject(e.label, var(x), d.term->annot)});
  }
  return caseOf(m, bs);
}

// ---- variants into row polymorphism ----

TypeP t2Type(const TypeP& a, Fresh& fresh) {
  switch (a->tag) {
    case Type::Tag::Arrow: return arrow(t2Type(a->dom, fresh), t2Type(a->cod, fresh));
    case Type::Tag::Variant: {
      Row r = mapRow(a->row, [&](const TypeP& t) { return t2Type(t, fresh); });
      Name rho = fresh("r");
      LabelSet dom = a->row.labels();
      r.tail = rho;
      return forallRow(rho, Kind::row(dom), variant(r));
    }
    default: return a;
  }
}

TermP t2(const Derivation& d, Fresh& fresh) {
  auto rec = [&](const Derivation& p) { return t2(p, fresh); };
  auto ty = [&](const TypeP& a) { return t2Type(a, fresh); };
  const TermP& m = d.term;
  switch (m->tag) {
    case Term::Tag::Inject: {
      TermP payload = rec(d.premises.at(0));
      Row r = mapRow(m->annot->row, ty);
      Name rho = fresh("r");
      r.tail = rho;
      return rowAbs(rho, Kind::row(m->annot->row.labels()), inject(m->label, payload, variant(r)));
    }
    case Term::Tag::Case: {
      TermP s = rowApp(rec(d.premises.at(0)), Row{}, Origin::Source);
      std::vector<Branch> bs;
      for (size_t i = 0; i < m->branches.size(); ++i) bs.push_back({m->branches[i].label, m->branches[i].var, rec(d.premises.at(i + 1))});
      return caseOf(s, bs);
    }
    case Term::Tag::Upcast: {
      const Derivation& inner = d.premises.at(0);
      TermP body = rec(inner);
      const Row& from = inner.type->row;
      const Row& to = m->annot->row;
      Row extra = mapRow(rowDifference(to, from), ty);
      Name rho = fresh("r");
      extra.tail = rho;
      return rowAbs(rho, Kind::row(to.labels()), rowApp(body, extra, Origin::Upcast));
    }
    default: return detail::homomorphic(d, rec, ty);
  }
}

// ---- records into plain records: upcasts rebuild the record ----

TermP t3(const Derivation& d) {
  auto rec = [&](const Derivation& p) { return t3(p); };
  if (d.term->tag != Term::Tag::Upcast) return detail::homomorphic(d, rec, same);
  TermP m = rec(d.premises.at(0));
  std::vector<Field> fs;
  for (auto& e : d.term->annot->row.entries) fs.push_back({e.label, project(m, e.label)});
  return recordIntro(fs);
}

// ---- records into presence polymorphism ----

TypeP t4Type(const TypeP& a, const LabelOrder& order, Fresh& fresh) {
  switch (a->tag) {
    case Type::Tag::Arrow: return arrow(t4Type(a->dom, order, fresh), t4Type(a->cod, order, fresh));
    case Type::Tag::Record: {
      Row r;
      std::vector<Name> ps;
      for (auto& e : order.sorted(a->row)) {
        Name p = fresh("p");
        ps.push_back(p);
        r.entries.push_back({e.label, Presence::variable(p), t4Type(e.type, order, fresh)});
      }
      TypeP t = record(r);
      for (auto it = ps.rbegin(); it != ps.rend(); ++it) t = forallPres(*it, t);
      return t;
    }
    default: return a;
  }
}

TermP t4(const Derivation& d, const LabelOrder& order, Fresh& fresh) {
  auto rec = [&](const Derivation& p) { return t4(p, order, fresh); };
  auto ty = [&](const TypeP& a) { return t4Type(a, order, fresh); };
  const TermP& m = d.term;
  switch (m->tag) {
    case Term::Tag::Record: {
      std::vector<Field> fs;
      for (size_t i = 0; i < m->fields.size(); ++i) fs.push_back({m->fields[i].label, rec(d.premises.at(i))});
      Row r;
      std::vector<Name> ps;
      for (auto& e : order.sorted(d.type->row)) {
        Name p = fresh("p");
        ps.push_back(p);
        r.entries.push_back({e.label, Presence::variable(p), ty(e.type)});
      }
      TermP t = recordIntro(fs, record(r));
      for (auto it = ps.rbegin(); it != ps.rend(); ++it) t = presAbs(*it, t);
      return t;
    }
    case Term::Tag::Project: {
      const Derivation& inner = d.premises.at(0);
      TermP t = rec(inner);
      for (auto& e : order.sorted(inner.type->row))
        t = presApp(t, e.label == m->label ? Presence::present() : Presence::absent(), Origin::Source);
      return project(t, m->label);
    }
    case Term::Tag::Upcast: {
      const Derivation& inner = d.premises.at(0);
      TermP t = rec(inner);
      std::map<Label, Name> kept;
      std::vector<Name> binders;
      for (auto& e : order.sorted(m->annot->row)) {
        Name p = fresh("p");
        kept[e.label] = p;
        binders.push_back(p);
      }
      for (auto& e : order.sorted(inner.type->row)) {
        auto it = kept.find(e.label);
        t = presApp(t, it == kept.end() ? Presence::absent() : Presence::variable(it->second), Origin::Upcast);
      }
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) t = presAbs(*it, t);
      return t;
    }
    default: return detail::homomorphic(d, rec, ty);
  }
}

// ---- coercions ----

TermP coerce(const SubtypeEvidence& ev, Fresh& fresh) {
  switch (ev.rule) {
    case SubtypeEvidence::Rule::Var:
    case SubtypeEvidence::Rule::Base: {
      Name x = fresh("x");
      return lam(x, ev.lhs, var(x));
    }
    case SubtypeEvidence::Rule::Fun: {
      Name f = fresh("f"), x = fresh("x");
      TermP arg = var(x);
      if (ev.premises.size() == 2) arg = app(coerce(ev.premises[0], fresh), arg);
      TermP body = app(coerce(ev.premises.back(), fresh), app(var(f), arg));
      return lam(f, ev.lhs, lam(x, ev.rhs->dom, body));
    }
    case SubtypeEvidence::Rule::Variant: {
      Name x = fresh("x");
      std::vector<Branch> bs;
      for (size_t i = 0; i < ev.labels.size(); ++i) {
        Name y = fresh("y");
        TermP payload = ev.premises.empty() ? var(y) : app(coerce(ev.premises[i], fresh), var(y));
        bs.push_back({ev.labels[i], y, inject(ev.labels[i], payload, ev.rhs)});
      }
      return lam(x, ev.lhs, caseOf(var(x), bs));
    }
    case SubtypeEvidence::Rule::Record: {
      Name x = fresh("x");
      std::vector<Field> fs;
      for (size_t i = 0; i < ev.labels.size(); ++i) {
        TermP proj = project(var(x), ev.labels[i]);
        fs.push_back({ev.labels[i], ev.premises.empty() ? proj : app(coerce(ev.premises[i], fresh), proj)});
      }
      return lam(x, ev.lhs, recordIntro(fs));
    }
  }
  fail(ErrorKind::Internal, "unknown subtyping rule");
}

TermP t5(const Derivation& d, Fresh& fresh, bool normalizeCoercions) {
  auto rec = [&](const Derivation& p) { return t5(p, fresh, normalizeCoercions); };
  if (d.term->tag != Term::Tag::Upcast) return detail::homomorphic(d, rec, same);
  if (!d.evidence) fail(ErrorKind::Internal, "upcast without evidence");
  TermP c = coerce(*d.evidence, fresh);
  if (normalizeCoercions) c = normalize(c, RelationSet::betaOnly());
  return app(c, rec(d.premises.at(0)));
}

// ---- dispatcher ----

TranslationResult translate(TranslationId id, const Derivation& d, const Env& env, const TranslateOptions& opt) {
  TranslationResult r;
  Fresh fresh;
  auto mapEnv = [&](const std::function<TypeP(const TypeP&)>& f) {
    Env e = env;
    for (auto& g : e.gamma) g.type = f(g.type);
    return e;
  };
  switch (id) {
    case TranslationId::T1:
      r.term = t1(d, fresh);
      r.env = env;
      r.type = d.type;
      break;
    case TranslationId::T2:
      r.term = t2(d, fresh);
      r.env = mapEnv([&](const TypeP& a) { return t2Type(a, fresh); });
      r.type = t2Type(d.type, fresh);
      break;
    case TranslationId::T3:
      r.term = t3(d);
      r.env = env;
      r.type = d.type;
      break;
    case TranslationId::T4:
      r.term = t4(d, opt.order, fresh);
      r.env = mapEnv([&](const TypeP& a) { return t4Type(a, opt.order, fresh); });
      r.type = t4Type(d.type, opt.order, fresh);
      break;
    case TranslationId::T5:
      r.term = t5(d, fresh, opt.normalize);
      r.env = env;
      r.type = d.type;
      break;
    case TranslationId::T6:
      r.term = t6(d, opt.order, fresh);
      r.env = mapEnv([&](const TypeP& a) { return t6Type(a, opt.order, fresh); });
      r.type = t6Type(d.type, opt.order, fresh);
      break;
    case TranslationId::T7RecRow:
    case TranslationId::T7RecPre:
    case TranslationId::T7VarRow:
    case TranslationId::T7VarPre: {
      auto& info = translationInfo(id);
      r.term = t7(configById(info.from), d);
      if (id == TranslationId::T7RecRow) {
        r.env = envTranslate9(env, fresh);
        r.scheme = translA(d.type, fresh);
      } else {
        r.env = env;
      }
      break;
    }
  }
  return r;
}

}  // namespace rowlab
