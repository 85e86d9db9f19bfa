#include "homomorphic.hpp"
#include "rowlab/translate.hpp"

namespace rowlab {

std::vector<Presence> presSeq(const Presence& p, const TypeP& a, const LabelOrder& order, Fresh& fresh) {
  switch (a->tag) {
    case Type::Tag::Arrow: return presSeq(p, a->cod, order, fresh);
    case Type::Tag::Record: {
      std::vector<Presence> heads, tails;
      for (auto& e : order.sorted(a->row)) {
        Presence pi = p.isVar() ? Presence::variable(fresh("p")) : p;
        heads.push_back(pi);
        auto inner = presSeq(pi, e.type, order, fresh);
        tails.insert(tails.end(), inner.begin(), inner.end());
      }
      heads.insert(heads.end(), tails.begin(), tails.end());
      return heads;
    }
    default: return {};
  }
}

namespace {

std::vector<Name> names(const std::vector<Presence>& ps) {
  std::vector<Name> out;
  for (auto& p : ps) out.push_back(p.var);
  return out;
}

TypeP quantify(const std::vector<Name>& vs, TypeP body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = forallPres(*it, body);
  return body;
}

TermP abstractAll(const std::vector<Name>& vs, TermP body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = presAbs(*it, body);
  return body;
}

TermP applyAll(TermP m, const std::vector<Presence>& ps, Origin o) {
  for (auto& p : ps) m = presApp(m, p, o);
  return m;
}

const Presence kVar = Presence::variable("p");

}  // namespace

std::pair<std::vector<Name>, std::vector<Presence>> presSeqSub(const SubtypeEvidence& ev, const LabelOrder& order, Fresh& fresh) {
  switch (ev.rule) {
    case SubtypeEvidence::Rule::Fun: return presSeqSub(ev.premises.back(), order, fresh);
    case SubtypeEvidence::Rule::Record: {
      std::map<Label, Name> theta;
      std::map<Label, std::pair<std::vector<Name>, std::vector<Presence>>> innerOf;
      std::vector<Name> heads, tailBinders;
      for (auto& e : order.sorted(ev.rhs->row)) {
        Name t = fresh("p");
        theta[e.label] = t;
        heads.push_back(t);
      }
      for (auto& e : order.sorted(ev.rhs->row)) {
        size_t k = 0;
        while (k < ev.labels.size() && ev.labels[k] != e.label) ++k;
        if (k == ev.labels.size()) fail(ErrorKind::Internal, "evidence lacks label " + e.label);
        auto inner = presSeqSub(ev.premises.at(k), order, fresh);
        tailBinders.insert(tailBinders.end(), inner.first.begin(), inner.first.end());
        innerOf[e.label] = inner;
      }
      std::vector<Presence> args, tailArgs;
      for (auto& e : order.sorted(ev.lhs->row)) {
        auto it = theta.find(e.label);
        if (it == theta.end()) {
          args.push_back(Presence::absent());
          auto ps = presSeq(Presence::absent(), e.type, order, fresh);
          tailArgs.insert(tailArgs.end(), ps.begin(), ps.end());
        } else {
          args.push_back(Presence::variable(it->second));
          auto& ps = innerOf[e.label].second;
          tailArgs.insert(tailArgs.end(), ps.begin(), ps.end());
        }
      }
      heads.insert(heads.end(), tailBinders.begin(), tailBinders.end());
      args.insert(args.end(), tailArgs.begin(), tailArgs.end());
      return {heads, args};
    }
    default: return {};
  }
}

TypeP t6Type(const TypeP& a, const LabelOrder& order, Fresh& fresh) {
  switch (a->tag) {
    case Type::Tag::Arrow: {
      auto ps = presSeq(kVar, a->cod, order, fresh);
      return quantify(names(ps), arrow(t6Type(a->dom, order, fresh), t6TypeInst(a->cod, ps, order, fresh)));
    }
    case Type::Tag::Record: {
      std::vector<Name> heads, tails;
      Row r;
      for (auto& e : order.sorted(a->row)) {
        Name t = fresh("p");
        heads.push_back(t);
        auto ps = presSeq(kVar, e.type, order, fresh);
        auto ns = names(ps);
        tails.insert(tails.end(), ns.begin(), ns.end());
        r.entries.push_back({e.label, Presence::variable(t), t6TypeInst(e.type, ps, order, fresh)});
      }
      heads.insert(heads.end(), tails.begin(), tails.end());
      return quantify(heads, record(r));
    }
    default: return a;
  }
}

TypeP t6TypeInst(const TypeP& a, const std::vector<Presence>& ps, const LabelOrder& order, Fresh& fresh) {
  TypeP t = t6Type(a, order, fresh);
  TySubst s;
  for (auto& p : ps) {
    if (t->tag != Type::Tag::ForallPres) fail(ErrorKind::Internal, "presence prefix shorter than instantiation");
    s[t->name] = p;
    t = t->cod;
  }
  return applyType(t, s);
}

TermP t6(const Derivation& d, const LabelOrder& order, Fresh& fresh) {
  auto rec = [&](const Derivation& p) { return t6(p, order, fresh); };
  auto ty = [&](const TypeP& a) { return t6Type(a, order, fresh); };
  const TermP& m = d.term;
  switch (m->tag) {
    case Term::Tag::Lam: {
      auto ps = presSeq(kVar, d.type->cod, order, fresh);
      TermP body = applyAll(rec(d.premises.at(0)), ps, Origin::Source);
      return abstractAll(names(ps), lam(m->name, ty(m->annot), body));
    }
    case Term::Tag::App: {
      auto ps = presSeq(kVar, d.premises.at(0).type->cod, order, fresh);
      TermP f = applyAll(rec(d.premises.at(0)), ps, Origin::Source);
      return abstractAll(names(ps), app(f, rec(d.premises.at(1))));
    }
    case Term::Tag::Record: {
      std::vector<Name> heads, tails;
      std::vector<Field> fs;
      Row r;
      std::map<Label, size_t> idx;
      for (size_t i = 0; i < m->fields.size(); ++i) idx[m->fields[i].label] = i;
      for (auto& e : order.sorted(d.type->row)) {
        size_t i = idx.at(e.label);
        Name t = fresh("p");
        heads.push_back(t);
        auto ps = presSeq(kVar, e.type, order, fresh);
        auto ns = names(ps);
        tails.insert(tails.end(), ns.begin(), ns.end());
        fs.push_back({e.label, applyAll(rec(d.premises.at(i)), ps, Origin::Source)});
        r.entries.push_back({e.label, Presence::variable(t), t6TypeInst(e.type, ps, order, fresh)});
      }
      heads.insert(heads.end(), tails.begin(), tails.end());
      return abstractAll(heads, recordIntro(fs, record(r)));
    }
    case Term::Tag::Project: {
      const Derivation& inner = d.premises.at(0);
      auto es = order.sorted(inner.type->row);
      std::vector<Presence> heads, tails;
      std::vector<Presence> own;
      for (auto& e : es) {
        bool here = e.label == m->label;
        heads.push_back(here ? Presence::present() : Presence::absent());
        if (here) {
          own = presSeq(kVar, e.type, order, fresh);
          tails.insert(tails.end(), own.begin(), own.end());
        } else {
          auto ps = presSeq(Presence::absent(), e.type, order, fresh);
          tails.insert(tails.end(), ps.begin(), ps.end());
        }
      }
      heads.insert(heads.end(), tails.begin(), tails.end());
      TermP t = applyAll(rec(inner), heads, Origin::Source);
      return abstractAll(names(own), project(t, m->label));
    }
    case Term::Tag::Upcast: {
      auto [binders, args] = presSeqSub(*d.evidence, order, fresh);
      return abstractAll(binders, applyAll(rec(d.premises.at(0)), args, Origin::Upcast));
    }
    default: return detail::homomorphic(d, rec, ty);
  }
}

}  // namespace rowlab
