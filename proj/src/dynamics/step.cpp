#include <algorithm>

#include "rowlab/dynamics.hpp"

namespace rowlab {

RelationSet RelationSet::forConfig(const CalculusConfig& c) {
  RelationSet r;
  if (c.sub == SubMode::Simple) {
    r.upcast = true;
    r.nested = true;
  } else if (c.sub != SubMode::None) {
    r.upcastFull = true;
  }
  if (c.rowPoly == Poly::Higher || c.presPoly == Poly::Higher) r.tau = r.nu = true;
  return r;
}

std::string showPath(const Path& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

namespace {

TermP withChild(const TermP& m, int i, const TermP& c) {
  auto t = std::make_shared<Term>(*m);
  switch (m->tag) {
    case Term::Tag::App:
    case Term::Tag::Let:
    case Term::Tag::Prim:
      (i == 0 ? t->a : t->b) = c;
      break;
    case Term::Tag::Case:
      if (i == 0)
        t->a = c;
      else
        t->branches[i - 1].body = c;
      break;
    case Term::Tag::Record: t->fields[i].term = c; break;
    default: t->a = c;
  }
  return t;
}

bool isTypeAtom(const TypeP& a) { return a->tag == Type::Tag::Var || a->tag == Type::Tag::Base; }

void rootSteps(const TermP& m, const RelationSet& rels, std::vector<Step>& out) {
  auto add = [&](TermP r, const char* rule) { out.push_back({std::move(r), rule, {}}); };
  switch (m->tag) {
    case Term::Tag::App:
      if (rels.beta && m->a->tag == Term::Tag::Lam) add(substTerm(m->a->a, m->b, m->a->name), "beta-lam");
      break;
    case Term::Tag::Case:
      if (rels.beta && m->a->tag == Term::Tag::Inject) {
        for (auto& b : m->branches)
          if (b.label == m->a->label) add(substTerm(b.body, m->a->a, b.var), "beta-case");
      }
      break;
    case Term::Tag::Project:
      if (rels.beta && m->a->tag == Term::Tag::Record) {
        for (auto& f : m->a->fields)
          if (f.label == m->label) add(f.term, "beta-project");
      }
      break;
    case Term::Tag::Let:
      if (rels.beta) add(substTerm(m->b, m->a, m->name), "beta-let");
      break;
    case Term::Tag::Prim:
      if (rels.beta && m->a->tag == Term::Tag::Lit && m->b->tag == Term::Tag::Lit) {
        auto &l = m->a->lit, &r = m->b->lit;
        if (m->op == PrimOp::Concat && !l.isInt && !r.isInt) add(strLit(l.s + r.s), "delta");
        if (m->op == PrimOp::Add && l.isInt && r.isInt) add(intLit(l.i + r.i), "delta");
        if (m->op == PrimOp::Sub && l.isInt && r.isInt) add(intLit(l.i - r.i), "delta");
      }
      break;
    case Term::Tag::Upcast: {
      const TermP& in = m->a;
      const TypeP& b = m->annot;
      if (rels.nested && in->tag == Term::Tag::Upcast) add(upcast(in->a, b), "nested");
      if (rels.upcast) {
        if (in->tag == Term::Tag::Inject && b->tag == Type::Tag::Variant) add(inject(in->label, in->a, b), "upcast-variant");
        if (in->tag == Term::Tag::Record && b->tag == Type::Tag::Record) {
          std::vector<Field> fs;
          bool ok = true;
          for (auto& e : b->row.entries) {
            auto it = std::find_if(in->fields.begin(), in->fields.end(), [&](const Field& f) { return f.label == e.label; });
            if (it == in->fields.end()) {
              ok = false;
              break;
            }
            fs.push_back(*it);
          }
          if (ok) add(recordIntro(fs, in->annot ? b : nullptr), "upcast-record");
        }
      }
      if (rels.upcastFull) {
        if (isTypeAtom(b)) add(in, "upcast-var");
        if (in->tag == Term::Tag::Lam && b->tag == Type::Tag::Arrow && in->annot) {
          const Name& x = in->name;
          TermP body = substTerm(in->a, upcast(var(x), in->annot), x);
          add(lam(x, b->dom, upcast(body, b->cod)), "upcast-lam");
        }
        if (in->tag == Term::Tag::Inject && b->tag == Type::Tag::Variant) {
          if (auto e = b->row.find(in->label)) add(inject(in->label, upcast(in->a, e->type), b), "upcast-variant");
        }
        if (in->tag == Term::Tag::Record && b->tag == Type::Tag::Record) {
          std::vector<Field> fs;
          bool ok = true;
          for (auto& e : b->row.entries) {
            auto it = std::find_if(in->fields.begin(), in->fields.end(), [&](const Field& f) { return f.label == e.label; });
            if (it == in->fields.end()) {
              ok = false;
              break;
            }
            fs.push_back({e.label, upcast(it->term, e.type)});
          }
          if (ok) add(recordIntro(fs), "upcast-record");
        }
      }
      break;
    }
    case Term::Tag::RowApp:
      if (m->a->tag == Term::Tag::RowAbs && (m->origin == Origin::Source ? rels.tau : rels.nu))
        add(substTypeInTerm(m->a->a, m->a->name, m->row), m->origin == Origin::Source ? "tau" : "nu");
      break;
    case Term::Tag::PresApp:
      if (m->a->tag == Term::Tag::PresAbs && (m->origin == Origin::Source ? rels.tau : rels.nu))
        add(substTypeInTerm(m->a->a, m->a->name, m->pre), m->origin == Origin::Source ? "tau" : "nu");
      break;
    default: break;
  }
}

void collect(const TermP& m, const RelationSet& rels, Path& path, std::vector<Step>& out) {
  size_t before = out.size();
  rootSteps(m, rels, out);
  for (size_t i = before; i < out.size(); ++i) out[i].position = path;
  auto cs = children(m);
  for (int i = 0; i < int(cs.size()); ++i) {
    std::vector<Step> sub;
    path.push_back(i);
    collect(cs[i], rels, path, sub);
    path.pop_back();
    for (auto& s : sub) out.push_back({withChild(m, i, s.result), s.rule, s.position});
  }
}

}  // namespace

std::vector<Step> stepAll(const TermP& m, const RelationSet& rels) {
  std::vector<Step> out;
  Path p;
  collect(m, rels, p, out);
  return out;
}

TermP normalize(const TermP& m, const RelationSet& rels, int fuel, std::vector<Step>* trace) {
  TermP cur = m;
  for (int i = 0; i < fuel; ++i) {
    auto steps = stepAll(cur, rels);
    if (steps.empty()) return cur;
    if (trace) trace->push_back(steps[0]);
    cur = steps[0].result;
  }
  if (stepAll(cur, rels).empty()) return cur;
  fail(ErrorKind::Fuel, "no normal form within " + std::to_string(fuel) + " steps");
}

TermP erase(const TermP& m) {
  switch (m->tag) {
    case Term::Tag::Upcast:
    case Term::Tag::RowAbs:
    case Term::Tag::PresAbs:
    case Term::Tag::RowApp:
    case Term::Tag::PresApp: return erase(m->a);
    default: break;
  }
  auto t = std::make_shared<Term>(*m);
  t->annot = nullptr;
  if (t->a) t->a = erase(m->a);
  if (t->b) t->b = erase(m->b);
  for (auto& b : t->branches) b.body = erase(b.body);
  for (auto& f : t->fields) f.term = erase(f.term);
  return t;
}

namespace {

struct Pre {
  std::vector<std::pair<Name, Name>> scope;

  bool same(const Name& a, const Name& b) const {
    int ia = -1, ib = -1;
    for (int i = int(scope.size()) - 1; i >= 0; --i) {
      if (ia < 0 && scope[i].first == a) ia = i;
      if (ib < 0 && scope[i].second == b) ib = i;
    }
    return ia == ib && (ia >= 0 || a == b);
  }

  bool bind(const Name& x, const Name& y, const TermP& m, const TermP& n) {
    scope.push_back({x, y});
    bool ok = go(m, n);
    scope.pop_back();
    return ok;
  }

  bool go(const TermP& m, const TermP& n) {
    if (m->tag != n->tag) return false;
    switch (m->tag) {
      case Term::Tag::Var: return same(m->name, n->name);
      case Term::Tag::Lam: return bind(m->name, n->name, m->a, n->a);
      case Term::Tag::App:
      case Term::Tag::Prim: return m->op == n->op && go(m->a, n->a) && go(m->b, n->b);
      case Term::Tag::Let: return go(m->a, n->a) && bind(m->name, n->name, m->b, n->b);
      case Term::Tag::Inject: return m->label == n->label && go(m->a, n->a);
      case Term::Tag::Project: return m->label == n->label && go(m->a, n->a);
      case Term::Tag::Lit: return m->lit == n->lit;
      case Term::Tag::Case: {
        if (m->branches.size() != n->branches.size() || !go(m->a, n->a)) return false;
        for (auto& b : m->branches) {
          auto it = std::find_if(n->branches.begin(), n->branches.end(), [&](const Branch& c) { return c.label == b.label; });
          if (it == n->branches.end() || !bind(b.var, it->var, b.body, it->body)) return false;
        }
        return true;
      }
      case Term::Tag::Record:
        for (auto& f : n->fields) {
          auto it = std::find_if(m->fields.begin(), m->fields.end(), [&](const Field& g) { return g.label == f.label; });
          if (it == m->fields.end() || !go(it->term, f.term)) return false;
        }
        return true;
      default: return false;
    }
  }
};

}  // namespace

bool termPreorder(const TermP& m, const TermP& n) {
  Pre p;
  return p.go(m, n);
}

bool isValue(const TermP& m) {
  switch (m->tag) {
    case Term::Tag::Lam:
    case Term::Tag::Lit:
    case Term::Tag::RowAbs:
    case Term::Tag::PresAbs: return true;
    case Term::Tag::Inject: return isValue(m->a);
    case Term::Tag::Record:
      return std::all_of(m->fields.begin(), m->fields.end(), [](const Field& f) { return isValue(f.term); });
    default: return false;
  }
}

}  // namespace rowlab
