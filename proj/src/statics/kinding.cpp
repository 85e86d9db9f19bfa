#include "rowlab/statics.hpp"

namespace rowlab {

namespace {

struct Kinder {
  const Env& env;
  std::vector<std::pair<Name, Kind>> local;

  const Kind* lookup(const Name& n) const {
    for (auto it = local.rbegin(); it != local.rend(); ++it)
      if (it->first == n) return &it->second;
    return env.kindOf(n);
  }

  void pres(const Presence& p) {
    if (!p.isVar()) return;
    auto k = lookup(p.var);
    if (!k || k->tag != Kind::Tag::Pre) fail(ErrorKind::Kind, "presence variable " + p.var + " is not in scope with kind Pre");
  }

  void row(const Row& r, const LabelSet& lacks) {
    LabelSet seen;
    for (auto& e : r.entries) {
      if (lacks.count(e.label)) fail(ErrorKind::Kind, "label " + e.label + " is excluded by the row kind");
      if (!seen.insert(e.label).second) fail(ErrorKind::Kind, "duplicate label " + e.label);
      pres(e.pre);
      type(e.type);
    }
    if (r.tail) {
      LabelSet want = lacks;
      want.insert(seen.begin(), seen.end());
      auto k = lookup(*r.tail);
      if (!k || k->tag != Kind::Tag::Row) fail(ErrorKind::Kind, "row variable " + *r.tail + " is not in scope with a row kind");
      if (k->lacks != want)
        fail(ErrorKind::Kind, "row variable " + *r.tail + " has kind " + show(*k) + " but the row needs " + show(Kind::row(want)));
    }
  }

  void type(const TypeP& a) {
    switch (a->tag) {
      case Type::Tag::Var: {
        auto k = lookup(a->name);
        if (!k || k->tag != Kind::Tag::Type) fail(ErrorKind::Kind, "type variable " + a->name + " is not in scope with kind Type");
        return;
      }
      case Type::Tag::Arrow:
        type(a->dom);
        type(a->cod);
        return;
      case Type::Tag::Variant:
      case Type::Tag::Record: row(a->row, {}); return;
      case Type::Tag::ForallRow:
      case Type::Tag::ForallPres:
        local.push_back({a->name, a->tag == Type::Tag::ForallRow ? a->kind : Kind::pre()});
        type(a->cod);
        local.pop_back();
        return;
      case Type::Tag::Base: return;
    }
  }
};

void features(const CalculusConfig& c, const TypeP& a);

void featuresRow(const CalculusConfig& c, const Row& r) {
  for (auto& e : r.entries) {
    if (e.pre.tag != Presence::Tag::Present && !c.presence())
      fail(ErrorKind::Type, "presence annotation on " + e.label + " outside a presence calculus");
    features(c, e.type);
  }
  if (r.tail && c.rowPoly == Poly::None) fail(ErrorKind::Type, "row variable " + *r.tail + " outside a row calculus");
}

void features(const CalculusConfig& c, const TypeP& a) {
  switch (a->tag) {
    case Type::Tag::Var: return;
    case Type::Tag::Base:
      if (!c.builtins) fail(ErrorKind::Type, "builtin types are disabled");
      return;
    case Type::Tag::Arrow:
      features(c, a->dom);
      features(c, a->cod);
      return;
    case Type::Tag::Variant:
      if (!c.variants) fail(ErrorKind::Type, "variant type in " + c.id);
      featuresRow(c, a->row);
      return;
    case Type::Tag::Record:
      if (!c.records) fail(ErrorKind::Type, "record type in " + c.id);
      featuresRow(c, a->row);
      return;
    case Type::Tag::ForallRow:
      if (c.rowPoly != Poly::Higher) fail(ErrorKind::Type, "row quantifier in " + c.id);
      features(c, a->cod);
      return;
    case Type::Tag::ForallPres:
      if (c.presPoly != Poly::Higher) fail(ErrorKind::Type, "presence quantifier in " + c.id);
      features(c, a->cod);
      return;
  }
}

}  // namespace

void kindCheck(const Env& env, const TypeP& a) {
  Kinder k{env, {}};
  k.type(a);
}

void kindCheckRow(const Env& env, const Row& r, const LabelSet& lacks) {
  Kinder k{env, {}};
  k.row(r, lacks);
}

void checkTypeFeatures(const CalculusConfig& c, const TypeP& a) { features(c, a); }

}  // namespace rowlab
