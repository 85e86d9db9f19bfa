#include "rowlab/infer.hpp"

namespace rowlab {

namespace {
[[noreturn]] void clash(const std::string& msg) { fail(ErrorKind::Unify, "unification clash: " + msg); }
}  // namespace

Name Unifier::freshType() {
  Name n = fresh("t");
  flex_[n] = Kind::type();
  return n;
}

Name Unifier::freshRow(LabelSet lacks) {
  Name n = fresh("r");
  flex_[n] = Kind::row(std::move(lacks));
  return n;
}

Name Unifier::freshPre() {
  Name n = fresh("p");
  flex_[n] = Kind::pre();
  return n;
}

void Unifier::addFlex(const Name& n, Kind k) { flex_[n] = std::move(k); }
void Unifier::setRigidKind(const Name& n, Kind k) { rigid_[n] = std::move(k); }

const Kind* Unifier::flexKind(const Name& n) const {
  auto it = flex_.find(n);
  return it == flex_.end() ? nullptr : &it->second;
}

NameSet Unifier::unboundFlex(const NameSet& among) const {
  NameSet out;
  for (auto& n : among)
    if (isFlex(n) && !isBound(n)) out.insert(n);
  return out;
}

LabelSet Unifier::lacksOf(const Name& r) const {
  if (auto k = flexKind(r)) return k->lacks;
  auto it = rigid_.find(r);
  return it == rigid_.end() ? LabelSet{} : it->second.lacks;
}

TypeP Unifier::resolve(const TypeP& a) const {
  TypeP t = a;
  while (t->tag == Type::Tag::Var) {
    auto it = binds_.find(t->name);
    if (it == binds_.end()) break;
    auto next = std::get_if<TypeP>(&it->second);
    if (!next) break;
    t = *next;
  }
  return t;
}

Presence Unifier::zonkPres(const Presence& p) const {
  Presence q = p;
  while (q.isVar()) {
    auto it = binds_.find(q.var);
    if (it == binds_.end()) break;
    auto next = std::get_if<Presence>(&it->second);
    if (!next) break;
    q = *next;
  }
  return q;
}

Row Unifier::zonkRow(const Row& r) const {
  Row out;
  for (auto& e : r.entries) out.entries.push_back({e.label, zonkPres(e.pre), zonk(e.type)});
  out.tail = r.tail;
  while (out.tail) {
    auto it = binds_.find(*out.tail);
    if (it == binds_.end()) break;
    auto next = std::get_if<Row>(&it->second);
    if (!next) break;
    out.tail = next->tail;
    for (auto& e : next->entries) out.entries.push_back({e.label, zonkPres(e.pre), zonk(e.type)});
  }
  return out;
}

TypeP Unifier::zonk(const TypeP& a) const {
  if (!a) return a;
  switch (a->tag) {
    case Type::Tag::Var: {
      TypeP r = resolve(a);
      return r == a ? a : zonk(r);
    }
    case Type::Tag::Arrow: return arrow(zonk(a->dom), zonk(a->cod));
    case Type::Tag::Variant: return variant(zonkRow(a->row));
    case Type::Tag::Record: return record(zonkRow(a->row));
    case Type::Tag::ForallRow: return forallRow(a->name, a->kind, zonk(a->cod));
    case Type::Tag::ForallPres: return forallPres(a->name, zonk(a->cod));
    case Type::Tag::Base: return a;
  }
  return a;
}

void Unifier::bind(const Name& v, TyArg x) {
  NameSet f;
  if (auto t = std::get_if<TypeP>(&x)) f = ftv(zonk(*t));
  if (auto r = std::get_if<Row>(&x)) f = ftv(zonkRow(*r));
  if (f.count(v)) clash("occurs check: " + v + " occurs in its own solution");
  binds_[v] = std::move(x);
}

void Unifier::unifyPres(const Presence& p0, const Presence& q0) {
  Presence p = zonkPres(p0), q = zonkPres(q0);
  if (p == q) return;
  if (p.isVar() && isFlex(p.var)) return bind(p.var, q);
  if (q.isVar() && isFlex(q.var)) return bind(q.var, p);
  clash("presence " + show(p) + " vs " + show(q));
}

void Unifier::unify(const TypeP& a0, const TypeP& b0) {
  TypeP a = resolve(a0), b = resolve(b0);
  if (a->tag == Type::Tag::Var && b->tag == Type::Tag::Var && a->name == b->name) return;
  if (a->tag == Type::Tag::Var && isFlex(a->name)) return bind(a->name, b);
  if (b->tag == Type::Tag::Var && isFlex(b->name)) return bind(b->name, a);
  if (a->tag != b->tag) clash(show(zonk(a)) + " vs " + show(zonk(b)));
  switch (a->tag) {
    case Type::Tag::Var: clash("rigid " + a->name + " vs " + b->name);
    case Type::Tag::Base:
      if (a->base != b->base) clash(show(a) + " vs " + show(b));
      return;
    case Type::Tag::Arrow:
      unify(a->dom, b->dom);
      unify(a->cod, b->cod);
      return;
    case Type::Tag::Variant:
    case Type::Tag::Record: unifyRows(a->row, b->row); return;
    default: clash("quantified types " + show(a) + " vs " + show(b));
  }
}

void Unifier::unifyRows(const Row& a, const Row& b) {
  Row r1 = zonkRow(a), r2 = zonkRow(b);
  std::vector<RowEntry> only1, only2;
  for (auto& e : r1.entries) {
    if (auto f = r2.find(e.label)) {
      unifyPres(e.pre, f->pre);
      unify(e.type, f->type);
    } else {
      only1.push_back(e);
    }
  }
  for (auto& e : r2.entries)
    if (!r1.find(e.label)) only2.push_back(e);

  // A label the other side cannot carry must be absent, when presences are tracked.
  auto absent = [&](const std::vector<RowEntry>& es, const Row& other) {
    for (auto& e : es) {
      if (!presenceAware_) clash("label " + e.label + " missing from row " + show(other));
      unifyPres(e.pre, Presence::absent());
    }
  };
  auto labelsOk = [&](const std::vector<RowEntry>& es, const Name& tail) {
    auto l = lacksOf(tail);
    for (auto& e : es)
      if (l.count(e.label)) clash("row variable " + tail + " cannot contain label " + e.label);
  };

  bool flex1 = r1.tail && isFlex(*r1.tail), flex2 = r2.tail && isFlex(*r2.tail);
  if (r1.tail && r2.tail && *r1.tail == *r2.tail) {
    absent(only1, r2);
    absent(only2, r1);
    return;
  }
  if (flex1 && flex2) {
    labelsOk(only2, *r1.tail);
    labelsOk(only1, *r2.tail);
    LabelSet l = lacksOf(*r1.tail);
    for (auto& x : lacksOf(*r2.tail)) l.insert(x);
    for (auto& e : r1.entries) l.insert(e.label);
    for (auto& e : r2.entries) l.insert(e.label);
    Name r3 = freshRow(l);
    bind(*r1.tail, Row{only2, r3});
    bind(*r2.tail, Row{only1, r3});
    return;
  }
  if (flex1 || flex2) {
    const Row& fr = flex1 ? r1 : r2;
    const Row& other = flex1 ? r2 : r1;
    auto& give = flex1 ? only2 : only1;
    auto& keep = flex1 ? only1 : only2;
    absent(keep, other);
    labelsOk(give, *fr.tail);
    if (other.tail && rigid_.count(*other.tail)) {
      auto want = lacksOf(*fr.tail);
      auto have = lacksOf(*other.tail);
      for (auto& g : give) have.insert(g.label);
      for (auto& l : want)
        if (!have.count(l)) clash("row variable " + *other.tail + " may contain excluded label " + l);
    }
    bind(*fr.tail, Row{give, other.tail});
    return;
  }
  if (r1.tail != r2.tail) clash("rows " + show(r1) + " vs " + show(r2));
  absent(only1, r2);
  absent(only2, r1);
}

}  // namespace rowlab
