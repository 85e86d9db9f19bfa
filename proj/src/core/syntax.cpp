#include "rowlab/syntax.hpp"

#include <algorithm>

namespace rowlab {

const char* errorKindName(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Kind: return "kind";
    case ErrorKind::Type: return "type";
    case ErrorKind::Subtype: return "subtype";
    case ErrorKind::Rank: return "rank";
    case ErrorKind::Unify: return "unify";
    case ErrorKind::Malformed: return "malformed";
    case ErrorKind::Fuel: return "fuel";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Generation: return "generation";
    case ErrorKind::Internal: return "internal";
  }
  return "internal";
}

void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

const RowEntry* Row::find(const Label& l) const {
  for (auto& e : entries)
    if (e.label == l) return &e;
  return nullptr;
}

LabelSet Row::labels() const {
  LabelSet s;
  for (auto& e : entries) s.insert(e.label);
  return s;
}

TypeP tvar(Name n) {
  auto t = std::make_shared<Type>();
  t->tag = Type::Tag::Var;
  t->name = std::move(n);
  return t;
}

TypeP arrow(TypeP a, TypeP b) {
  auto t = std::make_shared<Type>();
  t->tag = Type::Tag::Arrow;
  t->dom = std::move(a);
  t->cod = std::move(b);
  return t;
}

TypeP variant(Row r) {
  auto t = std::make_shared<Type>();
  t->tag = Type::Tag::Variant;
  t->row = std::move(r);
  return t;
}

TypeP record(Row r) {
  auto t = std::make_shared<Type>();
  t->tag = Type::Tag::Record;
  t->row = std::move(r);
  return t;
}

TypeP forallRow(Name n, Kind k, TypeP body) {
  auto t = std::make_shared<Type>();
  t->tag = Type::Tag::ForallRow;
  t->name = std::move(n);
  t->kind = std::move(k);
  t->cod = std::move(body);
  return t;
}

TypeP forallPres(Name n, TypeP body) {
  auto t = std::make_shared<Type>();
  t->tag = Type::Tag::ForallPres;
  t->name = std::move(n);
  t->kind = Kind::pre();
  t->cod = std::move(body);
  return t;
}

TypeP baseType(BaseType b) {
  auto t = std::make_shared<Type>();
  t->tag = Type::Tag::Base;
  t->base = b;
  return t;
}

Row closedRow(std::vector<std::pair<Label, TypeP>> es) {
  Row r;
  for (auto& [l, t] : es) r.entries.push_back({l, Presence::present(), t});
  return r;
}

static std::shared_ptr<Term> mk(Term::Tag tag) {
  auto t = std::make_shared<Term>();
  t->tag = tag;
  return t;
}

TermP var(Name x) {
  auto t = mk(Term::Tag::Var);
  t->name = std::move(x);
  return t;
}

TermP lam(Name x, TypeP annot, TermP body) {
  auto t = mk(Term::Tag::Lam);
  t->name = std::move(x);
  t->annot = std::move(annot);
  t->a = std::move(body);
  return t;
}

TermP app(TermP f, TermP x) {
  auto t = mk(Term::Tag::App);
  t->a = std::move(f);
  t->b = std::move(x);
  return t;
}

TermP inject(Label l, TermP payload, TypeP annot) {
  auto t = mk(Term::Tag::Inject);
  t->label = std::move(l);
  t->a = std::move(payload);
  t->annot = std::move(annot);
  return t;
}

TermP caseOf(TermP scrut, std::vector<Branch> bs) {
  auto t = mk(Term::Tag::Case);
  t->a = std::move(scrut);
  t->branches = std::move(bs);
  return t;
}

TermP recordIntro(std::vector<Field> fs, TypeP annot) {
  auto t = mk(Term::Tag::Record);
  t->fields = std::move(fs);
  t->annot = std::move(annot);
  return t;
}

TermP project(TermP m, Label l) {
  auto t = mk(Term::Tag::Project);
  t->a = std::move(m);
  t->label = std::move(l);
  return t;
}

TermP upcast(TermP m, TypeP target) {
  auto t = mk(Term::Tag::Upcast);
  t->a = std::move(m);
  t->annot = std::move(target);
  return t;
}

TermP rowAbs(Name r, Kind k, TermP body) {
  auto t = mk(Term::Tag::RowAbs);
  t->name = std::move(r);
  t->kind = std::move(k);
  t->a = std::move(body);
  return t;
}

TermP rowApp(TermP m, Row r, Origin o) {
  auto t = mk(Term::Tag::RowApp);
  t->a = std::move(m);
  t->row = std::move(r);
  t->origin = o;
  return t;
}

TermP presAbs(Name p, TermP body) {
  auto t = mk(Term::Tag::PresAbs);
  t->name = std::move(p);
  t->kind = Kind::pre();
  t->a = std::move(body);
  return t;
}

TermP presApp(TermP m, Presence p, Origin o) {
  auto t = mk(Term::Tag::PresApp);
  t->a = std::move(m);
  t->pre = std::move(p);
  t->origin = o;
  return t;
}

TermP let(Name x, TermP bound, TermP body) {
  auto t = mk(Term::Tag::Let);
  t->name = std::move(x);
  t->a = std::move(bound);
  t->b = std::move(body);
  return t;
}

TermP intLit(std::int64_t v) {
  auto t = mk(Term::Tag::Lit);
  t->lit = {true, v, {}};
  return t;
}

TermP strLit(std::string s) {
  auto t = mk(Term::Tag::Lit);
  t->lit = {false, 0, std::move(s)};
  return t;
}

TermP prim(PrimOp op, TermP l, TermP r) {
  auto t = mk(Term::Tag::Prim);
  t->op = op;
  t->a = std::move(l);
  t->b = std::move(r);
  return t;
}

Name stripSuffix(const Name& n) {
  auto p = n.find('$');
  return p == Name::npos ? n : n.substr(0, p);
}

Name Fresh::operator()(const Name& base) { return stripSuffix(base) + "$" + std::to_string(++next_); }

Name freshAvoiding(const Name& base, const NameSet& used) {
  Name b = stripSuffix(base);
  if (b.empty()) b = "v";
  for (int i = 1;; ++i) {
    Name c = b + "$" + std::to_string(i);
    if (!used.count(c)) return c;
  }
}

bool LabelOrder::less(const Label& a, const Label& b) const {
  auto rank = [&](const Label& l) {
    auto it = std::find(priority.begin(), priority.end(), l);
    return it == priority.end() ? priority.size() : size_t(it - priority.begin());
  };
  auto ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

std::vector<RowEntry> LabelOrder::sorted(const Row& r) const {
  auto es = r.entries;
  std::stable_sort(es.begin(), es.end(), [&](const RowEntry& x, const RowEntry& y) { return less(x.label, y.label); });
  return es;
}

int termSize(const TermP& m) {
  int n = 1;
  for (auto& c : children(m)) n += termSize(c);
  return n;
}

std::vector<TermP> children(const TermP& m) {
  std::vector<TermP> out;
  switch (m->tag) {
    case Term::Tag::Var:
    case Term::Tag::Lit: break;
    case Term::Tag::App:
    case Term::Tag::Let:
    case Term::Tag::Prim:
      out = {m->a, m->b};
      break;
    case Term::Tag::Case:
      out.push_back(m->a);
      for (auto& b : m->branches) out.push_back(b.body);
      break;
    case Term::Tag::Record:
      for (auto& f : m->fields) out.push_back(f.term);
      break;
    default: out.push_back(m->a);
  }
  return out;
}

}  // namespace rowlab
