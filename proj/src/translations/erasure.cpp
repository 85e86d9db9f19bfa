#include "rowlab/dynamics.hpp"
#include "rowlab/translate.hpp"

namespace rowlab {

TermP t7(const CalculusConfig& source, const Derivation& d) {
  if (!checkRankLimit(source, d)) fail(ErrorKind::Rank, "derivation exceeds the rank limit of " + source.id);
  return erase(d.term);
}

namespace {

const LabelOrder kBytewise{};

// Number of row variables each side of the translation introduces.
size_t countA(const TypeP& a);
size_t countB(const TypeP& a) {
  switch (a->tag) {
    case Type::Tag::Arrow: return countB(a->cod);
    case Type::Tag::Record: {
      size_t n = 1;
      for (auto& e : a->row.entries) n += countB(e.type);
      return n;
    }
    default: return 0;
  }
}

size_t countA(const TypeP& a) {
  switch (a->tag) {
    case Type::Tag::Arrow: return countB(a->dom) + countA(a->cod);
    case Type::Tag::Record: {
      size_t n = 0;
      for (auto& e : a->row.entries) n += countA(e.type);
      return n;
    }
    default: return 0;
  }
}

using Rows = std::vector<Row>;

Rows slice(const Rows& rs, size_t from, size_t n) {
  if (from + n > rs.size()) fail(ErrorKind::Internal, "row sequence too short");
  return Rows(rs.begin() + from, rs.begin() + from + n);
}

}  // namespace

std::vector<std::pair<Name, Kind>> rowSeqB(const TypeP& a, Fresh& fresh) {
  switch (a->tag) {
    case Type::Tag::Arrow: return rowSeqB(a->cod, fresh);
    case Type::Tag::Record: {
      std::vector<std::pair<Name, Kind>> out{{fresh("r"), Kind::row(a->row.labels())}};
      for (auto& e : kBytewise.sorted(a->row)) {
        auto in = rowSeqB(e.type, fresh);
        out.insert(out.end(), in.begin(), in.end());
      }
      return out;
    }
    default: return {};
  }
}

std::vector<std::pair<Name, Kind>> rowSeqA(const TypeP& a, Fresh& fresh) {
  switch (a->tag) {
    case Type::Tag::Arrow: {
      auto out = rowSeqB(a->dom, fresh);
      auto in = rowSeqA(a->cod, fresh);
      out.insert(out.end(), in.begin(), in.end());
      return out;
    }
    case Type::Tag::Record: {
      std::vector<std::pair<Name, Kind>> out;
      for (auto& e : kBytewise.sorted(a->row)) {
        auto in = rowSeqA(e.type, fresh);
        out.insert(out.end(), in.begin(), in.end());
      }
      return out;
    }
    default: return {};
  }
}

TypeP translB(const TypeP& a, const std::vector<Row>& rows) {
  switch (a->tag) {
    case Type::Tag::Arrow: return arrow(a->dom, translB(a->cod, rows));
    case Type::Tag::Record: {
      Row r = rows.at(0);
      Row out;
      size_t k = 1;
      for (auto& e : kBytewise.sorted(a->row)) {
        size_t n = countB(e.type);
        out.entries.push_back({e.label, Presence::present(), translB(e.type, slice(rows, k, n))});
        k += n;
      }
      return record(rowConcat(out, r));
    }
    default: return a;
  }
}

TypeP translA(const TypeP& a, const std::vector<Row>& rows) {
  switch (a->tag) {
    case Type::Tag::Arrow: {
      size_t n = countB(a->dom);
      return arrow(translB(a->dom, slice(rows, 0, n)), translA(a->cod, slice(rows, n, rows.size() - n)));
    }
    case Type::Tag::Record: {
      Row out;
      size_t k = 0;
      for (auto& e : kBytewise.sorted(a->row)) {
        size_t n = countA(e.type);
        out.entries.push_back({e.label, Presence::present(), translA(e.type, slice(rows, k, n))});
        k += n;
      }
      return record(out);
    }
    default: return a;
  }
}

namespace {
std::vector<Row> asRows(const std::vector<std::pair<Name, Kind>>& vs) {
  std::vector<Row> out;
  for (auto& [n, k] : vs) out.push_back(Row{{}, n});
  return out;
}
}  // namespace

TypeScheme translA(const TypeP& a, Fresh& fresh) {
  auto vs = rowSeqA(a, fresh);
  return {vs, translA(a, asRows(vs))};
}

Env envTranslate9(const Env& env, Fresh& fresh) {
  Env out;
  out.delta = env.delta;
  for (auto& g : env.gamma) {
    if (g.letBound) {
      auto s = translA(g.type, fresh);
      TypeP t = s.body;
      for (auto it = s.vars.rbegin(); it != s.vars.rend(); ++it) t = forallRow(it->first, it->second, t);
      out.gamma.push_back({g.name, t, true});
    } else {
      auto vs = rowSeqB(g.type, fresh);
      for (auto& v : vs) out.delta.push_back(v);
      out.gamma.push_back({g.name, translB(g.type, asRows(vs)), false});
    }
  }
  return out;
}

namespace {

struct WeakSolver {
  Unifier u;
  std::vector<std::pair<TypeP, TypeP>> weak;

  // Structural pass: equalities go to the unifier, record comparisons are deferred.
  void split(const TypeP& a0, const TypeP& b) {
    TypeP a = u.zonk(a0);
    if (a->tag == Type::Tag::Var && u.isFlex(a->name)) {
      u.unify(a, b);
      return;
    }
    if (a->tag != b->tag) fail(ErrorKind::Unify, "shape mismatch");
    switch (a->tag) {
      case Type::Tag::Arrow:
        u.unify(a->dom, b->dom);
        split(a->cod, b->cod);
        return;
      case Type::Tag::Record: weak.push_back({a, b}); return;
      default: u.unify(a, b); return;
    }
  }

  void record(const TypeP& a0, const TypeP& b) {
    TypeP a = u.zonk(a0);
    Row ra = a->row, rb = b->row;
    if (rb.tail) {
      u.unify(a, b);
      return;
    }
    for (auto& e : ra.entries)
      if (!rb.find(e.label)) fail(ErrorKind::Unify, "extra label " + e.label);
    std::vector<RowEntry> missing;
    for (auto& e : rb.entries)
      if (!ra.find(e.label)) missing.push_back({e.label, Presence::present(), tvar(u.freshType())});
    if (!missing.empty()) {
      if (!ra.tail || !u.isFlex(*ra.tail)) fail(ErrorKind::Unify, "record lacks labels and cannot be extended");
      LabelSet l = rb.labels();
      u.unifyRows(Row{{}, ra.tail}, Row{missing, u.freshRow(l)});
      a = u.zonk(a);
      ra = a->row;
    }
    for (auto& e : rb.entries) split(ra.find(e.label)->type, e.type);
  }

  bool check(const TypeP& a0, const TypeP& b) {
    TypeP a = u.zonk(a0);
    if (a->tag != b->tag) return false;
    switch (a->tag) {
      case Type::Tag::Arrow: return typeEqual(a->dom, b->dom) && check(a->cod, b->cod);
      case Type::Tag::Record: {
        Row ra = normalizeRow(a->row), rb = normalizeRow(b->row);
        if (rb.tail) return typeEqual(a, b);
        if (ra.entries.size() != rb.entries.size()) return false;
        for (size_t i = 0; i < ra.entries.size(); ++i)
          if (ra.entries[i].label != rb.entries[i].label || !check(ra.entries[i].type, rb.entries[i].type)) return false;
        return true;
      }
      default: return typeEqual(a, b);
    }
  }
};

}  // namespace

bool weakSub(const TypeScheme& tau, const TypeScheme& sigma) {
  WeakSolver s;
  TySubst sk, fl;
  for (auto& [n, k] : sigma.vars) {
    Name v = s.u.fresh("s");
    s.u.setRigidKind(v, k);
    if (k.tag == Kind::Tag::Row)
      sk[n] = Row{{}, v};
    else if (k.tag == Kind::Tag::Pre)
      sk[n] = Presence::variable(v);
    else
      sk[n] = tvar(v);
  }
  for (auto& [n, k] : tau.vars) {
    if (k.tag == Kind::Tag::Row)
      fl[n] = Row{{}, s.u.freshRow(k.lacks)};
    else if (k.tag == Kind::Tag::Pre)
      fl[n] = Presence::variable(s.u.freshPre());
    else
      fl[n] = tvar(s.u.freshType());
  }
  TypeP a = applyType(tau.body, fl), b = applyType(sigma.body, sk);
  try {
    s.split(a, b);
    while (!s.weak.empty()) {
      auto [x, y] = s.weak.front();
      s.weak.erase(s.weak.begin());
      s.record(x, y);
    }
    return s.check(a, b);
  } catch (const Error&) {
    return false;
  }
}

std::vector<Row> rowInstForSub(const TypeP& tau, const TypeP& a) {
  if (tau->tag != a->tag) fail(ErrorKind::Subtype, "shapes differ: " + show(tau) + " vs " + show(a));
  switch (a->tag) {
    case Type::Tag::Arrow: return rowInstForSub(tau->cod, a->cod);
    case Type::Tag::Record: {
      Row extra;
      for (auto& e : tau->row.entries)
        if (!a->row.find(e.label)) extra.entries.push_back(e);
      extra.tail = tau->row.tail;
      std::vector<Row> out{extra};
      for (auto& e : kBytewise.sorted(a->row)) {
        auto t = tau->row.find(e.label);
        if (!t) fail(ErrorKind::Subtype, "label " + e.label + " missing from " + show(tau));
        auto in = rowInstForSub(t->type, e.type);
        out.insert(out.end(), in.begin(), in.end());
      }
      return out;
    }
    default: return {};
  }
}

}  // namespace rowlab
