#include <sstream>

#include "rowlab/text.hpp"

namespace rowlab {

const Kind* Env::kindOf(const Name& n) const {
  for (auto it = delta.rbegin(); it != delta.rend(); ++it)
    if (it->first == n) return &it->second;
  return nullptr;
}

const GammaEntry* Env::lookup(const Name& x) const {
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it)
    if (it->name == x) return &*it;
  return nullptr;
}

std::string show(const Presence& p) {
  switch (p.tag) {
    case Presence::Tag::Absent: return "o";
    case Presence::Tag::Present: return "*";
    case Presence::Tag::Var: return p.var;
  }
  return "?";
}

std::string show(const Kind& k) {
  switch (k.tag) {
    case Kind::Tag::Type: return "Type";
    case Kind::Tag::Pre: return "Pre";
    case Kind::Tag::Row: {
      std::string s = "Row!{";
      bool first = true;
      for (auto& l : k.lacks) {
        if (!first) s += ",";
        s += l;
        first = false;
      }
      return s + "}";
    }
  }
  return "?";
}

namespace {

void type(std::ostream& o, const TypeP& a, int prec);

void rowBody(std::ostream& o, const Row& r) {
  bool first = true;
  for (auto& e : r.entries) {
    if (!first) o << "; ";
    first = false;
    o << e.label;
    if (e.pre.tag != Presence::Tag::Present) o << "^" << show(e.pre);
    o << ":";
    type(o, e.type, 0);
  }
  if (r.tail) {
    if (!first) o << "; ";
    o << *r.tail;
  }
}

// prec 0: anything; 1: arrow domain
void type(std::ostream& o, const TypeP& a, int prec) {
  switch (a->tag) {
    case Type::Tag::Var: o << a->name; return;
    case Type::Tag::Base: o << (a->base == BaseType::Int ? "Int" : "String"); return;
    case Type::Tag::Variant:
      o << "[";
      rowBody(o, a->row);
      o << "]";
      return;
    case Type::Tag::Record:
      o << "{";
      rowBody(o, a->row);
      o << "}";
      return;
    case Type::Tag::Arrow:
      if (prec > 0) o << "(";
      type(o, a->dom, 1);
      o << " -> ";
      type(o, a->cod, 0);
      if (prec > 0) o << ")";
      return;
    case Type::Tag::ForallRow:
    case Type::Tag::ForallPres:
      if (prec > 0) o << "(";
      o << "forall " << a->name << ":" << show(a->tag == Type::Tag::ForallRow ? a->kind : Kind::pre()) << ". ";
      type(o, a->cod, 0);
      if (prec > 0) o << ")";
      return;
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Levels: 0 binders, 1 binary operators, 2 upcast and annotated forms, 3 application, 4 postfix/atoms.
void term(std::ostream& o, const TermP& m, int prec) {
  auto open = [&](int lvl) {
    if (prec > lvl) o << "(";
  };
  auto close = [&](int lvl) {
    if (prec > lvl) o << ")";
  };
  switch (m->tag) {
    case Term::Tag::Var: o << m->name; return;
    case Term::Tag::Lit:
      if (m->lit.isInt)
        o << m->lit.i;
      else
        o << quote(m->lit.s);
      return;
    case Term::Tag::Lam:
      open(0);
      o << "\\" << m->name;
      if (m->annot) {
        o << ":";
        type(o, m->annot, 0);
      }
      o << ". ";
      term(o, m->a, 0);
      close(0);
      return;
    case Term::Tag::RowAbs:
      open(0);
      o << "/\\" << m->name << ":" << show(m->kind) << ". ";
      term(o, m->a, 0);
      close(0);
      return;
    case Term::Tag::PresAbs:
      open(0);
      o << "/\\" << m->name << ":Pre. ";
      term(o, m->a, 0);
      close(0);
      return;
    case Term::Tag::Let:
      open(0);
      o << "let " << m->name << " = ";
      term(o, m->a, 0);
      o << " in ";
      term(o, m->b, 0);
      close(0);
      return;
    case Term::Tag::Prim:
      open(1);
      term(o, m->a, 1);
      o << (m->op == PrimOp::Sub ? " - " : m->op == PrimOp::Add ? " + " : " ++ ");
      term(o, m->b, 2);
      close(1);
      return;
    case Term::Tag::Upcast:
      open(2);
      term(o, m->a, 2);
      o << " :> ";
      type(o, m->annot, 0);
      close(2);
      return;
    case Term::Tag::Inject:
      if (m->annot) open(2);
      o << "<" << m->label << " ";
      term(o, m->a, 0);
      o << ">";
      if (m->annot) {
        o << " : ";
        type(o, m->annot, 0);
        close(2);
      }
      return;
    case Term::Tag::Record: {
      if (m->annot) open(2);
      o << "{";
      bool first = true;
      for (auto& f : m->fields) {
        if (!first) o << ", ";
        first = false;
        o << f.label << " = ";
        term(o, f.term, 0);
      }
      o << "}";
      if (m->annot) {
        o << " : ";
        type(o, m->annot, 0);
        close(2);
      }
      return;
    }
    case Term::Tag::App:
      open(3);
      term(o, m->a, 3);
      o << " ";
      term(o, m->b, 4);
      close(3);
      return;
    case Term::Tag::RowApp:
      open(3);
      term(o, m->a, 3);
      o << (m->origin == Origin::Source ? " @ [" : " @@ [");
      rowBody(o, m->row);
      o << "]";
      close(3);
      return;
    case Term::Tag::PresApp:
      open(3);
      term(o, m->a, 3);
      o << (m->origin == Origin::Source ? " @ " : " @@ ") << show(m->pre);
      close(3);
      return;
    case Term::Tag::Project:
      term(o, m->a, 4);
      o << "." << m->label;
      return;
    case Term::Tag::Case: {
      o << "case ";
      term(o, m->a, 4);
      o << " {";
      bool first = true;
      for (auto& b : m->branches) {
        o << (first ? " " : "; ");
        first = false;
        o << b.label << " " << b.var << " -> ";
        term(o, b.body, 0);
      }
      o << " }";
      return;
    }
  }
}

}  // namespace

std::string show(const TypeP& a) {
  std::ostringstream o;
  type(o, a, 0);
  return o.str();
}

std::string show(const Row& r) {
  std::ostringstream o;
  rowBody(o, r);
  return o.str();
}

std::string show(const TermP& m) {
  std::ostringstream o;
  term(o, m, 0);
  return o.str();
}

std::string show(const Env& e) {
  std::string s;
  for (auto& [n, k] : e.delta) s += "-- env: " + n + " : " + show(k) + "\n";
  for (auto& g : e.gamma) s += std::string("-- env: ") + (g.letBound ? "let " : "") + g.name + " : " + show(g.type) + "\n";
  return s;
}

}  // namespace rowlab
