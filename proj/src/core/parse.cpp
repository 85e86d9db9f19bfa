#include <cctype>
#include <functional>
#include <sstream>

#include "rowlab/text.hpp"

namespace rowlab {

namespace {

struct Token {
  enum class K { Ident, Int, Str, Sym, End } k = K::End;
  std::string text;
  int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& src, int lineOffset = 0) {
  static const char* syms[] = {"/\\", "@@", "++", "->", ":>", "\\", ".", ":", ";", ",", "=", "{", "}", "[",
                               "]",   "(",  ")",  "<",  ">",  "@", "^", "!", "+", "-", "*"};
  std::vector<Token> out;
  int line = 1 + lineOffset, col = 1;
  size_t i = 0;
  auto adv = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace((unsigned char)c)) {
      adv(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum((unsigned char)src[j]) || src[j] == '_' || src[j] == '$' || src[j] == '\''))
        ++j;
      t.k = Token::K::Ident;
      t.text = src.substr(i, j - i);
      adv(j - i);
    } else if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < src.size() && std::isdigit((unsigned char)src[j])) ++j;
      t.k = Token::K::Int;
      t.text = src.substr(i, j - i);
      adv(j - i);
    } else if (c == '"') {
      std::string s;
      adv(1);
      while (i < src.size() && src[i] != '"') {
        if (src[i] == '\\' && i + 1 < src.size()) adv(1);
        s += src[i];
        adv(1);
      }
      if (i >= src.size()) fail(ErrorKind::Parse, std::to_string(t.line) + ":" + std::to_string(t.col) + ": unterminated string");
      adv(1);
      t.k = Token::K::Str;
      t.text = s;
    } else {
      bool found = false;
      for (auto s : syms) {
        std::string sv = s;
        if (src.compare(i, sv.size(), sv) == 0) {
          t.k = Token::K::Sym;
          t.text = sv;
          adv(sv.size());
          found = true;
          break;
        }
      }
      if (!found)
        fail(ErrorKind::Parse, std::to_string(line) + ":" + std::to_string(col) + ": unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back(t);
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// Kinds left unannotated in the source are resolved after parsing.
const LabelSet kUnresolved{"$unresolved"};

struct Parser {
  std::vector<Token> toks;
  size_t p = 0;

  const Token& peek(size_t k = 0) const { return toks[std::min(p + k, toks.size() - 1)]; }
  bool isSym(const std::string& s, size_t k = 0) const { return peek(k).k == Token::K::Sym && peek(k).text == s; }
  bool isIdent(const std::string& s, size_t k = 0) const { return peek(k).k == Token::K::Ident && peek(k).text == s; }

  [[noreturn]] void error(const std::string& msg) const {
    auto& t = peek();
    std::string got = t.k == Token::K::End ? "end of input" : "'" + t.text + "'";
    fail(ErrorKind::Parse, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg + ", found " + got);
  }

  [[noreturn]] void errorAt(size_t at, const std::string& msg) const {
    auto& t = toks[std::min(at, toks.size() - 1)];
    fail(ErrorKind::Parse, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
  }

  void expect(const std::string& s) {
    if (!isSym(s)) error("expected '" + s + "'");
    ++p;
  }

  bool accept(const std::string& s) {
    if (isSym(s)) {
      ++p;
      return true;
    }
    return false;
  }

  static bool reserved(const std::string& s) {
    return s == "forall" || s == "let" || s == "in" || s == "case";
  }

  Name ident(const char* what = "identifier") {
    if (peek().k != Token::K::Ident || reserved(peek().text)) error(std::string("expected ") + what);
    return toks[p++].text;
  }

  // ---- kinds, presences, rows, types ----

  Kind kind() {
    Name k = ident("kind");
    if (k == "Type") return Kind::type();
    if (k == "Pre") return Kind::pre();
    if (k == "Row") {
      LabelSet l;
      if (accept("!")) {
        expect("{");
        if (!isSym("}")) {
          do l.insert(ident("label"));
          while (accept(","));
        }
        expect("}");
      }
      return Kind::row(l);
    }
    --p;
    error("expected kind");
  }

  Presence presence() {
    if (accept("*")) return Presence::present();
    Name n = ident("presence");
    if (n == "o") return Presence::absent();
    return Presence::variable(n);
  }

  Row rowBody(const std::string& close) {
    Row r;
    if (isSym(close)) return r;
    while (true) {
      if (peek().k == Token::K::Ident && (isSym(":", 1) || isSym("^", 1))) {
        RowEntry e;
        e.label = ident("label");
        e.pre = Presence::present();
        if (accept("^")) e.pre = presence();
        expect(":");
        e.type = type();
        r.entries.push_back(e);
      } else {
        r.tail = ident("row variable");
        break;
      }
      if (!accept(";")) break;
    }
    return r;
  }

  TypeP type() {
    if (isIdent("forall")) {
      ++p;
      Name v = ident("type variable");
      Kind k = Kind::row(kUnresolved);
      bool pre = false;
      if (accept(":")) {
        k = kind();
        pre = k.tag == Kind::Tag::Pre;
        if (k.tag == Kind::Tag::Type) error("value-type quantifiers are not part of the type language");
      }
      expect(".");
      TypeP body = type();
      return pre ? forallPres(v, body) : forallRow(v, k, body);
    }
    TypeP a = atype();
    if (accept("->")) return arrow(a, type());
    return a;
  }

  TypeP atype() {
    if (accept("(")) {
      TypeP t = type();
      expect(")");
      return t;
    }
    if (accept("[")) {
      Row r = rowBody("]");
      expect("]");
      return variant(r);
    }
    if (accept("{")) {
      Row r = rowBody("}");
      expect("}");
      return record(r);
    }
    Name n = ident("type");
    if (n == "Int") return baseType(BaseType::Int);
    if (n == "String") return baseType(BaseType::String);
    return tvar(n);
  }

  // ---- terms ----

  TermP expr(bool noBrace = false) {
    if (accept("\\")) {
      Name x = ident("variable");
      TypeP a;
      if (accept(":")) a = type();
      expect(".");
      return lam(x, a, expr(noBrace));
    }
    if (accept("/\\")) {
      Name v = ident("type variable");
      Kind k = Kind::row(kUnresolved);
      bool pre = false;
      if (accept(":")) {
        k = kind();
        pre = k.tag == Kind::Tag::Pre;
        if (k.tag == Kind::Tag::Type) error("value-type abstraction is not part of the term language");
      }
      expect(".");
      TermP body = expr(noBrace);
      return pre ? presAbs(v, body) : rowAbs(v, k, body);
    }
    if (isIdent("let")) {
      ++p;
      Name x = ident("variable");
      expect("=");
      TermP m = expr();
      if (!isIdent("in")) error("expected 'in'");
      ++p;
      return let(x, m, expr(noBrace));
    }
    return binop(noBrace);
  }

  TermP binop(bool noBrace) {
    TermP l = upc(noBrace);
    while (true) {
      PrimOp op;
      if (isSym("+"))
        op = PrimOp::Add;
      else if (isSym("-"))
        op = PrimOp::Sub;
      else if (isSym("++"))
        op = PrimOp::Concat;
      else
        return l;
      ++p;
      l = prim(op, l, upc(noBrace));
    }
  }

  TermP upc(bool noBrace) {
    TermP m = appl(noBrace);
    while (accept(":>")) m = upcast(m, type());
    return m;
  }

  bool startsAtom(bool noBrace) const {
    auto& t = peek();
    if (t.k == Token::K::Ident) return !reserved(t.text) || t.text == "case";
    if (t.k == Token::K::Int || t.k == Token::K::Str) return true;
    if (t.k == Token::K::Sym) return t.text == "(" || t.text == "<" || (t.text == "{" && !noBrace);
    return false;
  }

  TermP appl(bool noBrace) {
    TermP m = postfix(noBrace);
    while (true) {
      if (isSym("@") || isSym("@@")) {
        Origin o = isSym("@") ? Origin::Source : Origin::Upcast;
        ++p;
        if (accept("[")) {
          Row r = rowBody("]");
          expect("]");
          m = rowApp(m, r, o);
        } else {
          m = presApp(m, presence(), o);
        }
      } else if (startsAtom(noBrace)) {
        m = app(m, postfix(noBrace));
      } else {
        return m;
      }
    }
  }

  TermP postfix(bool noBrace) {
    TermP m = atom(noBrace);
    while (isSym(".") && peek(1).k == Token::K::Ident) {
      ++p;
      m = project(m, ident("label"));
    }
    return m;
  }

  TermP atom(bool noBrace) {
    auto& t = peek();
    if (t.k == Token::K::Int) {
      ++p;
      return intLit(std::stoll(t.text));
    }
    if (t.k == Token::K::Str) {
      ++p;
      return strLit(t.text);
    }
    if (accept("(")) {
      TermP m = expr();
      expect(")");
      return m;
    }
    if (accept("<")) {
      Label l = ident("label");
      TermP m = expr();
      expect(">");
      TypeP a;
      if (accept(":")) a = type();
      return inject(l, m, a);
    }
    if (!noBrace && accept("{")) {
      std::vector<Field> fs;
      if (!isSym("}")) {
        do {
          size_t at = p;
          Label l = ident("label");
          for (auto& f : fs)
            if (f.label == l) errorAt(at, "duplicate field " + l);
          expect("=");
          fs.push_back({l, expr()});
        } while (accept(","));
      }
      expect("}");
      TypeP a;
      if (accept(":")) a = type();
      return recordIntro(fs, a);
    }
    if (isIdent("case")) {
      ++p;
      TermP s = expr(true);
      expect("{");
      std::vector<Branch> bs;
      if (!isSym("}")) {
        do {
          size_t at = p;
          Label l = ident("label");
          for (auto& b : bs)
            if (b.label == l) errorAt(at, "duplicate branch " + l);
          Name x = ident("variable");
          expect("->");
          bs.push_back({l, x, expr()});
        } while (accept(";"));
      }
      expect("}");
      return caseOf(s, bs);
    }
    return var(ident("term"));
  }
};

// ---- kind resolution for abstractions written without kinds ----

struct Usage {
  bool asRowTail = false, asPres = false;
  LabelSet lacks;
};

void scanRow(const Row& r, const Name& v, Usage& u, bool full, bool& shadow);

void scanType(const TypeP& a, const Name& v, Usage& u) {
  if (!a) return;
  bool shadow = false;
  switch (a->tag) {
    case Type::Tag::Arrow:
      scanType(a->dom, v, u);
      scanType(a->cod, v, u);
      break;
    case Type::Tag::Variant:
    case Type::Tag::Record: scanRow(a->row, v, u, true, shadow); break;
    case Type::Tag::ForallRow:
    case Type::Tag::ForallPres:
      if (a->name != v) scanType(a->cod, v, u);
      break;
    default: break;
  }
}

void scanRow(const Row& r, const Name& v, Usage& u, bool full, bool&) {
  for (auto& e : r.entries) {
    if (e.pre.isVar() && e.pre.var == v) u.asPres = true;
    scanType(e.type, v, u);
  }
  if (r.tail && *r.tail == v) {
    u.asRowTail = true;
    if (full)
      for (auto& e : r.entries) u.lacks.insert(e.label);
  }
}

void scanTerm(const TermP& m, const Name& v, Usage& u) {
  bool shadow = false;
  if (m->annot) scanType(m->annot, v, u);
  if (m->tag == Term::Tag::RowApp) {
    scanRow(m->row, v, u, false, shadow);
    // Instantiating a visible abstraction fixes the lacks set: its own plus the labels written before the tail.
    if (m->row.tail && *m->row.tail == v) {
      for (auto& e : m->row.entries) u.lacks.insert(e.label);
      if (m->a->tag == Term::Tag::RowAbs) u.lacks.insert(m->a->kind.lacks.begin(), m->a->kind.lacks.end());
    }
  }
  if (m->tag == Term::Tag::PresApp && m->pre.isVar() && m->pre.var == v) u.asPres = true;
  if ((m->tag == Term::Tag::RowAbs || m->tag == Term::Tag::PresAbs) && m->name == v) return;
  for (auto& c : children(m)) scanTerm(c, v, u);
}

TypeP resolveType(const TypeP& a);

Row resolveRow(const Row& r) {
  Row o = r;
  for (auto& e : o.entries) e.type = resolveType(e.type);
  return o;
}

TypeP resolveType(const TypeP& a) {
  if (!a) return a;
  switch (a->tag) {
    case Type::Tag::Arrow: return arrow(resolveType(a->dom), resolveType(a->cod));
    case Type::Tag::Variant: return variant(resolveRow(a->row));
    case Type::Tag::Record: return record(resolveRow(a->row));
    case Type::Tag::ForallPres: return forallPres(a->name, resolveType(a->cod));
    case Type::Tag::ForallRow: {
      TypeP body = resolveType(a->cod);
      if (a->kind.lacks != kUnresolved) return forallRow(a->name, a->kind, body);
      Usage u;
      scanType(body, a->name, u);
      if (u.asRowTail) return forallRow(a->name, Kind::row(u.lacks), body);
      return forallPres(a->name, body);
    }
    default: return a;
  }
}

TermP resolveTerm(const TermP& m) {
  auto t = std::make_shared<Term>(*m);
  if (t->annot) t->annot = resolveType(t->annot);
  if (t->tag == Term::Tag::RowApp) t->row = resolveRow(t->row);
  if (t->a) t->a = resolveTerm(t->a);
  if (t->b) t->b = resolveTerm(t->b);
  for (auto& b : t->branches) b.body = resolveTerm(b.body);
  for (auto& f : t->fields) f.term = resolveTerm(f.term);
  if (t->tag == Term::Tag::RowAbs && t->kind.lacks == kUnresolved) {
    Usage u;
    scanTerm(t->a, t->name, u);
    if (u.asRowTail) {
      t->kind = Kind::row(u.lacks);
    } else {
      t->tag = Term::Tag::PresAbs;
      t->kind = Kind::pre();
    }
  }
  return t;
}

void finish(Parser& ps) {
  if (ps.peek().k != Token::K::End) ps.error("unexpected trailing input");
}

}  // namespace

TypeP parseType(const std::string& src) {
  Parser ps{lex(src)};
  TypeP a = ps.type();
  finish(ps);
  return resolveType(a);
}

Row parseRow(const std::string& src) {
  Parser ps{lex(src)};
  Row r = ps.rowBody("");
  finish(ps);
  return resolveRow(r);
}

TermP parseTerm(const std::string& src) {
  Parser ps{lex(src)};
  TermP m = ps.expr();
  finish(ps);
  return resolveTerm(m);
}

Program parseProgram(const std::string& src) {
  Program prog;
  std::istringstream in(src);
  std::string line, body;
  int lineNo = 0, bodyStart = -1;
  while (std::getline(in, line)) {
    ++lineNo;
    size_t s = line.find_first_not_of(" \t\r");
    std::string trimmed = s == std::string::npos ? "" : line.substr(s);
    if (trimmed.rfind("--", 0) == 0) {
      std::string rest = trimmed.substr(2);
      size_t r = rest.find_first_not_of(" \t");
      rest = r == std::string::npos ? "" : rest.substr(r);
      if (rest.rfind("env:", 0) == 0) {
        Parser ps{lex(rest.substr(4), lineNo - 1)};
        bool letBound = false;
        if (ps.isIdent("let")) {
          ++ps.p;
          letBound = true;
        }
        Name n = ps.ident("name");
        ps.expect(":");
        bool isKind = ps.peek().k == Token::K::Ident &&
                      (ps.peek().text == "Type" || ps.peek().text == "Pre" || ps.peek().text == "Row") &&
                      !ps.isSym("->", 1) && !letBound;
        if (isKind) {
          Kind k = ps.kind();
          finish(ps);
          prog.env.delta.push_back({n, k});
        } else {
          TypeP a = ps.type();
          finish(ps);
          prog.env.gamma.push_back({n, resolveType(a), letBound});
        }
      }
      body += "\n";
      continue;
    }
    if (bodyStart < 0 && !trimmed.empty()) bodyStart = lineNo;
    body += line + "\n";
  }
  Parser ps{lex(body)};
  if (ps.peek().k == Token::K::End) fail(ErrorKind::Parse, "no term in input");
  TermP m = ps.expr();
  finish(ps);
  prog.term = resolveTerm(m);
  return prog;
}

}  // namespace rowlab
