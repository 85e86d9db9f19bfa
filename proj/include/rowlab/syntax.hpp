#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rowlab {

using Label = std::string;
using Name = std::string;
using LabelSet = std::set<Label>;
using NameSet = std::set<Name>;

enum class ErrorKind { Parse, Kind, Type, Subtype, Rank, Unify, Malformed, Fuel, Unsupported, Generation, Internal };

const char* errorKindName(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& msg);

struct Kind {
  enum class Tag { Type, Row, Pre };
  Tag tag = Tag::Type;
  LabelSet lacks;  // only for Row

  static Kind type() { return {}; }
  static Kind row(LabelSet l = {}) { return {Tag::Row, std::move(l)}; }
  static Kind pre() { return {Tag::Pre, {}}; }
  bool operator==(const Kind&) const = default;
};

struct Presence {
  enum class Tag { Absent, Present, Var };
  Tag tag = Tag::Present;
  Name var;

  static Presence absent() { return {Tag::Absent, {}}; }
  static Presence present() { return {Tag::Present, {}}; }
  static Presence variable(Name v) { return {Tag::Var, std::move(v)}; }
  bool isVar() const { return tag == Tag::Var; }
  bool operator==(const Presence&) const = default;
};

struct Type;
using TypeP = std::shared_ptr<const Type>;

struct RowEntry {
  Label label;
  Presence pre;
  TypeP type;
};

// Entries are kept in the order they were written; comparisons go through normalizeRow.
struct Row {
  std::vector<RowEntry> entries;
  std::optional<Name> tail;

  const RowEntry* find(const Label& l) const;
  LabelSet labels() const;
  bool closed() const { return !tail.has_value(); }
};

enum class BaseType { Int, String };

struct Type {
  enum class Tag { Var, Arrow, Variant, Record, ForallRow, ForallPres, Base };
  Tag tag = Tag::Var;
  Name name;        // Var; binder of ForallRow / ForallPres
  TypeP dom, cod;   // Arrow; cod is the body of a quantifier
  Row row;          // Variant, Record
  Kind kind;        // ForallRow
  BaseType base = BaseType::Int;
};

TypeP tvar(Name n);
TypeP arrow(TypeP a, TypeP b);
TypeP variant(Row r);
TypeP record(Row r);
TypeP forallRow(Name n, Kind k, TypeP body);
TypeP forallPres(Name n, TypeP body);
TypeP baseType(BaseType b);
Row closedRow(std::vector<std::pair<Label, TypeP>> es);

enum class Origin { Source, Upcast };
enum class PrimOp { Sub, Add, Concat };

struct Literal {
  bool isInt = true;
  std::int64_t i = 0;
  std::string s;
  bool operator==(const Literal&) const = default;
};

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Branch {
  Label label;
  Name var;
  TermP body;
};

struct Field {
  Label label;
  TermP term;
};

struct Term {
  enum class Tag { Var, Lam, App, Inject, Case, Record, Project, Upcast, RowAbs, RowApp, PresAbs, PresApp, Let, Lit, Prim };
  Tag tag = Tag::Var;
  Name name;      // Var, Lam, Let, RowAbs, PresAbs
  Label label;    // Inject, Project
  TypeP annot;    // Lam (may be null when erased), Inject, Record (optional), Upcast target
  TermP a, b;     // see constructors
  std::vector<Branch> branches;
  std::vector<Field> fields;
  Row row;        // RowApp argument
  Presence pre;   // PresApp argument
  Kind kind;      // RowAbs
  Origin origin = Origin::Source;
  Literal lit;
  PrimOp op = PrimOp::Add;
};

TermP var(Name x);
TermP lam(Name x, TypeP annot, TermP body);
TermP app(TermP f, TermP x);
TermP inject(Label l, TermP payload, TypeP annot);
TermP caseOf(TermP scrut, std::vector<Branch> bs);
TermP recordIntro(std::vector<Field> fs, TypeP annot = nullptr);
TermP project(TermP m, Label l);
TermP upcast(TermP m, TypeP target);
TermP rowAbs(Name r, Kind k, TermP body);
TermP rowApp(TermP m, Row r, Origin o = Origin::Source);
TermP presAbs(Name p, TermP body);
TermP presApp(TermP m, Presence p, Origin o = Origin::Source);
TermP let(Name x, TermP bound, TermP body);
TermP intLit(std::int64_t v);
TermP strLit(std::string s);
TermP prim(PrimOp op, TermP l, TermP r);

// Deterministic fresh names "base$n".
class Fresh {
 public:
  explicit Fresh(int start = 0) : next_(start) {}
  Name operator()(const Name& base);
  int peek() const { return next_; }

 private:
  int next_;
};

Name stripSuffix(const Name& n);
Name freshAvoiding(const Name& base, const NameSet& used);

using TyArg = std::variant<TypeP, Row, Presence>;
using TySubst = std::map<Name, TyArg>;

NameSet ftv(const TypeP& a);
NameSet ftv(const Row& r);
NameSet ftv(const Presence& p);
NameSet ftv(const TyArg& x);
NameSet ftvTerm(const TermP& m);
NameSet fvTerm(const TermP& m);

TypeP applyType(const TypeP& a, const TySubst& s);
Row applyRow(const Row& r, const TySubst& s);
Presence applyPres(const Presence& p, const TySubst& s);

TypeP substTypeInType(const TypeP& a, const TyArg& arg, const Name& v);
TermP substTypeInTerm(const TermP& m, const TySubst& s);
TermP substTypeInTerm(const TermP& m, const Name& v, const TyArg& arg);
// M[N/x], capture-avoiding for both term and type binders.
TermP substTerm(const TermP& m, const TermP& n, const Name& x);

// Sorted bytewise by label; absent entries dropped when presenceAware. Throws on duplicate labels.
Row normalizeRow(const Row& r, bool presenceAware = true);
Row rowDifference(const Row& r, const Row& sub);
Row rowRestrict(const Row& r, const LabelSet& l);
Row rowConcat(const Row& r, const Row& s);

bool typeEqual(const TypeP& a, const TypeP& b);
bool rowEqual(const Row& a, const Row& b);
bool alphaEq(const TermP& m, const TermP& n);

int termSize(const TermP& m);
std::vector<TermP> children(const TermP& m);

// Label orders used by the presence translations. An empty priority list means bytewise.
struct LabelOrder {
  std::vector<Label> priority;
  bool less(const Label& a, const Label& b) const;
  std::vector<RowEntry> sorted(const Row& r) const;
};

}  // namespace rowlab
