#pragma once

#include <map>
#include <string>
#include <vector>

#include "rowlab/config.hpp"
#include "rowlab/statics.hpp"
#include "rowlab/syntax.hpp"
#include "rowlab/text.hpp"

namespace rowlab {

// Prenex scheme; quantified variables may have any kind.
struct TypeScheme {
  std::vector<std::pair<Name, Kind>> vars;
  TypeP body;
};

std::string show(const TypeScheme& s);
// Reads prenex row and presence quantifiers off a type.
TypeScheme schemeOf(const TypeP& a);
// Renames quantified variables to a0.., r0.., p0.. in order of first occurrence.
TypeScheme canonicalize(const TypeScheme& s);

// First-order unification over value, row and presence variables.
// Variables not registered as flexible are rigid.
class Unifier {
 public:
  explicit Unifier(bool presenceAware = false) : presenceAware_(presenceAware) {}

  Name freshType();
  Name freshRow(LabelSet lacks);
  Name freshPre();
  void addFlex(const Name& n, Kind k);
  void setRigidKind(const Name& n, Kind k);

  void unify(const TypeP& a, const TypeP& b);
  void unifyRows(const Row& a, const Row& b);
  void unifyPres(const Presence& a, const Presence& b);

  TypeP zonk(const TypeP& a) const;
  Row zonkRow(const Row& r) const;
  Presence zonkPres(const Presence& p) const;

  bool isFlex(const Name& n) const { return flex_.count(n) > 0; }
  bool isBound(const Name& n) const { return binds_.count(n) > 0; }
  const Kind* flexKind(const Name& n) const;
  const TySubst& bindings() const { return binds_; }
  // Flexible variables not yet bound.
  NameSet unboundFlex(const NameSet& among) const;

  Fresh fresh;

 private:
  TypeP resolve(const TypeP& a) const;
  void bind(const Name& v, TyArg x);
  LabelSet lacksOf(const Name& rowVar) const;

  bool presenceAware_;
  std::map<Name, Kind> flex_;
  std::map<Name, Kind> rigid_;
  TySubst binds_;
};

struct InferResult {
  TypeScheme scheme;
  Derivation derivation;
  TypeP type;  // ungeneralised principal type of the term
  TySubst substitution;
};

// In var-pre1 an injection's closed row spans every label of the program plus `labels`.
InferResult inferFull(const CalculusConfig& c, const Env& env, const TermP& m, const LabelSet& labels = {});
TypeScheme infer(const CalculusConfig& c, const Env& env, const TermP& m, const LabelSet& labels = {});
// Labels occurring in a term or its annotations.
LabelSet termLabels(const TermP& m);
Derivation inferDerivation(const CalculusConfig& c, const Env& env, const TermP& m);

// Does every instance of `specific` arise as an instance of `general`?
bool schemeInstanceOf(const TypeScheme& general, const TypeScheme& specific);
bool schemeEquivalent(const TypeScheme& a, const TypeScheme& b);

}  // namespace rowlab
