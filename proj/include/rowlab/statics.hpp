#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rowlab/config.hpp"
#include "rowlab/syntax.hpp"
#include "rowlab/text.hpp"

namespace rowlab {

struct SubtypeEvidence {
  enum class Rule { Var, Base, Fun, Variant, Record };
  Rule rule = Rule::Var;
  SubMode mode = SubMode::Full;
  TypeP lhs, rhs;
  // Fun: {domain, codomain} in full mode, {codomain} in covariant mode. Variant/Record: one per compared label, in `labels` order.
  std::vector<SubtypeEvidence> premises;
  std::vector<Label> labels;
};

const char* ruleName(SubtypeEvidence::Rule r);

struct Derivation {
  std::string rule;
  std::shared_ptr<const Env> env;
  TermP term;
  TypeP type;
  std::vector<Derivation> premises;
  std::optional<SubtypeEvidence> evidence;
};

// Kinding. Throws Error(Kind) on failure.
void kindCheck(const Env& env, const TypeP& a);
void kindCheckRow(const Env& env, const Row& r, const LabelSet& lacks);
// Rejects type forms outside the calculus.
void checkTypeFeatures(const CalculusConfig& c, const TypeP& a);

std::optional<SubtypeEvidence> subtype(SubMode mode, const TypeP& a, const TypeP& b);
bool isSubtype(SubMode mode, const TypeP& a, const TypeP& b);
// Least upper / greatest lower bounds under full subtyping, when they exist.
TypeP joinFull(const TypeP& a, const TypeP& b);
TypeP meetFull(const TypeP& a, const TypeP& b);

Derivation typeCheck(const CalculusConfig& c, const Env& env, const TermP& m);
TypeP typeOf(const CalculusConfig& c, const Env& env, const TermP& m);

bool recrank(int n, const TypeP& a);
bool varrank(int n, const TypeP& a);
bool checkRankLimit(const CalculusConfig& c, const TypeP& a);
// Every annotation and every intermediate type of the derivation.
bool checkRankLimit(const CalculusConfig& c, const Derivation& d);

// Minimal type under the algorithmic full system (application subsumes). Upcasts are ignored.
TypeP algType(const Env& env, const TermP& m);

std::string judgment(const Derivation& d);
std::string derivationJson(const Derivation& d, int indent = -1);

}  // namespace rowlab
