#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rowlab/config.hpp"
#include "rowlab/infer.hpp"
#include "rowlab/statics.hpp"
#include "rowlab/syntax.hpp"
#include "rowlab/text.hpp"

namespace rowlab {

enum class TranslationId { T1, T2, T3, T4, T5, T6, T7RecRow, T7RecPre, T7VarRow, T7VarPre };

struct TranslationInfo {
  TranslationId id;
  std::string name;
  std::string from, to;
  bool typed;  // has a type translation to compare against
};

const std::vector<TranslationInfo>& translations();
const TranslationInfo& translationInfo(TranslationId id);
// Throws Unsupported for pairs outside the supported set.
const TranslationInfo& findTranslation(const std::string& from, const std::string& to);
const TranslationInfo& translationByName(const std::string& name);

struct TranslateOptions {
  LabelOrder order;        // record label order for the presence translations
  bool normalize = false;  // beta-normalise each coercion
};

struct TranslationResult {
  TermP term;
  Env env;        // translated context
  TypeP type;     // translated type, when the translation has a type map
  std::optional<TypeScheme> scheme;  // rank-2 records only
};

TranslationResult translate(TranslationId id, const Derivation& d, const Env& env, const TranslateOptions& opt = {});

// Individual pieces, exposed for tests.
TermP t1(const Derivation& d, Fresh& fresh);
TypeP t2Type(const TypeP& a, Fresh& fresh);
TermP t2(const Derivation& d, Fresh& fresh);
TermP t3(const Derivation& d);
TypeP t4Type(const TypeP& a, const LabelOrder& order, Fresh& fresh);
TermP t4(const Derivation& d, const LabelOrder& order, Fresh& fresh);
TermP coerce(const SubtypeEvidence& ev, Fresh& fresh);
TermP t5(const Derivation& d, Fresh& fresh, bool normalizeCoercions = false);

// Global type-only translation for covariant records.
std::vector<Presence> presSeq(const Presence& p, const TypeP& a, const LabelOrder& order, Fresh& fresh);
std::pair<std::vector<Name>, std::vector<Presence>> presSeqSub(const SubtypeEvidence& ev, const LabelOrder& order, Fresh& fresh);
TypeP t6Type(const TypeP& a, const LabelOrder& order, Fresh& fresh);
TypeP t6TypeInst(const TypeP& a, const std::vector<Presence>& ps, const LabelOrder& order, Fresh& fresh);
TermP t6(const Derivation& d, const LabelOrder& order, Fresh& fresh);

// Erasure into the rank-1 calculi.
TermP t7(const CalculusConfig& source, const Derivation& d);

// Type and environment translations for rank-2 records into rank-1 row polymorphism.
std::vector<std::pair<Name, Kind>> rowSeqA(const TypeP& a, Fresh& fresh);
std::vector<std::pair<Name, Kind>> rowSeqB(const TypeP& a, Fresh& fresh);
TypeP translA(const TypeP& a, const std::vector<Row>& rows);
TypeP translB(const TypeP& a, const std::vector<Row>& rows);
TypeScheme translA(const TypeP& a, Fresh& fresh);
Env envTranslate9(const Env& env, Fresh& fresh);
// The auxiliary relation that only considers row variables; free variables are rigid.
bool weakSub(const TypeScheme& tau, const TypeScheme& sigma);
// Rows R̄ with translB(A, R̄) = tau, for tau ⪯· ≤ A.
std::vector<Row> rowInstForSub(const TypeP& tau, const TypeP& a);

}  // namespace rowlab
