#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rowlab/config.hpp"
#include "rowlab/statics.hpp"
#include "rowlab/syntax.hpp"
#include "rowlab/text.hpp"
#include "rowlab/translate.hpp"

namespace rowlab {

struct GenSpec {
  std::string config;
  int maxSize = 12;
  std::vector<Label> labels{"a", "b", "c"};
  std::uint64_t seed = 1;
  int typeDepth = 2;
  double upcastWeight = 3.0;
  int retries = 200;
};

struct Generated {
  Env env;
  TermP term;
  Derivation derivation;
  std::uint64_t seed = 0;
  std::string config;
};

// Δ = a0, a1 : Type and Γ = z0 : a0, z1 : a1.
Env harnessEnv();

class Generator {
 public:
  explicit Generator(GenSpec spec);

  // Case i of the sequence; the same spec and index always give the same term.
  Generated at(std::uint64_t index);
  Generated next() { return at(index_++); }

  // A term with a free λ-bound variable x : X, and a closed term of type X.
  struct Pair {
    Generated open;
    Generated arg;
    Name x;
  };
  Pair pairAt(std::uint64_t index);

  // Inhabitant of a given type under env, for tests.
  Generated inhabit(const Env& env, const TypeP& goal, std::uint64_t seed);

  const GenSpec& spec() const { return spec_; }
  const CalculusConfig& config() const { return config_; }

 private:
  GenSpec spec_;
  const CalculusConfig& config_;
  std::uint64_t index_ = 0;
};

struct Failure {
  std::uint64_t seed = 0;
  int size = 0;
  std::string term, expected, got;
};

struct PropertyReport {
  std::string property, subject;
  std::uint64_t seed = 0;
  int depth = 0;
  int cases = 0;
  std::vector<Failure> failures;
  double elapsedMs = 0;
  std::map<std::string, double> stats;
  bool pass() const { return failures.empty(); }
};

std::string reportJson(const PropertyReport& r, int indent = 2);

// Single-case checks. nullopt means the property holds.
std::optional<std::string> checkTypePreservation(TranslationId id, const Generated& g);
std::optional<std::string> checkSimulation(TranslationId id, const Generated& g, int depth);
std::optional<std::string> checkReflection(TranslationId id, const Generated& g, int depth);
std::optional<std::string> checkErasureLaw(TranslationId id, const Generated& g);
std::optional<std::string> checkErasureCorrespondence(const Generated& g, int depth);
std::optional<std::string> checkSubjectReduction(const CalculusConfig& c, const Generated& g, int depth);
std::optional<std::string> checkWeakPreservation(const Generated& g);
std::optional<std::string> checkSubstLemma(TranslationId id, const Generator::Pair& p);

struct VerifyOptions {
  std::string property;     // see propertyIds()
  std::string translation;  // T1..T7-var-pre, for translation properties
  std::string calculus;     // source config; defaults from the translation
  int count = 100;
  std::uint64_t seed = 1;
  int depth = 3;
  int maxSize = 12;
};

const std::vector<std::string>& propertyIds();
PropertyReport verify(const VerifyOptions& opt);

}  // namespace rowlab
