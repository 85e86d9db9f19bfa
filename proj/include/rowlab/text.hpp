#pragma once

#include <string>
#include <vector>

#include "rowlab/syntax.hpp"

namespace rowlab {

struct GammaEntry {
  Name name;
  TypeP type;
  bool letBound = false;
};

// Δ and Γ, in declaration order. Later entries shadow earlier ones.
struct Env {
  std::vector<std::pair<Name, Kind>> delta;
  std::vector<GammaEntry> gamma;

  const Kind* kindOf(const Name& n) const;
  const GammaEntry* lookup(const Name& x) const;
};

struct Program {
  Env env;
  TermP term;
};

std::string show(const TypeP& a);
std::string show(const Row& r);
std::string show(const Presence& p);
std::string show(const Kind& k);
std::string show(const TermP& m);
std::string show(const Env& e);

TypeP parseType(const std::string& src);
Row parseRow(const std::string& src);
TermP parseTerm(const std::string& src);
// A term preceded by optional "-- env:" header lines; other "--" lines are comments.
Program parseProgram(const std::string& src);

}  // namespace rowlab
