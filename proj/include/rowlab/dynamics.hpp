#pragma once

#include <string>
#include <vector>

#include "rowlab/config.hpp"
#include "rowlab/syntax.hpp"

namespace rowlab {

struct RelationSet {
  bool beta = true;
  bool upcast = false;      // simple upcast rules on variant injections and record literals
  bool upcastFull = false;  // the four structural upcast rules of the full calculus
  bool nested = false;      // M :> A :> B  ~>  M :> B
  bool tau = false;         // type application with source origin
  bool nu = false;          // type application with upcast origin

  static RelationSet betaOnly() { return {}; }
  static RelationSet all() { return {true, true, false, true, true, true}; }
  static RelationSet forConfig(const CalculusConfig& c);
};

using Path = std::vector<int>;

struct Step {
  TermP result;
  std::string rule;
  Path position;
};

// Every one-step reduct, leftmost-outermost first.
std::vector<Step> stepAll(const TermP& m, const RelationSet& rels);
TermP normalize(const TermP& m, const RelationSet& rels, int fuel = 10000, std::vector<Step>* trace = nullptr);

// Removes upcasts, annotations and type abstraction/application.
TermP erase(const TermP& m);
// Untyped preorder: records on the left may carry extra fields.
bool termPreorder(const TermP& m, const TermP& n);

bool isValue(const TermP& m);
std::string showPath(const Path& p);

}  // namespace rowlab
