#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rowlab {

enum class SubMode { None, Simple, Covariant, Full };
enum class Poly { None, Higher, Rank1 };

struct CalculusConfig {
  std::string id;
  std::string display;
  bool variants = false;
  bool records = false;
  SubMode sub = SubMode::None;
  Poly rowPoly = Poly::None;
  Poly presPoly = Poly::None;
  bool builtins = true;
  std::optional<int> recordRankLimit;
  std::optional<int> variantRankLimit;

  bool rank1() const { return rowPoly == Poly::Rank1 || presPoly == Poly::Rank1; }
  bool allowLet() const { return rank1() || recordRankLimit || variantRankLimit; }
  bool presence() const { return presPoly != Poly::None; }
};

const CalculusConfig& configById(const std::string& id);
const std::vector<CalculusConfig>& allConfigs();
const char* subModeName(SubMode m);

}  // namespace rowlab
