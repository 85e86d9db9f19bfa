#include "rowlab/config.hpp"

#include "rowlab/syntax.hpp"

namespace rowlab {

namespace {

CalculusConfig mk(std::string id, std::string display, bool v, bool r, SubMode s = SubMode::None,
                  Poly row = Poly::None, Poly pre = Poly::None) {
  CalculusConfig c;
  c.id = std::move(id);
  c.display = std::move(display);
  c.variants = v;
  c.records = r;
  c.sub = s;
  c.rowPoly = row;
  c.presPoly = pre;
  return c;
}

std::vector<CalculusConfig> build() {
  using S = SubMode;
  using P = Poly;
  std::vector<CalculusConfig> cs = {
      mk("lambda", "λ", false, false),
      mk("var", "λ⟨⟩", true, false),
      mk("var-sub", "λ⟨⟩≤", true, false, S::Simple),
      mk("var-sub-co", "λ⟨⟩≤co", true, false, S::Covariant),
      mk("var-sub-full", "λ⟨⟩≤full", true, false, S::Full),
      mk("var-row", "λ⟨⟩ρ", true, false, S::None, P::Higher),
      mk("var-pre", "λ⟨⟩θ", true, false, S::None, P::None, P::Higher),
      mk("var-row-pre", "λ⟨⟩ρθ", true, false, S::None, P::Higher, P::Higher),
      mk("var-row1", "λ⟨⟩ρ1", true, false, S::None, P::Rank1),
      mk("var-pre1", "λ⟨⟩θ1", true, false, S::None, P::None, P::Rank1),
      mk("rec", "λ[]", false, true),
      mk("rec-sub", "λ[]≤", false, true, S::Simple),
      mk("rec-sub-co", "λ[]≤co", false, true, S::Covariant),
      mk("rec-sub-full", "λ[]≤full", false, true, S::Full),
      mk("rec-row", "λ[]ρ", false, true, S::None, P::Higher),
      mk("rec-pre", "λ[]θ", false, true, S::None, P::None, P::Higher),
      mk("rec-row-pre", "λ[]ρθ", false, true, S::None, P::Higher, P::Higher),
      mk("rec-row1", "λ[]ρ1", false, true, S::None, P::Rank1),
      mk("rec-pre1", "λ[]θ1", false, true, S::None, P::None, P::Rank1),
      mk("var-rec", "λ⟨⟩[]", true, true),
      mk("var-rec-sub-full", "λ⟨⟩[]≤full", true, true, S::Full),
  };
  auto limited = [&](std::string id, std::string display, bool v, int n) {
    auto c = mk(std::move(id), std::move(display), v, !v, S::Full);
    if (v)
      c.variantRankLimit = n;
    else
      c.recordRankLimit = n;
    cs.push_back(c);
  };
  limited("rec-sub-full-rank2", "λ[]≤full (record rank 2)", false, 2);
  limited("rec-sub-full-rank1", "λ[]≤full (record rank 1)", false, 1);
  limited("var-sub-full-rank1", "λ⟨⟩≤full (variant rank 1)", true, 1);
  limited("var-sub-full-rank2", "λ⟨⟩≤full (variant rank 2)", true, 2);
  return cs;
}

}  // namespace

const std::vector<CalculusConfig>& allConfigs() {
  static const std::vector<CalculusConfig> cs = build();
  return cs;
}

const CalculusConfig& configById(const std::string& id) {
  for (auto& c : allConfigs())
    if (c.id == id) return c;
  std::string known;
  for (auto& c : allConfigs()) known += (known.empty() ? "" : ", ") + c.id;
  fail(ErrorKind::Unsupported, "unknown calculus '" + id + "' (known: " + known + ")");
}

const char* subModeName(SubMode m) {
  switch (m) {
    case SubMode::None: return "none";
    case SubMode::Simple: return "simple";
    case SubMode::Covariant: return "covariant";
    case SubMode::Full: return "full";
  }
  return "none";
}

}  // namespace rowlab
