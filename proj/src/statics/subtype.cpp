#include "rowlab/statics.hpp"

namespace rowlab {

const char* ruleName(SubtypeEvidence::Rule r) {
  switch (r) {
    case SubtypeEvidence::Rule::Var: return "S-Var";
    case SubtypeEvidence::Rule::Base: return "S-Base";
    case SubtypeEvidence::Rule::Fun: return "S-Fun";
    case SubtypeEvidence::Rule::Variant: return "S-Variant";
    case SubtypeEvidence::Rule::Record: return "S-Record";
  }
  return "?";
}

namespace {

bool plainRow(const Row& r) {
  if (r.tail) return false;
  for (auto& e : r.entries)
    if (e.pre.tag != Presence::Tag::Present) return false;
  return true;
}

std::optional<SubtypeEvidence> sub(SubMode mode, const TypeP& a, const TypeP& b) {
  if (mode == SubMode::None || a->tag != b->tag) return std::nullopt;
  SubtypeEvidence ev;
  ev.mode = mode;
  ev.lhs = a;
  ev.rhs = b;
  switch (a->tag) {
    case Type::Tag::Var:
      if (mode == SubMode::Simple || a->name != b->name) return std::nullopt;
      ev.rule = SubtypeEvidence::Rule::Var;
      return ev;
    case Type::Tag::Base:
      if (mode == SubMode::Simple || a->base != b->base) return std::nullopt;
      ev.rule = SubtypeEvidence::Rule::Base;
      return ev;
    case Type::Tag::Arrow: {
      if (mode == SubMode::Simple) return std::nullopt;
      ev.rule = SubtypeEvidence::Rule::Fun;
      auto c = sub(mode, a->cod, b->cod);
      if (!c) return std::nullopt;
      if (mode == SubMode::Covariant) {
        if (!typeEqual(a->dom, b->dom)) return std::nullopt;
        ev.premises = {*c};
        return ev;
      }
      auto d = sub(mode, b->dom, a->dom);
      if (!d) return std::nullopt;
      ev.premises = {*d, *c};
      return ev;
    }
    case Type::Tag::Variant:
    case Type::Tag::Record: {
      if (!plainRow(a->row) || !plainRow(b->row)) return std::nullopt;
      bool isVariant = a->tag == Type::Tag::Variant;
      ev.rule = isVariant ? SubtypeEvidence::Rule::Variant : SubtypeEvidence::Rule::Record;
      Row ra = normalizeRow(a->row), rb = normalizeRow(b->row);
      // The smaller row is the one whose labels must appear in the other.
      const Row& small = isVariant ? ra : rb;
      const Row& big = isVariant ? rb : ra;
      for (auto& e : small.entries) {
        auto o = big.find(e.label);
        if (!o) return std::nullopt;
        const TypeP& lo = isVariant ? e.type : o->type;
        const TypeP& hi = isVariant ? o->type : e.type;
        if (mode == SubMode::Simple) {
          if (!typeEqual(lo, hi)) return std::nullopt;
        } else {
          auto p = sub(mode, lo, hi);
          if (!p) return std::nullopt;
          ev.premises.push_back(*p);
        }
        ev.labels.push_back(e.label);
      }
      return ev;
    }
    default: return std::nullopt;
  }
}

TypeP lattice(const TypeP& a, const TypeP& b, bool join) {
  if (a->tag != b->tag) return nullptr;
  switch (a->tag) {
    case Type::Tag::Var: return a->name == b->name ? a : nullptr;
    case Type::Tag::Base: return a->base == b->base ? a : nullptr;
    case Type::Tag::Arrow: {
      auto d = lattice(a->dom, b->dom, !join);
      auto c = lattice(a->cod, b->cod, join);
      return d && c ? arrow(d, c) : nullptr;
    }
    case Type::Tag::Variant:
    case Type::Tag::Record: {
      if (!plainRow(a->row) || !plainRow(b->row)) return nullptr;
      Row ra = normalizeRow(a->row), rb = normalizeRow(b->row);
      bool isVariant = a->tag == Type::Tag::Variant;
      // Variants widen under join, records narrow.
      bool unionLabels = isVariant == join;
      Row out;
      for (auto& e : ra.entries) {
        auto o = rb.find(e.label);
        if (o) {
          auto t = lattice(e.type, o->type, join);
          if (!t) return nullptr;
          out.entries.push_back({e.label, Presence::present(), t});
        } else if (unionLabels) {
          out.entries.push_back(e);
        }
      }
      if (unionLabels)
        for (auto& e : rb.entries)
          if (!ra.find(e.label)) out.entries.push_back(e);
      out = normalizeRow(out);
      return isVariant ? variant(out) : record(out);
    }
    default: return typeEqual(a, b) ? a : nullptr;
  }
}

}  // namespace

std::optional<SubtypeEvidence> subtype(SubMode mode, const TypeP& a, const TypeP& b) { return sub(mode, a, b); }

bool isSubtype(SubMode mode, const TypeP& a, const TypeP& b) { return sub(mode, a, b).has_value(); }

TypeP joinFull(const TypeP& a, const TypeP& b) { return lattice(a, b, true); }
TypeP meetFull(const TypeP& a, const TypeP& b) { return lattice(a, b, false); }

}  // namespace rowlab
