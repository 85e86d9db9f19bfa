#include <algorithm>
#include <functional>

#include "rowlab/dynamics.hpp"
#include "rowlab/harness.hpp"
#include "rowlab/infer.hpp"

namespace rowlab {

Env harnessEnv() {
  Env e;
  e.delta = {{"a0", Kind::type()}, {"a1", Kind::type()}};
  e.gamma = {{"z0", tvar("a0"), false}, {"z1", tvar("a1"), false}};
  return e;
}

namespace {

struct GenFail {};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Remaining rank budget for records and variants to the left of arrows.
struct Rank {
  std::optional<int> rec, var;
  Rank dom() const {
    auto dec = [](std::optional<int> n) { return n ? std::optional<int>(std::max(0, *n - 1)) : n; };
    return {dec(rec), dec(var)};
  }
  bool records() const { return !rec || *rec > 0; }
  bool variants() const { return !var || *var > 0; }
};

// The explicit source a rank-1 calculus is generated from.
const char* rank1Source(const std::string& id) {
  if (id == "rec-row1") return "rec-sub-full-rank2";
  if (id == "rec-pre1") return "rec-sub-full-rank1";
  if (id == "var-row1") return "var-sub-full-rank1";
  if (id == "var-pre1") return "var-sub-full-rank2";
  return nullptr;
}

struct G {
  const CalculusConfig& c;
  const GenSpec& spec;
  std::mt19937_64 rng;
  Env env;
  int nextName = 0;
  int work = 0;

  G(const CalculusConfig& c, const GenSpec& s, std::uint64_t seed, Env e) : c(c), spec(s), rng(seed), env(std::move(e)) {}

  bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }
  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }
  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  template <class T>
  const T& choose(const std::vector<T>& xs) {
    return xs[pick(xs.size())];
  }

  size_t weighted(const std::vector<double>& ws) {
    double total = 0;
    for (double w : ws) total += w;
    double r = std::uniform_real_distribution<double>(0, total)(rng);
    for (size_t i = 0; i < ws.size(); ++i) {
      if (r < ws[i]) return i;
      r -= ws[i];
    }
    return ws.size() - 1;
  }

  Name fresh(const std::string& base) { return base + std::to_string(nextName++); }

  Rank top() const { return {c.recordRankLimit, c.variantRankLimit}; }

  std::vector<Name> deltaOf(Kind::Tag t) const {
    std::vector<Name> out;
    for (auto& [n, k] : env.delta)
      if (k.tag == t) out.push_back(n);
    return out;
  }

  // ---- types ----

  std::vector<Label> someLabels(int lo) {
    std::vector<Label> ls = spec.labels;
    std::shuffle(ls.begin(), ls.end(), rng);
    ls.resize(range(lo, (int)ls.size()));
    return ls;
  }

  Presence somePresence() {
    auto ps = deltaOf(Kind::Tag::Pre);
    if (!ps.empty() && coin(0.4)) return Presence::variable(choose(ps));
    if (coin(0.15)) return Presence::absent();
    return Presence::present();
  }

  void fixVariantPresence(Row& r) {
    if (!c.presence() || r.entries.empty()) return;
    for (auto& e : r.entries)
      if (e.pre.tag == Presence::Tag::Present) return;
    r.entries.front().pre = Presence::present();
  }

  std::optional<Name> tailFor(const LabelSet& ls) {
    std::vector<Name> out;
    for (auto& [n, k] : env.delta)
      if (k.tag == Kind::Tag::Row && k.lacks == ls) out.push_back(n);
    if (out.empty()) return std::nullopt;
    return choose(out);
  }

  TypeP rowType(bool isVariant, const std::vector<Label>& ls, int depth, bool positive, Rank rk, std::optional<Name> tail) {
    Row r;
    for (auto& l : ls) r.entries.push_back({l, c.presence() ? somePresence() : Presence::present(), type(depth - 1, positive, rk)});
    if (isVariant) fixVariantPresence(r);
    r.tail = tail;
    return isVariant ? variant(r) : record(r);
  }

  TypeP type(int depth, bool positive, Rank rk) {
    enum { Var, Arrow, Variant, Record, AllRow, AllPre };
    std::vector<int> opts{Var};
    std::vector<double> ws{1.0};
    if (depth > 0) {
      opts.push_back(Arrow), ws.push_back(1.5);
      if (c.variants && rk.variants()) opts.push_back(Variant), ws.push_back(2);
      if (c.records && rk.records()) opts.push_back(Record), ws.push_back(2);
      if (c.rowPoly == Poly::Higher) opts.push_back(AllRow), ws.push_back(0.8);
      if (c.presPoly == Poly::Higher) opts.push_back(AllPre), ws.push_back(0.8);
    }
    int k = opts[weighted(ws)];
    switch (k) {
      case Var: return tvar(coin(0.5) ? "a0" : "a1");
      case Arrow: {
        TypeP d = type(depth - 1, !positive, rk.dom());
        return arrow(d, type(depth - 1, positive, rk));
      }
      case Variant:
      case Record: break;
      case AllRow: {
        std::vector<Label> ls = someLabels(0);
        if (ls.size() > 2) ls.resize(2);
        Name r = fresh("r");
        LabelSet l(ls.begin(), ls.end());
        env.delta.push_back({r, Kind::row(l)});
        TypeP body;
        bool canVariant = c.variants && rk.variants();
        bool canRecord = c.records && rk.records() && !positive;
        if (coin(0.6) && (canVariant || canRecord)) {
          body = rowType(canVariant && (!canRecord || coin(0.5)), ls, depth, positive, rk, r);
        } else if (coin(0.5) && c.records && rk.dom().records()) {
          // the common shape: a function over an open record
          TypeP d = rowType(false, ls, depth - 1, !positive, rk.dom(), r);
          body = arrow(d, type(depth - 1, positive, rk));
        } else {
          body = type(depth - 1, positive, rk);
        }
        env.delta.pop_back();
        return forallRow(r, Kind::row(l), body);
      }
      case AllPre: {
        Name p = fresh("p");
        env.delta.push_back({p, Kind::pre()});
        TypeP body = type(depth - 1, positive, rk);
        env.delta.pop_back();
        return forallPres(p, body);
      }
    }
    bool isVariant = k == Variant;
    std::vector<Label> ls = someLabels(isVariant ? 1 : (coin(0.1) ? 0 : 1));
    std::optional<Name> tail;
    if (c.rowPoly == Poly::Higher && (isVariant || !positive) && coin(0.5)) tail = tailFor(LabelSet(ls.begin(), ls.end()));
    return rowType(isVariant, ls, depth, positive, rk, tail);
  }

  TypeP maybe(double p, const TypeP& a, const std::function<TypeP(const TypeP&)>& f) { return coin(p) ? f(a) : a; }

  // A subtype of b under the config's subtyping mode.
  TypeP subOf(const TypeP& b, int depth, Rank rk) {
    bool deep = c.sub != SubMode::Simple;
    auto down = [&](const TypeP& a) { return subOf(a, depth - 1, rk); };
    switch (b->tag) {
      case Type::Tag::Variant: {
        Row r;
        for (auto& e : b->row.entries)
          if (coin(0.7)) r.entries.push_back({e.label, e.pre, deep ? maybe(0.5, e.type, down) : e.type});
        if (r.entries.empty()) {
          auto& e = choose(b->row.entries);
          r.entries.push_back({e.label, e.pre, e.type});
        }
        return variant(r);
      }
      case Type::Tag::Record: {
        Row r;
        for (auto& e : b->row.entries) r.entries.push_back({e.label, e.pre, deep ? maybe(0.5, e.type, down) : e.type});
        for (auto& l : spec.labels)
          if (!b->row.find(l) && coin(0.5)) r.entries.push_back({l, Presence::present(), type(std::max(0, depth - 1), true, rk)});
        std::shuffle(r.entries.begin(), r.entries.end(), rng);
        return record(r);
      }
      case Type::Tag::Arrow: {
        if (!deep) return b;
        TypeP d = b->dom;
        if (c.sub == SubMode::Full) d = maybe(0.5, d, [&](const TypeP& a) { return superOf(a, depth - 1, rk.dom()); });
        return arrow(d, maybe(0.6, b->cod, down));
      }
      default: return b;
    }
  }

  TypeP superOf(const TypeP& a, int depth, Rank rk) {
    auto up = [&](const TypeP& x) { return superOf(x, depth - 1, rk); };
    switch (a->tag) {
      case Type::Tag::Variant: {
        Row r;
        for (auto& e : a->row.entries) r.entries.push_back({e.label, e.pre, maybe(0.5, e.type, up)});
        for (auto& l : spec.labels)
          if (!a->row.find(l) && coin(0.4)) r.entries.push_back({l, Presence::present(), type(std::max(0, depth - 1), false, rk)});
        return variant(r);
      }
      case Type::Tag::Record: {
        Row r;
        for (auto& e : a->row.entries)
          if (coin(0.6)) r.entries.push_back({e.label, e.pre, maybe(0.5, e.type, up)});
        return record(r);
      }
      case Type::Tag::Arrow: {
        TypeP d = a->dom;
        if (c.sub == SubMode::Full) d = maybe(0.5, d, [&](const TypeP& x) { return subOf(x, depth - 1, rk.dom()); });
        return arrow(d, maybe(0.6, a->cod, up));
      }
      default: return a;
    }
  }

  bool upcastable(const TypeP& goal) const {
    if (c.sub == SubMode::None) return false;
    if (c.sub == SubMode::Simple) return goal->tag == Type::Tag::Variant || goal->tag == Type::Tag::Record;
    return true;
  }

  // ---- type-abstraction sites: row occurrences outside inner binders ----

  struct Site {
    std::vector<int> path;  // 0 = dom, 1 = cod, k+2 = row entry k
    bool positive;
    bool isVariant;
  };

  void sites(const TypeP& a, std::vector<int>& path, bool positive, std::vector<Site>& out) const {
    switch (a->tag) {
      case Type::Tag::Arrow:
        path.push_back(0), sites(a->dom, path, !positive, out), path.pop_back();
        path.push_back(1), sites(a->cod, path, positive, out), path.pop_back();
        return;
      case Type::Tag::Variant:
      case Type::Tag::Record:
        out.push_back({path, positive, a->tag == Type::Tag::Variant});
        for (size_t i = 0; i < a->row.entries.size(); ++i) {
          path.push_back((int)i + 2);
          sites(a->row.entries[i].type, path, positive, out);
          path.pop_back();
        }
        return;
      default: return;
    }
  }

  static const TypeP& at(const TypeP& a, const std::vector<int>& path, size_t i = 0) {
    if (i == path.size()) return a;
    int k = path[i];
    if (k == 0) return at(a->dom, path, i + 1);
    if (k == 1) return at(a->cod, path, i + 1);
    return at(a->row.entries[k - 2].type, path, i + 1);
  }

  static TypeP replaceAt(const TypeP& a, const std::vector<int>& path, const TypeP& x, size_t i = 0) {
    if (i == path.size()) return x;
    int k = path[i];
    if (k == 0) return arrow(replaceAt(a->dom, path, x, i + 1), a->cod);
    if (k == 1) return arrow(a->dom, replaceAt(a->cod, path, x, i + 1));
    Row r = a->row;
    r.entries[k - 2].type = replaceAt(r.entries[k - 2].type, path, x, i + 1);
    return a->tag == Type::Tag::Variant ? variant(r) : record(r);
  }

  static int presentCount(const Row& r) {
    int n = 0;
    for (auto& e : r.entries) n += e.pre.tag == Presence::Tag::Present;
    return n;
  }

  // goal = G[S] where G = ∀ρ.goal' ; returns the row argument and the generalised type.
  std::optional<std::pair<Row, TypeP>> rowGeneralise(const TypeP& goal) {
    std::vector<Site> ss;
    std::vector<int> path;
    sites(goal, path, true, ss);
    std::vector<Site> ok;
    for (auto& s : ss)
      if (s.isVariant || !s.positive) ok.push_back(s);
    if (ok.empty()) return std::nullopt;
    const Site& s = choose(ok);
    const TypeP& node = at(goal, s.path);
    Row keep, arg;
    for (auto& e : node->row.entries) (coin(0.5) ? arg : keep).entries.push_back(e);
    arg.tail = node->row.tail;
    if (s.isVariant && s.positive && presentCount(keep) == 0) {
      // move one present entry back
      for (size_t i = 0; i < arg.entries.size(); ++i)
        if (arg.entries[i].pre.tag == Presence::Tag::Present) {
          keep.entries.push_back(arg.entries[i]);
          arg.entries.erase(arg.entries.begin() + i);
          break;
        }
      if (presentCount(keep) == 0) return std::nullopt;
    }
    Name r = fresh("r");
    keep.tail = r;
    LabelSet l = keep.labels();
    TypeP replaced = replaceAt(goal, s.path, s.isVariant ? variant(keep) : record(keep));
    return std::make_pair(arg, forallRow(r, Kind::row(l), replaced));
  }

  std::optional<std::pair<Presence, TypeP>> presGeneralise(const TypeP& goal) {
    std::vector<Site> ss;
    std::vector<int> path;
    sites(goal, path, true, ss);
    std::vector<std::pair<Site, size_t>> ok;
    for (auto& s : ss) {
      const TypeP& node = at(goal, s.path);
      for (size_t i = 0; i < node->row.entries.size(); ++i) {
        bool lastPresent = s.isVariant && s.positive && node->row.entries[i].pre.tag == Presence::Tag::Present &&
                           presentCount(node->row) == 1;
        if (!lastPresent) ok.push_back({s, i});
      }
    }
    if (ok.empty()) return std::nullopt;
    auto& [s, i] = choose(ok);
    const TypeP& node = at(goal, s.path);
    Row r = node->row;
    Presence old = r.entries[i].pre;
    Name p = fresh("p");
    r.entries[i].pre = Presence::variable(p);
    TypeP replaced = replaceAt(goal, s.path, s.isVariant ? variant(r) : record(r));
    return std::make_pair(old, forallPres(p, replaced));
  }

  // ---- terms ----

  std::vector<Name> varsOf(const std::function<bool(const TypeP&)>& pred) const {
    std::vector<Name> out;
    NameSet seen;
    for (auto it = env.gamma.rbegin(); it != env.gamma.rend(); ++it) {
      if (!seen.insert(it->name).second) continue;
      if (pred(it->type)) out.push_back(it->name);
    }
    return out;
  }

  TermP under(const Name& x, const TypeP& a, bool letBound, const std::function<TermP()>& f) {
    env.gamma.push_back({x, a, letBound});
    TermP t = f();
    env.gamma.pop_back();
    return t;
  }

  TermP intro(const TypeP& goal, int size) {
    switch (goal->tag) {
      case Type::Tag::Arrow: {
        Name x = fresh("x");
        return lam(x, goal->dom, under(x, goal->dom, false, [&] { return term(goal->cod, size - 1); }));
      }
      case Type::Tag::Variant: {
        std::vector<const RowEntry*> es;
        for (auto& e : goal->row.entries)
          if (e.pre.tag == Presence::Tag::Present) es.push_back(&e);
        if (es.empty()) throw GenFail{};
        const RowEntry* e = choose(es);
        return inject(e->label, term(e->type, size - 1), goal);
      }
      case Type::Tag::Record: {
        if (goal->row.tail) throw GenFail{};
        std::vector<Field> fs;
        int n = std::max<int>(1, goal->row.entries.size());
        for (auto& e : goal->row.entries) fs.push_back({e.label, term(e.type, std::max(1, (size - 1) / n))});
        return recordIntro(fs, c.presence() ? goal : nullptr);
      }
      case Type::Tag::ForallRow:
      case Type::Tag::ForallPres: {
        bool isRow = goal->tag == Type::Tag::ForallRow;
        Name v = goal->name;
        TypeP body = goal->cod;
        if (env.kindOf(v)) {
          Name w = fresh(isRow ? "r" : "p");
          body = substTypeInType(body, isRow ? TyArg(Row{{}, w}) : TyArg(Presence::variable(w)), v);
          v = w;
        }
        env.delta.push_back({v, isRow ? goal->kind : Kind::pre()});
        TermP m = term(body, size - 1);
        env.delta.pop_back();
        return isRow ? rowAbs(v, goal->kind, m) : presAbs(v, m);
      }
      default: throw GenFail{};
    }
  }

  TermP term(const TypeP& goal, int size) {
    if (++work > 4000) throw GenFail{};
    enum { Var, Intro, Upcast, App, AppVar, Project, Case, RowApp, PreApp, Let };
    auto same = varsOf([&](const TypeP& a) { return typeEqual(a, goal); });
    auto fns = varsOf([&](const TypeP& a) { return a->tag == Type::Tag::Arrow && typeEqual(a->cod, goal); });
    std::vector<int> opts;
    std::vector<double> ws;
    auto add = [&](int o, double w) { opts.push_back(o), ws.push_back(w); };
    bool hasIntro = goal->tag != Type::Tag::Var && goal->tag != Type::Tag::Base &&
                    !(goal->tag == Type::Tag::Record && goal->row.tail);
    if (!same.empty()) add(Var, size <= 1 ? 20 : 1);
    if (hasIntro) add(Intro, 2);
    if (size >= 2) {
      if (upcastable(goal)) add(Upcast, spec.upcastWeight);
      if (!fns.empty()) add(AppVar, 1.5);
      if (size >= 3) add(App, 1);
      if (c.records) add(Project, 0.7);
      if (c.variants && size >= 3) add(Case, 0.7);
      if (c.rowPoly == Poly::Higher) add(RowApp, 1);
      if (c.presPoly == Poly::Higher) add(PreApp, 1);
      if (c.allowLet() && size >= 3) add(Let, 0.6);
    }
    if (opts.empty()) throw GenFail{};
    switch (opts[weighted(ws)]) {
      case Var: return var(choose(same));
      case Intro: return intro(goal, size);
      case Upcast: {
        TypeP a = subOf(goal, spec.typeDepth, top());
        return upcast(term(a, size - 1), goal);
      }
      case AppVar: {
        Name f = choose(fns);
        return app(var(f), term(env.lookup(f)->type->dom, size - 1));
      }
      case App: {
        TypeP x = type(1, true, top().dom());
        int fs = std::max(1, (size - 1) * 2 / 3);
        TermP f = term(arrow(x, goal), fs);
        return app(f, term(x, std::max(1, size - 1 - fs)));
      }
      case Project: {
        if (!top().records()) throw GenFail{};
        Label l = choose(spec.labels);
        Row r;
        r.entries.push_back({l, Presence::present(), goal});
        for (auto& o : spec.labels)
          if (o != l && coin(0.4)) r.entries.push_back({o, c.presence() ? somePresence() : Presence::present(), type(1, true, top())});
        std::shuffle(r.entries.begin(), r.entries.end(), rng);
        return project(term(record(r), size - 1), l);
      }
      case Case: {
        if (!top().variants()) throw GenFail{};
        std::vector<Label> ls = someLabels(1);
        Row r;
        for (auto& l : ls) r.entries.push_back({l, c.presence() ? somePresence() : Presence::present(), type(1, true, top())});
        fixVariantPresence(r);
        TypeP s = variant(r);
        int ss = std::max(1, size / 3);
        TermP scrut = term(s, ss);
        std::vector<Branch> bs;
        int n = std::max<int>(1, r.entries.size());
        for (auto& e : r.entries) {
          if (e.pre.tag == Presence::Tag::Absent && coin(0.5)) continue;
          Name x = fresh("y");
          bs.push_back({e.label, x, under(x, e.type, false, [&] { return term(goal, std::max(1, (size - 1 - ss) / n)); })});
        }
        return caseOf(scrut, bs);
      }
      case RowApp: {
        auto g = rowGeneralise(goal);
        if (!g) throw GenFail{};
        return rowApp(term(g->second, size - 1), g->first);
      }
      case PreApp: {
        auto g = presGeneralise(goal);
        if (!g) throw GenFail{};
        return presApp(term(g->second, size - 1), g->first);
      }
      case Let: {
        TypeP x = type(1, true, top());
        int bsz = std::max(1, size / 3);
        TermP bound = term(x, bsz);
        Name v = fresh("w");
        return let(v, bound, under(v, x, true, [&] { return term(goal, std::max(1, size - 1 - bsz)); }));
      }
    }
    throw GenFail{};
  }
};

Derivation checkGenerated(const CalculusConfig& c, const Env& env, const TermP& m) {
  try {
    return typeCheck(c, env, m);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Rank) throw GenFail{};
    fail(ErrorKind::Internal, std::string("generator produced an ill-typed ") + c.id + " term: " + e.what() + "\n  " + show(m));
  }
}

}  // namespace

Generator::Generator(GenSpec spec) : spec_(std::move(spec)), config_(configById(spec_.config)) {}

Generated Generator::at(std::uint64_t index) {
  std::uint64_t seed = mix(spec_.seed ^ mix(index + 1));
  const char* src = rank1Source(config_.id);
  const CalculusConfig& gc = src ? configById(src) : config_;
  for (int attempt = 0; attempt < spec_.retries; ++attempt) {
    G g(gc, spec_, mix(seed + attempt), harnessEnv());
    try {
      int size = g.range(3, spec_.maxSize);
      TypeP goal = g.type(spec_.typeDepth, true, g.top());
      TermP m = g.term(goal, size);
      if (termSize(m) > spec_.maxSize) continue;
      Derivation d = checkGenerated(gc, g.env, m);
      if (src) {
        m = erase(m);
        try {
          d = typeCheck(config_, g.env, m);
        } catch (const Error&) {
          continue;  // not every erased rank-limited term need be typable in the rank-1 target
        }
      }
      return {g.env, m, d, seed, config_.id};
    } catch (const GenFail&) {
    }
  }
  fail(ErrorKind::Generation, "no term generated for " + config_.id + " after " + std::to_string(spec_.retries) + " attempts");
}

Generator::Pair Generator::pairAt(std::uint64_t index) {
  std::uint64_t seed = mix(spec_.seed ^ mix(index + 1) ^ 0x5bd1e995ULL);
  for (int attempt = 0; attempt < spec_.retries; ++attempt) {
    G g(config_, spec_, mix(seed + attempt), harnessEnv());
    try {
      TypeP x = g.type(1, true, g.top());
      Env open = harnessEnv();
      open.gamma.push_back({"v", x, false});
      G go(config_, spec_, mix(seed + attempt + 7777), open);
      TypeP goal = go.type(spec_.typeDepth, true, go.top());
      TermP m = go.term(goal, go.range(3, spec_.maxSize));
      if (termSize(m) > spec_.maxSize || !fvTerm(m).count("v")) continue;
      Derivation dm = checkGenerated(config_, open, m);
      TermP n = g.term(x, g.range(1, std::max(2, spec_.maxSize / 2)));
      Derivation dn = checkGenerated(config_, g.env, n);
      return {{open, m, dm, seed, config_.id}, {g.env, n, dn, seed, config_.id}, "v"};
    } catch (const GenFail&) {
    }
  }
  fail(ErrorKind::Generation, "no substitution pair generated for " + config_.id);
}

Generated Generator::inhabit(const Env& env, const TypeP& goal, std::uint64_t seed) {
  for (int attempt = 0; attempt < spec_.retries; ++attempt) {
    G g(config_, spec_, mix(seed + attempt), env);
    try {
      TermP m = g.term(goal, g.range(1, spec_.maxSize));
      return {env, m, checkGenerated(config_, env, m), seed, config_.id};
    } catch (const GenFail&) {
    }
  }
  fail(ErrorKind::Generation, "no inhabitant of " + show(goal));
}

}  // namespace rowlab
