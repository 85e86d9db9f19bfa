#include "rowlab/rowlab.h"

#include <cstring>
#include <sstream>

#include "json.hpp"
#include "rowlab/dynamics.hpp"
#include "rowlab/harness.hpp"
#include "rowlab/infer.hpp"
#include "rowlab/statics.hpp"
#include "rowlab/translate.hpp"

struct rowlab_ctx {
  std::string error;
};

struct rowlab_program {
  rowlab::Program prog;
};

namespace {

using namespace rowlab;
using nlohmann::json;

struct ArgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

rowlab_status statusOf(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return ROWLAB_E_PARSE;
    case ErrorKind::Kind:
    case ErrorKind::Type:
    case ErrorKind::Subtype:
    case ErrorKind::Unify:
    case ErrorKind::Malformed: return ROWLAB_E_TYPE;
    case ErrorKind::Rank: return ROWLAB_E_RANK;
    case ErrorKind::Fuel: return ROWLAB_E_FUEL;
    case ErrorKind::Unsupported: return ROWLAB_E_UNSUPPORTED;
    default: return ROWLAB_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
rowlab_status guard(rowlab_ctx* ctx, char** out, F&& f) {
  if (!ctx) return ROWLAB_E_ARG;
  ctx->error.clear();
  if (out) *out = nullptr;
  try {
    std::string s;
    rowlab_status st = f(s);
    if (out) *out = dup(s);
    return st;
  } catch (const Error& e) {
    ctx->error = std::string(errorKindName(e.kind())) + ": " + e.what();
    return statusOf(e.kind());
  } catch (const ArgError& e) {
    ctx->error = e.what();
    return ROWLAB_E_ARG;
  } catch (const std::exception& e) {
    ctx->error = std::string("internal: ") + e.what();
    return ROWLAB_E_INTERNAL;
  }
}

const CalculusConfig& calculus(const char* id) {
  if (!id || !*id) throw ArgError("missing calculus");
  for (auto& c : allConfigs())
    if (c.id == id) return c;
  throw ArgError(std::string("unknown calculus ") + id);
}

const Program& program(const rowlab_program* p) {
  if (!p) throw ArgError("null program");
  return p->prog;
}

std::vector<std::string> splitCommas(const char* s) {
  std::vector<std::string> out;
  if (!s) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

extern "C" {

rowlab_ctx* rowlab_ctx_new(void) { return new (std::nothrow) rowlab_ctx(); }

void rowlab_ctx_free(rowlab_ctx* ctx) { delete ctx; }

const char* rowlab_last_error(const rowlab_ctx* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

const char* rowlab_status_name(rowlab_status s) {
  switch (s) {
    case ROWLAB_OK: return "ok";
    case ROWLAB_E_PARSE: return "parse";
    case ROWLAB_E_TYPE: return "type";
    case ROWLAB_E_RANK: return "rank";
    case ROWLAB_E_ARG: return "argument";
    case ROWLAB_E_INTERNAL: return "internal";
    case ROWLAB_E_PROPERTY: return "property";
    case ROWLAB_E_FUEL: return "fuel";
    case ROWLAB_E_UNSUPPORTED: return "unsupported";
  }
  return "unknown";
}

rowlab_status rowlab_parse(rowlab_ctx* ctx, const char* src, rowlab_program** out) {
  if (!out) return ROWLAB_E_ARG;
  *out = nullptr;
  return guard(ctx, nullptr, [&](std::string&) {
    if (!src) throw ArgError("null source");
    auto p = std::make_unique<rowlab_program>();
    p->prog = parseProgram(src);
    *out = p.release();
    return ROWLAB_OK;
  });
}

void rowlab_program_free(rowlab_program* p) { delete p; }

rowlab_status rowlab_check(rowlab_ctx* ctx, const rowlab_program* p, const char* calc, unsigned flags, char** out) {
  return guard(ctx, out, [&](std::string& s) {
    const Program& pr = program(p);
    const CalculusConfig& c = calculus(calc);
    Derivation d = typeCheck(c, pr.env, pr.term);
    if (flags & ROWLAB_JSON) {
      json j{{"calculus", c.id}, {"term", show(pr.term)}, {"type", show(d.type)}};
      if (flags & ROWLAB_DERIVATION) j["derivation"] = json::parse(derivationJson(d));
      s = j.dump(2);
    } else if (flags & ROWLAB_DERIVATION) {
      s = derivationJson(d, 2);
    } else {
      s = show(d.type);
    }
    return ROWLAB_OK;
  });
}

rowlab_status rowlab_eval(rowlab_ctx* ctx, const rowlab_program* p, const char* calc, int fuel, unsigned flags,
                          char** out) {
  return guard(ctx, out, [&](std::string& s) {
    const Program& pr = program(p);
    const CalculusConfig& c = calculus(calc);
    typeCheck(c, pr.env, pr.term);
    std::vector<Step> trace;
    TermP v = normalize(pr.term, RelationSet::forConfig(c), fuel > 0 ? fuel : 10000, &trace);
    if (flags & ROWLAB_JSON) {
      json steps = json::array();
      for (auto& st : trace) steps.push_back({{"rule", st.rule}, {"position", st.position}, {"term", show(st.result)}});
      s = json{{"calculus", c.id}, {"term", show(pr.term)}, {"value", show(v)}, {"steps", trace.size()}, {"trace", steps}}
              .dump(2);
    } else {
      std::string t;
      if (flags & ROWLAB_TRACE)
        for (auto& st : trace) t += st.rule + " @ " + showPath(st.position) + "  ~>  " + show(st.result) + "\n";
      s = t + show(v);
    }
    return ROWLAB_OK;
  });
}

rowlab_status rowlab_translate(rowlab_ctx* ctx, const rowlab_program* p, const char* from, const char* to,
                               const char* labelOrder, unsigned flags, char** out) {
  return guard(ctx, out, [&](std::string& s) {
    const Program& pr = program(p);
    const CalculusConfig& src = calculus(from);
    calculus(to);
    const TranslationInfo& info = findTranslation(from, to);
    Derivation d = typeCheck(src, pr.env, pr.term);
    TranslateOptions opt;
    opt.order.priority = splitCommas(labelOrder);
    opt.normalize = flags & ROWLAB_NORMALIZE;
    TranslationResult r = translate(info.id, d, pr.env, opt);
    std::string ty;
    if (flags & ROWLAB_EMIT_TYPE) {
      if (r.type) ty = show(r.type);
      else if (r.scheme) ty = show(*r.scheme);
      else ty = show(infer(configById(info.to), r.env, r.term));
    }
    if (flags & ROWLAB_JSON) {
      json j{{"translation", info.name}, {"from", info.from}, {"to", info.to}, {"term", show(r.term)}};
      if (!ty.empty()) j["type"] = ty;
      s = j.dump(2);
    } else {
      s = show(r.term);
      if (!ty.empty()) s += "\n: " + ty;
    }
    return ROWLAB_OK;
  });
}

rowlab_status rowlab_infer(rowlab_ctx* ctx, const rowlab_program* p, const char* calc, unsigned flags, char** out) {
  return guard(ctx, out, [&](std::string& s) {
    const Program& pr = program(p);
    const CalculusConfig& c = calculus(calc);
    if (!c.rank1()) throw ArgError("inference needs a rank-1 calculus, not " + c.id);
    TypeScheme sc = infer(c, pr.env, pr.term);
    s = flags & ROWLAB_JSON ? json{{"calculus", c.id}, {"term", show(pr.term)}, {"scheme", show(sc)}}.dump(2) : show(sc);
    return ROWLAB_OK;
  });
}

rowlab_status rowlab_erase(rowlab_ctx* ctx, const rowlab_program* p, unsigned flags, char** out) {
  return guard(ctx, out, [&](std::string& s) {
    TermP e = erase(program(p).term);
    s = flags & ROWLAB_JSON ? json{{"term", show(e)}}.dump(2) : show(e);
    return ROWLAB_OK;
  });
}

rowlab_status rowlab_verify(rowlab_ctx* ctx, const char* property, const char* translation, const char* calc, int count,
                            uint64_t seed, int depth, int maxSize, unsigned flags, char** out) {
  return guard(ctx, out, [&](std::string& s) {
    if (!property) throw ArgError("missing property");
    VerifyOptions o;
    o.property = property;
    if (translation) o.translation = translation;
    if (calc) o.calculus = calc;
    if (count > 0) o.count = count;
    o.seed = seed;
    if (depth > 0) o.depth = depth;
    if (maxSize > 0) o.maxSize = maxSize;
    PropertyReport r = verify(o);
    if (flags & ROWLAB_JSON) {
      s = reportJson(r);
    } else {
      std::ostringstream os;
      os << (r.pass() ? "PASS" : "FAIL") << " " << r.property << " " << r.subject << ": " << r.cases - r.failures.size()
         << "/" << r.cases << " (" << long(r.elapsedMs) << " ms)";
      for (auto& [k, v] : r.stats) os << "\n  " << k << " = " << v;
      if (!r.pass()) {
        auto& f = r.failures.front();
        os << "\n  smallest failure: seed " << f.seed << ", size " << f.size << "\n  term: " << f.term << "\n  " << f.got;
      }
      s = os.str();
    }
    if (!r.pass()) ctx->error = std::to_string(r.failures.size()) + " of " + std::to_string(r.cases) + " cases failed";
    return r.pass() ? ROWLAB_OK : ROWLAB_E_PROPERTY;
  });
}

void rowlab_string_free(char* s) { std::free(s); }

}  // extern "C"
