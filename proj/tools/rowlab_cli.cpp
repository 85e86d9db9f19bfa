// rowlab: command-line frontend over the C API.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rowlab/rowlab.h"

namespace {

struct Ctx {
  rowlab_ctx* c = rowlab_ctx_new();
  ~Ctx() { rowlab_ctx_free(c); }
};

int exitCode(rowlab_status s) {
  switch (s) {
    case ROWLAB_OK: return 0;
    case ROWLAB_E_PROPERTY: return 2;
    default: return 1;
  }
}

// Prints output or the diagnostic; returns the process exit code.
int report(Ctx& ctx, rowlab_status s, char* out) {
  if (out && *out) std::cout << out << "\n";
  rowlab_string_free(out);
  if (s != ROWLAB_OK) std::cerr << "error (" << rowlab_status_name(s) << "): " << rowlab_last_error(ctx.c) << "\n";
  return exitCode(s);
}

bool readFile(const std::string& path, std::string& out) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream in(path);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for lambda calculi with records, variants, subtyping and row/presence polymorphism"};
  app.require_subcommand(1);

  std::string file, calculus, from, to, labelOrder, property, translation;
  bool json = false, deriv = false, emitType = false, norm = false, trace = false;
  int fuel = 0, count = 100, depth = 3, maxSize = 12;
  std::uint64_t seed = 1;

  auto* check = app.add_subcommand("check", "type-check a program");
  check->add_option("--calculus,-c", calculus, "calculus id")->required();
  check->add_flag("--emit-derivation", deriv, "print the derivation tree as JSON");

  auto* eval = app.add_subcommand("eval", "type-check and reduce to normal form");
  eval->add_option("--calculus,-c", calculus, "calculus id")->required();
  eval->add_option("--fuel", fuel, "step limit");
  eval->add_flag("--trace", trace, "print each step");

  auto* tr = app.add_subcommand("translate", "translate a program between calculi");
  tr->add_option("--from", from, "source calculus")->required();
  tr->add_option("--to", to, "target calculus")->required();
  tr->add_flag("--emit-type", emitType, "also print the translated type");
  tr->add_flag("--normalize", norm, "beta-normalise coercions");
  tr->add_option("--label-order", labelOrder, "comma separated label priority for presence translations");

  auto* inf = app.add_subcommand("infer", "infer a principal scheme in a rank-1 calculus");
  inf->add_option("--calculus,-c", calculus, "calculus id")->required();

  auto* er = app.add_subcommand("erase", "remove upcasts, annotations and type abstraction");

  for (auto* sc : {check, eval, tr, inf, er}) {
    sc->add_option("file", file, "program file, or - for stdin")->required();
    sc->add_flag("--json", json, "structured output");
  }

  auto* ver = app.add_subcommand("verify", "run a property over generated terms");
  ver->add_option("--property,-p", property, "property id")->required();
  ver->add_option("--translation,-t", translation, "translation id (T1..T6, T7-rec-row, ...)");
  ver->add_option("--calculus,-c", calculus, "source calculus");
  ver->add_option("--count,-n", count, "number of cases");
  auto* seedOpt = ver->add_option("--seed,-s", seed, "generator seed");
  ver->add_option("--depth,-d", depth, "reduction depth");
  ver->add_option("--max-size", maxSize, "largest generated term");
  ver->add_flag("--json", json, "JSON report");

  CLI11_PARSE(app, argc, argv);

  Ctx ctx;
  unsigned flags = json ? ROWLAB_JSON : 0u;
  char* out = nullptr;

  if (ver->parsed()) {
    if (seedOpt->count() == 0)
      if (const char* env = std::getenv("ROWLAB_SEED")) seed = std::strtoull(env, nullptr, 10);
    auto s = rowlab_verify(ctx.c, property.c_str(), translation.empty() ? nullptr : translation.c_str(),
                           calculus.empty() ? nullptr : calculus.c_str(), count, seed, depth, maxSize, flags, &out);
    return report(ctx, s, out);
  }

  std::string src;
  if (!readFile(file, src)) {
    std::cerr << "error: cannot read " << file << "\n";
    return 1;
  }
  rowlab_program* prog = nullptr;
  rowlab_status s = rowlab_parse(ctx.c, src.c_str(), &prog);
  if (s != ROWLAB_OK) {
    std::cerr << file << ":" << rowlab_last_error(ctx.c) << "\n";
    return exitCode(s);
  }

  if (check->parsed()) {
    s = rowlab_check(ctx.c, prog, calculus.c_str(), flags | (deriv ? ROWLAB_DERIVATION : 0u), &out);
  } else if (eval->parsed()) {
    s = rowlab_eval(ctx.c, prog, calculus.c_str(), fuel, flags | (trace ? ROWLAB_TRACE : 0u), &out);
  } else if (tr->parsed()) {
    unsigned f = flags | (emitType ? ROWLAB_EMIT_TYPE : 0u) | (norm ? ROWLAB_NORMALIZE : 0u);
    s = rowlab_translate(ctx.c, prog, from.c_str(), to.c_str(), labelOrder.empty() ? nullptr : labelOrder.c_str(), f,
                         &out);
  } else if (inf->parsed()) {
    s = rowlab_infer(ctx.c, prog, calculus.c_str(), flags, &out);
  } else {
    s = rowlab_erase(ctx.c, prog, flags, &out);
  }
  rowlab_program_free(prog);
  return report(ctx, s, out);
}
