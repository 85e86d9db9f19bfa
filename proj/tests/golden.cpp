#include "golden.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "rowlab/dynamics.hpp"
#include "rowlab/infer.hpp"
#include "rowlab/statics.hpp"
#include "rowlab/translate.hpp"

namespace golden {

using namespace rowlab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// "forall a:Type. forall r:Row!{l}. forall p:Pre. body"
TypeScheme parseScheme(std::string s) {
  static const std::regex head(R"(^\s*forall\s+([A-Za-z_][A-Za-z0-9_$]*)\s*:\s*(Type|Pre|Row(!\{[^}]*\})?)\s*\.)");
  TypeScheme sc;
  std::smatch m;
  while (std::regex_search(s, m, head)) {
    std::string k = m[2];
    Kind kind = Kind::type();
    if (k == "Pre") kind = Kind::pre();
    else if (k != "Type") kind = parseType("forall r:" + k + ". {r}")->kind;
    sc.vars.push_back({m[1], kind});
    s = m.suffix();
  }
  sc.body = parseType(s);
  return sc;
}

const TranslationInfo& pair(const std::vector<std::string>& a) {
  if (a.size() < 2) throw std::runtime_error("translate needs a source and a target");
  return findTranslation(a[0], a[1]);
}

TranslationResult doTranslate(const Program& p, const std::vector<std::string>& a, bool norm) {
  const TranslationInfo& info = pair(a);
  Derivation d = typeCheck(configById(info.from), p.env, p.term);
  TranslateOptions opt;
  opt.normalize = norm;
  if (a.size() > 2) {
    std::stringstream in(a[2]);
    for (std::string l; std::getline(in, l, ',');) opt.order.priority.push_back(l);
  }
  return translate(info.id, d, p.env, opt);
}

// Runs one command, returning its printed result.
std::string perform(const Program& p, const std::string& cmd, const std::vector<std::string>& a,
                    const std::string& expected, bool& ok) {
  auto calc = [&]() -> const CalculusConfig& {
    if (a.empty()) throw std::runtime_error(cmd + " needs a calculus");
    return configById(a[0]);
  };
  if (cmd == "check") {
    TypeP t = typeCheck(calc(), p.env, p.term).type;
    ok = typeEqual(t, parseType(expected));
    return show(t);
  }
  if (cmd == "eval") {
    const CalculusConfig& c = calc();
    if (c.rank1()) infer(c, p.env, p.term);
    else typeCheck(c, p.env, p.term);
    TermP v = normalize(p.term, RelationSet::forConfig(c));
    ok = alphaEq(v, parseTerm(expected));
    return show(v);
  }
  if (cmd == "translate" || cmd == "normalize") {
    TermP t = doTranslate(p, a, cmd == "normalize").term;
    ok = alphaEq(t, parseTerm(expected));
    return show(t);
  }
  if (cmd == "translate-nf") {
    TermP t = normalize(doTranslate(p, a, false).term, RelationSet::betaOnly());
    ok = alphaEq(t, parseTerm(expected));
    return show(t);
  }
  if (cmd == "erase") {
    TermP t = erase(p.term);
    ok = alphaEq(t, parseTerm(expected));
    return show(t);
  }
  if (cmd == "infer") {
    TypeScheme s = infer(calc(), p.env, p.term);
    ok = schemeEquivalent(s, parseScheme(expected));
    return show(s);
  }
  throw std::runtime_error("unknown command " + cmd);
}

}  // namespace

std::vector<Expectation> expectations(const std::string& path) {
  static const std::regex line(R"(^--\s*expect\s+([a-z-]+)([^:]*):\s*(.*?)\s*$)");
  std::vector<Expectation> out;
  std::istringstream in(slurp(path));
  int n = 0;
  for (std::string l; std::getline(in, l);) {
    ++n;
    std::smatch m;
    if (!std::regex_match(l, m, line)) continue;
    out.push_back({path, n, m[1], words(m[2]), m[3]});
  }
  return out;
}

Outcome run(const std::string& path, const Expectation& e) {
  Outcome o{e};
  try {
    Program p = parseProgram(slurp(path));
    if (e.command == "reject") {
      if (e.args.empty()) throw std::runtime_error("reject needs a command");
      std::vector<std::string> rest(e.args.begin() + 1, e.args.end());
      try {
        bool ignored = false;
        o.got = "accepted: " + perform(p, e.args[0], rest, "", ignored);
      } catch (const Error& err) {
        o.got = std::string(errorKindName(err.kind())) + ": " + err.what();
        o.ok = errorKindName(err.kind()) == e.expected;
      }
      return o;
    }
    o.got = perform(p, e.command, e.args, e.expected, o.ok);
  } catch (const std::exception& err) {
    o.got = std::string("error: ") + err.what();
  }
  return o;
}

std::vector<std::string> corpusFiles(const std::string& dir) {
  std::vector<std::string> out;
  for (auto& f : std::filesystem::directory_iterator(dir))
    if (f.path().extension() == ".row") out.push_back(f.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace golden
