// Runs the "-- expect" lines of the corpus files.
#pragma once

#include <string>
#include <vector>

namespace golden {

struct Expectation {
  std::string file;
  int line = 0;
  std::string command;            // check, eval, translate, normalize, erase, infer, reject
  std::vector<std::string> args;  // for reject: the rejected command first
  std::string expected;
};

struct Outcome {
  Expectation exp;
  bool ok = false;
  std::string got;
};

std::vector<Expectation> expectations(const std::string& path);
Outcome run(const std::string& path, const Expectation& e);
// Every .row file under dir, sorted by name.
std::vector<std::string> corpusFiles(const std::string& dir);

}  // namespace golden
