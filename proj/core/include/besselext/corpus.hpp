#pragma once

// Named golden problems and trial-function generators shared by the tests
// and the verify suites. Golden values live in data/golden_cases.txt
// (embedded at build time) with provenance notes.

#include <string>
#include <utility>
#include <vector>

#include "besselext/solutions.hpp"

namespace besselext::corpus {

struct Expectation {
  std::string json_path;  // JSON pointer into the CLI output
  double value = 0.0;
  double tol = 0.0;
  bool relative = false;
  std::string note;
};

struct GoldenCase {
  std::string name;
  std::string command;
  std::vector<std::pair<std::string, std::string>> args;  // flag, value
  std::vector<Expectation> expects;
};

const std::vector<GoldenCase>& golden_cases();

/// Named trial functions on (a,b): polynomials times power cutoffs, smooth
/// bumps, sines, and a reproducible pseudorandom family rand-<k>.
solutions::FrameMember trial_function(const std::string& name, double a, double b);

/// Names of the reproducible trial corpus: the fixed generators plus
/// `n_random` seeded rand-<k> entries.
std::vector<std::string> trial_corpus(int n_random);

}  // namespace besselext::corpus
