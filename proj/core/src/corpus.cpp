#include "besselext/corpus.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include "golden_fixture.inc"

namespace besselext::corpus {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::vector<GoldenCase> parse_fixture(const char* text) {
  std::vector<GoldenCase> out;
  std::istringstream in(text);
  std::string line;
  GoldenCase cur;
  bool open = false;
  auto strip = [](std::string s) {
    auto h = s.find('#');
    if (h != std::string::npos) s = s.substr(0, h);
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    std::string note;
    auto h = line.find('#');
    if (h != std::string::npos) {
      note = line.substr(h + 1);
      std::size_t nb = note.find_first_not_of(" \t");
      note = nb == std::string::npos ? std::string() : note.substr(nb);
    }
    std::string s = strip(line);
    if (s.empty()) continue;
    std::istringstream ls(s);
    std::string word;
    ls >> word;
    if (word == "case") {
      cur = GoldenCase{};
      ls >> cur.name;
      open = true;
    } else if (word == "cmd") {
      ls >> cur.command;
    } else if (word == "arg") {
      std::string flag, value;
      ls >> flag >> value;
      cur.args.emplace_back(flag, value);
    } else if (word == "expect") {
      Expectation e;
      std::string mode;
      ls >> e.json_path >> e.value >> mode >> e.tol;
      e.relative = (mode == "rel");
      e.note = note;
      cur.expects.push_back(e);
    } else if (word == "end") {
      if (open) out.push_back(cur);
      open = false;
    }
  }
  return out;
}

// small deterministic generator for the rand-<k> family
struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed * 6364136223846793005ull + 1442695040888963407ull) {}
  double next() {  // in [-1, 1]
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return 2.0 * double((state >> 11) & ((1ull << 53) - 1)) / double(1ull << 53) - 1.0;
  }
};

}  // namespace

const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = parse_fixture(kGoldenFixtureText);
  return cases;
}

solutions::FrameMember trial_function(const std::string& name, double a, double b) {
  const double L = b - a;
  solutions::FrameMember f;
  if (name == "poly-basic") {
    f.eval = [a, b](double x) {
      return std::pair<double, double>{(x - a) * (b - x), (b - x) - (x - a)};
    };
    return f;
  }
  if (name == "poly-skew") {
    f.eval = [a, b](double x) {
      double u = (x - a) * (b - x);
      double up = (b - x) - (x - a);
      double w = 1.0 + 0.5 * (x - a);
      return std::pair<double, double>{u * w, up * w + 0.5 * u};
    };
    return f;
  }
  if (name == "sine-1" || name == "sine-2") {
    double n = (name == "sine-1") ? 1.0 : 2.0;
    f.eval = [a, L, n](double x) {
      double t = n * kPi * (x - a) / L;
      return std::pair<double, double>{std::sin(t), n * kPi / L * std::cos(t)};
    };
    return f;
  }
  if (name == "bump") {
    f.eval = [a, L](double x) {
      double t = (x - a) / L;
      if (t <= 0.0 || t >= 1.0) return std::pair<double, double>{0.0, 0.0};
      double g = std::exp(-1.0 / (t * (1.0 - t)));
      double gp = g * (1.0 - 2.0 * t) / (t * t * (1.0 - t) * (1.0 - t)) / L;
      return std::pair<double, double>{g, gp};
    };
    return f;
  }
  if (name.rfind("power-eps-", 0) == 0) {
    double eps = std::stod(name.substr(10));
    double p = 0.5 + eps;
    f.eval = [a, b, p](double x) {
      double d = x - a;
      double v = std::pow(d, p) * (b - x);
      double vp = p * std::pow(d, p - 1.0) * (b - x) - std::pow(d, p);
      return std::pair<double, double>{v, vp};
    };
    return f;
  }
  if (name.rfind("rand-", 0) == 0) {
    int k = std::stoi(name.substr(5));
    Lcg rng(0x9e3779b9u + 7919u * std::uint64_t(k));
    double c1 = rng.next(), c2 = rng.next(), c3 = rng.next(), c4 = rng.next();
    // polynomial times the double cutoff (x-a)(b-x); always admissible
    f.eval = [a, b, c1, c2, c3, c4](double x) {
      double t = x - a;
      double cut = (x - a) * (b - x);
      double cutp = (b - x) - (x - a);
      double p = 1.0 + c1 * t + c2 * t * t + c3 * t * t * t + c4 * t * t * t * t;
      double pp = c1 + 2.0 * c2 * t + 3.0 * c3 * t * t + 4.0 * c4 * t * t * t;
      return std::pair<double, double>{cut * p, cutp * p + cut * pp};
    };
    return f;
  }
  throw ParameterError("trial_function: unknown trial name '" + name + "'");
}

std::vector<std::string> trial_corpus(int n_random) {
  std::vector<std::string> names = {"poly-basic", "poly-skew", "sine-1",       "sine-2",
                                    "bump",       "power-eps-0.2", "power-eps-0.05"};
  for (int k = 0; k < n_random; ++k) names.push_back("rand-" + std::to_string(k));
  return names;
}

}  // namespace besselext::corpus
