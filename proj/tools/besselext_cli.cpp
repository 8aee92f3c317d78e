// besselext command-line front end: problem specification, computation
// commands (classify / spectrum / krein / hardy / muckenhoupt), and the
// verification suite runner. Output is deterministic JSON (fixed key order,
// 17 significant digits) on stdout; diagnostics go to stderr.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "besselext/boundary.hpp"
#include "besselext/corpus.hpp"
#include "besselext/extensions.hpp"
#include "besselext/firstorder.hpp"
#include "besselext/hardy.hpp"
#include "besselext/solutions.hpp"
#include "besselext/spectra.hpp"
#include "besselext/verify.hpp"

namespace {

using namespace besselext;

// ---------------------------------------------------------------------------
// minimal deterministic JSON writer: insertion order, %.17g numbers
// ---------------------------------------------------------------------------

class JsonWriter {
public:
  std::string str() const { return out_; }

  void begin_object() {
    comma();
    out_ += '{';
    stack_.push_back(0);
  }
  void end_object() {
    out_ += '}';
    stack_.pop_back();
    bump();
  }
  void begin_array() {
    comma();
    out_ += '[';
    stack_.push_back(0);
  }
  void end_array() {
    out_ += ']';
    stack_.pop_back();
    bump();
  }
  void key(const std::string& k) {
    comma();
    write_string(k);
    out_ += ':';
    pending_value_ = true;
  }
  void value(double v) {
    comma();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out_ += buf;
    bump();
  }
  void value(long v) {
    comma();
    out_ += std::to_string(v);
    bump();
  }
  void value(int v) { value(static_cast<long>(v)); }
  void value(bool v) {
    comma();
    out_ += v ? "true" : "false";
    bump();
  }
  void value(const std::string& s) {
    comma();
    write_string(s);
    bump();
  }
  void value(const char* s) { value(std::string(s)); }

private:
  std::string out_;
  std::vector<int> stack_;
  bool pending_value_ = false;

  void comma() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!stack_.empty() && stack_.back() > 0) out_ += ',';
  }
  void bump() {
    if (!stack_.empty()) ++stack_.back();
  }
  void write_string(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        default: out_ += c;
      }
    }
    out_ += '"';
  }
};

// ---------------------------------------------------------------------------

struct Config {
  double a = 0.0, b = 1.0, sa = 0.5, sb = 0.5;
  std::string q = "0";
  double tol_rel = 1e-10, tol_abs = 1e-12;
  int jobs = 1;
};

PotentialSpec parse_potential(const std::string& s) {
  if (s == "0" || s.empty()) return PotentialSpec::zero();
  if (s.rfind("const:", 0) == 0) return PotentialSpec::constant_q(std::stod(s.substr(6)));
  if (s.rfind("poly:", 0) == 0) {
    std::vector<double> cs;
    std::stringstream ss(s.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) cs.push_back(std::stod(item));
    }
    if (cs.empty()) throw ParameterError("potential spec 'poly:' needs coefficients");
    return PotentialSpec::polynomial(cs);
  }
  throw ParameterError("unrecognized potential spec '" + s + "' (want 0 | const:<c> | poly:<c0,c1,...>)");
}

BesselProblem make_problem(const Config& cfg) {
  return BesselProblem(cfg.a, cfg.b, cfg.sa, cfg.sb, parse_potential(cfg.q));
}

numerics::Tolerance make_tol(const Config& cfg) {
  numerics::Tolerance t;
  t.rel = cfg.tol_rel;
  t.abs = cfg.tol_abs;
  return t;
}

void load_config_file(const std::string& path, Config& cfg) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      std::size_t e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (k == "a") cfg.a = std::stod(v);
    else if (k == "b") cfg.b = std::stod(v);
    else if (k == "sa") cfg.sa = std::stod(v);
    else if (k == "sb") cfg.sb = std::stod(v);
    else if (k == "q") cfg.q = v;
    else if (k == "tol") cfg.tol_rel = std::stod(v);
    else if (k == "tol_abs") cfg.tol_abs = std::stod(v);
    else if (k == "jobs") cfg.jobs = std::stoi(v);
    else throw ParameterError("unknown config key '" + k + "'");
  }
}

std::string dump_config(const Config& cfg) {
  std::ostringstream os;
  char buf[40];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "# besselext config\n";
  os << "a = " << num(cfg.a) << "\n";
  os << "b = " << num(cfg.b) << "\n";
  os << "sa = " << num(cfg.sa) << "\n";
  os << "sb = " << num(cfg.sb) << "\n";
  os << "q = " << cfg.q << "\n";
  os << "tol = " << num(cfg.tol_rel) << "\n";
  os << "tol_abs = " << num(cfg.tol_abs) << "\n";
  os << "jobs = " << cfg.jobs << "\n";
  return os.str();
}

void emit_problem(JsonWriter& j, const Config& cfg) {
  j.key("problem");
  j.begin_object();
  j.key("a");
  j.value(cfg.a);
  j.key("b");
  j.value(cfg.b);
  j.key("sa");
  j.value(cfg.sa);
  j.key("sb");
  j.value(cfg.sb);
  j.key("q");
  j.value(cfg.q);
  j.end_object();
}

extensions::ExtensionSpec parse_extension(const std::string& s, const BesselProblem& pb) {
  auto cls = extensions::classify(pb);
  if (s == "friedrichs") return extensions::ExtensionSpec::friedrichs();
  if (s == "krein") return extensions::ExtensionSpec::krein();
  if (s.rfind("separated:", 0) == 0) {
    std::vector<double> vals;
    std::stringstream ss(s.substr(10));
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    std::optional<double> al, be;
    bool lc_a = cls.at_a == extensions::EndpointClass::LimitCircle;
    bool lc_b = cls.at_b == extensions::EndpointClass::LimitCircle;
    std::size_t idx = 0;
    if (lc_a && idx < vals.size()) al = vals[idx++];
    if (lc_b && idx < vals.size()) be = vals[idx++];
    if ((lc_a && !al) || (lc_b && !be))
      throw ParameterError("separated:<angles> needs one angle per limit-circle endpoint");
    return extensions::ExtensionSpec::separated(al, be);
  }
  if (s.rfind("coupled:", 0) == 0) {
    std::vector<double> vals;
    std::stringstream ss(s.substr(8));
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    if (vals.size() != 5)
      throw ParameterError("coupled:<phi,R11,R12,R21,R22> needs five entries");
    return extensions::ExtensionSpec::coupled(vals[0], {vals[1], vals[2], vals[3], vals[4]});
  }
  throw ParameterError("unknown extension spec '" + s + "'");
}

// ---------------------------------------------------------------------------
// subcommand bodies
// ---------------------------------------------------------------------------

int cmd_classify(const Config& cfg) {
  auto pb = make_problem(cfg);
  auto cls = extensions::classify(pb);
  JsonWriter j;
  j.begin_object();
  j.key("schema");
  j.value(1);
  j.key("command");
  j.value("classify");
  emit_problem(j, cfg);
  j.key("classification");
  j.begin_object();
  j.key("at_a");
  j.value(cls.at_a == extensions::EndpointClass::LimitCircle ? "LC" : "LP");
  j.key("at_b");
  j.value(cls.at_b == extensions::EndpointClass::LimitCircle ? "LC" : "LP");
  j.key("n");
  j.value(cls.deficiency);
  j.end_object();
  j.end_object();
  std::cout << j.str() << "\n";
  return 0;
}

int cmd_spectrum(const Config& cfg, const std::string& ext_str, double lmin, double lmax,
                 const std::string& format) {
  auto pb = make_problem(cfg);
  auto tol = make_tol(cfg);
  auto ext = parse_extension(ext_str, pb);
  auto sp = spectra::eigenvalues(pb, ext, lmin, lmax, tol, cfg.jobs);
  if (format == "csv") {
    std::cout << "lambda,multiplicity,residual\n";
    char buf[128];
    for (auto& e : sp.eigenvalues) {
      std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g\n", e.lambda, e.multiplicity, e.residual);
      std::cout << buf;
    }
    return 0;
  }
  JsonWriter j;
  j.begin_object();
  j.key("schema");
  j.value(1);
  j.key("command");
  j.value("spectrum");
  emit_problem(j, cfg);
  j.key("extension");
  j.value(ext_str);
  j.key("range");
  j.begin_array();
  j.value(lmin);
  j.value(lmax);
  j.end_array();
  j.key("eigenvalues");
  j.begin_array();
  for (auto& e : sp.eigenvalues) {
    j.begin_object();
    j.key("lambda");
    j.value(e.lambda);
    j.key("multiplicity");
    j.value(e.multiplicity);
    j.key("residual");
    j.value(e.residual);
    j.end_object();
  }
  j.end_array();
  j.end_object();
  std::cout << j.str() << "\n";
  return 0;
}

void emit_krein_data(JsonWriter& j, const extensions::KreinData& kd) {
  j.begin_object();
  j.key("mode");
  switch (kd.mode) {
    case extensions::KreinData::Mode::AngleAtA: j.value("angle_at_a"); break;
    case extensions::KreinData::Mode::AngleAtB: j.value("angle_at_b"); break;
    case extensions::KreinData::Mode::Matrix: j.value("matrix"); break;
    case extensions::KreinData::Mode::Trivial: j.value("trivial"); break;
  }
  if (kd.mode == extensions::KreinData::Mode::Matrix) {
    j.key("R");
    j.begin_array();
    for (double v : kd.R_K) j.value(v);
    j.end_array();
    j.key("det");
    j.value(kd.det());
  } else if (kd.mode != extensions::KreinData::Mode::Trivial) {
    j.key("cot");
    j.value(kd.cot_value);
  }
  j.end_object();
}

int cmd_krein(const Config& cfg) {
  auto pb = make_problem(cfg);
  auto tol = make_tol(cfg);
  double eps = extensions::positivity_lower_bound(pb, tol);
  auto [spec, kd] = extensions::krein_spec(pb, tol);
  (void)spec;

  JsonWriter j;
  j.begin_object();
  j.key("schema");
  j.value(1);
  j.key("command");
  j.value("krein");
  emit_problem(j, cfg);
  j.key("epsilon");
  j.value(eps);
  j.key("numeric");
  emit_krein_data(j, kd);
  if (pb.q.is_zero()) {
    auto cf = extensions::krein_closed_form_q0(pb);
    j.key("closed_form");
    emit_krein_data(j, cf);
    double disc = 0.0;
    if (kd.mode == extensions::KreinData::Mode::Matrix) {
      for (int i = 0; i < 4; ++i)
        disc = std::max(disc, std::abs(kd.R_K[i] - cf.R_K[i]) / (std::abs(cf.R_K[i]) + 1.0));
    } else if (kd.mode != extensions::KreinData::Mode::Trivial) {
      disc = std::abs(kd.cot_value - cf.cot_value) / (std::abs(cf.cot_value) + 1.0);
    }
    j.key("discrepancy");
    j.value(disc);
  }
  j.end_object();
  std::cout << j.str() << "\n";
  return 0;
}

int cmd_hardy(const Config& cfg, const std::string& variant_str, const std::string& trial,
              double log_scale_R) {
  auto tol = make_tol(cfg);
  hardy::HardyVariant v;
  if (variant_str == "power_12") v = hardy::HardyVariant::Power12;
  else if (variant_str == "distance_13") v = hardy::HardyVariant::Distance13;
  else if (variant_str == "sine_14") v = hardy::HardyVariant::Sine14;
  else if (variant_str == "log_refined_B1") v = hardy::HardyVariant::LogRefinedB1;
  else if (variant_str == "halfline_B11") v = hardy::HardyVariant::HalflineB11;
  else throw ParameterError("unknown hardy variant '" + variant_str + "'");

  auto f = corpus::trial_function(trial, cfg.a, cfg.b);
  auto rep = hardy::hardy_report(f, v, cfg.a, cfg.b, tol, log_scale_R);

  JsonWriter j;
  j.begin_object();
  j.key("schema");
  j.value(1);
  j.key("command");
  j.value("hardy");
  emit_problem(j, cfg);
  j.key("variant");
  j.value(variant_str);
  j.key("trial");
  j.value(trial);
  j.key("report");
  j.begin_object();
  j.key("lhs");
  j.value(rep.lhs);
  j.key("rhs");
  j.value(rep.rhs);
  j.key("ratio");
  j.value(rep.ratio);
  j.key("constant");
  j.value(rep.constant);
  j.key("satisfied");
  j.value(rep.satisfied);
  j.end_object();
  j.end_object();
  std::cout << j.str() << "\n";
  return 0;
}

std::function<double(double)> parse_weight(const std::string& s) {
  if (s.rfind("pow:", 0) == 0) {
    double e = std::stod(s.substr(4));
    return [e](double x) { return std::pow(x, e); };
  }
  if (s.rfind("const:", 0) == 0) {
    double c = std::stod(s.substr(6));
    return [c](double) { return c; };
  }
  throw ParameterError("unknown weight spec '" + s + "' (want pow:<e> | const:<c>)");
}

int cmd_muckenhoupt(const Config& cfg, const std::string& kind_str, const std::string& u_str,
                    const std::string& v_str, double p) {
  auto tol = make_tol(cfg);
  hardy::MuckKind kind;
  if (kind_str == "A_form") kind = hardy::MuckKind::AForm;
  else if (kind_str == "B_form") kind = hardy::MuckKind::BForm;
  else throw ParameterError("unknown muckenhoupt kind '" + kind_str + "'");
  auto r = hardy::muckenhoupt(kind, parse_weight(u_str), parse_weight(v_str), p, cfg.a, cfg.b, tol);

  JsonWriter j;
  j.begin_object();
  j.key("schema");
  j.value(1);
  j.key("command");
  j.value("muckenhoupt");
  emit_problem(j, cfg);
  j.key("result");
  j.begin_object();
  j.key("kind");
  j.value(kind_str);
  j.key("value");
  j.value(r.infinite ? -1.0 : r.value);
  j.key("infinite");
  j.value(r.infinite);
  j.key("bracket");
  j.begin_array();
  j.value(r.bracket_lo);
  j.value(r.bracket_hi);
  j.end_array();
  j.key("sup_location");
  j.value(r.sup_location);
  j.end_object();
  j.end_object();
  std::cout << j.str() << "\n";
  return 0;
}

int cmd_verify(const Config& cfg, const std::string& suite) {
  auto tol = make_tol(cfg);
  auto checks = verify::run_suite(suite, tol);
  int failures = 0;
  std::string first_fail;
  for (auto& c : checks)
    if (!c.pass) {
      ++failures;
      if (first_fail.empty()) first_fail = c.name;
    }

  JsonWriter j;
  j.begin_object();
  j.key("schema");
  j.value(1);
  j.key("command");
  j.value("verify");
  j.key("suite");
  j.value(suite);
  j.key("checks");
  j.begin_array();
  for (auto& c : checks) {
    j.begin_object();
    j.key("name");
    j.value(c.name);
    j.key("pass");
    j.value(c.pass);
    j.key("detail");
    j.value(c.detail);
    j.end_object();
  }
  j.end_array();
  j.key("failures");
  j.value(failures);
  j.end_object();
  std::cout << j.str() << "\n";
  if (failures > 0) {
    std::cerr << "verify: first failing assertion: " << first_fail << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  if (const char* env = std::getenv("BESSELEXT_TOL")) {
    cfg.tol_rel = std::atof(env);
    cfg.tol_abs = cfg.tol_rel * 1e-2;
  }

  CLI::App app{"Bessel-type Sturm-Liouville operators: self-adjoint extensions, spectra, Hardy inequalities"};
  app.require_subcommand(0, 1);

  std::string config_file;
  bool do_dump = false;
  // problem/tolerance flags are accepted on the app and on every subcommand
  auto add_common = [&cfg, &config_file, &do_dump](CLI::App* cmd) {
    cmd->add_option("--config", config_file, "config file (key = value lines)");
    cmd->add_flag("--dump-config", do_dump, "print the effective config and exit");
    cmd->add_option("--a", cfg.a, "left endpoint");
    cmd->add_option("--b", cfg.b, "right endpoint");
    cmd->add_option("--sa", cfg.sa, "singularity strength at a (s_a >= 0)");
    cmd->add_option("--sb", cfg.sb, "singularity strength at b (s_b >= 0)");
    cmd->add_option("--q", cfg.q, "potential: 0 | const:<c> | poly:<c0,c1,...>");
    cmd->add_option("--tol", cfg.tol_rel, "relative tolerance");
    cmd->add_option("--tol-abs", cfg.tol_abs, "absolute tolerance");
    cmd->add_option("--jobs", cfg.jobs, "parallel determinant scans");
  };
  add_common(&app);

  auto* c_classify = app.add_subcommand("classify", "endpoint limit circle/point classification");
  add_common(c_classify);

  auto* c_spectrum = app.add_subcommand("spectrum", "eigenvalues of a self-adjoint extension");
  std::string ext_str = "friedrichs", format = "json";
  double lmin = 0.0, lmax = -1.0;
  add_common(c_spectrum);
  c_spectrum->add_option("--ext", ext_str,
                         "friedrichs | krein | separated:<angles> | coupled:<phi,R11,R12,R21,R22>");
  c_spectrum->add_option("--lmin", lmin, "search range lower end");
  c_spectrum->add_option("--lmax", lmax, "search range upper end");
  c_spectrum->add_option("--format", format, "json | csv");

  auto* c_krein = app.add_subcommand("krein", "Krein-von Neumann extension data");
  add_common(c_krein);

  auto* c_hardy = app.add_subcommand("hardy", "Hardy-type inequality report for a named trial");
  std::string variant = "power_12", trial = "poly-basic";
  double log_R = 0.0;
  add_common(c_hardy);
  c_hardy->add_option("--variant", variant,
                      "power_12 | distance_13 | sine_14 | log_refined_B1 | halfline_B11");
  c_hardy->add_option("--trial", trial, "named trial function");
  c_hardy->add_option("--R", log_R, "log scale R for the refined variant");

  auto* c_muck = app.add_subcommand("muckenhoupt", "two-weight Muckenhoupt constant");
  std::string mkind = "A_form", wu = "pow:-2", wv = "const:1";
  double mp = 2.0;
  add_common(c_muck);
  c_muck->add_option("--kind", mkind, "A_form | B_form");
  c_muck->add_option("--u", wu, "weight u: pow:<e> | const:<c>");
  c_muck->add_option("--v", wv, "weight v: pow:<e> | const:<c>");
  c_muck->add_option("--p", mp, "exponent p >= 1");

  auto* c_verify = app.add_subcommand("verify", "run an invariant suite");
  std::string suite = "all";
  add_common(c_verify);
  c_verify->add_option("--suite", suite, "all | frames | krein | hardy | specialfn");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      return app.exit(e);
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (!config_file.empty()) {
      Config file_cfg;
      load_config_file(config_file, file_cfg);
      // flags override file values: reparse flags on top of the file config
      Config merged = file_cfg;
      // CLI11 already stored flag values into cfg; apply only flags the user passed
      for (auto* cmd : {&app, c_classify, c_spectrum, c_krein, c_hardy, c_muck, c_verify}) {
        if (cmd->count("--a")) merged.a = cfg.a;
        if (cmd->count("--b")) merged.b = cfg.b;
        if (cmd->count("--sa")) merged.sa = cfg.sa;
        if (cmd->count("--sb")) merged.sb = cfg.sb;
        if (cmd->count("--q")) merged.q = cfg.q;
        if (cmd->count("--tol")) merged.tol_rel = cfg.tol_rel;
        if (cmd->count("--tol-abs")) merged.tol_abs = cfg.tol_abs;
        if (cmd->count("--jobs")) merged.jobs = cfg.jobs;
      }
      cfg = merged;
    }

    if (do_dump) {
      std::cout << dump_config(cfg);
      return 0;
    }

    if (c_classify->parsed()) return cmd_classify(cfg);
    if (c_spectrum->parsed()) {
      if (lmax <= lmin) {
        double L = cfg.b - cfg.a;
        lmax = lmin + 10.0 * 9.869604401089358 / (L * L);
      }
      return cmd_spectrum(cfg, ext_str, lmin, lmax, format);
    }
    if (c_krein->parsed()) return cmd_krein(cfg);
    if (c_hardy->parsed()) return cmd_hardy(cfg, variant, trial, log_R);
    if (c_muck->parsed()) return cmd_muckenhoupt(cfg, mkind, wu, wv, mp);
    if (c_verify->parsed()) return cmd_verify(cfg, suite);

    std::cerr << "no subcommand given (try --help)\n";
    return 2;
  } catch (const UnavailableError& e) {
    std::cerr << "unavailable: " << e.what() << "\n";
    return 3;
  } catch (const ParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
