#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ccm/analysis.hpp"
#include "ccm/errors.hpp"
#include "ccm/exploration.hpp"
#include "ccm/io.hpp"
#include "ccm/oracle.hpp"

#ifndef CCM_VERSION
#define CCM_VERSION "unknown"
#endif

namespace {

using ccm::io::json;

struct Options {
  std::string lattice = "z2";
  int n = 1;
  int k = 0;
  std::string p = "0.5";
  std::string p_grid;
  std::string n_list;
  std::uint64_t replicas = 10000;
  std::uint64_t seed = 0;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string format;
  std::string out;
  std::string input;
  bool allow_big = false;
  bool trace = false;
  bool append = false;
  double tau = 0.5;
  double tolerance = 1e-4;
  int n_lo = 0;
  int n_hi = 1 << 30;
  double pc = -1.0;
  std::string window = "0.02:0.10";
  int points = 5;
  int d = 6;
  double delta = 0.9;
};

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ccm::ParameterError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Either a comma list "8,16,32" or an inclusive integer range "lo:hi:step".
std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size() || v < 0) throw std::invalid_argument(s);
      return v;
    } catch (const std::logic_error&) {
      throw ccm::ParameterError("malformed n list: " + text);
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> f;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) f.push_back(part);
    if (f.size() != 3) throw ccm::ParameterError("n range must be lo:hi:step, got " + text);
    const int lo = to_int(f[0]), hi = to_int(f[1]), step = to_int(f[2]);
    if (step <= 0 || hi < lo) throw ccm::ParameterError("malformed n range " + text);
    for (int n = lo; n <= hi; n += step) out.push_back(n);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(to_int(part));
  }
  if (out.empty()) throw ccm::ParameterError("empty n list");
  return out;
}

double p_value(const Options& o) {
  const double p = ccm::to_double(ccm::parse_rational(o.p));
  ccm::check_probability(p);
  return p;
}

std::vector<double> p_values(const Options& o) {
  return o.p_grid.empty() ? ccm::parse_grid(o.p) : ccm::parse_grid(o.p_grid);
}

std::vector<ccm::Rational> rational_p_values(const Options& o) {
  std::vector<ccm::Rational> out;
  if (o.p_grid.empty()) {
    out.push_back(ccm::parse_rational(o.p));
  } else {
    for (double p : ccm::parse_grid(o.p_grid)) out.push_back(ccm::from_double(p));
  }
  for (const auto& p : out) {
    if (p < 0 || p > 1) throw ccm::ParameterError("p must lie in [0, 1], got " + ccm::to_string(p));
  }
  return out;
}

ccm::EnumerationBudget budget(const Options& o) {
  return o.allow_big ? ccm::EnumerationBudget::unlimited() : ccm::EnumerationBudget{};
}

class Runner {
 public:
  Runner(std::string command, std::vector<std::string> args, const Options& o)
      : command_(std::move(command)), args_(std::move(args)), opts_(o), started_(timestamp()) {}

  void emit(const std::string& text) {
    if (opts_.out.empty()) {
      std::cout << text;
      return;
    }
    if (opts_.append && std::filesystem::exists(opts_.out)) {
      // Sweep CSVs grow by rows; the header is written only once.
      const auto existing = read_file(opts_.out);
      const auto head = text.substr(0, text.find('\n') + 1);
      if (existing.compare(0, head.size(), head) != 0) {
        throw ccm::ParameterError("cannot append: " + opts_.out + " has a different header");
      }
      std::ofstream(opts_.out, std::ios::binary | std::ios::app) << text.substr(head.size());
    } else {
      std::ofstream f(opts_.out, std::ios::binary);
      if (!f) throw ccm::ParameterError("cannot write " + opts_.out);
      f << text;
    }
    write_manifest();
  }

 private:
  void write_manifest() const {
    const json manifest = {{"command", command_},
                           {"args", args_},
                           {"seed", opts_.seed},
                           {"version", CCM_VERSION},
                           {"started", started_},
                           {"finished", timestamp()},
                           {"outputs", json::array({opts_.out})}};
    std::ofstream(opts_.out + ".manifest.json", std::ios::binary) << ccm::io::dump(manifest);
  }

  std::string command_;
  std::vector<std::string> args_;
  const Options& opts_;
  std::string started_;
};

std::string theta_csv(const ccm::LatticeSpec& spec, const ccm::ThetaEstimate& e) {
  return ccm::sweep_csv(ccm::SweepResult{spec, {e}});
}

ccm::SweepResult load_or_run_sweep(const Options& o, const std::vector<int>& default_n) {
  if (!o.input.empty()) return ccm::parse_sweep_csv(read_file(o.input));
  const auto spec = ccm::LatticeSpec::from_tag(o.lattice);
  const auto ns = o.n_list.empty() ? default_n : parse_n_list(o.n_list);
  return ccm::theta_sweep(spec, ns, p_values(o), o.replicas, o.seed, o.threads);
}

int cmd_lattice_info(const Options& o, Runner& out) {
  const auto spec = ccm::LatticeSpec::from_tag(o.lattice);
  if (o.n < 0) throw ccm::ParameterError("n must be nonnegative");
  const auto region = ccm::ball(spec, o.n);
  json gens = json::array();
  for (const auto& g : spec.generators()) gens.push_back(ccm::io::vertex_json(g));
  json spheres = json::array();
  for (int k = 0; k <= o.n; ++k) spheres.push_back(ccm::sphere(*region, k).size());
  const double bits =
      static_cast<double>(region->size()) * std::log2(2.0 * static_cast<double>(spec.degree()));
  const json j = {{"lattice", spec.tag()},
                  {"family", spec.family_name()},
                  {"D", spec.dim()},
                  {"degree", spec.degree()},
                  {"generators", gens},
                  {"n", o.n},
                  {"ball_size", region->size()},
                  {"sphere_sizes", spheres},
                  {"enumeration_bits", bits}};
  out.emit(ccm::io::dump(j));
  return 0;
}

int cmd_sample(const Options& o, Runner& out) {
  const auto spec = ccm::LatticeSpec::from_tag(o.lattice);
  if (o.n < 0) throw ccm::ParameterError("n must be nonnegative");
  const auto config = ccm::sample(ccm::ball(spec, o.n), p_value(o), o.seed);
  json j = ccm::io::configuration_json(config);
  if (o.trace) {
    const int k = o.k > 0 ? o.k : o.n;
    j["trace"] = ccm::io::trace_json(config, o.n, k, ccm::run_decision_tree(config, o.n, k));
  }
  out.emit(ccm::io::dump(j));
  return 0;
}

int cmd_theta(const Options& o, Runner& out) {
  const auto spec = ccm::LatticeSpec::from_tag(o.lattice);
  const auto e = ccm::mc_theta(spec, o.n, p_value(o), o.replicas, o.seed, o.threads);
  out.emit(o.format == "csv" ? theta_csv(spec, e) : ccm::io::dump(ccm::io::theta_json(e)));
  return 0;
}

int cmd_sweep(const Options& o, Runner& out) {
  const auto spec = ccm::LatticeSpec::from_tag(o.lattice);
  const auto ns = o.n_list.empty() ? std::vector<int>{o.n} : parse_n_list(o.n_list);
  const auto sweep = ccm::theta_sweep(spec, ns, p_values(o), o.replicas, o.seed, o.threads);
  if (o.format == "json") {
    json cells = json::array();
    for (const auto& c : sweep.cells) cells.push_back(ccm::io::theta_json(c));
    out.emit(ccm::io::dump({{"lattice", spec.tag()}, {"cells", cells}}));
  } else {
    out.emit(ccm::sweep_csv(sweep));
  }
  return 0;
}

int cmd_oracle(const Options& o, Runner& out) {
  const auto spec = ccm::LatticeSpec::from_tag(o.lattice);
  const ccm::ExactModel model(spec, o.n, budget(o));
  std::vector<ccm::AuditReport> audits;
  if (!o.p_grid.empty()) audits = ccm::audit_all(model, rational_p_values(o));
  out.emit(ccm::io::dump(ccm::io::theta_polynomial_json(model.theta(), audits)));
  return 0;
}

int cmd_audit(const Options& o, Runner& out) {
  const auto spec = ccm::LatticeSpec::from_tag(o.lattice);
  const ccm::ExactModel model(spec, o.n, budget(o));
  const auto reports = ccm::audit_all(model, rational_p_values(o));
  bool all_hold = true;
  json list = json::array();
  for (const auto& r : reports) {
    all_hold = all_hold && r.holds;
    list.push_back(ccm::io::audit_json(r));
  }
  out.emit(ccm::io::dump({{"lattice", spec.tag()},
                          {"n", o.n},
                          {"all_hold", all_hold},
                          {"audits", list}}));
  return all_hold ? 0 : 4;
}

int cmd_decay(const Options& o, Runner& out) {
  if (o.input.empty() && o.n_list.empty()) throw ccm::ParameterError("decay needs --input or --n-list");
  const auto sweep = load_or_run_sweep(o, {});
  const auto fit = ccm::decay_fit(sweep, p_value(o), {o.n_lo, o.n_hi});
  out.emit(ccm::io::dump(ccm::io::decay_json(fit)));
  return 0;
}

int cmd_pc(const Options& o, Runner& out) {
  ccm::PcEstimate e;
  if (!o.input.empty()) {
    e = ccm::pc_estimate(ccm::parse_sweep_csv(read_file(o.input)), o.tau);
  } else {
    const auto spec = ccm::LatticeSpec::from_tag(o.lattice);
    const auto ns = o.n_list.empty() ? std::vector<int>{8, 16, 24, 32, 48} : parse_n_list(o.n_list);
    e = ccm::pc_estimate(spec, ns, o.replicas, o.seed, o.threads, o.tau, o.tolerance);
  }
  out.emit(ccm::io::dump(ccm::io::pc_json(e)));
  return 0;
}

int cmd_meanfield(const Options& o, Runner& out) {
  const auto colon = o.window.find(':');
  if (colon == std::string::npos) throw ccm::ParameterError("window must be lo:hi offsets above pc");
  const double w[2] = {ccm::to_double(ccm::parse_rational(o.window.substr(0, colon))),
                       ccm::to_double(ccm::parse_rational(o.window.substr(colon + 1)))};
  double pc = o.pc;
  json pc_record = nullptr;
  if (pc < 0.0) {
    if (!o.input.empty()) throw ccm::ParameterError("meanfield --input needs --pc");
    const auto spec = ccm::LatticeSpec::from_tag(o.lattice);
    const auto ns = o.n_list.empty() ? std::vector<int>{8, 16, 24, 32, 48} : parse_n_list(o.n_list);
    const auto e = ccm::pc_estimate(spec, ns, o.replicas, o.seed, o.threads, o.tau, o.tolerance);
    pc = e.value;
    pc_record = ccm::io::pc_json(e);
  }
  const double lo = pc + w[0];
  const double hi = std::min(1.0, pc + w[1]);
  const auto spec = ccm::LatticeSpec::from_tag(o.lattice);
  ccm::SweepResult sweep{spec, {}};
  if (!o.input.empty()) {
    sweep = ccm::parse_sweep_csv(read_file(o.input));
  } else {
    if (o.points < 1) throw ccm::ParameterError("--points must be positive");
    std::vector<double> ps;
    for (int i = 0; i < o.points; ++i) {
      ps.push_back(o.points == 1 ? lo : lo + (hi - lo) * i / (o.points - 1));
    }
    sweep = ccm::theta_sweep(spec, {o.n}, ps, o.replicas, o.seed, o.threads);
  }
  json j = ccm::io::mean_field_json(ccm::mean_field_check(sweep, pc, lo, hi));
  j["pc_estimate"] = pc_record;
  out.emit(ccm::io::dump(j));
  return 0;
}

int cmd_constants(const Options& o, Runner& out) {
  const auto c = ccm::sharpness_constants(o.d, o.delta);
  if (o.format == "csv") {
    char buf[128];
    std::snprintf(buf, sizeof buf, "d,delta,c0,c1\n%d,%.17g,%.17g,%.17g\n", o.d, o.delta, c.c0,
                  c.c1);
    out.emit(buf);
  } else {
    out.emit(ccm::io::dump({{"d", o.d}, {"delta", o.delta}, {"c0", c.c0}, {"c1", c.c1}}));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corrupted compass model toolkit"};
  app.set_version_flag("--version", CCM_VERSION);
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lattice", o.lattice, "z1, z2, z3, z<D> or tri");
    sub->add_option("--n", o.n, "ball radius");
    sub->add_option("--k", o.k, "decision tree index");
    sub->add_option("--p", o.p, "corruption probability (exact rational or decimal for oracle/audit)");
    sub->add_option("--p-grid", o.p_grid, "lo:hi:count");
    sub->add_option("--n-list", o.n_list, "8,16,32 or lo:hi:step");
    sub->add_option("--replicas", o.replicas);
    sub->add_option("--seed", o.seed);
    sub->add_option("--threads", o.threads);
    sub->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "output path; a manifest is written next to it");
    sub->add_option("--input", o.input, "sweep CSV produced by the sweep command");
    sub->add_flag("--allow-big-enumeration", o.allow_big);
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&, Runner&);
  };
  const Command commands[] = {
      {"lattice-info", "lattice geometry and ball sizes", cmd_lattice_info},
      {"sample", "dump one sampled configuration", cmd_sample},
      {"theta", "Monte Carlo estimate of the one-arm probability", cmd_theta},
      {"sweep", "Monte Carlo sweep over n and p", cmd_sweep},
      {"oracle", "exact one-arm polynomial by enumeration", cmd_oracle},
      {"audit", "exact inequality and identity audits", cmd_audit},
      {"decay", "exponential decay fit", cmd_decay},
      {"pc", "critical point estimate from curve crossings", cmd_pc},
      {"meanfield", "linear growth check above the critical point", cmd_meanfield},
      {"constants", "closed-form constants C0 and C1", cmd_constants},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    subs.emplace_back(sub, &c);
  }
  for (auto& [sub, c] : subs) {
    const std::string name = c->name;
    if (name == "sample") {
      sub->add_flag("--trace", o.trace, "include the decision tree trace");
    } else if (name == "sweep") {
      sub->add_flag("--append", o.append, "append rows to an existing CSV");
    } else if (name == "decay") {
      sub->add_option("--n-lo", o.n_lo);
      sub->add_option("--n-hi", o.n_hi);
    } else if (name == "pc" || name == "meanfield") {
      sub->add_option("--tau", o.tau, "crossing level");
      sub->add_option("--tolerance", o.tolerance, "bisection tolerance in p");
      if (name == "meanfield") {
        sub->add_option("--pc", o.pc, "critical point estimate; estimated inline when absent");
        sub->add_option("--window", o.window, "lo:hi offsets above pc");
        sub->add_option("--points", o.points, "p values in the window");
      }
    } else if (name == "constants") {
      sub->add_option("--d", o.d, "degree");
      sub->add_option("--delta", o.delta);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  for (auto& [sub, c] : subs) {
    if (!sub->parsed()) continue;
    try {
      Runner runner(c->name, args, o);
      return c->run(o, runner);
    } catch (const ccm::EnumerationTooLarge& e) {
      std::cerr << "error: " << e.what() << " (use --allow-big-enumeration)\n";
      return 3;
    } catch (const ccm::FitInfeasible& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 3;
    } catch (const ccm::EstimationFailed& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 3;
    } catch (const ccm::ParameterError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    } catch (const ccm::InvalidVertex& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    } catch (const ccm::OutOfRange& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "internal error: " << e.what() << '\n';
      return 1;
    }
  }
  return 1;
}
