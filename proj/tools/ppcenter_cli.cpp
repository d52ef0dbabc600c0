// ppcenter: command-line front end.
//
// Exit codes: 0 success, 2 usage or invalid input, 3 parse error, 4 budget
// exceeded, 5 I/O error. Wall times go to stderr so that stdout and every
// written file depend only on the inputs and seeds.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ppcenter/bounds.hpp"
#include "ppcenter/errors.hpp"
#include "ppcenter/evaluation.hpp"
#include "ppcenter/exact.hpp"
#include "ppcenter/fixing.hpp"
#include "ppcenter/formulations.hpp"
#include "ppcenter/instance.hpp"
#include "ppcenter/model.hpp"
#include "ppcenter/vns.hpp"

namespace fs = std::filesystem;

namespace {

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string rounded(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// "name <full> <rounded>"
void emit(std::ostream& out, const std::string& name, double v) {
  out << name << ' ' << full(v) << ' ' << rounded(v) << '\n';
}

std::string site_list(const std::vector<int>& sites) {
  std::string s;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(sites[k] + 1);
  }
  return s;
}

std::vector<int> zero_based(const std::vector<int>& oneBased, int n) {
  std::vector<int> out;
  for (int s : oneBased) {
    if (s < 1 || s > n) {
      throw std::invalid_argument("site " + std::to_string(s) + " out of range [1," +
                                  std::to_string(n) + "]");
    }
    out.push_back(s - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

class Stopwatch {
 public:
  explicit Stopwatch(std::string label) : label_(std::move(label)) {}
  ~Stopwatch() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::fprintf(stderr, "%s time %.3f s\n", label_.c_str(), s);
  }

 private:
  std::string label_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Output goes to the file when a path is given, else to stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ppc::IoError("cannot write " + path);
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void close() {
    if (path_.empty()) return;
    file_.close();
    if (!file_) throw ppc::IoError("write failed for " + path_);
  }

 private:
  std::string path_;
  std::ofstream file_;
};

struct Options {
  std::string instance;
  std::string method = "exact";
  std::string formulation = "F3K";
  std::string variant = "1";
  std::uint64_t seed = 1;
  int restarts = 5;
  std::optional<std::uint64_t> budget;
  std::string out;
  std::vector<int> sites;
  int n = 0;
  int p = 0;
  int K = 0;
  std::optional<std::uint64_t> qseed;
  std::string orlib;
  std::string coords;
  std::vector<int> centers;
  std::int64_t samples = 1'000'000;
  bool mps = false;
  bool csv = false;
  std::string dir;
  std::string methods = "exact,vns,ub1,lb1,pcp";
  std::string timings;
};

ppc::EnumerationOptions enum_opts(const Options& o, std::uint64_t fallback = 100'000'000) {
  return {o.budget.value_or(fallback), 0};
}

// --- gen -------------------------------------------------------------------

int cmd_gen(const Options& o) {
  if (o.orlib.empty() == o.coords.empty()) {
    throw std::invalid_argument("gen needs exactly one of --orlib and --coords");
  }
  std::optional<ppc::Instance> inst;
  if (!o.orlib.empty()) {
    std::ifstream in(o.orlib);
    if (!in) throw ppc::IoError("cannot open " + o.orlib);
    const ppc::OrlibGraph g = ppc::parse_orlib(in);
    const auto full = ppc::all_pairs_shortest(g);
    std::vector<int> sites;
    if (!o.sites.empty()) {
      for (int s : o.sites) sites.push_back(s - 1);
    } else {
      const int n = o.n > 0 ? o.n : g.n;
      if (n > g.n) throw std::invalid_argument("--n exceeds the " + std::to_string(g.n) + " graph nodes");
      for (int s = 0; s < n; ++s) sites.push_back(s);
    }
    const int p = o.p > 0 ? o.p : g.p;
    const int K = o.K > 0 ? o.K : static_cast<int>(sites.size()) - p;
    inst = ppc::extract_submatrix(full, g.n, sites, p, K, o.qseed.value_or(o.seed));
  } else {
    std::ifstream in(o.coords);
    if (!in) throw ppc::IoError("cannot open " + o.coords);
    ppc::CoordinateFile c = ppc::read_coordinates(in);
    std::vector<ppc::Point> pts;
    std::vector<double> q;
    if (!o.sites.empty()) {
      for (int s : zero_based(o.sites, static_cast<int>(c.points.size()))) {
        pts.push_back(c.points[s]);
        q.push_back(c.q[s]);
      }
    } else {
      pts = c.points;
      q = c.q;
    }
    const int n = static_cast<int>(pts.size());
    if (o.qseed) q = ppc::gen_probabilities(n, *o.qseed);
    const int p = o.p > 0 ? o.p : c.p;
    const int K = o.K > 0 ? o.K : (o.p > 0 ? n - p : c.K);
    inst = ppc::from_coordinates(pts, q, p, K);
  }
  if (o.out.empty()) {
    ppc::write_instance(std::cout, *inst);
  } else {
    ppc::save_instance(o.out, *inst);
  }
  return 0;
}

// --- solve -----------------------------------------------------------------

int cmd_solve(const Options& o) {
  const ppc::Instance inst = ppc::load_instance(o.instance);
  std::vector<int> centers;
  std::vector<int> assign;
  double value = 0.0;
  std::optional<std::uint64_t> explored;
  {
    Stopwatch sw("solve");
    if (o.method == "exact" || o.method == "exact-nocac") {
      const ppc::ExactResult r = o.method == "exact"
                                     ? ppc::solve_exact_cac(inst, enum_opts(o))
                                     : ppc::solve_exact_nocac(inst, enum_opts(o, 1'000'000'000));
      centers = r.bestCenters;
      assign = r.bestAssignment;
      value = r.bestValue;
      explored = r.subsetsExplored;
    } else if (o.method == "vns") {
      const ppc::VnsResult r = ppc::vns_run(inst, o.seed, o.restarts);
      centers = r.bestCenters;
      value = r.bestValue;
      assign = ppc::closest_assignment(inst, centers).assign;
    } else {
      throw std::invalid_argument("unknown method '" + o.method + "' (exact, exact-nocac, vns)");
    }
  }
  std::ostream& out = std::cout;
  out << "method " << o.method << '\n';
  emit(out, "value", value);
  out << "centers " << site_list(centers) << '\n';
  out << "assignment " << site_list(assign) << '\n';
  if (explored) out << "evaluations " << *explored << '\n';
  if (o.method == "vns") out << "seed " << o.seed << "\nrestarts " << o.restarts << '\n';
  return 0;
}

// --- bounds ----------------------------------------------------------------

struct Quantity {
  std::string name;
  std::optional<double> value;  // empty: budget exceeded
};

std::vector<Quantity> bound_quantities(const ppc::Instance& inst, const Options& o,
                                       std::string& pcpCenters) {
  const auto eo = enum_opts(o);
  std::vector<Quantity> q;
  auto guarded = [&](const std::string& name, const std::function<double()>& f) {
    try {
      q.push_back({name, f()});
    } catch (const ppc::BudgetExceeded&) {
      q.push_back({name, std::nullopt});
    }
  };
  guarded("ub_pcp", [&] {
    const auto s = ppc::solve_pcp(inst, inst.p(), eo);
    pcpCenters = site_list(s.centers);
    return s.value;
  });
  guarded("ub1", [&] { return ppc::ub1(inst, eo); });
  guarded("lb1", [&] { return ppc::lb1(inst, eo); });
  guarded("vns_ub", [&] { return ppc::vns_run(inst, o.seed, o.restarts).bestValue; });
  try {
    const auto pb = ppc::positional_bounds(inst, eo);
    for (const auto& [t, v] : pb.Ud) q.push_back({"Ud_" + std::to_string(t), v});
    for (const auto& [t, v] : pb.Ld) q.push_back({"Ld_" + std::to_string(t), v});
  } catch (const ppc::BudgetExceeded&) {
    q.push_back({"Ud", std::nullopt});
    q.push_back({"Ld", std::nullopt});
  }
  for (int t = 1; t <= inst.K(); ++t) {
    guarded("zplus_" + std::to_string(t), [&] { return ppc::z_plus(inst, t, eo); });
  }
  guarded("dtilde_star", [&] { return ppc::d_tilde_star(inst, eo); });
  return q;
}

int cmd_bounds(const Options& o) {
  const ppc::Instance inst = ppc::load_instance(o.instance);
  std::string pcpCenters;
  std::vector<Quantity> q;
  {
    Stopwatch sw("bounds");
    q = bound_quantities(inst, o, pcpCenters);
  }
  Sink sink(o.out);
  std::ostream& out = sink.stream();
  bool partial = false;
  if (o.csv) {
    out << "quantity,value,rounded\n";
    for (const auto& x : q) {
      if (x.value) {
        out << x.name << ',' << full(*x.value) << ',' << rounded(*x.value) << '\n';
      } else {
        out << x.name << ",NA,budget\n";
        partial = true;
      }
    }
  } else {
    for (const auto& x : q) {
      if (x.value) {
        emit(out, x.name, *x.value);
      } else {
        out << x.name << " NA budget\n";
        partial = true;
      }
    }
    if (!pcpCenters.empty()) out << "pcp_centers " << pcpCenters << '\n';
  }
  sink.close();
  if (partial) std::fprintf(stderr, "bounds: some components exceeded the budget\n");
  return 0;
}

// --- fix-report / export ---------------------------------------------------

int cmd_fix_report(const Options& o) {
  const ppc::Instance inst = ppc::load_instance(o.instance);
  const ppc::Formulation f = ppc::parse_formulation(o.formulation);
  const ppc::VariantSpec v = ppc::parse_variant(f, o.variant);
  ppc::FixReport report;
  {
    Stopwatch sw("fix-report");
    const auto inputs = ppc::compute_fixing_inputs(inst, v.fixing, o.seed, enum_opts(o));
    report = ppc::build_fix_report(inst, f, v.fixing, inputs);
  }
  Sink sink(o.out);
  ppc::write_fix_report_csv(sink.stream(), report);
  sink.close();
  return 0;
}

int cmd_export(const Options& o) {
  if (o.out.empty()) throw std::invalid_argument("export needs --out");
  const ppc::Instance inst = ppc::load_instance(o.instance);
  const ppc::Formulation f = ppc::parse_formulation(o.formulation);
  const ppc::VariantSpec v = ppc::parse_variant(f, o.variant);
  ppc::LinearModel model;
  {
    Stopwatch sw("export");
    const auto inputs = ppc::compute_fixing_inputs(inst, v.fixing, o.seed, enum_opts(o));
    model = ppc::build_model(inst, v, inputs);
  }
  Sink sink(o.out);
  if (o.mps) {
    ppc::write_mps(sink.stream(), model);
  } else {
    ppc::write_lp(sink.stream(), model);
  }
  sink.close();
  std::cout << "variant " << v.name << '\n';
  if (!v.prefixMode.empty()) std::cout << "prefix-mode " << v.prefixMode << '\n';
  std::cout << "variables " << model.variables().size() << '\n'
            << "binaries " << model.count(ppc::VarKind::Binary) << '\n'
            << "continuous " << model.count(ppc::VarKind::Continuous) << '\n'
            << "constraints " << model.constraints().size() << '\n';
  return 0;
}

// --- evaluate / simulate ---------------------------------------------------

int cmd_evaluate(const Options& o) {
  const ppc::Instance inst = ppc::load_instance(o.instance);
  const auto c = zero_based(o.centers, inst.n());
  const ppc::Solution s = ppc::closest_assignment(inst, c);
  emit(std::cout, "value", ppc::evaluate(inst, c));
  std::cout << "centers " << site_list(s.centers) << '\n';
  std::cout << "assignment " << site_list(s.assign) << '\n';
  return 0;
}

int cmd_simulate(const Options& o) {
  const ppc::Instance inst = ppc::load_instance(o.instance);
  const auto c = zero_based(o.centers, inst.n());
  if (o.samples < 1) throw std::invalid_argument("--samples must be positive");
  ppc::SimulationResult r{};
  {
    Stopwatch sw("simulate");
    r = ppc::simulate(inst, c, o.samples, o.seed);
  }
  emit(std::cout, "mean", r.mean);
  emit(std::cout, "stderr", r.stderror);
  emit(std::cout, "exact", ppc::evaluate(inst, c));
  std::cout << "samples " << o.samples << "\nseed " << o.seed << '\n';
  return 0;
}

// --- bench -----------------------------------------------------------------

struct Record {
  std::string instance;
  std::string method;
  std::optional<double> value;
  std::optional<double> gap;
  std::string status = "ok";
  double seconds = 0.0;
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

double run_method(const ppc::Instance& inst, const std::string& m, const Options& o) {
  const auto eo = enum_opts(o);
  if (m == "exact") return ppc::solve_exact_cac(inst, eo).bestValue;
  if (m == "vns") return ppc::vns_run(inst, o.seed, o.restarts).bestValue;
  if (m == "ub1") return ppc::ub1(inst, eo);
  if (m == "lb1") return ppc::lb1(inst, eo);
  if (m == "pcp") return ppc::solve_pcp(inst, inst.p(), eo).value;
  throw std::invalid_argument("unknown bench method '" + m + "' (exact, vns, ub1, lb1, pcp)");
}

int cmd_bench(const Options& o) {
  const auto methods = split_csv(o.methods);
  for (const auto& m : methods) {
    if (m != "exact" && m != "vns" && m != "ub1" && m != "lb1" && m != "pcp") {
      throw std::invalid_argument("unknown bench method '" + m + "' (exact, vns, ub1, lb1, pcp)");
    }
  }
  std::error_code ec;
  if (!fs::is_directory(o.dir, ec)) throw ppc::IoError("not a directory: " + o.dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(o.dir)) {
    if (e.is_regular_file() && e.path().filename().string().front() != '.') files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<Record> records;
  for (const auto& path : files) {
    const std::string id = path.filename().string();
    std::optional<ppc::Instance> inst;
    std::string loadError;
    try {
      inst = ppc::load_instance(path.string());
    } catch (const std::exception& e) {
      loadError = e.what();
    }
    std::optional<double> exact;
    const std::size_t first = records.size();
    for (const auto& m : methods) {
      Record r;
      r.instance = id;
      r.method = m;
      if (!inst) {
        r.status = "error: " + loadError;
      } else {
        const auto start = std::chrono::steady_clock::now();
        try {
          r.value = run_method(*inst, m, o);
          if (m == "exact") exact = r.value;
        } catch (const ppc::BudgetExceeded&) {
          r.status = "budget";
        } catch (const std::exception& e) {
          r.status = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
      records.push_back(r);
    }
    if (exact && *exact > 0) {
      for (std::size_t k = first; k < records.size(); ++k) {
        if (records[k].value) records[k].gap = 100.0 * (*records[k].value - *exact) / *exact;
      }
    }
  }

  auto clean = [](std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
  };
  Sink sink(o.out);
  std::ostream& out = sink.stream();
  out << "instance,method,value,rounded,gap_percent,gap_rounded,seed,status\n";
  for (const auto& r : records) {
    out << clean(r.instance) << ',' << r.method << ',' << (r.value ? full(*r.value) : "") << ','
        << (r.value ? rounded(*r.value) : "") << ',' << (r.gap ? full(*r.gap) : "") << ','
        << (r.gap ? rounded(*r.gap) : "") << ',' << o.seed << ',' << clean(r.status) << '\n';
  }
  // Mean gap per method over the instances with an exact value.
  for (const auto& m : methods) {
    double sum = 0.0;
    int count = 0;
    for (const auto& r : records) {
      if (r.method == m && r.gap) {
        sum += *r.gap;
        ++count;
      }
    }
    if (count == 0) continue;
    const double mean = sum / count;
    out << "mean," << m << ",,," << full(mean) << ',' << rounded(mean) << ',' << o.seed
        << ",n=" << count << '\n';
  }
  sink.close();

  if (!o.timings.empty()) {
    Sink t(o.timings);
    t.stream() << "instance,method,seconds\n";
    for (const auto& r : records) t.stream() << clean(r.instance) << ',' << r.method << ',' << r.seconds << '\n';
    t.close();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic p-center: solve, bound, fix and export"};
  app.require_subcommand(1);
  Options o;

  auto instance_opt = [&](CLI::App* c) { c->add_option("--instance", o.instance, "instance file")->required(); };
  auto seed_opt = [&](CLI::App* c) { c->add_option("--seed", o.seed, "random seed"); };
  auto budget_opt = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "enumeration budget (evaluations)");
  };
  auto model_opts = [&](CLI::App* c) {
    c->add_option("--formulation", o.formulation, "FH, F3K, CF3K or PFK");
    c->add_option("--variant", o.variant, "variant number, FORM:N or custom:tok,...");
  };

  auto* gen = app.add_subcommand("gen", "build an instance from an ORLIB pmed or coordinate file");
  gen->add_option("--orlib", o.orlib, "ORLIB pmed file");
  gen->add_option("--coords", o.coords, "coordinate file (n p K, then x y q per site)");
  gen->add_option("--sites", o.sites, "1-based site list")->delimiter(',');
  gen->add_option("--n", o.n, "take the first n nodes");
  gen->add_option("--p", o.p, "number of centers");
  gen->add_option("--K", o.K, "truncation level");
  gen->add_option("--qseed", o.qseed, "seed of the random probabilities");
  seed_opt(gen);
  gen->add_option("--out", o.out, "output path (stdout when absent)");

  auto* solve = app.add_subcommand("solve", "exact or heuristic solution");
  instance_opt(solve);
  solve->add_option("--method", o.method, "exact, exact-nocac or vns");
  seed_opt(solve);
  solve->add_option("--restarts", o.restarts, "VNS restarts");
  budget_opt(solve);

  auto* bounds = app.add_subcommand("bounds", "upper, lower and positional bounds");
  instance_opt(bounds);
  seed_opt(bounds);
  bounds->add_option("--restarts", o.restarts, "VNS restarts");
  budget_opt(bounds);
  bounds->add_flag("--csv", o.csv, "CSV output");
  bounds->add_option("--out", o.out, "output path");

  auto* fix = app.add_subcommand("fix-report", "variable fixing counts as CSV");
  instance_opt(fix);
  model_opts(fix);
  seed_opt(fix);
  budget_opt(fix);
  fix->add_option("--out", o.out, "output path");

  auto* exp = app.add_subcommand("export", "write a MILP model");
  instance_opt(exp);
  model_opts(exp);
  seed_opt(exp);
  budget_opt(exp);
  exp->add_option("--out", o.out, "output path")->required();
  exp->add_flag("--mps", o.mps, "fixed-field MPS instead of LP");

  auto* eval = app.add_subcommand("evaluate", "objective of a center set");
  instance_opt(eval);
  eval->add_option("--centers", o.centers, "1-based centers")->delimiter(',')->required();

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo estimate of the objective");
  instance_opt(sim);
  sim->add_option("--centers", o.centers, "1-based centers")->delimiter(',')->required();
  sim->add_option("--samples", o.samples, "number of samples");
  seed_opt(sim);

  auto* bench = app.add_subcommand("bench", "run methods over a directory of instances");
  bench->add_option("--dir", o.dir, "instance directory")->required();
  bench->add_option("--methods", o.methods, "comma list of exact, vns, ub1, lb1, pcp");
  seed_opt(bench);
  bench->add_option("--restarts", o.restarts, "VNS restarts");
  budget_opt(bench);
  bench->add_option("--out", o.out, "CSV path");
  bench->add_option("--timings", o.timings, "optional CSV of wall times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*solve) return cmd_solve(o);
    if (*bounds) return cmd_bounds(o);
    if (*fix) return cmd_fix_report(o);
    if (*exp) return cmd_export(o);
    if (*eval) return cmd_evaluate(o);
    if (*sim) return cmd_simulate(o);
    if (*bench) return cmd_bench(o);
  } catch (const ppc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const ppc::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 4;
  } catch (const ppc::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
