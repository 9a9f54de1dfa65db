// witent command-line front end.
//
// Exit codes: 0 success, 1 bad input, 2 solver failure.

#include <witent/witent.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace witent;

namespace {

constexpr int kExitBadInput = 1;
constexpr int kExitSolver = 2;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_bound(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return kUnbounded;
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("cannot parse '" + s + "' as a number");
  return v;
}

Cut parse_cut(const std::string& s) {
  std::vector<std::size_t> parties;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size() || v < 0) throw std::invalid_argument("bad cut index '" + tok + "'");
    parties.push_back(static_cast<std::size_t>(v));
  }
  return Cut(parties);
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() != 3) throw std::invalid_argument("grid must be start:stop:count, got '" + spec + "'");
  const double a = std::stod(parts[0]), b = std::stod(parts[1]);
  const long n = std::stol(parts[2]);
  if (n < 1) throw std::invalid_argument("grid count must be >= 1");
  std::vector<double> out;
  for (long i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_bound(tok));
  return out;
}

// Output stream: file when a path is given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot write '" + path + "'");
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Config {
  std::map<std::string, std::string> entries;
  void set(const std::string& k, const std::string& v) { entries[k] = v; }
  std::string header(std::uint64_t seed, bool seeded) const {
    std::string canon;
    for (const auto& [k, v] : entries) canon += k + "=" + v + ";";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(canon));
    std::string h = std::string("# witent ") + kVersion;
    if (seeded) h += " seed=" + std::to_string(seed);
    return h + " config=" + buf;
  }
};

std::string join(const std::vector<std::string>& cols) {
  std::string s;
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
  return s;
}

// ---- compute ------------------------------------------------------------

struct ComputeArgs {
  std::string measure;
  std::string state;
  std::string cut = "0";
  std::string n = "inf";
  std::string m = "1";
  std::string witness_out;
  std::string output;
};

int cmd_compute(const ComputeArgs& a) {
  const auto rho = state_from_json(read_json_file(a.state));
  const double n = parse_bound(a.n), m = parse_bound(a.m);
  MeasureResult r;
  json extra = json::object();
  if (a.measure == "negativity") {
    r = negativity(rho, parse_cut(a.cut));
  } else if (a.measure == "rg-ppt") {
    r = rg_ppt_closed(rho, parse_cut(a.cut));
  } else if (a.measure == "e-nm-ppt") {
    std::vector<Cut> cuts;
    std::stringstream ss(a.cut);
    std::string tok;
    while (std::getline(ss, tok, ';')) cuts.push_back(parse_cut(tok));
    r = e_nm_ppt(rho, cuts, n, m);
    extra["n"] = bound_to_json(n);
    extra["m"] = bound_to_json(m);
    extra["certificate_value"] = certificate_value(*r.certificate, n, m);
  } else if (a.measure == "rr-ppt") {
    r = rr_ppt(rho, parse_cut(a.cut));
  } else if (a.measure == "rains-fidelity") {
    r.value = rains_fidelity(rho, parse_cut(a.cut));
    r.tolerance = 1e-6;
  } else if (a.measure == "concurrence") {
    r.value = concurrence_2q(rho);
    r.tolerance = 1e-10;
  } else if (a.measure == "ssr-nonlocality") {
    r = ssr_nonlocality(rho);
  } else if (a.measure == "rg-dps2") {
    r = rg_dps2(rho, parse_cut(a.cut));
  } else {
    throw std::invalid_argument("unknown measure '" + a.measure + "'");
  }
  json out = measure_result_to_json(r);
  out["measure"] = a.measure;
  for (auto& [k, v] : extra.items()) out[k] = v;
  if (!a.witness_out.empty()) {
    if (!r.witness) throw std::invalid_argument("measure '" + a.measure + "' produces no witness");
    Output w(a.witness_out);
    w.os() << witness_to_json(*r.witness).dump(2) << "\n";
    out["witness_file"] = a.witness_out;
  }
  Output o(a.output);
  o.os() << out.dump(2) << "\n";
  return 0;
}

// ---- reproduce ----------------------------------------------------------

struct ReproArgs {
  std::string name;
  std::uint64_t seed = 7;
  bool seed_given = false;
  int samples = 1000;
  std::string dims = "2,2";
  int dim = 0;
  unsigned workers = 1;
  std::string output;
  // example1
  std::string q_grid = "0:1:11";
  std::string n_grid = "0:4.5:10";
  // fig7q
  std::string a_grid = "0.1:0.9:9";
  std::string e_grid = "0.9:1:3";
  // heisenberg
  int N = 6;
  double J = 1.0;
  double B = 0.0;
  bool periodic = true;
  std::string beta_grid = "0:20:41";
  // isotropic
  int d = 3;
  std::string n_list;
  int p_count = 20;
};

int repro_fig56(const ReproArgs& a, Config& cfg, std::ostream& os) {
  std::vector<std::size_t> dims;
  if (a.dim > 0) {
    dims = {static_cast<std::size_t>(a.dim), static_cast<std::size_t>(a.dim)};
  } else {
    for (double v : parse_list(a.dims)) dims.push_back(static_cast<std::size_t>(v));
  }
  if (dims.size() != 2) throw std::invalid_argument("fig56 needs two local dimensions");
  if (a.samples < 1) throw std::invalid_argument("samples must be >= 1");
  cfg.set("dims", std::to_string(dims[0]) + "x" + std::to_string(dims[1]));
  cfg.set("samples", std::to_string(a.samples));
  const SystemShape shape(dims);
  const auto ns = static_cast<std::size_t>(a.samples);
  std::vector<double> neg(ns), rg(ns);
  parallel_for(ns, a.workers, [&](std::size_t i) {
    const auto rho = random_density(shape, a.seed, i);
    neg[i] = negativity(rho, Cut{0}).value;
    rg[i] = rg_ppt_closed(rho, Cut{0}).value;
  });
  os << cfg.header(a.seed, true) << "\n" << join({"index", "negativity", "rg_ppt"}) << "\n";
  std::size_t npt = 0, le_npt = 0, le_all = 0;
  const double d = static_cast<double>(std::min(dims[0], dims[1]));
  std::size_t sandwich_violations = 0;
  for (std::size_t i = 0; i < ns; ++i) {
    os << i << "," << fmt(neg[i]) << "," << fmt(rg[i]) << "\n";
    const bool le = rg[i] <= 2.0 * neg[i] + 1e-12;
    if (neg[i] > 0.0) {
      ++npt;
      if (le) ++le_npt;
    }
    if (le) ++le_all;
    if (rg[i] < neg[i] - 1e-8 || rg[i] > d * neg[i] + 1e-8) ++sandwich_violations;
  }
  os << "# summary samples=" << ns << " npt=" << npt
     << " frac_rg_le_2n_npt=" << fmt(npt ? double(le_npt) / double(npt) : 0.0)
     << " frac_rg_le_2n_all=" << fmt(double(le_all) / double(ns)) << " sandwich_violations=" << sandwich_violations
     << "\n";
  return 0;
}

int repro_example1(const ReproArgs& a, Config& cfg, std::ostream& os) {
  const auto qs = parse_grid(a.q_grid), ns = parse_grid(a.n_grid);
  cfg.set("q_grid", a.q_grid);
  cfg.set("n_grid", a.n_grid);
  struct Row {
    double q, n, e[4];
  };
  std::vector<Row> rows(qs.size() * ns.size());
  const std::vector<Cut> cuts{Cut{0}, Cut{1}, Cut{2}};
  parallel_for(rows.size(), a.workers, [&](std::size_t i) {
    const double q = qs[i / ns.size()], n = ns[i % ns.size()];
    const auto rho = w_ghz_mix(q);
    Row r{q, n, {}};
    for (int c = 0; c < 3; ++c) r.e[c] = e_nm_ppt(rho, cuts[static_cast<std::size_t>(c)], n, 1.0).value;
    r.e[3] = e_nm_ppt(rho, cuts, n, 1.0).value;
    rows[i] = r;
  });
  os << cfg.header(a.seed, false) << "\n"
     << join({"q", "n", "e_ppt_0|12", "e_ppt_1|02", "e_ppt_2|01", "e_ppt_all_cuts"}) << "\n";
  for (const auto& r : rows)
    os << fmt(r.q) << "," << fmt(r.n) << "," << fmt(r.e[0]) << "," << fmt(r.e[1]) << "," << fmt(r.e[2]) << ","
       << fmt(r.e[3]) << "\n";
  return 0;
}

int repro_fig7q(const ReproArgs& a, Config& cfg, std::ostream& os) {
  const auto as = parse_grid(a.a_grid), es = parse_grid(a.e_grid);
  cfg.set("a_grid", a.a_grid);
  cfg.set("e_grid", a.e_grid);
  struct Row {
    double a, e, neg, dps, eof_rg, rr, eof_rr;
  };
  std::vector<Row> rows(as.size() * es.size());
  parallel_for(rows.size(), a.workers, [&](std::size_t i) {
    const double av = as[i / es.size()], ev = es[i % es.size()];
    const auto rho = white_noise_mix(horodecki_3x3(av), ev);
    const auto dps = rg_dps2(rho, Cut{0});
    const double rr = dps.value > 0.0 ? rescaled_witness_rr(*dps.witness, rho) : 0.0;
    rows[i] = {av, ev, negativity(rho, Cut{0}).value, dps.value, eof_lower_rg(dps.value, 3).value, rr,
               eof_lower_rr(rr).value};
  });
  os << cfg.header(a.seed, false) << "\n"
     << join({"a", "e", "negativity", "rg_dps2", "eof_lower_rg", "rr_rescaled", "eof_lower_rr"}) << "\n";
  for (const auto& r : rows)
    os << fmt(r.a) << "," << fmt(r.e) << "," << fmt(r.neg) << "," << fmt(r.dps) << "," << fmt(r.eof_rg) << ","
       << fmt(r.rr) << "," << fmt(r.eof_rr) << "\n";
  return 0;
}

int repro_heisenberg(const ReproArgs& a, Config& cfg, std::ostream& os) {
  const auto betas = parse_grid(a.beta_grid);
  cfg.set("N", std::to_string(a.N));
  cfg.set("J", fmt(a.J));
  cfg.set("B", fmt(a.B));
  cfg.set("periodic", a.periodic ? "1" : "0");
  cfg.set("beta_grid", a.beta_grid);
  const XxxChain chain(ChainSpec{a.N, a.J, a.B, a.periodic, 0.0});
  os << cfg.header(a.seed, false) << "\n"
     << join({"beta", "T", "U", "M", "witness_value", "estimate", "chi_exact", "chi_witness_form", "rg_lower",
              "estimate_opposite_sign"})
     << "\n";
  for (double beta : betas) {
    const auto p = chain.at(beta);
    const auto est = thermo_estimate(chain, beta);
    double chi = std::nan(""), chi_w = std::nan("");
    if (beta > 0.0 && a.B == 0.0) {
      const auto s = susceptibility(chain, beta);
      chi = s.chi_exact;
      chi_w = s.chi_witness_form;
    }
    const double T = beta > 0.0 ? 1.0 / beta : kUnbounded;
    os << fmt(beta) << "," << fmt(T) << "," << fmt(p.U) << "," << fmt(p.M) << "," << fmt(-p.witness) << ","
       << fmt(est.estimate) << "," << fmt(chi) << "," << fmt(chi_w) << "," << fmt(std::max(0.0, -p.witness)) << ","
       << fmt(est.printed) << "\n";
  }
  return 0;
}

int repro_isotropic(const ReproArgs& a, Config& cfg, std::ostream& os) {
  const int d = a.d;
  std::vector<double> ns = a.n_list.empty()
                               ? std::vector<double>{0.5, 1.0, double(d - 1), double(d), 2.0 * d}
                               : parse_list(a.n_list);
  cfg.set("d", std::to_string(d));
  cfg.set("n_list", [&] {
    std::string s;
    for (double n : ns) s += fmt(n) + ",";
    return s;
  }());
  cfg.set("p_count", std::to_string(a.p_count));
  if (a.p_count < 2) throw std::invalid_argument("p-count must be >= 2");
  struct Row {
    double n, p, closed, lp, sdp;
  };
  std::vector<Row> rows(ns.size() * static_cast<std::size_t>(a.p_count));
  parallel_for(rows.size(), a.workers, [&](std::size_t i) {
    const double n = ns[i / static_cast<std::size_t>(a.p_count)];
    const double p = double(i % static_cast<std::size_t>(a.p_count)) / double(a.p_count - 1);
    rows[i] = {n, p, isotropic_e_n1(d, p, n), symmetric_witness_opt(d, p, n, 1.0).value,
               e_nm_ppt(isotropic(static_cast<std::size_t>(d), p), Cut{0}, n, 1.0).value};
  });
  os << cfg.header(a.seed, false) << "\n"
     << join({"d", "n", "p", "closed_form", "symmetric_lp", "sdp", "closed_minus_sdp"}) << "\n";
  double worst = 0.0, worst_lp = 0.0;
  for (const auto& r : rows) {
    os << d << "," << fmt(r.n) << "," << fmt(r.p) << "," << fmt(r.closed) << "," << fmt(r.lp) << "," << fmt(r.sdp)
       << "," << fmt(r.closed - r.sdp) << "\n";
    worst = std::max(worst, std::abs(r.closed - r.sdp));
    worst_lp = std::max(worst_lp, std::abs(r.lp - r.sdp));
  }
  os << "# summary max_abs_closed_minus_sdp=" << fmt(worst) << " max_abs_lp_minus_sdp=" << fmt(worst_lp) << "\n";
  return 0;
}

int cmd_reproduce(const ReproArgs& a) {
  Config cfg;
  cfg.set("experiment", a.name);
  std::ostringstream buf;
  int rc = 0;
  if (a.name == "fig56") {
    if (!a.seed_given) throw std::invalid_argument("fig56 is stochastic and needs --seed");
    rc = repro_fig56(a, cfg, buf);
  } else if (a.name == "example1") {
    rc = repro_example1(a, cfg, buf);
  } else if (a.name == "fig7q") {
    rc = repro_fig7q(a, cfg, buf);
  } else if (a.name == "heisenberg") {
    rc = repro_heisenberg(a, cfg, buf);
  } else if (a.name == "isotropic") {
    rc = repro_isotropic(a, cfg, buf);
  } else {
    throw std::invalid_argument("unknown experiment '" + a.name + "'");
  }
  Output o(a.output);
  o.os() << buf.str();
  return rc;
}

// ---- gen-state ----------------------------------------------------------

struct GenArgs {
  std::string family;
  int d = 2;
  double p = 1.0;
  double a = 0.5;
  double q = 0.5;
  double e = 1.0;
  std::string dims = "2,2";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int N = 2;
  double J = 1.0;
  double B = 0.0;
  double beta = 1.0;
  bool periodic = false;
  std::string output;
};

int cmd_gen_state(const GenArgs& g) {
  auto shape_from = [&] {
    std::vector<std::size_t> dims;
    for (double v : parse_list(g.dims)) {
      if (!(v >= 1.0) || v != std::floor(v)) throw std::invalid_argument("dims must be positive integers");
      dims.push_back(static_cast<std::size_t>(v));
    }
    return SystemShape(dims);
  };
  auto need_seed = [&] {
    if (!g.seed_given) throw std::invalid_argument("family '" + g.family + "' is random and needs --seed");
  };
  std::optional<DensityMatrix> rho;
  if (g.family == "bell") rho = max_entangled(2);
  else if (g.family == "max-entangled") rho = max_entangled(static_cast<std::size_t>(g.d));
  else if (g.family == "isotropic") rho = isotropic(static_cast<std::size_t>(g.d), g.p);
  else if (g.family == "horodecki") rho = horodecki_3x3(g.a);
  else if (g.family == "w-ghz") rho = w_ghz_mix(g.q);
  else if (g.family == "vc-ssr") rho = vc_ssr_state();
  else if (g.family == "werner-antisym") rho = antisymmetric_werner(static_cast<std::size_t>(g.d));
  else if (g.family == "random") {
    need_seed();
    rho = random_density(shape_from(), g.seed, 0);
  } else if (g.family == "random-pure") {
    need_seed();
    Rng rng(g.seed, 0);
    rho = random_pure(shape_from(), rng).density();
  } else if (g.family == "thermal-xxx") {
    rho = thermal(xxx_hamiltonian(ChainSpec{g.N, g.J, g.B, g.periodic, g.beta}), g.beta);
  } else {
    throw std::invalid_argument("unknown family '" + g.family + "'");
  }
  if (g.e != 1.0) rho = white_noise_mix(*rho, g.e);
  Output o(g.output);
  o.os() << state_to_json(*rho).dump(2) << "\n";
  return 0;
}

// ---- validate-witness -----------------------------------------------------

struct ValidateArgs {
  std::string witness;
  std::string state;
  int samples = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  unsigned workers = 1;
  std::string output;
};

int cmd_validate(const ValidateArgs& v) {
  const auto w = witness_from_json(read_json_file(v.witness));
  json out;
  out["class"] = to_string(w.cls);
  if (w.decomposable()) {
    const auto r = validate_decomposable(w);
    out["valid"] = r.valid;
    out["reconstruction_error"] = r.reconstruction_error;
    out["min_eig_p"] = r.min_eig_p;
    out["min_eig_q"] = r.min_eig_q;
    out["upper_violation"] = r.upper_violation;
    out["lower_violation"] = r.lower_violation;
    out["worst_violation"] = r.worst;
    out["worst_item"] = r.worst_item;
  }
  if (!v.state.empty()) out["expectation"] = evaluate(w, state_from_json(read_json_file(v.state)));
  if (v.samples > 0) {
    if (!v.seed_given) throw std::invalid_argument("--samples needs --seed");
    ProductCheckOptions opt;
    opt.workers = v.workers;
    const double mn = mc_product_check(w, v.samples, v.seed, opt);
    out["product_min"] = mn;
    out["product_check"] = mn < -1e-6 ? "not_a_witness" : "no_violation_found";
  }
  Output o(v.output);
  o.os() << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Witness-based entanglement measures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "Evaluate a measure on a state file and print JSON");
  compute->add_option("--measure", ca.measure,
                      "negativity | rg-ppt | e-nm-ppt | rr-ppt | rains-fidelity | concurrence | ssr-nonlocality | rg-dps2")
      ->required();
  compute->add_option("--state", ca.state, "State JSON file")->required();
  compute->add_option("--cut", ca.cut, "Subsystems on one side, e.g. 0 or 0,2; e-nm-ppt takes several separated by ';'");
  compute->add_option("--n", ca.n, "Lower bound n (number or inf)");
  compute->add_option("--m", ca.m, "Upper bound m (number or inf)");
  compute->add_option("--witness-out", ca.witness_out, "Write the optimal witness JSON here");
  compute->add_option("-o,--output", ca.output, "Output file (default stdout)");

  ReproArgs ra;
  auto* repro = app.add_subcommand("reproduce", "Run a numerical experiment and print CSV");
  repro->add_option("name", ra.name, "fig56 | example1 | fig7q | heisenberg | isotropic")->required();
  auto* seed_opt = repro->add_option("--seed", ra.seed, "Base seed (task i uses stream i)");
  repro->add_option("--samples", ra.samples, "Number of random states");
  repro->add_option("--dims", ra.dims, "Local dimensions a,b");
  repro->add_option("--dim", ra.dim, "Shorthand for --dims d,d");
  repro->add_option("--workers", ra.workers, "Worker threads");
  repro->add_option("-o,--output", ra.output, "Output file (default stdout)");
  repro->add_option("--q-grid", ra.q_grid, "start:stop:count");
  repro->add_option("--n-grid", ra.n_grid, "start:stop:count");
  repro->add_option("--a-grid", ra.a_grid, "start:stop:count");
  repro->add_option("--e-grid", ra.e_grid, "start:stop:count");
  repro->add_option("--N", ra.N, "Chain length");
  repro->add_option("--J", ra.J, "Coupling");
  repro->add_option("--B", ra.B, "Field");
  repro->add_option("--periodic", ra.periodic, "Periodic boundary (1/0)");
  repro->add_option("--beta-grid", ra.beta_grid, "start:stop:count");
  repro->add_option("--d", ra.d, "Local dimension for isotropic");
  repro->add_option("--n-list", ra.n_list, "Comma-separated n values");
  repro->add_option("--p-count", ra.p_count, "Number of p values in [0,1]");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen-state", "Write a state JSON file");
  gen->add_option("--family", ga.family,
                  "bell | max-entangled | isotropic | horodecki | w-ghz | vc-ssr | werner-antisym | random | "
                  "random-pure | thermal-xxx")
      ->required();
  gen->add_option("--d", ga.d, "Local dimension");
  gen->add_option("--p", ga.p, "Isotropic weight");
  gen->add_option("--a", ga.a, "Horodecki parameter");
  gen->add_option("--q", ga.q, "W/GHZ weight");
  gen->add_option("--e", ga.e, "Mix with white noise: e*rho + (1-e)I/D");
  gen->add_option("--dims", ga.dims, "Local dimensions for random families");
  auto* gen_seed = gen->add_option("--seed", ga.seed, "Seed for random families");
  gen->add_option("--N", ga.N, "Chain length");
  gen->add_option("--J", ga.J, "Coupling");
  gen->add_option("--B", ga.B, "Field");
  gen->add_option("--beta", ga.beta, "Inverse temperature");
  gen->add_option("--periodic", ga.periodic, "Periodic boundary (1/0)");
  gen->add_option("-o,--output", ga.output, "Output file (default stdout)");

  ValidateArgs va;
  auto* val = app.add_subcommand("validate-witness", "Re-check a witness file");
  val->add_option("--witness", va.witness, "Witness JSON file")->required();
  val->add_option("--state", va.state, "Also report Tr(W rho) for this state");
  val->add_option("--samples", va.samples, "Random product states for the positivity check");
  auto* val_seed = val->add_option("--seed", va.seed, "Seed for the product-state check");
  val->add_option("--workers", va.workers, "Worker threads");
  val->add_option("-o,--output", va.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }
  ra.seed_given = seed_opt->count() > 0;
  ga.seed_given = gen_seed->count() > 0;
  va.seed_given = val_seed->count() > 0;

  try {
    if (*compute) return cmd_compute(ca);
    if (*repro) return cmd_reproduce(ra);
    if (*gen) return cmd_gen_state(ga);
    if (*val) return cmd_validate(va);
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const json::exception& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
