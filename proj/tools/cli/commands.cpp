#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "cli/csv.hpp"
#include "hlcu/estimate.hpp"
#include "hlcu/gsp.hpp"
#include "hlcu/hybrid.hpp"
#include "hlcu/kernels.hpp"
#include "hlcu/lchs.hpp"
#include "hlcu/qed.hpp"
#include "hlcu/qlss.hpp"
#include "hlcu/rng.hpp"

namespace hlcu::cli {

namespace {

using KeyMap = std::map<std::string, std::string>;

const std::map<std::string, KeyMap>& all_keys() {
  static const std::map<std::string, KeyMap> keys = {
      {"demo",
       {{"demo.m", "4"}, {"demo.dim", "4"}, {"demo.partition", "auto"}, {"demo.epsilon", "0.05"}, {"demo.delta", "0.05"}}},
      {"partitions", {{"partitions.m", "5"}, {"partitions.dim", "4"}}},
      {"lchs",
       {{"lchs.l_norm", "2"},
        {"lchs.T", "3"},
        {"lchs.epsilon", "5e-5"},
        {"lchs.P_assumed", "0.01"},
        {"lchs.coherent_terms", "536870912"},
        {"lchs.points", "60"},
        {"lchs.check_dim", "4"},
        {"lchs.check_epsilon", "0.01"},
        {"lchs.check_T", "1"}}},
      {"qlss",
       {{"qlss.kappas", "4,8,16,32"},
        {"qlss.epsilon", "0.01"},
        {"qlss.dim", "8"},
        {"qlss.c_j", "1"},
        {"qlss.c_k", "2"},
        {"qlss.c_y", "2"},
        {"qlss.c_z", "1"}}},
      {"gsp",
       {{"gsp.dim", "16"},
        {"gsp.gap", "0.2"},
        {"gsp.p0", "0.5"},
        {"gsp.epsilons", "1e-2,1e-3"},
        {"gsp.energy_error", "0"},
        {"gsp.energy_error2", "0"}}},
      {"qed", {{"qed.ratios", "0.1,0.2,0.3"}, {"qed.codewords", "32"}}},
  };
  return keys;
}

struct Context {
  const Options& opt;
  const KeyMap& keys;
  Config cfg;
  std::ostream& out;

  std::string str(const std::string& k) const { return cfg.value(keys, k); }
  double num(const std::string& k) const { return to_double(k, str(k)); }
  std::int64_t integer(const std::string& k) const { return to_int(k, str(k)); }
  std::vector<double> list(const std::string& k) const { return to_list(k, str(k)); }
  std::string path(const std::string& name) const { return (std::filesystem::path(opt.out_dir) / name).string(); }
};

void emit_plot(const Context& c, const std::string& name, const std::string& csv, const std::string& x,
               const std::string& y, bool logx) {
  if (!c.opt.emit_plot_script) return;
  std::ofstream f(c.path("plot_" + name + ".py"));
  f << "import pandas as pd\nimport matplotlib.pyplot as plt\n\n"
    << "df = pd.read_csv('" << csv << "', comment='#')\n"
    << "fig, ax = plt.subplots()\n"
    << "ax.plot(df['" << x << "'], df['" << y << "'], marker='o')\n"
    << (logx ? "ax.set_xscale('log')\n" : "") << "ax.set_xlabel('" << x << "')\nax.set_ylabel('" << y << "')\n"
    << "fig.savefig('" << name << ".png', dpi=150)\n";
}

Partition default_demo_partition(int m) {
  // first half coherent, remaining terms sampled
  std::vector<std::vector<int>> g(1);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) g[0].push_back(i);
  for (int i = half; i < m; ++i) g.push_back({i});
  return Partition::validate(std::move(g), m);
}

Observable random_unit_observable(int d, std::mt19937_64& rng) {
  const ComplexMatrix h = random_hermitian(d, rng);
  return Observable(ComplexMatrix(h / spectral_norm(h)));
}

void write_partition_table(const Context& c, const std::string& file, const LcuDecomposition& dec,
                           const MixedState& rho) {
  const auto parts = enumerate_partitions(dec.size());
  const auto r = kernels::parallel::scan_reduction_factors(dec, parts, rho);
  const double p = success_probability(dec, rho);
  CsvWriter w(c.path(file), {"partition", "groups", "ancilla", "R", "R_minus_P"}, c.opt.seed);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (r[i] < p - Tolerances::cross_backend || r[i] > 1.0 + Tolerances::cross_backend)
      throw InvariantError("reduction factor of " + parts[i].to_string() + " outside [P, 1]");
    w.row(parts[i].to_string(), parts[i].size(), parts[i].ancilla_width(), r[i], r[i] - p);
  }
}

int cmd_partitions(Context& c) {
  const auto m = c.integer("partitions.m");
  const auto d = c.integer("partitions.dim");
  if (m < 1 || m > 8) throw ConfigError("partitions.m must lie in [1, 8]");
  if (d < 1 || d > 64) throw ConfigError("partitions.dim must lie in [1, 64]");
  std::mt19937_64 rng(derive_seed(c.opt.seed, 0));
  const auto dec = random_lcu(static_cast<int>(m), static_cast<int>(d), rng);
  const auto rho = random_mixed_state(static_cast<int>(d), 1, rng);
  write_partition_table(c, "partitions.csv", dec, rho);
  c.out << "partitions: m=" << m << " P=" << fmt(success_probability(dec, rho)) << " rows=" << enumerate_partitions(static_cast<int>(m)).size() << '\n';
  return kOk;
}

int cmd_demo(Context& c) {
  const auto m = c.integer("demo.m");
  const auto d = c.integer("demo.dim");
  if (m < 1 || m > 6) throw ConfigError("demo.m must lie in [1, 6]");
  if (d < 1 || d > 8) throw ConfigError("demo.dim must lie in [1, 8]");
  if (c.opt.shots < 2) throw ConfigError("--shots must be at least 2");
  std::mt19937_64 rng(derive_seed(c.opt.seed, 0));
  const auto dec = random_lcu(static_cast<int>(m), static_cast<int>(d), rng);
  const auto rho = random_mixed_state(static_cast<int>(d), 1, rng);
  const auto obs = random_unit_observable(static_cast<int>(d), rng);
  write_partition_table(c, "demo_partitions.csv", dec, rho);

  const std::string ptxt = c.str("demo.partition");
  const Partition part = ptxt == "auto" ? default_demo_partition(static_cast<int>(m)) : Partition::parse(ptxt, static_cast<int>(m));
  const HybridChannel ch(dec, part);
  const double analytic = exact_expectation(ch, rho, obs, Backend::analytic);
  const double circuit = exact_expectation(ch, rho, obs, Backend::circuit);
  const double exhaustive = exhaustive_expectation(ch, rho, obs);
  const double spread = std::max(std::abs(analytic - circuit), std::abs(analytic - exhaustive));
  if (spread > Tolerances::cross_backend)
    throw InvariantError("backends disagree by " + fmt(spread) + " on partition " + part.to_string());

  const HybridSampler s_o(ch, rho, obs);
  const HybridSampler s_one(ch, rho, Observable::identity(static_cast<int>(d)));
  const auto shots_o = kernels::parallel::sample_shots(s_o, c.opt.seed, 1, c.opt.shots);
  const auto shots_one = kernels::parallel::sample_shots(s_one, c.opt.seed, 2, c.opt.shots);
  SampleBatch batch;
  batch.seed = c.opt.seed;
  for (const auto& s : shots_o) batch.g_o.push_back(s.g);
  for (const auto& s : shots_one) batch.g_one.push_back(s.g);
  {
    CsvWriter w(c.path("shots.csv"), {"shot", "k", "kprime", "z", "b", "j", "g"}, c.opt.seed);
    for (const auto& s : shots_o) w.row(s.shot, s.k, s.kprime, s.z, s.b, s.j, s.g);
  }

  const double mean = sample_mean(batch.g_o);
  const double se = std::sqrt(sample_variance(batch.g_o) / static_cast<double>(batch.g_o.size()));
  const double zscore = se > 0 ? (mean - analytic) / se : 0.0;
  const bool mc_ok = std::abs(zscore) <= 5.0;
  c.out << "cross-check: " << (mc_ok ? "PASS" : "WARN") << " partition=" << part.to_string()
        << " analytic=" << fmt(analytic) << " circuit=" << fmt(circuit) << " exhaustive=" << fmt(exhaustive)
        << " monte_carlo=" << fmt(mean) << " z=" << fmt(zscore) << '\n';

  EstimationConfig ec;
  ec.epsilon = c.num("demo.epsilon");
  ec.delta = c.num("demo.delta");
  ec.bound_c = obs.norm();
  const double p = success_probability(dec, rho);
  const double r = reduction_factor(dec, part, rho);
  c.out << "P=" << fmt(p) << " R=" << fmt(r) << " R_obs=" << fmt(second_moment(ch, rho, obs)) << '\n';
  const auto plan_n = plan_numerator(ec, dec.one_norm(), obs.norm());
  const auto plan_r = plan_ratio(ec, p, obs.norm());
  c.out << "planned shots: numerator=" << plan_n.n << (plan_n.worst_case_r ? " (worst-case R=1)" : "")
        << " ratio=" << plan_r.n << (plan_r.default_cprime ? " (c' defaulted to ||O||)" : "") << '\n';

  std::vector<EstimationReport> reps{estimate_numerator(batch, dec.one_norm(), ec, Method::bernstein),
                                     estimate_numerator(batch, dec.one_norm(), ec, Method::asymptotic),
                                     estimate_ratio(batch, ec)};
  CsvWriter w(c.path("report.csv"),
              {"method", "target", "estimate", "half_width", "delta", "epsilon", "N", "sigma2_O", "sigma2_one", "R_hat", "seed"},
              c.opt.seed);
  for (const auto& e : reps)
    w.row(method_name(e.method), e.target, e.point, e.half_width, e.delta, e.epsilon, e.n, e.sigma2_o, e.sigma2_one,
          e.r_hat, e.seed);
  emit_plot(c, "demo_partitions", "demo_partitions.csv", "groups", "R", false);
  return kOk;
}

int cmd_lchs(Context& c) {
  const double l_norm = c.num("lchs.l_norm"), t = c.num("lchs.T"), eps = c.num("lchs.epsilon");
  const double p_assumed = c.num("lchs.P_assumed");
  const auto points = c.integer("lchs.points");
  if (!(eps > 0 && eps < 1)) throw ConfigError("lchs.epsilon must lie in (0, 1)");
  if (points < 2) throw ConfigError("lchs.points must be at least 2");
  const double c_m = lchs::figure_m_constant(l_norm, t, eps, c.num("lchs.coherent_terms"));
  const double k1 = lchs::truncation_k1(eps);
  const auto rows = lchs::fig_sweep(l_norm, t, eps, c_m, p_assumed, lchs::default_k2_grid(k1, static_cast<int>(points)));
  {
    CsvWriter w(c.path("lchs_sweep.csv"), {"K2", "M", "alpha", "s_norm1", "rp_bound", "overhead_bound_at_P", "P_assumed"},
                c.opt.seed);
    for (const auto& r : rows) w.row(r.k2, r.m, r.alpha, r.s_norm1, r.rp_bound, r.overhead_bound, p_assumed);
  }
  const double k2_21 = lchs::k2_for_terms(std::ldexp(1.0, 21), l_norm, t, eps, c_m);
  const auto d21 = lchs::discretize(k1, k2_21, eps, l_norm, t, c_m, false);
  c.out << "lchs: K1=" << fmt(k1) << " m_constant=" << fmt(c_m) << " bound_at_M=2^21: "
        << fmt(lchs::rp_bound_tight(k1, k2_21, d21.s_norm1)) << " (K2=" << fmt(k2_21) << ")\n";

  const auto cd = c.integer("lchs.check_dim");
  if (cd < 1 || cd > 16) throw ConfigError("lchs.check_dim must lie in [1, 16]");
  std::mt19937_64 rng(derive_seed(c.opt.seed, 0));
  const ComplexMatrix g = random_hermitian(static_cast<int>(cd), rng);
  const ComplexMatrix l = g * g.adjoint() / spectral_norm(ComplexMatrix(g * g.adjoint()));
  const ComplexMatrix a = l + cplx(0, 1) * random_hermitian(static_cast<int>(cd), rng);
  const double ceps = c.num("lchs.check_epsilon");
  const double err = lchs::propagator_error(a, c.num("lchs.check_T"), ceps, lchs::truncation_k1(ceps), 1.0);
  c.out << "lchs: propagator error " << fmt(err) << " at eps=" << fmt(ceps) << (err <= 5 * ceps ? " PASS" : " FAIL") << '\n';
  emit_plot(c, "lchs", "lchs_sweep.csv", "M", "rp_bound", true);
  return kOk;
}

int cmd_qlss(Context& c) {
  const auto kappas = c.list("qlss.kappas");
  const double eps = c.num("qlss.epsilon");
  const auto dim = c.integer("qlss.dim");
  if (dim < 2 || dim > 64) throw ConfigError("qlss.dim must lie in [2, 64]");
  qlss::GridConstants gc{c.num("qlss.c_j"), c.num("qlss.c_k"), c.num("qlss.c_y"), c.num("qlss.c_z")};
  CsvWriter w(c.path("qlss.csv"),
              {"kappa", "epsilon", "J", "K", "one_norm", "P", "R_int", "R_int_closed_form", "R_rand", "anc_hybrid", "anc_coherent"},
              c.opt.seed);
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    std::mt19937_64 rng(derive_seed(c.opt.seed, i));
    const ComplexMatrix m = qlss::random_conditioned_hermitian(static_cast<int>(dim), kappas[i], rng);
    const ComplexVector b = random_pure_state(static_cast<int>(dim), rng).vector();
    const auto grid = qlss::build_grid(kappas[i], eps, gc);
    const auto h = qlss::hybrid_partition(grid, m);
    const auto f = qlss::reduction_factors(h, b);
    w.row(kappas[i], eps, grid.j, grid.k, qlss::one_norm(grid), f.p, f.r_int, f.r_int_closed_form, f.r_rand,
          qlss::ancilla_hybrid(grid), qlss::ancilla_coherent(grid));
    c.out << "qlss: kappa=" << fmt(kappas[i]) << " inverse_error=" << fmt(qlss::inverse_error(h, b)) << '\n';
  }
  emit_plot(c, "qlss", "qlss.csv", "kappa", "R_int", true);
  return kOk;
}

int cmd_gsp(Context& c) {
  const auto dim = c.integer("gsp.dim");
  if (dim < 2 || dim > 128) throw ConfigError("gsp.dim must lie in [2, 128]");
  const double gap = c.num("gsp.gap"), p0 = c.num("gsp.p0");
  std::mt19937_64 rng(derive_seed(c.opt.seed, 0));
  const auto inst = gsp::random_instance(static_cast<int>(dim), gap, p0, rng);
  CsvWriter w(c.path("gsp.csv"),
              {"dim", "Delta", "p0", "eps", "Tprime", "sigma2", "R", "stage1_dist", "final_dist", "total_time_term1", "total_time_term2"},
              c.opt.seed);
  for (double eps : c.list("gsp.epsilons")) {
    gsp::GspConfig cfg;
    cfg.p0 = p0;
    cfg.eps = eps;
    cfg.energy_error = c.num("gsp.energy_error");
    cfg.energy_error2 = c.num("gsp.energy_error2");
    const auto r = gsp::hybrid_gsp(inst, cfg);
    if (!r.overlap_ok) throw DomainError("initial overlap below p0");
    if (std::abs(r.r - r.r_direct) > 1e-10) throw InvariantError("composed reduction factor disagrees with <psi|cos^2T'|psi>");
    w.row(dim, inst.gap, p0, eps, r.t_prime, r.sigma2, r.r, r.stage1_distance, r.final_distance, r.time.term1, r.time.term2);
  }
  emit_plot(c, "gsp", "gsp.csv", "eps", "final_dist", true);
  return kOk;
}

int cmd_qed(Context& c) {
  const auto ratios = c.list("qed.ratios");
  const auto cw = c.integer("qed.codewords");
  if (cw < 1 || cw > 4096) throw ConfigError("qed.codewords must lie in [1, 4096]");
  const auto pz = qed::default_pz_grid();
  const auto res = qed::fig_sweep(ratios, pz, static_cast<int>(cw), c.opt.seed);
  {
    CsvWriter w(c.path("qed.csv"), {"r", "pZ", "pX", "P", "R", "R_minus_P", "seed"}, c.opt.seed);
    for (const auto& r : res.rows) w.row(r.ratio, r.p_z, r.p_x, r.p, r.r, r.r - r.p, c.opt.seed);
  }
  CsvWriter w(c.path("qed_codewords.csv"), {"r", "pZ", "codeword", "P", "R"}, c.opt.seed);
  for (std::size_t i = 0; i < res.rows.size(); ++i)
    for (int k = 0; k < res.codewords; ++k) {
      const auto& m = res.per_codeword[i * res.codewords + k];
      w.row(res.rows[i].ratio, res.rows[i].p_z, k, m.p, m.r);
    }
  emit_plot(c, "qed", "qed.csv", "pZ", "R_minus_P", true);
  return kOk;
}

}  // namespace

const std::map<std::string, std::string>& known_keys(const std::string& command) {
  const auto& all = all_keys();
  auto it = all.find(command);
  if (it == all.end()) throw ConfigError("unknown subcommand '" + command + "'");
  return it->second;
}

int run_command(const Options& opt, std::ostream& out) {
  const auto& keys = known_keys(opt.command);
  Context c{opt, keys, opt.config_path.empty() ? Config{} : Config::load(opt.config_path), out};
  c.cfg.check_known(keys);
  if (opt.workers < 1) throw ConfigError("--workers must be positive");
  kernels::set_workers(opt.workers);
  std::filesystem::create_directories(opt.out_dir);
  if (opt.command == "demo") return cmd_demo(c);
  if (opt.command == "partitions") return cmd_partitions(c);
  if (opt.command == "lchs") return cmd_lchs(c);
  if (opt.command == "qlss") return cmd_qlss(c);
  if (opt.command == "gsp") return cmd_gsp(c);
  return cmd_qed(c);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid coherent/sampled LCU toolkit"};
  app.require_subcommand(1);
  Options opt;
  for (const char* name : {"demo", "partitions", "lchs", "qlss", "gsp", "qed"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "key = value config file");
    sub->add_option("--seed", opt.seed, "master seed");
    sub->add_option("--shots", opt.shots, "number of shots");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--workers", opt.workers, "OpenMP worker count");
    sub->add_flag("--emit-plot-script", opt.emit_plot_script, "write a matplotlib script next to the CSV");
    sub->callback([&opt, name] { opt.command = name; });
  }
  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    return run_command(opt, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace hlcu::cli
