// Command-line front end: every subcommand is a thin shell over the library,
// emitting CSV (17 significant digits) or JSON. Exit codes: 0 ok, 2 usage,
// 3 domain/singularity, 4 convergence.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dunkl/hermite_basis.hpp"
#include "dunkl/oscillation.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/perturbed.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/spectral_spaces.hpp"

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("DUNKL_JOBS")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

dunkl::ScanStatistic parse_statistic(const std::string& name) {
  using S = dunkl::ScanStatistic;
  if (name == "thm11_i") return S::thm11_i;
  if (name == "thm11_ii") return S::thm11_ii;
  if (name == "thm11_iii") return S::thm11_iii;
  if (name == "thm12") return S::thm12;
  if (name == "thm13_i") return S::thm13_i;
  if (name == "thm13_ii") return S::thm13_ii;
  if (name == "root_spacing") return S::root_spacing;
  if (name == "lemmaF") return S::lemmaF;
  if (name == "lemmaG") return S::lemmaG;
  throw CLI::ValidationError("--statistic", "unknown statistic " + name);
}

json coeffs_to_json(const dunkl::Params& p, const dunkl::CoeffSeq& c) {
  const char* parity = c.parity == dunkl::SeqParity::even  ? "even"
                       : c.parity == dunkl::SeqParity::odd ? "odd"
                                                           : "mixed";
  return json{{"sigma", p.sigma}, {"s", p.s}, {"parity", parity}, {"coeffs", c.coeffs}};
}

dunkl::CoeffSeq coeffs_from_json(const json& j) {
  dunkl::CoeffSeq c;
  c.coeffs = j.at("coeffs").get<std::vector<double>>();
  const std::string parity = j.value("parity", "mixed");
  c.parity = parity == "even"  ? dunkl::SeqParity::even
             : parity == "odd" ? dunkl::SeqParity::odd
                               : dunkl::SeqParity::mixed;
  return c;
}

struct CommonFlags {
  double sigma = 0.0;
  double s = 1.0;
  void attach(CLI::App* cmd, bool required = true) {
    auto* so = cmd->add_option("--sigma", sigma, "weight exponent, > -1/2");
    auto* ss = cmd->add_option("--s", s, "Gaussian rate, > 0");
    if (required) so->required();
    (void)ss;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"generalized Hermite / Dunkl oscillator toolbox"};
  app.require_subcommand(1);

  // ---- basis ----
  auto* basis = app.add_subcommand("basis", "evaluate p_k, phi_k, xi_k");
  CommonFlags bf;
  bf.attach(basis);
  std::size_t b_k = 0;
  std::string b_kind = "poly";
  std::optional<double> b_x;
  std::size_t b_points = 0;
  double b_xmin = -5.0, b_xmax = 5.0;
  std::string b_out;
  basis->add_option("--k", b_k, "basis index")->required();
  basis->add_option("--kind", b_kind, "poly | phi | xi (single-point mode)");
  basis->add_option("--x", b_x, "single evaluation point (JSON output)");
  basis->add_option("--points", b_points, "sample count (CSV output: x,p_k,phi_k,xi_k)");
  basis->add_option("--xmin", b_xmin, "CSV range start");
  basis->add_option("--xmax", b_xmax, "CSV range end");
  basis->add_option("--output", b_out, "output path (default stdout)");

  // ---- quad ----
  auto* quad = app.add_subcommand("quad", "Gauss rule: nodes and Christoffel numbers");
  CommonFlags qf;
  qf.attach(quad);
  std::size_t q_k = 0;
  std::string q_out;
  quad->add_option("--k", q_k, "rule order")->required();
  quad->add_option("--output", q_out, "CSV path (default stdout; columns i,x,lambda)");

  // ---- spectrum ----
  auto* spectrum = app.add_subcommand("spectrum", "oscillator eigenvalues (2k+1+2sigma)s");
  CommonFlags spf;
  spf.attach(spectrum);
  std::size_t sp_n = 0;
  spectrum->add_option("--n", sp_n, "number of eigenvalues")->required();

  // ---- estimates ----
  auto* est = app.add_subcommand("estimates", "asymptotic envelope scans over k");
  CommonFlags ef;
  ef.attach(est);
  std::string e_stat;
  std::size_t e_kmin = 100, e_kmax = 2000, e_count = 12, e_jobs = default_jobs();
  double e_eps = 1.0;
  std::string e_csv, e_json;
  est->add_option("--statistic", e_stat,
                  "thm11_i|thm11_ii|thm11_iii|thm12|thm13_i|thm13_ii|"
                  "root_spacing|lemmaF|lemmaG")
      ->required();
  est->add_option("--kmin", e_kmin, "smallest k");
  est->add_option("--kmax", e_kmax, "largest k");
  est->add_option("--count", e_count, "size of the log-spaced k ladder");
  est->add_option("--epsilon", e_eps, "lemmaG window half-width factor");
  est->add_option("--jobs", e_jobs, "worker threads (env DUNKL_JOBS)");
  est->add_option("--csv", e_csv, "write per-k CSV (k,statistic_value)");
  est->add_option("--json", e_json, "write summary JSON (slope,intercept,min,max,median)");

  // ---- transform ----
  auto* tr = app.add_subcommand("transform", "Hermite-coefficient transform layer");
  CommonFlags tf;
  tf.attach(tr);
  std::string t_analyze, t_input, t_out, t_format = "json";
  bool t_ximap = false;
  std::optional<double> t_norms;
  std::size_t t_n = 32, t_points = 0, t_order = 0;
  double t_xmin = -4.0, t_xmax = 4.0;
  tr->add_option("--analyze", t_analyze,
                 "built-in function: gaussian | xgaussian | x2gaussian");
  tr->add_option("--n", t_n, "max coefficient index for --analyze");
  tr->add_option("--order", t_order, "quadrature order override for --analyze");
  tr->add_option("--input", t_input, "coefficient JSON file {sigma,s,parity,coeffs}");
  tr->add_flag("--xi-map", t_ximap, "apply the odd->even division-by-x map");
  tr->add_option("--norms", t_norms, "print ell2_m, C_m, W-norm at this m");
  tr->add_option("--synthesize", t_points, "sample count; CSV (x,f) on [xmin,xmax]");
  tr->add_option("--xmin", t_xmin, "synthesis range start");
  tr->add_option("--xmax", t_xmax, "synthesis range end");
  tr->add_option("--format", t_format, "coefficient output: json | csv (k,c_k)");
  tr->add_option("--output", t_out, "output path (default stdout)");

  // ---- perturb ----
  auto* pe = app.add_subcommand("perturb", "half-line operators H - 2 f1 d/dx + f2");
  double p_s = 1.0, p_sigma = 0.5, p_c = 1.0, p_r = 2.0;
  std::optional<double> p_c1, p_c2;
  std::string p_family, p_out;
  int p_n = 1;
  std::size_t p_kmax = 4;
  std::optional<std::size_t> p_eigfn, p_residual;
  std::size_t p_points = 200;
  double p_xmin = 0.2, p_xmax = 3.0;
  pe->add_option("--s", p_s, "Gaussian rate");
  pe->add_option("--c1", p_c1, "inverse-square drift strength (with --c2)");
  pe->add_option("--c2", p_c2, "inverse-square potential strength");
  pe->add_option("--family", p_family, "inverse | power | cos | exp | expxn");
  pe->add_option("--sigma", p_sigma, "sigma for --family mode");
  pe->add_option("--c", p_c, "family coefficient");
  pe->add_option("--r", p_r, "power family exponent");
  pe->add_option("--n", p_n, "expxn family exponent");
  pe->add_option("--kmax", p_kmax, "eigenvalues listed per operator");
  pe->add_option("--eigfn", p_eigfn, "emit CSV (x,u_k) for this k");
  pe->add_option("--residual", p_residual, "print eigen-residual for this k");
  pe->add_option("--points", p_points, "eigenfunction sample count");
  pe->add_option("--xmin", p_xmin, "eigenfunction range start");
  pe->add_option("--xmax", p_xmax, "eigenfunction range end");
  pe->add_option("--output", p_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (basis->parsed()) {
    const auto p = dunkl::make_params(bf.sigma, bf.s);
    std::ofstream file;
    auto& out = open_sink(file, b_out);
    if (b_x) {
      dunkl::BasisKind kind = b_kind == "phi"  ? dunkl::BasisKind::phi
                              : b_kind == "xi" ? dunkl::BasisKind::xi
                                               : dunkl::BasisKind::poly;
      const auto ev = dunkl::eval_basis(p, b_k, *b_x, kind);
      json j{{"sigma", p.sigma}, {"s", p.s},           {"k", b_k},
             {"x", *b_x},        {"kind", b_kind},     {"value", ev.value()},
             {"mantissa", ev.mantissa}, {"exponent", ev.exponent}};
      out << j.dump(2) << "\n";
      return 0;
    }
    if (b_points < 2) throw CLI::ValidationError("basis", "need --x or --points >= 2");
    out << "x,p_k,phi_k,xi_k\n";
    for (std::size_t i = 0; i < b_points; ++i) {
      const double x = b_xmin + (b_xmax - b_xmin) * static_cast<double>(i) /
                                    static_cast<double>(b_points - 1);
      const double pk = dunkl::eval_basis(p, b_k, x, dunkl::BasisKind::poly).value();
      const double ph = dunkl::eval_basis(p, b_k, x, dunkl::BasisKind::phi).value();
      const double xi = dunkl::eval_basis(p, b_k, x, dunkl::BasisKind::xi).value();
      out << fmt(x) << ',' << fmt(pk) << ',' << fmt(ph) << ',' << fmt(xi) << "\n";
    }
    return 0;
  }

  if (quad->parsed()) {
    const auto p = dunkl::make_params(qf.sigma, qf.s);
    const auto rule = dunkl::build_rule(p, q_k);
    std::ofstream file;
    auto& out = open_sink(file, q_out);
    out << "i,x,lambda\n";
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      out << (i + 1) << ',' << fmt(rule.nodes[i]) << ',' << fmt(rule.weights[i]) << "\n";
    return 0;
  }

  if (spectrum->parsed()) {
    const auto p = dunkl::make_params(spf.sigma, spf.s);
    json j = json::array();
    for (std::size_t k = 0; k < sp_n; ++k) j.push_back(dunkl::eigenvalue(p, k));
    std::cout << j.dump() << "\n";
    return 0;
  }

  if (est->parsed()) {
    const auto p = dunkl::make_params(ef.sigma, ef.s);
    const auto stat = parse_statistic(e_stat);
    const bool even_only = stat == dunkl::ScanStatistic::thm11_iii ||
                           stat == dunkl::ScanStatistic::thm13_ii ||
                           stat == dunkl::ScanStatistic::thm12;
    const auto ks = dunkl::log_spaced_k(e_kmin, e_kmax, e_count, even_only);
    dunkl::ScanOptions opts;
    opts.epsilon = e_eps;
    opts.jobs = e_jobs;
    const auto scan = dunkl::run_scan(p, stat, ks, opts);
    if (!e_csv.empty()) {
      std::ofstream csv(e_csv);
      csv << "k,statistic_value\n";
      for (std::size_t i = 0; i < ks.size(); ++i)
        csv << ks[i] << ',' << fmt(scan.per_k_values[i]) << "\n";
    }
    if (!e_json.empty()) {
      auto vals = scan.per_k_values;
      std::sort(vals.begin(), vals.end());
      const double median = vals.empty() ? 0.0
                            : vals.size() % 2 ? vals[vals.size() / 2]
                                              : 0.5 * (vals[vals.size() / 2 - 1] +
                                                       vals[vals.size() / 2]);
      const auto line = dunkl::fit_log_line(ks, scan.per_k_values, 50);
      json j{{"statistic", e_stat},
             {"sigma", p.sigma},
             {"s", p.s},
             {"slope", scan.fitted_slope ? json(*scan.fitted_slope) : json()},
             {"intercept", line ? json(line->second) : json()},
             {"min", vals.empty() ? 0.0 : vals.front()},
             {"max", vals.empty() ? 0.0 : vals.back()},
             {"median", median}};
      std::ofstream js(e_json);
      js << j.dump(2) << "\n";
    }
    if (scan.fitted_slope)
      std::cout << "fitted_slope " << fmt(*scan.fitted_slope) << "\n";
    else
      std::cout << "fitted_slope nan\n";
    return 0;
  }

  if (tr->parsed()) {
    const auto p = dunkl::make_params(tf.sigma, tf.s);
    dunkl::CoeffSeq c;
    if (!t_analyze.empty()) {
      std::function<double(double)> f;
      if (t_analyze == "gaussian")
        f = [&](double x) { return std::exp(-0.5 * p.s * x * x); };
      else if (t_analyze == "xgaussian")
        f = [&](double x) { return x * std::exp(-0.5 * p.s * x * x); };
      else if (t_analyze == "x2gaussian")
        f = [](double x) { return x * x * std::exp(-x * x); };
      else
        throw CLI::ValidationError("--analyze", "unknown function " + t_analyze);
      c = dunkl::analyze(p, f, t_n, t_order);
    } else if (!t_input.empty()) {
      std::ifstream in(t_input);
      if (!in) throw std::runtime_error("cannot read " + t_input);
      json j;
      in >> j;
      c = coeffs_from_json(j);
    } else {
      throw CLI::ValidationError("transform", "need --analyze or --input");
    }

    if (t_ximap) c = dunkl::xi_map(p, c);

    std::ofstream file;
    auto& out = open_sink(file, t_out);
    if (t_norms) {
      const auto n = dunkl::seq_norms(c, *t_norms);
      json j{{"m", *t_norms},
             {"ell2_m", n.ell2_m},
             {"C_m", n.C_m},
             {"w_sigma_m", dunkl::w_sigma_norm(p, c, *t_norms)}};
      out << j.dump(2) << "\n";
      return 0;
    }
    if (t_points >= 2) {
      out << "x,f\n";
      for (std::size_t i = 0; i < t_points; ++i) {
        const double x = t_xmin + (t_xmax - t_xmin) * static_cast<double>(i) /
                                      static_cast<double>(t_points - 1);
        out << fmt(x) << ',' << fmt(dunkl::synthesize_at(p, c, x)) << "\n";
      }
      return 0;
    }
    if (t_format == "csv") {
      out << "k,c_k\n";
      for (std::size_t k = 0; k < c.coeffs.size(); ++k)
        out << k << ',' << fmt(c.coeffs[k]) << "\n";
    } else {
      out << coeffs_to_json(p, c).dump(2) << "\n";
    }
    return 0;
  }

  if (pe->parsed()) {
    std::vector<dunkl::PerturbedOperator> ops;
    if (p_c1 && p_c2) {
      ops = dunkl::solve_c1c2(*p_c1, *p_c2, p_s);
    } else if (!p_family.empty()) {
      dunkl::F1Spec spec;
      if (p_family == "inverse") {
        spec.family = dunkl::F1Family::inverse_multiple;
        spec.c = p_c;
      } else if (p_family == "power") {
        spec.family = dunkl::F1Family::power;
        spec.c = p_c;
        spec.r = p_r;
      } else {
        spec.family = dunkl::F1Family::log_derivative;
        spec.c = p_c;
        spec.g = p_family == "cos"   ? dunkl::LogDerivG::g_cos
                 : p_family == "exp" ? dunkl::LogDerivG::g_exp
                 : p_family == "expxn"
                     ? dunkl::LogDerivG::g_exp_xn
                     : throw CLI::ValidationError("--family", "unknown family " + p_family);
        spec.n = p_n;
      }
      ops.push_back(dunkl::derive_f2_h(spec, p_sigma, p_s));
    } else {
      throw CLI::ValidationError("perturb", "need --c1/--c2 or --family");
    }

    std::ofstream file;
    auto& out = open_sink(file, p_out);
    if (p_eigfn || p_residual) {
      if (ops.empty()) throw dunkl::DomainError("perturb: no admissible operator");
      const auto& op = ops.front();
      std::vector<double> grid(p_points);
      for (std::size_t i = 0; i < p_points; ++i)
        grid[i] = p_xmin + (p_xmax - p_xmin) * static_cast<double>(i) /
                               static_cast<double>(p_points - 1);
      if (p_residual) {
        std::cout << "residual " << fmt(dunkl::eigen_residual(op, *p_residual, grid))
                  << "\n";
        return 0;
      }
      const auto fn = dunkl::eigenfunction(op, *p_eigfn, grid);
      out << "x,u_k\n";
      for (std::size_t i = 0; i < grid.size(); ++i)
        out << fmt(grid[i]) << ',' << fmt(fn.values[i]) << "\n";
      return 0;
    }

    json arr = json::array();
    for (const auto& op : ops) {
      const char* family = op.f1_spec.family == dunkl::F1Family::inverse_multiple
                               ? "inverse_multiple"
                           : op.f1_spec.family == dunkl::F1Family::power ? "power"
                                                                         : "log_derivative";
      json desc{{"family", family},
                {"c", op.f1_spec.c},
                {"sigma", op.sigma},
                {"s", op.s},
                {"eigenvalue_law", "(4k+1+2sigma)s"}};
      if (op.f1_spec.family == dunkl::F1Family::power) desc["r"] = op.f1_spec.r;
      if (op.a) desc["a"] = *op.a;
      json evs = json::array();
      for (std::size_t k = 0; k <= p_kmax; ++k) evs.push_back(op.eigenvalue(k));
      desc["eigenvalues"] = evs;
      arr.push_back(desc);
    }
    out << arr.dump(2) << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const dunkl::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const dunkl::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dunkl::SingularPoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dunkl::ParityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dunkl::RegimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dunkl::BadFamily& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dunkl::NearZeroDivision& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dunkl::DegreeTooHigh& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
