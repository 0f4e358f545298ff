// confluentia: singularity classification, Mathieu tables, confluence sweeps
// and multiresolution checks from one binary.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "confluentia/confluentia.hpp"

namespace {

using namespace confluentia;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidOde = 3;
constexpr int kExitNoConvergence = 4;
constexpr int kExitNotMonotone = 5;
constexpr int kExitMraDefect = 6;

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok.empty()) throw ParseError("empty entry in list '" + text + "'");
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw ParseError("bad number '" + tok + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int v = std::stoi(text);
    return {v, v};
  }
  int lo = std::stoi(text.substr(0, dots));
  int hi = std::stoi(text.substr(dots + 2));
  if (hi < lo) throw ParseError("empty range '" + text + "'");
  return {lo, hi};
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

std::string replace_extension(const std::string& path, const std::string& ext) {
  auto slash = path.find_last_of('/');
  auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ext;
  return path.substr(0, dot) + ext;
}

int run_classify(const std::string& ode_path, const std::string& out_path) {
  std::string text;
  try {
    text = read_file(ode_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  OdeSpec spec;
  try {
    spec = ode_from_json_text(text);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    spec = validate(spec);
  } catch (const Error& e) {
    std::cerr << "invalid equation: " << e.what() << "\n";
    return kExitInvalidOde;
  }
  SingularityReport rep = classify_equation(spec);
  emit(out_path, report_to_json(rep).dump(2) + "\n");
  return kExitOk;
}

int run_mathieu(const std::string& parity_str, const std::string& n_range,
                const std::string& q_list, const std::string& out_path) {
  Parity parity = parity_str == "even" ? Parity::EvenCe : Parity::OddSe;
  auto [n_lo, n_hi] = parse_range(n_range);
  if (n_lo < 0 || (parity == Parity::OddSe && n_lo < 1)) {
    std::cerr << "error: order out of range for parity " << parity_str
              << (parity == Parity::OddSe ? " (se starts at n = 1)" : "") << "\n";
    return kExitUsage;
  }
  std::vector<double> qs = parse_double_list(q_list);
  std::vector<MathieuRow> rows;
  bool failed = false;
  for (int n = n_lo; n <= n_hi; ++n) {
    for (double q : qs) {
      MathieuRow row;
      row.parity = parity;
      row.n = n;
      row.q = q;
      try {
        MathieuEigen e = mathieu_eigenpair(parity, n, q);
        row.converged = true;
        row.a = e.a;
        row.truncation = e.truncation;
        row.residual = recursion_residual(e);
      } catch (const NoConvergenceError&) {
        row.converged = false;
        row.a = 0;
        row.truncation = detail::truncation_cap();
        row.residual = 0;
        failed = true;
      }
      rows.push_back(row);
    }
  }
  emit(out_path, mathieu_csv(rows));
  return failed ? kExitNoConvergence : kExitOk;
}

int run_confluence(int n_max, double h, const std::string& alphas_str, double psi_max, int grid,
                   const std::string& out_path) {
  std::vector<double> alphas = parse_double_list(alphas_str);
  for (size_t i = 1; i < alphas.size(); ++i)
    if (alphas[i] >= alphas[i - 1]) {
      std::cerr << "error: alphas must be strictly decreasing\n";
      return kExitUsage;
    }
  for (double a : alphas)
    if (a <= 0) {
      std::cerr << "error: alphas must be positive\n";
      return kExitUsage;
    }
  std::vector<SweepRecord> records = confluence_sweep(n_max, h, alphas, psi_max, grid);
  emit(out_path, sweep_csv(records));
  if (!out_path.empty())
    write_file(replace_extension(out_path, ".gp"), sweep_gnuplot(out_path, n_max));

  if (alphas.size() < 2) return kExitOk;
  bool monotone = true;
  for (int n = 0; n <= n_max; ++n) {
    for (Parity parity : {Parity::EvenCe, Parity::OddSe}) {
      double prev = -1.0;
      for (const auto& r : records) {
        if (r.n != n || r.parity != parity) continue;
        if (prev >= 0 && r.sup_err >= prev) {
          std::cerr << "monotonicity check failed: n=" << n << " parity=" << parity_name(parity)
                    << " err(alpha=" << r.alpha << ") = " << r.sup_err << " >= " << prev << "\n";
          monotone = false;
        }
        prev = r.sup_err;
      }
    }
  }
  return monotone ? kExitOk : kExitNotMonotone;
}

int run_mra(const std::string& check, int grid, double alpha, const std::string& alphas_str,
            double h, const std::string& out_path) {
  WindowFn w = lpm_window();
  Json report;
  bool ok = true;
  if (check == "window") {
    WindowDefects d = window_checks(w, grid);
    report = Json{{"check", "window"},
                  {"flat", d.flat},
                  {"band", d.band},
                  {"support", d.support},
                  {"symmetry", d.symmetry},
                  {"partition", d.partition},
                  {"tolerance", 1e-12}};
    ok = d.worst() < 1e-12;
  } else if (check == "ops") {
    size_t n_pp = 512;
    auto f = PseudoPeriodicSample::from_function(alpha, 0.0, n_pp, [&](double psi) {
      return Complex(std::cos(alpha * psi), std::sin(2 * alpha * psi)) +
             0.3 * Complex(std::cos(3 * alpha * psi), 0.0);
    });
    double L = 4.0 * M_PI / (3.0 * alpha) + 2.0;
    size_t n_line = 4096;
    LineSample g = inject_i(f, w, L, n_line);
    double ai = sup_distance(periodize_a(g, w, alpha, 0.0, n_pp).values, f.values);
    double iso = std::abs(g.norm() / f.norm() - 1.0);

    auto fp = PseudoPeriodicSample::from_function(2 * alpha, 0.0, n_pp / 2, [&](double psi) {
      return Complex(std::cos(2 * alpha * psi), 0.4 * std::sin(4 * alpha * psi));
    });
    double rj = sup_distance(op_r(op_j(fp, alpha, 0.0)).values, fp.values);
    double uu = sup_distance(op_u(op_u(f)).values, f.values);

    LineSample pg = project_p(g, w, alpha, 0.0, n_pp);
    LineSample ppg = project_p(pg, w, alpha, 0.0, n_pp);
    double idem = sup_distance(ppg.values, pg.values);

    report = Json{{"check", "ops"},
                  {"a_after_i", ai},
                  {"isometry", iso},
                  {"r_after_j", rj},
                  {"u_squared", uu},
                  {"projector_idempotence", idem},
                  {"tolerances", Json{{"a_after_i", 1e-10}, {"isometry", 1e-8},
                                      {"r_after_j", 1e-10}, {"u_squared", 1e-10},
                                      {"projector_idempotence", 1e-8}}}};
    ok = ai < 1e-10 && iso < 1e-8 && rj < 1e-10 && uu < 1e-10 && idem < 1e-8;
  } else if (check == "converge") {
    std::vector<double> alphas = parse_double_list(alphas_str);
    double L = 4.0 * M_PI / (3.0 * 2.0 * alphas.back()) + 6.0;
    size_t n_line = 4096;
    LineSample u = LineSample::from_function(
        L, n_line, [&](double x) { return Complex(ho_eigenfunction({0, h}, x), 0.0); });
    LineSample v = LineSample::from_function(
        L, n_line, [&](double x) { return Complex(ho_eigenfunction({1, h}, x), 0.0); });
    std::vector<std::pair<std::string, std::vector<HarnessRecord>>> table;
    std::map<std::string, AlgebraElement> dirs = {
        {"P:0.4", {0.4, 0, 0}}, {"Q:0.4", {0, 0.4, 0}}, {"E:0.4", {0, 0, 0.4}}};
    Json jdirs = Json::array();
    for (const auto& [label, x] : dirs) {
      auto recs = convergence_harness(u, v, x, h, alphas, w, 1024);
      for (size_t i = 1; i < recs.size(); ++i)
        if (recs[i].err_sup >= recs[i - 1].err_sup) ok = false;
      Json jr = Json::array();
      for (const auto& r : recs)
        jr.push_back(Json{{"alpha", r.alpha}, {"err_sup", r.err_sup},
                          {"err_d1", r.err_d1}, {"err_d2", r.err_d2}});
      jdirs.push_back(Json{{"direction", label}, {"records", jr}});
      table.emplace_back(label, recs);
    }
    report = Json{{"check", "converge"}, {"directions", jdirs}, {"decreasing", ok}};
    if (!out_path.empty()) write_file(replace_extension(out_path, ".csv"), harness_csv(table));
  } else {
    std::cerr << "error: unknown check '" << check << "'\n";
    return kExitUsage;
  }
  emit(out_path, report.dump(2) + "\n");
  return ok ? kExitOk : kExitMraDefect;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"singularity classification and confluence toolkit"};
  app.set_help_flag("--help", "print usage");  // frees -h for the frequency option
  app.require_subcommand(1);

  auto* classify = app.add_subcommand("classify", "classify the singular points of an equation");
  std::string ode_path, classify_out;
  classify->add_option("--ode", ode_path, "equation JSON file")->required();
  classify->add_option("--out", classify_out, "report path (stdout when omitted)");

  auto* mathieu = app.add_subcommand("mathieu", "characteristic-value table");
  std::string parity_str = "even", n_range = "0", q_list = "0";
  std::string mathieu_out;
  mathieu->add_option("--parity", parity_str, "even|odd")
      ->check(CLI::IsMember({"even", "odd"}))
      ->required();
  mathieu->add_option("--n", n_range, "order or range, e.g. 2 or 0..4")->required();
  mathieu->add_option("--q", q_list, "comma list of q values")->required();
  mathieu->add_option("--out", mathieu_out, "CSV path (stdout when omitted)");

  auto* confluence = app.add_subcommand("confluence", "transported-eigenfunction sweep");
  int n_max = 2, grid = 201;
  double h = 1.0, psi_max = 2.0;
  std::string alphas_str = "0.8,0.4,0.2,0.1", confluence_out;
  confluence->add_option("--n-max", n_max, "largest display index")->check(CLI::NonNegativeNumber);
  confluence->add_option("--h", h, "frequency parameter")->check(CLI::PositiveNumber);
  confluence->add_option("--alphas", alphas_str, "strictly decreasing list");
  confluence->add_option("--psi-max", psi_max, "half-width of the psi window");
  confluence->add_option("--grid", grid, "points across the psi window");
  confluence->add_option("--out", confluence_out, "CSV path; companion .gp written next to it");

  auto* mra = app.add_subcommand("mra", "multiresolution checks");
  std::string check, mra_out, mra_alphas = "0.5,0.25,0.125";
  int mra_grid = 4096;
  double mra_alpha = 0.5, mra_h = 1.0;
  mra->add_option("--check", check, "window|ops|converge")
      ->check(CLI::IsMember({"window", "ops", "converge"}))
      ->required();
  mra->add_option("--grid", mra_grid, "window check grid");
  mra->add_option("--alpha", mra_alpha, "alpha for ops checks");
  mra->add_option("--alphas", mra_alphas, "alpha list for the convergence check");
  mra->add_option("--h", mra_h, "frequency parameter");
  mra->add_option("--out", mra_out, "report path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (classify->parsed()) return run_classify(ode_path, classify_out);
    if (mathieu->parsed()) return run_mathieu(parity_str, n_range, q_list, mathieu_out);
    if (confluence->parsed())
      return run_confluence(n_max, h, alphas_str, psi_max, grid, confluence_out);
    if (mra->parsed()) return run_mra(check, mra_grid, mra_alpha, mra_alphas, mra_h, mra_out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NoConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
