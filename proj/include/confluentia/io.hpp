#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "confluentia/contraction.hpp"
#include "confluentia/mra.hpp"
#include "confluentia/singularity.hpp"

namespace confluentia {

using Json = nlohmann::ordered_json;

/// Equation schema:
/// {"p0": {"leading": "num/den", "roots": [["root", mult], ...]},
///  "p1": ["c0", "c1", ...], "p2": [...]}
/// with every scalar an exact "num/den" string.
inline OdeSpec ode_from_json(const Json& j) {
  try {
    OdeSpec spec;
    const Json& p0 = j.at("p0");
    spec.p0_leading = rational_from_string(p0.at("leading").get<std::string>());
    for (const auto& entry : p0.at("roots")) {
      Rational root = rational_from_string(entry.at(0).get<std::string>());
      int mult = entry.at(1).get<int>();
      spec.p0_roots.emplace_back(std::move(root), mult);
    }
    auto poly = [](const Json& arr) {
      std::vector<Rational> c;
      for (const auto& v : arr) c.push_back(rational_from_string(v.get<std::string>()));
      return RationalPoly(std::move(c));
    };
    spec.p1 = poly(j.at("p1"));
    spec.p2 = poly(j.at("p2"));
    return spec;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed equation JSON: ") + e.what());
  }
}

inline OdeSpec ode_from_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON");
  return ode_from_json(j);
}

inline Json ode_to_json(const OdeSpec& spec) {
  Json roots = Json::array();
  for (const auto& [r, m] : spec.p0_roots) roots.push_back(Json::array({to_string(r), m}));
  Json p1 = Json::array(), p2 = Json::array();
  for (const auto& c : spec.p1.coeffs()) p1.push_back(to_string(c));
  for (const auto& c : spec.p2.coeffs()) p2.push_back(to_string(c));
  return Json{{"p0", Json{{"leading", to_string(spec.p0_leading)}, {"roots", roots}}},
              {"p1", p1},
              {"p2", p2}};
}

/// Report schema: {"points": [{"location", "regular", "elementary", "srank",
/// "ramified", "exponents"}...], "smultisymbol": ["1/2", ...]}.
inline Json report_to_json(const SingularityReport& rep) {
  Json points = Json::array();
  for (const auto& p : rep.points) {
    Json jp;
    jp["location"] = p.location.str();
    jp["regular"] = p.regular;
    jp["elementary"] = p.elementary ? Json(*p.elementary) : Json(nullptr);
    jp["srank"] = to_string(p.srank);
    jp["ramified"] = p.ramified ? Json(*p.ramified) : Json(nullptr);
    if (p.exponents) {
      jp["exponents"] = Json::array({to_string(p.exponents->first), to_string(p.exponents->second)});
    } else {
      jp["exponents"] = Json(nullptr);
    }
    if (p.possibly_apparent) jp["possibly_apparent"] = true;
    points.push_back(std::move(jp));
  }
  Json symbol = Json::array();
  for (const auto& r : rep.symbol.ranks) symbol.push_back(to_string(r));
  return Json{{"points", points}, {"smultisymbol", symbol}};
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

/// CSV rows `parity,n,q,a,K,residual` for characteristic-value tables.
struct MathieuRow {
  Parity parity;
  int n;
  double q;
  bool converged;
  double a;
  int truncation;
  double residual;
};

inline std::string mathieu_csv(const std::vector<MathieuRow>& rows) {
  std::ostringstream os;
  os << "parity,n,q,a,K,residual\n";
  for (const auto& r : rows) {
    os << parity_name(r.parity) << ',' << r.n << ',' << format_double(r.q) << ',';
    if (r.converged)
      os << format_double(r.a) << ',' << r.truncation << ',' << format_double(r.residual);
    else
      os << "nan," << r.truncation << ",nan";
    os << '\n';
  }
  return os.str();
}

/// CSV `alpha,q,n,parity,sup_err,mu,mu_defect,predicted_defect`.
inline std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << "alpha,q,n,parity,sup_err,mu,mu_defect,predicted_defect\n";
  for (const auto& r : records) {
    os << format_double(r.alpha) << ',' << format_double(r.q) << ',' << r.n << ','
       << parity_name(r.parity) << ',' << format_double(r.sup_err) << ','
       << format_double(r.mu) << ',' << format_double(r.mu_defect) << ','
       << format_double(r.predicted_defect) << '\n';
  }
  return os.str();
}

/// log-log companion plot of sweep error against alpha.
inline std::string sweep_gnuplot(const std::string& csv_path, int n_max) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set xlabel 'alpha'\n"
     << "set ylabel 'sup error'\n"
     << "set key outside\n"
     << "plot ";
  bool first = true;
  for (int n = 0; n <= n_max; ++n) {
    for (const char* par : {"even", "odd"}) {
      if (!first) os << ", \\\n     ";
      first = false;
      os << "'" << csv_path << "' using 1:($3==" << n << " && strcol(4) eq '" << par
         << "' ? $5 : 1/0) with linespoints title 'n=" << n << " " << par << "'";
    }
  }
  os << "\n";
  return os.str();
}

/// CSV `alpha,X,direction_params,err_sup,err_d1,err_d2`.
inline std::string harness_csv(
    const std::vector<std::pair<std::string, std::vector<HarnessRecord>>>& table) {
  std::ostringstream os;
  os << "alpha,X,direction_params,err_sup,err_d1,err_d2\n";
  for (const auto& [label, recs] : table) {
    auto sep = label.find(':');
    std::string name = label.substr(0, sep);
    std::string params = sep == std::string::npos ? "" : label.substr(sep + 1);
    for (const auto& r : recs) {
      os << format_double(r.alpha) << ',' << name << ',' << params << ','
         << format_double(r.err_sup) << ',' << format_double(r.err_d1) << ','
         << format_double(r.err_d2) << '\n';
    }
  }
  return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace confluentia
