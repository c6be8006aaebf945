#include "pftent/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace pftent {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::json step_function_to_json(const StepFunction<double>& f) {
  return {{"breakpoints", f.breakpoints()}, {"values", f.values()}};
}

StepFunction<double> step_function_from_json(const nlohmann::json& j) {
  return StepFunction<double>(j.at("breakpoints").get<std::vector<double>>(),
                              j.at("values").get<std::vector<double>>());
}

std::string step_function_csv_row(const StepFunction<double>& f) {
  std::ostringstream os;
  const auto& bp = f.breakpoints();
  const auto& val = f.values();
  for (std::size_t i = 0; i < val.size(); ++i) {
    os << format_double(bp[i]) << ',' << format_double(bp[i + 1]) << ','
       << format_double(val[i]) << '\n';
  }
  return os.str();
}

nlohmann::json driving_to_json(const DrivingStream& dr) {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : dr.table) {
    if (dr.kind == DrivingKind::iid)
      table.push_back({row.e1, row.e2, row.prob});
    else
      table.push_back({row.e1, row.e2});
  }
  return {{"kind", dr.kind == DrivingKind::iid ? "iid" : "periodic"},
          {"table", table},
          {"seed", dr.seed},
          {"kappa", dr.kappa}};
}

DrivingStream driving_from_json(const nlohmann::json& j) {
  DrivingStream dr;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "iid")
    dr.kind = DrivingKind::iid;
  else if (kind == "periodic")
    dr.kind = DrivingKind::periodic;
  else
    throw ConfigError("driving: kind must be \"iid\" or \"periodic\"");
  const auto& table = j.at("table");
  if (!table.is_array() || table.empty()) throw ConfigError("driving: table must be a nonempty array");
  const std::size_t rows = table.size();
  for (const auto& row : table) {
    if (!row.is_array() || row.size() < 2 || row.size() > 3)
      throw ConfigError("driving: table rows are [e1, e2] or [e1, e2, p]");
    DrivingRow r{row[0].get<double>(), row[1].get<double>(), 0.0};
    if (dr.kind == DrivingKind::iid)
      r.prob = row.size() == 3 ? row[2].get<double>() : 1.0 / static_cast<double>(rows);
    dr.table.push_back(r);
  }
  dr.seed = j.value("seed", std::uint64_t{0});
  dr.kappa = j.value("kappa", 1.0);
  dr.validate();
  return dr;
}

nlohmann::json bound_report_to_json(const BoundReport& rep) {
  return {{"M", rep.M},           {"D_eps", rep.D_eps},
          {"B", rep.B},           {"m1", rep.m1},
          {"m3", rep.m3},         {"d", rep.d},
          {"k_P", rep.k_P},       {"D_P", rep.D_P},
          {"G_P_freq", rep.G_P_freq}, {"C", rep.C},
          {"C_literal", rep.C_statement_literal}, {"a", rep.a}, {"nu", rep.nu}};
}

std::string bound_report_csv_header() {
  return "M,D_eps,B,m1,m3,d,k_P,D_P,G_P_freq,C,C_literal,kappa,gamma,C1,c2\n";
}

std::string bound_report_csv_row(const BoundReport& rep, const AsymptoticBound* asym) {
  std::ostringstream os;
  os << format_double(rep.M) << ',' << format_double(rep.D_eps) << ','
     << format_double(rep.B) << ',' << rep.m1 << ',' << rep.m3 << ',' << rep.d << ','
     << rep.k_P << ',' << format_double(rep.D_P) << ',' << format_double(rep.G_P_freq)
     << ',' << format_double(rep.C) << ',' << format_double(rep.C_statement_literal);
  if (asym) {
    os << ',' << format_double(asym->kappa) << ',' << format_double(asym->gamma) << ','
       << format_double(asym->C1) << ',' << format_double(asym->c2);
  } else {
    os << ",,,,";
  }
  os << '\n';
  return os.str();
}

nlohmann::json markov_model_to_json(const MarkovModel& m) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : m.partition) cells.push_back({c.lo, c.hi});
  return {{"n", m.n},
          {"kappa", m.kappa},
          {"partition", cells},
          {"adjacency", m.adjacency},
          {"rho", m.rho},
          {"r_n", m.r_n},
          {"lambda2", m.lambda2},
          {"ratio_to_minus_2kappa", m.ratio_to_minus_2kappa},
          {"charpoly_ok", m.charpoly_ok}};
}

std::string markov_csv_header() {
  return "n,kappa,r_n,rho,lambda2,ratio_to_minus_2kappa,charpoly_ok\n";
}

std::string markov_csv_row(const MarkovModel& m) {
  std::ostringstream os;
  os << m.n << ',' << format_double(m.kappa) << ',' << format_double(m.r_n) << ','
     << format_double(m.rho) << ',' << format_double(m.lambda2) << ','
     << format_double(m.ratio_to_minus_2kappa) << ',' << (m.charpoly_ok ? 1 : 0) << '\n';
  return os.str();
}

nlohmann::json spectrum_to_json(const SpectrumEstimate& est) {
  return {{"lambda1", est.lambda1},
          {"lambda2", est.lambda2},
          {"n_steps", est.n_steps},
          {"stderr", est.stderr_est}};
}

}  // namespace pftent
