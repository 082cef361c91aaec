#include "qeac/io.hpp"

#include <cstdio>
#include <limits>
#include <ostream>

namespace qeac {

namespace {

Json big_to_json(const BigInt& n) {
  if (n <= std::numeric_limits<std::uint64_t>::max()) return Json(n.convert_to<std::uint64_t>());
  return Json(n.str());
}

Json amplitudes_to_json(const CVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(Json::array({v(i).real(), v(i).imag()}));
  return a;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Json table_to_json(int L) {
  const IrrepTable table = irrep_multiplicities(L);
  Json mult = Json::array();
  for (auto it = table.multiplicities.rbegin(); it != table.multiplicities.rend(); ++it)
    mult.push_back({{"two_j", it->first}, {"n", big_to_json(it->second)}});
  return Json{{"L", L}, {"multiplicities", mult}, {"dark_count", big_to_json(dark_count(L))},
              {"efficiency", efficiency(L)}};
}

Json codewords_to_json(const CodeSpec& spec) {
  Json words = Json::array();
  for (Eigen::Index c = 0; c < spec.codewords.cols(); ++c) {
    const auto& label = spec.labels[static_cast<std::size_t>(c)];
    words.push_back({{"label", {{"two_j", label.two_j}, {"two_mj", label.two_mj}, {"copy", label.copy}}},
                     {"amplitudes", amplitudes_to_json(spec.codewords.col(c))}});
  }
  return Json{{"L", spec.L}, {"codewords", words}};
}

Geometry geometry_from_json(const Json& j) {
  try {
    Geometry g;
    for (const auto& p : j.at("positions_m")) {
      if (p.size() != 3) throw ParseError("each position needs three coordinates");
      g.positions_m.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    g.omega0_rad_s = j.at("omega0_rad_s").get<double>();
    g.v0_m_s = j.at("v0_m_s").get<double>();
    validate(g);
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("geometry JSON: ") + e.what());
  }
}

Json geometry_to_json(const Geometry& g) {
  Json pos = Json::array();
  for (const auto& p : g.positions_m) pos.push_back({p[0], p[1], p[2]});
  return Json{{"positions_m", pos}, {"omega0_rad_s", g.omega0_rad_s}, {"v0_m_s", g.v0_m_s}};
}

CVector state_from_json(const Json& j, int* L_out) {
  try {
    const int L = j.at("L").get<int>();
    if (L < 1 || L > 12) throw ParseError("state L must be in 1..12");
    const auto& amps = j.at("amplitudes");
    const Eigen::Index dim = Eigen::Index{1} << L;
    if (static_cast<Eigen::Index>(amps.size()) != dim)
      throw ParseError("state needs " + std::to_string(dim) + " amplitudes");
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto& a = amps[static_cast<std::size_t>(i)];
      if (a.size() != 2) throw ParseError("amplitudes are [re, im] pairs");
      v(i) = Complex(a[0].get<double>(), a[1].get<double>());
    }
    if (L_out) *L_out = L;
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("state JSON: ") + e.what());
  }
}

Json state_to_json(const CVector& psi, int L) {
  return Json{{"L", L}, {"amplitudes", amplitudes_to_json(psi)}};
}

void write_timeseries_csv(std::ostream& out, const EvolutionResult& r,
                          const std::vector<std::pair<std::string, std::vector<double>>>& extra) {
  out << "t,fidelity,trace,purity,excitation";
  for (const auto& col : extra) out << ',' << col.first;
  out << '\n';
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    out << format_number(r.times[k]) << ',' << format_number(r.fidelity[k]) << ','
        << format_number(r.trace[k]) << ',' << format_number(r.purity[k]) << ','
        << format_number(r.excitation[k]);
    for (const auto& col : extra) out << ',' << format_number(col.second.at(k));
    out << '\n';
  }
}

}  // namespace qeac
