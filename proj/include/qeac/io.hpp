#pragma once

#include <iosfwd>

#include <json.hpp>

#include "qeac/dark_codes.hpp"
#include "qeac/dynamics.hpp"
#include "qeac/noise_field.hpp"
#include "qeac/rep_theory.hpp"

namespace qeac {

using Json = nlohmann::ordered_json;

/// {"L", "multiplicities": [{"two_j", "n"}], "dark_count", "efficiency"}.
/// Integers beyond 64 bits are written as decimal strings.
Json table_to_json(int L);

/// {"L", "codewords": [{"label": {"two_j", "two_mj", "copy"}, "amplitudes": [[re, im], ...]}]}
/// with basis index b = Σ_l q_l·2^(L−l).
Json codewords_to_json(const CodeSpec& spec);

/// Reads the geometry schema {"positions_m", "omega0_rad_s", "v0_m_s"}.
Geometry geometry_from_json(const Json& j);
Json geometry_to_json(const Geometry& g);

/// A pure state {"L": int, "amplitudes": [[re, im], ...]}. Not renormalized.
CVector state_from_json(const Json& j, int* L_out = nullptr);
Json state_to_json(const CVector& psi, int L);

/// Header "t,fidelity,trace,purity,excitation", one row per sample, 15
/// significant digits. Extra named columns are appended when supplied.
void write_timeseries_csv(std::ostream& out, const EvolutionResult& r,
                          const std::vector<std::pair<std::string, std::vector<double>>>& extra = {});

/// "%.15g"
std::string format_number(double v);

}  // namespace qeac
