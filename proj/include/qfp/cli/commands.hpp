#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfp/cli/config.hpp"

namespace qfp::cli {

struct CurveRow {
  std::int64_t n = 0;
  int k = 1;
  std::string family;
  double delta_opt = 0.0;
  double mu = 0.0;  // launched
  std::int64_t m_k = 0;
  std::string error_model;
  double qil_bits = 0.0;
  std::string bound_method;
  double classical_ref_bits = 0.0;
  std::string status = "ok";
};

/// Rows ordered by n, then k, then reference rows.
std::vector<CurveRow> compute_curves(const RunConfig& cfg);

/// CSV with header n,k,family,delta_opt,mu,m_k,error_model,qil_bits,bound_method,classical_ref_bits,status.
/// Numbers use 9 significant digits; infeasible rows leave numeric fields empty.
void write_curves_csv(const std::vector<CurveRow>& rows, std::ostream& out);

/// Returns the JSON report and writes a readable summary to `text`. Status
/// "infeasible" names the binding constraint.
nlohmann::json cmd_solve(const RunConfig& cfg, std::ostream& text);

/// Report of one Monte Carlo run. `exit_code` is nonzero when |z| > 4.
nlohmann::json cmd_simulate(const RunConfig& cfg, int& exit_code);

nlohmann::json cmd_usc(const RunConfig& cfg);

nlohmann::json cmd_ed_estimate(const RunConfig& cfg);

}  // namespace qfp::cli
