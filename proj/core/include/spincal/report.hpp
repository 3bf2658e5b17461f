// report.hpp -- deterministic rendering of verification reports and
// trajectory files.  A fixed seed yields byte-identical output regardless of
// worker count; schema strings are versioned constants.

#pragma once

#include "spincal/dynamics.hpp"
#include "spincal/verify.hpp"

#include <string>

namespace spincal {

inline constexpr const char* kReportSchema = "spincal.report.v1";
inline constexpr const char* kTrajectoryCsvSchema = "spincal.trajectory.v1";

std::string render_report_text(const VerificationReport& report);
std::string render_report_json(const VerificationReport& report);

// RFC-4180-style CSV with the fixed column set
// t, q*, p*, xi*, H, h2.., chi_norm, lax_residual, spec_drift.
std::string trajectory_csv(const AlgebraModel& model, const Trajectory& traj);
std::string trajectory_csv_header(const AlgebraModel& model, int kmax);

std::string trajectory_summary_json(const AlgebraModel& model,
                                    const Trajectory& traj);

void write_file(const std::string& path, const std::string& content);

}  // namespace spincal
