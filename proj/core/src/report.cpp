#include "spincal/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace spincal {

namespace {

using nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string render_report_text(const VerificationReport& report) {
  std::ostringstream os;
  os << "schema: " << kReportSchema << "\n";
  os << "command: " << report.command << "\n";
  os << "algebra: " << report.algebra << "\n";
  os << "rmatrix: " << report.rmatrix_kind
     << " (automorphism: " << report.automorphism << ")\n";
  os << "seed: " << report.seed << "\n";
  os << "samples: " << report.samples << "\n";
  os << "perturbation: " << fmt_double(report.perturbation) << "\n";
  os << "\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-28s %8s %14s %14s %12s %7s\n",
                "property", "samples", "max", "mean", "tolerance", "status");
  os << line;
  for (const auto& p : report.properties) {
    std::snprintf(line, sizeof(line), "%-28s %8d %14.6e %14.6e %12.2e %7s\n",
                  p.name.c_str(), p.samples, p.max_residual, p.mean_residual,
                  p.tolerance, p.pass ? "pass" : "FAIL");
    os << line;
  }
  os << "\noverall: " << (report.all_pass() ? "pass" : "FAIL") << "\n";
  return os.str();
}

std::string render_report_json(const VerificationReport& report) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = report.command;
  j["algebra"] = report.algebra;
  j["rmatrix"] = report.rmatrix_kind;
  j["automorphism"] = report.automorphism;
  j["seed"] = report.seed;
  j["samples"] = report.samples;
  j["perturbation"] = report.perturbation;
  j["properties"] = ordered_json::array();
  for (const auto& p : report.properties) {
    ordered_json jp;
    jp["name"] = p.name;
    jp["samples"] = p.samples;
    jp["max_residual"] = p.max_residual;
    jp["mean_residual"] = p.mean_residual;
    jp["tolerance"] = p.tolerance;
    jp["pass"] = p.pass;
    j["properties"].push_back(jp);
  }
  j["overall_pass"] = report.all_pass();
  return j.dump(2) + "\n";
}

std::string trajectory_csv_header(const AlgebraModel& model, int kmax) {
  std::ostringstream os;
  os << "t";
  const int dim = model.dim();
  for (int i = 0; i < dim; ++i) os << ",q" << i;
  for (int i = 0; i < dim; ++i) os << ",p" << i;
  for (int i = 0; i < dim; ++i) os << ",xi" << i;
  os << ",H";
  for (int k = 2; k <= kmax; ++k) os << ",h" << k;
  os << ",chi_norm,lax_residual,spec_drift";
  return os.str();
}

std::string trajectory_csv(const AlgebraModel& model, const Trajectory& traj) {
  std::ostringstream os;
  os << trajectory_csv_header(model, traj.kmax) << "\r\n";
  for (size_t row = 0; row < traj.states.size(); ++row) {
    const PhasePoint& st = traj.states[row];
    const MonitorRow& mon = traj.monitors[row];
    os << fmt_double(traj.times[row]);
    for (int i = 0; i < model.dim(); ++i) os << "," << fmt_double(st.q[i]);
    for (int i = 0; i < model.dim(); ++i) os << "," << fmt_double(st.p[i]);
    for (int i = 0; i < model.dim(); ++i) os << "," << fmt_double(st.xi[i]);
    os << "," << fmt_double(mon.energy);
    for (double h : mon.invariants) os << "," << fmt_double(h);
    os << "," << fmt_double(mon.chi_norm) << "," << fmt_double(mon.lax_residual)
       << "," << fmt_double(mon.spectral_drift);
    os << "\r\n";
  }
  return os.str();
}

std::string trajectory_summary_json(const AlgebraModel& model,
                                    const Trajectory& traj) {
  const ConservationSummary s = conservation_report(traj);
  ordered_json j;
  j["schema"] = kTrajectoryCsvSchema;
  j["algebra"] = model.algebra.label();
  j["exit_status"] =
      s.exit_status == ExitStatus::kCompleted ? "completed" : "domain_exit";
  j["steps"] = traj.times.size();
  j["t_final"] = traj.times.empty() ? 0.0 : traj.times.back();
  j["energy_rel_drift"] = s.energy_rel_drift;
  j["invariant_drifts"] = s.invariant_drifts;
  j["max_chi_norm"] = s.max_chi_norm;
  j["max_lax_residual"] = s.max_lax_residual;
  j["eigenvalue_drift"] = s.eigenvalue_drift;
  j["casimir_drifts"] = s.casimir_drifts;
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

}  // namespace spincal
