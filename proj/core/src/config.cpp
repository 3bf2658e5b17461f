#include "spincal/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace spincal {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config field '" + path + "': " + what);
}

double require_positive(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!(v > 0.0)) fail(path, "must be positive");
  return v;
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) fail(path, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

CatalogDescriptor parse_algebra(const json& j) {
  if (j.is_string()) {
    try {
      return CatalogDescriptor::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail("algebra", e.what());
    }
  }
  if (!j.is_object()) fail("algebra", "expected a string or an object");
  CatalogDescriptor d;
  const std::string family = j.value("family", "sl");
  if (family == "sl")
    d.family = Family::kSpecialLinear;
  else if (family == "su")
    d.family = Family::kSpecialUnitary;
  else
    fail("algebra.family", "unsupported family '" + family + "'");
  if (!j.contains("n")) fail("algebra.n", "required");
  d.n = j.at("n").get<int>();
  d.copies = j.value("copies", 1);
  if (d.copies > 1) {
    if (d.family != Family::kSpecialLinear)
      fail("algebra.copies", "products are supported for sl factors only");
    d.family = Family::kProductSpecialLinear;
  }
  return d;
}

}  // namespace

RMatrixKind RunConfig::kind() const {
  if (rmatrix_kind == "abelian") return RMatrixKind::kAbelian;
  if (rmatrix_kind == "nonabelian") return RMatrixKind::kNonAbelian;
  throw ConfigError("config field 'rmatrix.kind': expected abelian|nonabelian");
}

RunConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("top-level config must be an object");

  RunConfig cfg;
  if (j.contains("algebra")) cfg.algebra = parse_algebra(j.at("algebra"));
  if (j.contains("algebra") && j.at("algebra").is_object())
    cfg.automorphism = j.at("algebra").value("automorphism", "");

  if (j.contains("rmatrix")) {
    const auto& jr = j.at("rmatrix");
    if (!jr.is_object()) fail("rmatrix", "expected an object");
    cfg.rmatrix_kind = jr.value("kind", "abelian");
    if (cfg.rmatrix_kind != "abelian" && cfg.rmatrix_kind != "nonabelian")
      fail("rmatrix.kind", "expected abelian|nonabelian");
  }

  if (j.contains("initial")) {
    const auto& ji = j.at("initial");
    if (!ji.is_object()) fail("initial", "expected an object");
    if (ji.contains("q")) cfg.q0 = number_list(ji.at("q"), "initial.q");
    if (ji.contains("p")) cfg.p0 = number_list(ji.at("p"), "initial.p");
    if (ji.contains("xi")) cfg.xi0 = number_list(ji.at("xi"), "initial.xi");
  }

  if (j.contains("integrator")) {
    const auto& jn = j.at("integrator");
    if (!jn.is_object()) fail("integrator", "expected an object");
    if (jn.contains("step"))
      cfg.integrator.step = require_positive(jn.at("step"), "integrator.step");
    if (jn.contains("t_end"))
      cfg.integrator.t_end = require_positive(jn.at("t_end"), "integrator.t_end");
    if (jn.contains("method")) cfg.integrator.method = jn.at("method");
    if (cfg.integrator.step > cfg.integrator.t_end)
      fail("integrator.step", "must not exceed t_end");
  }

  if (j.contains("tolerances")) {
    const auto& jt = j.at("tolerances");
    if (!jt.is_object()) fail("tolerances", "expected an object");
    if (jt.contains("residual"))
      cfg.residual_tolerance =
          require_positive(jt.at("residual"), "tolerances.residual");
    if (jt.contains("drift"))
      cfg.drift_tolerance = require_positive(jt.at("drift"), "tolerances.drift");
  }

  if (j.contains("sampler")) {
    const auto& js = j.at("sampler");
    if (!js.is_object()) fail("sampler", "expected an object");
    if (js.contains("box"))
      cfg.sampler.box = require_positive(js.at("box"), "sampler.box");
    if (js.contains("momentum_scale"))
      cfg.sampler.momentum_scale =
          require_positive(js.at("momentum_scale"), "sampler.momentum_scale");
    if (js.contains("spin_scale"))
      cfg.sampler.spin_scale =
          require_positive(js.at("spin_scale"), "sampler.spin_scale");
    if (js.contains("condition_limit"))
      cfg.sampler.condition_limit =
          require_positive(js.at("condition_limit"), "sampler.condition_limit");
    if (js.contains("min_gap"))
      cfg.sampler.min_gap = require_positive(js.at("min_gap"), "sampler.min_gap");
  }

  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("samples")) {
    cfg.samples = j.at("samples").get<int>();
    if (cfg.samples <= 0) fail("samples", "must be positive");
  }
  if (j.contains("threads")) {
    cfg.threads = j.at("threads").get<int>();
    if (cfg.threads <= 0) fail("threads", "must be positive");
  }
  if (j.contains("perturb")) cfg.perturb = j.at("perturb").get<double>();
  if (j.contains("kmax")) {
    cfg.kmax = j.at("kmax").get<int>();
    if (cfg.kmax < 2) fail("kmax", "must be at least 2");
  }

  if (j.contains("output")) {
    const auto& jo = j.at("output");
    if (!jo.is_object()) fail("output", "expected an object");
    cfg.output.format = jo.value("format", "csv");
    if (cfg.output.format != "csv" && cfg.output.format != "json")
      fail("output.format", "expected csv|json");
    cfg.output.path = jo.value("path", "");
  }

  // Surface bad descriptors (range, product automorphism) as config errors.
  try {
    cfg.kind();
    if (cfg.algebra.n < 2 || cfg.algebra.n > 8)
      fail("algebra.n", "catalog supports n in [2, 8]");
    if (cfg.algebra.is_product() &&
        (cfg.algebra.copies < 2 || cfg.algebra.copies > 4))
      fail("algebra.copies", "catalog supports copies in [2, 4]");
    if (!cfg.automorphism.empty() && cfg.automorphism != "identity" &&
        cfg.automorphism != "cyclic")
      fail("algebra.automorphism", "expected identity|cyclic");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

PhasePoint initial_point(const RunConfig& config, const AlgebraModel& model,
                         const DynamicalRMatrix& r) {
  const int dim = model.dim();
  if (!config.q0 || !config.p0 || !config.xi0)
    throw ConfigError("initial.q, initial.p and initial.xi are required");
  auto to_vec = [&](const std::vector<double>& v, const char* name) {
    if (static_cast<int>(v.size()) != dim)
      throw ConfigError(std::string("initial.") + name + " must have length " +
                        std::to_string(dim) + " (algebra dimension)");
    return Eigen::Map<const Eigen::VectorXd>(v.data(), dim).eval();
  };
  PhasePoint pt;
  pt.q = to_vec(*config.q0, "q");
  pt.p = to_vec(*config.p0, "p");
  pt.xi = to_vec(*config.xi0, "xi");
  if (!r.in_domain(pt.q))
    throw ConfigError("initial.q fails the operator domain predicate");
  return pt;
}

}  // namespace spincal
