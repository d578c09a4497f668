#include "mvhp/report.hpp"

#include "mvhp/error.hpp"

#include <cmath>
#include <cstdio>

namespace mvhp {

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_number_float()) {
    out += number(j.get<double>());
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    bool flat = true;
    for (const auto& e : j) flat = flat && is_scalar(e);
    out += '[';
    bool first = true;
    for (const auto& e : j) {
      if (!first) out += flat ? ", " : ",";
      first = false;
      if (!flat) out += "\n" + pad;
      write(e, indent + 2, out);
    }
    if (!flat) out += "\n" + close;
    out += ']';
  } else if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += '{';
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ',';
      first = false;
      out += "\n" + pad + Json(key).dump() + ": ";
      write(value, indent + 2, out);
    }
    out += "\n" + close + '}';
  } else {
    out += j.dump();
  }
}

double as_double(const nlohmann::json& j, const std::string& name) {
  if (!j.is_number()) throw Error(ErrorCode::InvalidArgument, "'" + name + "' must be a number");
  return j.get<double>();
}

const nlohmann::json& member(const nlohmann::json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::InvalidArgument, "missing key '" + key + "'");
  return j.at(key);
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  write(j, 0, out);
  out += '\n';
  return out;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Matrix parse_matrix(const nlohmann::json& j, const std::string& name) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw Error(ErrorCode::InvalidArgument, "'" + name + "' must be a non-empty array of arrays");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::InvalidArgument, "'" + name + "' has ragged rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = as_double(row.at(static_cast<std::size_t>(k)), name);
  }
  return m;
}

Vector parse_vector(const nlohmann::json& j, const std::string& name) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "'" + name + "' must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = as_double(j.at(i), name);
  return v;
}

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

Estimate run_estimate(const TimeSeriesPanel& panel, const MetaOptions& options) {
  Estimate est;
  est.target_min_snr = options.target_min_snr;
  est.meta = meta_estimate(panel.values, options);
  est.decoupling = decouple(est.meta.params);
  est.reduced = reduced_form(est.decoupling);
  return est;
}

Json estimate_report(const TimeSeriesPanel& panel, const Estimate& est) {
  const MetaResult& m = est.meta;
  const auto d = static_cast<std::size_t>(panel.cols());
  Json r;
  r["series"] = panel.names;
  r["n_obs"] = panel.rows();
  r["target_min_snr"] = est.target_min_snr;
  r["sigma_eps"] = matrix_json(m.params.sigma_eps.matrix());
  r["sigma_xi"] = matrix_json(m.params.sigma_xi.matrix());
  r["alpha"] = m.params.alpha;
  r["sigma_eps_alpha"] = m.params.eps_alpha;
  r["sigma_xi_unregularized"] = matrix_json(m.unregularized.sigma_xi.matrix());
  r["gamma0"] = matrix_json(m.gammas.gamma0.matrix());
  r["gamma2"] = matrix_json(m.gammas.gamma2.matrix());
  r["P"] = matrix_json(est.decoupling.p);
  r["delta"] = vector_json(est.decoupling.delta);
  r["theta1_mat"] = matrix_json(est.reduced.theta1);
  r["theta2_mat"] = matrix_json(est.reduced.theta2);
  r["omega"] = matrix_json(est.reduced.omega.matrix());

  Json aggs = Json::array();
  int boundary = 0;
  for (const AggregateFit& f : m.fits) {
    Json a;
    Json w = Json::array();
    for (double wi : f.w.weights(d)) w.push_back(static_cast<int>(wi));
    a["w"] = std::move(w);
    a["theta1"] = f.fit.model.theta1;
    a["theta2"] = f.fit.model.theta2;
    a["omega"] = f.fit.model.omega;
    a["se_theta1"] = f.fit.se_theta1;
    a["boundary"] = f.fit.boundary;
    boundary += f.fit.boundary ? 1 : 0;
    aggs.push_back(std::move(a));
  }
  r["per_aggregate"] = std::move(aggs);

  Json margins = Json::array();
  for (Eigen::Index k = 0; k < est.reduced.alpha.size(); ++k) {
    margins.push_back(invertibility_margin({est.reduced.alpha(k), est.reduced.beta(k), 1.0}));
  }
  Json diag;
  diag["min_snr_eigenvalue"] = est.decoupling.delta.minCoeff();
  diag["invertibility_margins"] = std::move(margins);
  diag["min_root_modulus"] = est.reduced.min_root_modulus;
  diag["cointegration_rank"] = est.decoupling.cointegration_rank;
  diag["boundary_aggregates"] = boundary;
  diag["sigma_eps_regularized"] = m.params.eps_alpha > 0.0;
  r["diagnostics"] = std::move(diag);
  return r;
}

Decoupling decoupling_from_report(const nlohmann::json& report) {
  const Matrix p = parse_matrix(member(report, "P"), "P");
  const Vector delta = parse_vector(member(report, "delta"), "delta");
  return Decoupling::from_transform(p, delta);
}

StructuralParams parse_covariances(const nlohmann::json& j) {
  const Matrix e = parse_matrix(member(j, "sigma_eps"), "sigma_eps");
  const Matrix x = parse_matrix(member(j, "sigma_xi"), "sigma_xi");
  if (e.rows() != x.rows() || e.cols() != x.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "sigma_eps and sigma_xi differ in size");
  }
  return {SymMatrix(e), SymMatrix(x), 0.0, 0.0};
}

Json factorize_report(const StructuralParams& p) {
  const Decoupling dec = decouple(p);
  const ReducedForm rf = reduced_form(dec);
  const GammaResiduals res = gamma_residuals(rf, p);
  Json r;
  r["delta"] = vector_json(dec.delta);
  r["P"] = matrix_json(dec.p);
  r["theta1_mat"] = matrix_json(rf.theta1);
  r["theta2_mat"] = matrix_json(rf.theta2);
  r["omega"] = matrix_json(rf.omega.matrix());
  r["alpha"] = vector_json(rf.alpha);
  r["beta"] = vector_json(rf.beta);
  r["cointegration_rank"] = dec.cointegration_rank;
  r["min_root_modulus"] = rf.min_root_modulus;
  r["gamma_residuals"] = {{"gamma0", res.gamma0}, {"gamma1", res.gamma1}, {"gamma2", res.gamma2}};
  return r;
}

SimConfig parse_sim_config(const nlohmann::json& j) {
  SimConfig cfg;
  const double n = as_double(member(j, "N"), "N");
  if (!(n >= 0.0) || n != std::floor(n)) throw Error(ErrorCode::InvalidArgument, "'N' must be a non-negative integer");
  cfg.n = static_cast<std::size_t>(n);
  cfg.sigma_eps = SymMatrix(parse_matrix(member(j, "sigma_eps"), "sigma_eps"));
  cfg.sigma_xi = SymMatrix(parse_matrix(member(j, "sigma_xi"), "sigma_xi"));
  if (j.contains("d") && as_double(j.at("d"), "d") != static_cast<double>(cfg.dim())) {
    throw Error(ErrorCode::DimensionMismatch, "'d' disagrees with the covariance matrices");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
      throw Error(ErrorCode::InvalidArgument, "'seed' must be an integer");
    }
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  const std::string noise = j.value("noise", std::string("gaussian"));
  if (noise == "gaussian") {
    cfg.noise = NoiseDist::Gaussian;
  } else if (noise == "t" || noise == "scaled-t") {
    cfg.noise = NoiseDist::ScaledT;
    cfg.df = as_double(member(j, "df"), "df");
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown noise distribution '" + noise + "'");
  }
  if (j.contains("init_mu")) cfg.init_mu = parse_vector(j.at("init_mu"), "init_mu");
  if (j.contains("init_beta")) cfg.init_beta = parse_vector(j.at("init_beta"), "init_beta");
  validate(cfg);
  return cfg;
}

}  // namespace mvhp
