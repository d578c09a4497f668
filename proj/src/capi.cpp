#include "mvhp/mvhp.h"

#include "mvhp/error.hpp"
#include "mvhp/panel.hpp"
#include "mvhp/plot.hpp"
#include "mvhp/report.hpp"
#include "mvhp/simulation.hpp"
#include "mvhp/trend_extraction.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <optional>
#include <string>

struct mvhp_panel {
  mvhp::TimeSeriesPanel panel;
};

struct mvhp_model {
  mvhp::Decoupling decoupling;
  std::optional<mvhp::Estimate> estimate;
  mvhp::TimeSeriesPanel source;  // data the estimate was fitted on
};

namespace {

thread_local std::string last_error;

mvhp_status status_of(mvhp::ErrorCode code) {
  return static_cast<mvhp_status>(static_cast<int>(code) + 1);
}

template <class F>
mvhp_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return MVHP_OK;
  } catch (const mvhp::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "InternalError: out of memory";
    return MVHP_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = std::string("InternalError: ") + e.what();
    return MVHP_INTERNAL_ERROR;
  } catch (...) {
    last_error = "InternalError: unknown exception";
    return MVHP_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw mvhp::Error(mvhp::ErrorCode::InvalidArgument, what);
}

char* duplicate(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

mvhp_panel* wrap(mvhp::TimeSeriesPanel p) { return new mvhp_panel{std::move(p)}; }

void copy_out(const mvhp::Matrix& m, double* out, size_t len) {
  require(out != nullptr, "output buffer is null");
  require(len >= static_cast<size_t>(m.size()), "output buffer too small");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) *out++ = m(i, j);
}

}  // namespace

extern "C" {

int mvhp_exit_code(mvhp_status status) {
  if (status == MVHP_OK) return 0;
  if (status < MVHP_OK || status > MVHP_INTERNAL_ERROR) return 3;
  return static_cast<int>(mvhp::category(static_cast<mvhp::ErrorCode>(status - 1)));
}

const char* mvhp_status_name(mvhp_status status) {
  if (status == MVHP_OK) return "Ok";
  if (status < MVHP_OK || status > MVHP_INTERNAL_ERROR) return "InternalError";
  return mvhp::to_string(static_cast<mvhp::ErrorCode>(status - 1));
}

const char* mvhp_last_error(void) { return last_error.c_str(); }

void mvhp_string_free(char* s) { std::free(s); }

mvhp_status mvhp_panel_load_csv(const char* path, mvhp_panel** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = wrap(mvhp::load_panel(path));
  });
}

mvhp_status mvhp_panel_parse_csv(const char* text, mvhp_panel** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = wrap(mvhp::parse_panel(text));
  });
}

mvhp_status mvhp_panel_from_array(size_t rows, size_t cols, const double* data, mvhp_panel** out) {
  return guarded([&] {
    require(out && (data || rows * cols == 0), "null argument");
    require(rows > 0 && cols > 0, "panel must be non-empty");
    mvhp::Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) {
        const double v = data[i * cols + j];
        require(std::isfinite(v), "panel values must be finite");
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      }
    *out = wrap(mvhp::TimeSeriesPanel::unnamed(std::move(m)));
  });
}

mvhp_status mvhp_panel_write_csv(const mvhp_panel* panel, const char* path) {
  return guarded([&] {
    require(panel && path, "null argument");
    mvhp::write_panel(panel->panel, path);
  });
}

mvhp_status mvhp_panel_format_csv(const mvhp_panel* panel, char** out) {
  return guarded([&] {
    require(panel && out, "null argument");
    *out = duplicate(mvhp::format_panel(panel->panel));
  });
}

size_t mvhp_panel_rows(const mvhp_panel* panel) { return panel ? static_cast<size_t>(panel->panel.rows()) : 0; }

size_t mvhp_panel_cols(const mvhp_panel* panel) { return panel ? static_cast<size_t>(panel->panel.cols()) : 0; }

double mvhp_panel_get(const mvhp_panel* panel, size_t row, size_t col) {
  if (!panel || row >= mvhp_panel_rows(panel) || col >= mvhp_panel_cols(panel)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return panel->panel.values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

const char* mvhp_panel_name(const mvhp_panel* panel, size_t col) {
  if (!panel || col >= panel->panel.names.size()) return nullptr;
  return panel->panel.names[col].c_str();
}

void mvhp_panel_free(mvhp_panel* panel) { delete panel; }

mvhp_status mvhp_estimate(const mvhp_panel* panel, double target_min_snr, unsigned threads, mvhp_model** out) {
  return guarded([&] {
    require(panel && out, "null argument");
    mvhp::MetaOptions opt;
    opt.target_min_snr = target_min_snr;
    opt.threads = threads;
    mvhp::Estimate est = mvhp::run_estimate(panel->panel, opt);
    *out = new mvhp_model{est.decoupling, std::move(est), panel->panel};
  });
}

mvhp_status mvhp_model_from_report(const char* report_json, mvhp_model** out) {
  return guarded([&] {
    require(report_json && out, "null argument");
    const nlohmann::json j = mvhp::parse_json_text(report_json);
    *out = new mvhp_model{mvhp::decoupling_from_report(j), std::nullopt, {}};
  });
}

mvhp_status mvhp_model_report_json(const mvhp_model* model, char** out) {
  return guarded([&] {
    require(model && out, "null argument");
    require(model->estimate.has_value(), "model carries no estimate");
    *out = duplicate(mvhp::dump_json(mvhp::estimate_report(model->source, *model->estimate)));
  });
}

size_t mvhp_model_dim(const mvhp_model* model) { return model ? static_cast<size_t>(model->decoupling.dim()) : 0; }

mvhp_status mvhp_model_delta(const mvhp_model* model, double* out, size_t len) {
  return guarded([&] {
    require(model != nullptr, "null argument");
    copy_out(model->decoupling.delta, out, len);
  });
}

mvhp_status mvhp_model_transform(const mvhp_model* model, double* out, size_t len) {
  return guarded([&] {
    require(model != nullptr, "null argument");
    copy_out(model->decoupling.p, out, len);
  });
}

double mvhp_model_alpha(const mvhp_model* model) {
  if (!model || !model->estimate) return std::numeric_limits<double>::quiet_NaN();
  return model->estimate->meta.params.alpha;
}

void mvhp_model_free(mvhp_model* model) { delete model; }

mvhp_status mvhp_detrend(const mvhp_panel* panel, const mvhp_model* model, double fixed_lambda, unsigned threads,
                         mvhp_panel** trend, mvhp_panel** cycle) {
  return guarded([&] {
    require(panel && model && trend && cycle, "null argument");
    require(!std::isnan(fixed_lambda), "lambda is NaN");
    const mvhp::TrendResult r =
        fixed_lambda > 0.0 ? mvhp::extract_trends_fixed(panel->panel.values, model->decoupling, fixed_lambda, threads)
                           : mvhp::extract_trends(panel->panel.values, model->decoupling, threads);
    auto t = wrap(panel->panel.with_values(r.trend));
    *cycle = wrap(panel->panel.with_values(r.cycle));
    *trend = t;
  });
}

mvhp_status mvhp_write_plots(const char* dir, const mvhp_panel* raw, const mvhp_panel* trend,
                             const mvhp_panel* fixed_trend) {
  return guarded([&] {
    require(dir && raw && trend, "null argument");
    mvhp::write_plots(dir, raw->panel.names, raw->panel.values, trend->panel.values,
                      fixed_trend ? &fixed_trend->panel.values : nullptr);
  });
}

mvhp_status mvhp_factorize_json(const char* covariances_json, char** out) {
  return guarded([&] {
    require(covariances_json && out, "null argument");
    const mvhp::StructuralParams p = mvhp::parse_covariances(mvhp::parse_json_text(covariances_json));
    *out = duplicate(mvhp::dump_json(mvhp::factorize_report(p)));
  });
}

mvhp_status mvhp_simulate_json(const char* config_json, mvhp_panel** y, mvhp_panel** trend) {
  return guarded([&] {
    require(config_json && y, "null argument");
    const mvhp::SimConfig cfg = mvhp::parse_sim_config(mvhp::parse_json_text(config_json));
    mvhp::Simulation sim = mvhp::simulate(cfg);
    auto* py = wrap(mvhp::TimeSeriesPanel::unnamed(std::move(sim.y)));
    if (trend) {
      try {
        *trend = wrap(py->panel.with_values(std::move(sim.trend)));
      } catch (...) {
        delete py;
        throw;
      }
    }
    *y = py;
  });
}

}  // extern "C"
