// Command-line front end. Talks to the library through the C API only.

#include <mvhp/mvhp.h>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

constexpr int kInputExit = 1;
constexpr int kInternalExit = 3;

// Carries an exit code and message out of a command.
struct Failure {
  int exit_code;
  std::string message;
};

void check(mvhp_status s) {
  if (s != MVHP_OK) throw Failure{mvhp_exit_code(s), mvhp_last_error()};
}

struct PanelDeleter {
  void operator()(mvhp_panel* p) const { mvhp_panel_free(p); }
};
struct ModelDeleter {
  void operator()(mvhp_model* m) const { mvhp_model_free(m); }
};
struct StringDeleter {
  void operator()(char* s) const { mvhp_string_free(s); }
};
using Panel = std::unique_ptr<mvhp_panel, PanelDeleter>;
using Model = std::unique_ptr<mvhp_model, ModelDeleter>;
using String = std::unique_ptr<char, StringDeleter>;

void require_file(const std::string& path) {
  if (!fs::is_regular_file(path)) throw Failure{kInputExit, "IoError: no such file: " + path};
}

void require_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw Failure{kInputExit, "IoError: output directory does not exist: " + parent.string()};
  }
}

std::string read_file(const std::string& path) {
  require_file(path);
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in) throw Failure{kInputExit, "IoError: cannot read " + path};
  return ss.str();
}

void write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure{kInputExit, "IoError: cannot write " + path};
}

Panel load(const std::string& path) {
  require_file(path);
  mvhp_panel* p = nullptr;
  check(mvhp_panel_load_csv(path.c_str(), &p));
  return Panel(p);
}

double snr_target(const std::string& freq, double floor) {
  if (freq == "monthly") return 1.0 / 14400.0;
  if (freq == "quarterly") return 1.0 / 1600.0;
  if (!(floor > 0.0)) throw Failure{kInputExit, "InvalidArgument: --freq custom needs --snr-floor > 0"};
  return floor;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate Hodrick-Prescott trend estimation"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: MVHP_THREADS or all cores)");

  std::string input, output, report, out_dir, freq = "monthly", config;
  double snr_floor = 0.0;
  double fixed_lambda = 14400.0;
  bool emit_plots = false;

  auto* estimate = app.add_subcommand("estimate", "Estimate the structural covariances of a panel");
  estimate->add_option("--input", input, "Panel CSV")->required();
  estimate->add_option("--out", output, "Report JSON")->required();
  estimate->add_option("--freq", freq, "monthly, quarterly or custom")
      ->check(CLI::IsMember({"monthly", "quarterly", "custom"}));
  estimate->add_option("--snr-floor", snr_floor, "Minimum signal-noise eigenvalue for --freq custom");

  auto* detrend = app.add_subcommand("detrend", "Extract trends using an estimation report");
  detrend->add_option("--input", input, "Panel CSV")->required();
  detrend->add_option("--report", report, "Report JSON from `estimate`")->required();
  detrend->add_option("--out-dir", out_dir, "Output directory")->required();
  detrend->add_flag("--emit-plots", emit_plots, "Write one SVG per series");
  auto* fixed_opt =
      detrend->add_option("--fixed-lambda", fixed_lambda, "Also smooth every series with this lambda (default 14400)");

  auto* simulate = app.add_subcommand("simulate", "Simulate a panel from a JSON config");
  std::string trend_out;
  simulate->add_option("--config", config, "Simulation config JSON")->required();
  simulate->add_option("--out", output, "Panel CSV")->required();
  simulate->add_option("--trend-out", trend_out, "Optional CSV of the true trend");

  auto* factorize = app.add_subcommand("factorize", "Reduced form from given sigma_eps and sigma_xi");
  factorize->add_option("--input", input, "Covariances JSON")->required();
  factorize->add_option("--out", output, "Reduced-form JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputExit;
  }

  try {
    if (estimate->parsed()) {
      const double target = snr_target(freq, snr_floor);
      require_parent(output);
      Panel panel = load(input);
      mvhp_model* m = nullptr;
      check(mvhp_estimate(panel.get(), target, threads, &m));
      Model model(m);
      char* text = nullptr;
      check(mvhp_model_report_json(model.get(), &text));
      write_file(output, String(text).get());
    } else if (detrend->parsed()) {
      require_file(input);
      const std::string report_text = read_file(report);
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      if (ec || !fs::is_directory(out_dir)) throw Failure{kInputExit, "IoError: cannot create " + out_dir};
      Panel panel = load(input);
      mvhp_model* m = nullptr;
      check(mvhp_model_from_report(report_text.c_str(), &m));
      Model model(m);

      mvhp_panel *t = nullptr, *c = nullptr;
      check(mvhp_detrend(panel.get(), model.get(), 0.0, threads, &t, &c));
      Panel trend(t), cycle(c);
      const fs::path dir(out_dir);
      check(mvhp_panel_write_csv(trend.get(), (dir / "trend.csv").c_str()));
      check(mvhp_panel_write_csv(cycle.get(), (dir / "cycle.csv").c_str()));

      Panel fixed_trend;
      if (*fixed_opt || emit_plots) {
        if (!(fixed_lambda > 0.0)) throw Failure{kInputExit, "InvalidArgument: --fixed-lambda must be positive"};
        check(mvhp_detrend(panel.get(), model.get(), fixed_lambda, threads, &t, &c));
        fixed_trend.reset(t);
        Panel fixed_cycle(c);
        if (*fixed_opt) {
          check(mvhp_panel_write_csv(fixed_trend.get(), (dir / "trend_fixed.csv").c_str()));
          check(mvhp_panel_write_csv(fixed_cycle.get(), (dir / "cycle_fixed.csv").c_str()));
        }
      }
      if (emit_plots) check(mvhp_write_plots(out_dir.c_str(), panel.get(), trend.get(), fixed_trend.get()));
    } else if (simulate->parsed()) {
      const std::string cfg = read_file(config);
      require_parent(output);
      if (!trend_out.empty()) require_parent(trend_out);
      mvhp_panel *y = nullptr, *mu = nullptr;
      check(mvhp_simulate_json(cfg.c_str(), &y, trend_out.empty() ? nullptr : &mu));
      Panel py(y), pmu(mu);
      check(mvhp_panel_write_csv(py.get(), output.c_str()));
      if (pmu) check(mvhp_panel_write_csv(pmu.get(), trend_out.c_str()));
    } else if (factorize->parsed()) {
      const std::string covs = read_file(input);
      require_parent(output);
      char* text = nullptr;
      check(mvhp_factorize_json(covs.c_str(), &text));
      write_file(output, String(text).get());
    }
  } catch (const Failure& f) {
    std::cerr << "mvhp: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "mvhp: InternalError: " << e.what() << '\n';
    return kInternalExit;
  }
  return 0;
}
