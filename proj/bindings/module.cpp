#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <variant>

#include "qfopt/ext.hpp"
#include "qfopt/io.hpp"
#include "qfopt/mono.hpp"
#include "qfopt/mz.hpp"
#include "qfopt/qr.hpp"
#include "qfopt/sim.hpp"
#include "qfopt/stats.hpp"

namespace py = pybind11;
using namespace qfopt;

namespace {

MbbConfig make_mbb(int block_length, int draws, std::uint64_t seed, int threads) {
  MbbConfig cfg;
  cfg.block_length = block_length;
  cfg.draws = draws;
  cfg.seed = seed;
  cfg.threads = threads;
  return cfg;
}

Panel panel_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  return load_panel_stream(in, "<string>");
}

TestResult run_named_test(const Panel& panel, const std::string& test, const MbbConfig& mbb,
                          int hac_bandwidth) {
  if (test == "mz") return mz_test(std::get<EvalSample>(panel), mbb);
  if (test == "amz") {
    if (const auto* aug = std::get_if<AugmentedSample>(&panel)) return amz_test(*aug, mbb);
    AugmentedSample aug;
    aug.base = std::get<EvalSample>(panel);
    return amz_test(aug, mbb);
  }
  if (test == "mmz") return mmz_test(std::get<MultiSeriesSample>(panel), mbb);
  if (test == "mh") {
    HacConfig hac;
    hac.bandwidth = hac_bandwidth >= 0 ? hac_bandwidth : mbb.block_length;
    if (const auto* multi = std::get_if<MultiSeriesSample>(&panel))
      return mh_test(*multi, mbb, hac);
    return mh_test(std::get<EvalSample>(panel), mbb, hac);
  }
  throw ConfigError("unknown test '" + test + "'");
}

py::dict result_to_dict(const TestResult& r) {
  py::dict d;
  d["test"] = r.test;
  d["statistic"] = r.statistic;
  d["p_value"] = r.p_value;
  d["kappa"] = r.kappa;
  d["P"] = r.P;
  py::dict cvs;
  for (const auto& [level, value] : r.critical_values)
    cvs[py::float_(level)] = value;
  d["critical_values"] = cvs;
  py::list contribs;
  for (const auto& [key, value] : r.contributions) {
    py::dict c;
    c["series"] = key.series;
    c["tau"] = key.tau;
    c["h"] = key.h;
    if (r.test == "mh") c["h_longer"] = key.h2;
    c["value"] = value;
    contribs.append(c);
  }
  d["contributions"] = contribs;
  d["retried_draws"] = r.retried_draws;
  d["diagnostics"] = r.diagnostics;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qfopt, m) {
  m.doc() = "Joint quantile forecast optimality tests";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<LoadError>(m, "LoadError", PyExc_ValueError);
  py::register_exception<SingularDesignError>(m, "SingularDesignError", PyExc_RuntimeError);

  m.def(
      "run_test",
      [](const std::string& input, const std::string& test, int block_length, int draws,
         std::uint64_t seed, int threads, int hac_bandwidth, bool from_string) {
        const Panel panel = from_string ? panel_from_csv(input) : load_panel(input);
        return result_to_dict(run_named_test(
            panel, test, make_mbb(block_length, draws, seed, threads), hac_bandwidth));
      },
      py::arg("input"), py::arg("test") = "mz", py::arg("block_length") = 4,
      py::arg("draws") = 1000, py::arg("seed") = 0, py::arg("threads") = 0,
      py::arg("hac_bandwidth") = -1, py::arg("from_string") = false,
      "Run an mz/amz/mmz/mh test on a long-format CSV panel (path or string).");

  m.def(
      "emit_report",
      [](const std::string& input, const std::string& test, int block_length, int draws,
         std::uint64_t seed, const std::string& format, bool from_string) {
        const Panel panel = from_string ? panel_from_csv(input) : load_panel(input);
        return emit_report(
            run_named_test(panel, test, make_mbb(block_length, draws, seed, 0), -1), format);
      },
      py::arg("input"), py::arg("test") = "mz", py::arg("block_length") = 4,
      py::arg("draws") = 1000, py::arg("seed") = 0, py::arg("format") = "json",
      py::arg("from_string") = false, "Formatted (csv/json) report for a panel test.");

  m.def(
      "qr_fit",
      [](const std::vector<std::vector<double>>& X, const std::vector<double>& y,
         double tau) {
        const int P = static_cast<int>(X.size());
        if (P == 0) throw ConfigError("empty design");
        const int d = static_cast<int>(X.front().size());
        Matrix Xm(P, d);
        Vector yv(P);
        for (int i = 0; i < P; ++i) {
          if (static_cast<int>(X[i].size()) != d) throw ConfigError("ragged design matrix");
          for (int j = 0; j < d; ++j) Xm(i, j) = X[i][j];
          yv[i] = y.at(i);
        }
        const QrFit fit = qr_fit(Xm, yv, tau);
        py::dict out;
        out["coefficients"] =
            std::vector<double>(fit.coefficients.data(), fit.coefficients.data() + d);
        out["objective"] = fit.objective;
        out["iterations"] = fit.iterations;
        out["converged"] = fit.converged;
        return out;
      },
      py::arg("X"), py::arg("y"), py::arg("tau"),
      "Linear quantile regression (rows of X as observations).");

  m.def(
      "simulate_size_power",
      [](const std::string& dgp, const std::string& test, int P, int H,
         const std::vector<double>& levels, double b, double b_tilde, double c, double d,
         int replications, int block_length, std::uint64_t seed, int threads,
         bool swap_horizons) {
        SimConfig cfg;
        if (dgp == "ar1")
          cfg.dgp = DgpFamily::Ar1;
        else if (dgp == "adl")
          cfg.dgp = DgpFamily::Adl11;
        else if (dgp == "garch")
          cfg.dgp = DgpFamily::Garch11;
        else
          throw ConfigError("unknown dgp '" + dgp + "'");
        cfg.P = P;
        cfg.H = H;
        if (!levels.empty()) cfg.levels = levels;
        cfg.b = b;
        cfg.b_tilde = b_tilde;
        cfg.c = c;
        cfg.d = d;
        cfg.replications = replications;
        cfg.mbb.block_length = block_length;
        cfg.mbb.threads = threads;
        cfg.hac.bandwidth = block_length;
        cfg.swap_horizons = swap_horizons;
        TestKind kind = TestKind::Mz;
        if (test == "amz")
          kind = TestKind::Amz;
        else if (test == "mh")
          kind = TestKind::Mh;
        else if (test != "mz")
          throw ConfigError("unknown test '" + test + "'");
        const SizePowerReport r = run_size_power(cfg, kind, seed);
        py::dict out;
        out["rejection_rate"] = r.rejection_rate;
        out["rejections"] = r.rejections;
        out["replications"] = r.replications;
        out["critical_value"] = r.critical_value;
        return out;
      },
      py::arg("dgp") = "ar1", py::arg("test") = "mz", py::arg("P") = 240, py::arg("H") = 4,
      py::arg("levels") = std::vector<double>{}, py::arg("b") = 0.6,
      py::arg("b_tilde") = 0.6, py::arg("c") = 0.0, py::arg("d") = 0.6,
      py::arg("replications") = 1999, py::arg("block_length") = 4, py::arg("seed") = 0,
      py::arg("threads") = 0, py::arg("swap_horizons") = false,
      "Warp-speed Monte Carlo rejection rate for one configuration.");

  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("student_t_quantile", &student_t_quantile, py::arg("p"), py::arg("nu"));
  m.def("pinball_loss", &pinball_loss, py::arg("u"), py::arg("tau"));
}
