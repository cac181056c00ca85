// Command-line frontend: autocalibration and optimality tests for quantile
// forecasts, plus the Monte Carlo size/power harness.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qfopt/ext.hpp"
#include "qfopt/io.hpp"
#include "qfopt/mono.hpp"
#include "qfopt/mz.hpp"
#include "qfopt/sim.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qfopt::ConfigError("cannot open output file '" + path + "'");
  out << content;
}

struct TestArgs {
  std::string input;
  std::string out;
  std::string format = "csv";
  qfopt::MbbConfig mbb;
  int hac_bandwidth = -1;  // default: block length
};

void add_common_options(CLI::App* cmd, TestArgs& args, bool with_hac) {
  cmd->add_option("--input", args.input, "Long-format CSV panel")->required();
  cmd->add_option("--block-length", args.mbb.block_length, "MBB block length l");
  cmd->add_option("--draws", args.mbb.draws, "Bootstrap draws B");
  cmd->add_option("--seed", args.mbb.seed, "RNG seed");
  cmd->add_option("--threads", args.mbb.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--out", args.out, "Output file (default stdout)");
  cmd->add_option("--format", args.format, "Report format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  if (with_hac) {
    cmd->add_option("--hac-bandwidth", args.hac_bandwidth,
                    "Bartlett bandwidth s_T (default: block length)");
  }
}

struct SimArgs {
  std::string dgp = "ar1";
  std::string test = "mz";
  qfopt::SimConfig cfg;
  std::vector<int> sample_sizes{240};
  std::vector<int> block_lengths{4};
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  std::string format = "csv";
  SimArgs() { cfg.hac.bandwidth = -1; }  // -1: follow the block length
};

int run_simulate(const SimArgs& args) {
  qfopt::SimConfig cfg = args.cfg;
  cfg.dgp = args.dgp == "ar1"     ? qfopt::DgpFamily::Ar1
            : args.dgp == "adl"   ? qfopt::DgpFamily::Adl11
                                  : qfopt::DgpFamily::Garch11;
  const qfopt::TestKind kind = args.test == "mz"    ? qfopt::TestKind::Mz
                               : args.test == "amz" ? qfopt::TestKind::Amz
                                                    : qfopt::TestKind::Mh;
  cfg.mbb.threads = args.threads;

  // Grid layout mirrors the simulation tables: one row per block length, one
  // column per evaluation sample size.
  std::ostringstream out;
  out << "block_length";
  for (int P : args.sample_sizes) out << ",P=" << P;
  out << '\n';
  for (int l : args.block_lengths) {
    out << "l=" << l;
    for (int P : args.sample_sizes) {
      cfg.P = P;
      cfg.mbb.block_length = l;
      if (args.test == "mh" && args.cfg.hac.bandwidth < 0) {
        cfg.hac.bandwidth = l;
      }
      const auto report = qfopt::run_size_power(cfg, kind, args.seed);
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.9g", report.rejection_rate);
      out << ',' << buf;
    }
    out << '\n';
  }
  write_output(args.out, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-horizon, multi-quantile forecast optimality tests"};
  app.require_subcommand(1);

  TestArgs mz_args, amz_args, mmz_args, mh_args;
  auto* mz_cmd = app.add_subcommand("mz-test", "Mincer-Zarnowitz autocalibration test");
  add_common_options(mz_cmd, mz_args, false);
  auto* amz_cmd = app.add_subcommand("amz-test", "Augmented MZ (information-set) test");
  add_common_options(amz_cmd, amz_args, false);
  auto* mmz_cmd = app.add_subcommand("mmz-test", "Multivariate MZ test");
  add_common_options(mmz_cmd, mmz_args, false);
  auto* mh_cmd = app.add_subcommand("mh-test", "Horizon-monotonicity test");
  add_common_options(mh_cmd, mh_args, true);

  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo size/power study");
  sim_cmd->add_option("--dgp", sim.dgp, "DGP family")->check(CLI::IsMember({"ar1", "adl", "garch"}));
  sim_cmd->add_option("--test", sim.test, "Test under study")->check(CLI::IsMember({"mz", "amz", "mh"}));
  sim_cmd->add_option("--b", sim.cfg.b, "AR parameter b");
  sim_cmd->add_option("--b-tilde", sim.cfg.b_tilde, "Forecast AR parameter b~");
  sim_cmd->add_option("--c", sim.cfg.c, "ADL coefficient c");
  sim_cmd->add_option("--d", sim.cfg.d, "AR parameter of z");
  sim_cmd->add_option("--garch-b", sim.cfg.garch_b, "GARCH (b0,b1,b2,b3)")->expected(4);
  sim_cmd->add_option("--garch-b-tilde", sim.cfg.garch_b_tilde, "Forecast GARCH parameters")->expected(4);
  sim_cmd->add_option("--dof", sim.cfg.dof, "Student-t degrees of freedom");
  sim_cmd->add_option("--p", sim.sample_sizes, "Evaluation sample sizes");
  sim_cmd->add_option("--block-length", sim.block_lengths, "MBB block lengths");
  sim_cmd->add_option("--horizons", sim.cfg.H, "Number of horizons H");
  sim_cmd->add_option("--levels", sim.cfg.levels, "Quantile levels");
  sim_cmd->add_option("--reps", sim.cfg.replications, "Monte Carlo replications");
  sim_cmd->add_option("--nominal-size", sim.cfg.nominal_size, "Nominal size a");
  sim_cmd->add_option("--hac-bandwidth", sim.cfg.hac.bandwidth, "Bartlett bandwidth (mh)");
  sim_cmd->add_flag("--swap-horizons", sim.cfg.swap_horizons, "Relabel h=1 and h=H forecasts");
  sim_cmd->add_option("--seed", sim.seed, "RNG seed");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  sim_cmd->add_option("--out", sim.out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim_cmd->parsed()) return run_simulate(sim);

    const TestArgs& args = mz_cmd->parsed()    ? mz_args
                           : amz_cmd->parsed() ? amz_args
                           : mmz_cmd->parsed() ? mmz_args
                                               : mh_args;
    const qfopt::Panel panel = qfopt::load_panel(args.input);
    qfopt::TestResult result;
    if (mz_cmd->parsed()) {
      result = qfopt::mz_test(std::get<qfopt::EvalSample>(panel), args.mbb);
    } else if (amz_cmd->parsed()) {
      if (const auto* aug = std::get_if<qfopt::AugmentedSample>(&panel)) {
        result = qfopt::amz_test(*aug, args.mbb);
      } else {
        // A panel without z_* columns degenerates to the plain MZ design.
        qfopt::AugmentedSample aug2;
        aug2.base = std::get<qfopt::EvalSample>(panel);
        result = qfopt::amz_test(aug2, args.mbb);
      }
    } else if (mmz_cmd->parsed()) {
      result = qfopt::mmz_test(std::get<qfopt::MultiSeriesSample>(panel), args.mbb);
    } else {
      qfopt::HacConfig hac{args.hac_bandwidth >= 0 ? args.hac_bandwidth
                                                   : args.mbb.block_length};
      if (const auto* multi = std::get_if<qfopt::MultiSeriesSample>(&panel)) {
        result = qfopt::mh_test(*multi, args.mbb, hac);
      } else {
        result = qfopt::mh_test(std::get<qfopt::EvalSample>(panel), args.mbb, hac);
      }
    }
    write_output(args.out, qfopt::emit_report(result, args.format));
    return 0;
  } catch (const std::bad_variant_access&) {
    std::cerr << "error: panel shape does not match the requested test\n";
    return kExitValidation;
  } catch (const qfopt::LoadError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qfopt::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qfopt::SingularDesignError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
