#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "qfopt/qr.hpp"
#include "qfopt/types.hpp"

namespace qfopt {

// Thrown on malformed panel files; the message names the offending
// (series_id, t, tau, h) key where one exists.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Panel = std::variant<EvalSample, AugmentedSample, MultiSeriesSample>;

// Loads a long-format CSV panel: header (series_id?, t, y, tau, h, forecast,
// z_*). Returns an EvalSample for one plain series, an AugmentedSample when
// z_* columns are present, and a MultiSeriesSample for several series.
Panel load_panel(const std::string& path);
Panel load_panel_stream(std::istream& in, const std::string& name);

// Writes a sample back to the long CSV format (round-trips load_panel).
std::string emit_panel(const Panel& panel);

// Report emission: "json" gives one object, "csv" gives a summary table plus
// a contributions matrix with row/column sums. Numbers carry 9 significant
// digits.
std::string emit_report(const TestResult& result, const std::string& format);

std::string emit_size_power_report(const struct SizePowerReport& report,
                                   const std::string& format);

// Scatter data for a Mincer-Zarnowitz plot: columns (forecast, realization,
// fitted_line_value, diagonal_value), one row per observation.
std::string emit_mz_plotdata(const EvalSample& sample, const QrFit& fit, int k, int h);

}  // namespace qfopt
