#include "qfopt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qfopt/sim.hpp"

namespace qfopt {

namespace {

using nlohmann::json;

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim whitespace
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_double(const std::string& s, int line_no, const std::string& col) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw LoadError("non-finite value in column " + col +
                                           " at line " + std::to_string(line_no));
    return v;
  } catch (const LoadError&) {
    throw;
  } catch (const std::exception&) {
    throw LoadError("cannot parse '" + s + "' in column " + col + " at line " +
                    std::to_string(line_no));
  }
}

long parse_int(const std::string& s, int line_no, const std::string& col) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw LoadError("cannot parse '" + s + "' in column " + col + " at line " +
                    std::to_string(line_no));
  }
}

struct RecordKey {
  std::string series;
  long t;
  double tau;
  int h;
  bool operator<(const RecordKey& o) const {
    return std::tie(series, t, tau, h) < std::tie(o.series, o.t, o.tau, o.h);
  }
  std::string str() const {
    return "(series_id=" + series + ", t=" + std::to_string(t) +
           ", tau=" + fmt9(tau) + ", h=" + std::to_string(h) + ")";
  }
};

struct Record {
  double y;
  double forecast;
  std::vector<double> z;
};

}  // namespace

Panel load_panel_stream(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw LoadError(name + ": empty file");
  const auto header = split_csv_line(line);

  std::map<std::string, int> col;
  std::vector<int> z_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i].rfind("z_", 0) == 0) {
      z_cols.push_back(static_cast<int>(i));
    } else {
      col[header[i]] = static_cast<int>(i);
    }
  }
  for (const char* required : {"t", "y", "tau", "h", "forecast"}) {
    if (!col.count(required)) {
      throw LoadError(name + ": missing required column '" + std::string(required) + "'");
    }
  }
  const bool has_series = col.count("series_id") > 0;
  const int q = static_cast<int>(z_cols.size());

  std::map<RecordKey, Record> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < header.size()) {
      throw LoadError(name + ": too few fields at line " + std::to_string(line_no));
    }
    RecordKey key;
    key.series = has_series ? fields[col["series_id"]] : "0";
    key.t = parse_int(fields[col["t"]], line_no, "t");
    key.tau = parse_double(fields[col["tau"]], line_no, "tau");
    key.h = static_cast<int>(parse_int(fields[col["h"]], line_no, "h"));
    if (!(key.tau > 0.0 && key.tau < 1.0)) {
      throw LoadError(name + ": tau outside (0,1) at " + key.str());
    }
    if (key.h < 1) throw LoadError(name + ": nonpositive horizon at " + key.str());
    Record rec;
    rec.y = parse_double(fields[col["y"]], line_no, "y");
    rec.forecast = parse_double(fields[col["forecast"]], line_no, "forecast");
    for (int zc : z_cols) rec.z.push_back(parse_double(fields[zc], line_no, header[zc]));
    if (!records.emplace(key, std::move(rec)).second) {
      throw LoadError(name + ": duplicate key " + key.str());
    }
  }
  if (records.empty()) throw LoadError(name + ": no data rows");

  // Per-series grids.
  std::set<std::string> series_ids;
  std::set<double> taus;
  std::set<int> hs;
  std::set<long> ts;
  for (const auto& [key, rec] : records) {
    series_ids.insert(key.series);
    taus.insert(key.tau);
    hs.insert(key.h);
    ts.insert(key.t);
  }
  if (series_ids.size() > 1 && q > 0) {
    throw LoadError(name + ": augmenting z_* columns are not supported with multiple series");
  }

  const std::vector<double> levels(taus.begin(), taus.end());
  const std::vector<int> horizons(hs.begin(), hs.end());
  const std::vector<long> times(ts.begin(), ts.end());
  const int P = static_cast<int>(times.size());
  const int K = static_cast<int>(levels.size());
  const int H = static_cast<int>(horizons.size());

  MultiSeriesSample multi;
  std::vector<Matrix> z(H, Matrix(P, q));
  for (const auto& sid : series_ids) {
    EvalSample es;
    es.levels = levels;
    es.horizons = horizons;
    es.y.resize(P);
    es.forecasts.assign(K, std::vector<Vector>(H, Vector(P)));
    std::vector<bool> have_y(P, false);
    for (int ti = 0; ti < P; ++ti) {
      for (int k = 0; k < K; ++k) {
        for (int h = 0; h < H; ++h) {
          const RecordKey key{sid, times[ti], levels[k], horizons[h]};
          const auto it = records.find(key);
          if (it == records.end()) {
            throw LoadError(name + ": incomplete grid, missing " + key.str());
          }
          const Record& rec = it->second;
          if (!have_y[ti]) {
            es.y[ti] = rec.y;
            have_y[ti] = true;
          } else if (es.y[ti] != rec.y) {
            throw LoadError(name + ": inconsistent y at " + key.str());
          }
          es.forecasts[k][h][ti] = rec.forecast;
          if (q > 0) {
            if (k == 0) {
              for (int j = 0; j < q; ++j) z[h](ti, j) = rec.z[j];
            } else {
              for (int j = 0; j < q; ++j) {
                if (z[h](ti, j) != rec.z[j]) {
                  throw LoadError(name + ": inconsistent z_* values at " + key.str());
                }
              }
            }
          }
        }
      }
    }
    es.validate();
    multi.series.push_back(std::move(es));
    multi.names.push_back(sid);
  }

  if (multi.G() > 1) {
    multi.validate();
    return multi;
  }
  if (q > 0) {
    AugmentedSample aug;
    aug.base = std::move(multi.series.front());
    aug.z = std::move(z);
    aug.validate();
    return aug;
  }
  return std::move(multi.series.front());
}

Panel load_panel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path + "'");
  return load_panel_stream(in, path);
}

namespace {

void emit_series_rows(std::ostringstream& out, const EvalSample& es,
                      const std::string& sid, bool with_series,
                      const std::vector<Matrix>* z) {
  for (int ti = 0; ti < es.P(); ++ti) {
    for (int k = 0; k < es.K(); ++k) {
      for (int h = 0; h < es.H(); ++h) {
        if (with_series) out << sid << ',';
        out << ti << ',' << fmt9(es.y[ti]) << ',' << fmt9(es.levels[k]) << ','
            << es.horizons[h] << ',' << fmt9(es.forecasts[k][h][ti]);
        if (z) {
          for (int j = 0; j < (*z)[h].cols(); ++j) out << ',' << fmt9((*z)[h](ti, j));
        }
        out << '\n';
      }
    }
  }
}

}  // namespace

std::string emit_panel(const Panel& panel) {
  std::ostringstream out;
  if (const auto* es = std::get_if<EvalSample>(&panel)) {
    out << "t,y,tau,h,forecast\n";
    emit_series_rows(out, *es, "0", false, nullptr);
  } else if (const auto* aug = std::get_if<AugmentedSample>(&panel)) {
    out << "t,y,tau,h,forecast";
    for (int j = 1; j <= aug->q(); ++j) out << ",z_" << j;
    out << '\n';
    emit_series_rows(out, aug->base, "0", false, &aug->z);
  } else {
    const auto& multi = std::get<MultiSeriesSample>(panel);
    out << "series_id,t,y,tau,h,forecast\n";
    for (int i = 0; i < multi.G(); ++i) {
      const std::string sid = multi.names.empty() ? std::to_string(i) : multi.names[i];
      emit_series_rows(out, multi.series[i], sid, true, nullptr);
    }
  }
  return out.str();
}

namespace {

std::string row_label(const ContributionKey& key, bool with_series, bool horizon_pair) {
  std::string label;
  if (with_series) label += key.series + ":";
  if (horizon_pair) {
    label += "h=" + std::to_string(key.h) + "<h=" + std::to_string(key.h2);
  } else {
    label += "h=" + std::to_string(key.h);
  }
  return label;
}

}  // namespace

std::string emit_report(const TestResult& result, const std::string& format) {
  const bool horizon_pair = result.test == "mh";
  bool with_series = false;
  for (const auto& [key, value] : result.contributions) {
    if (key.series != "0") with_series = true;
  }

  if (format == "json") {
    json j;
    j["test"] = result.test;
    j["statistic"] = result.statistic;
    json cvs;
    for (const auto& [level, value] : result.critical_values) cvs[fmt9(level)] = value;
    j["critical_values"] = cvs;
    j["p_value"] = result.p_value;
    j["kappa"] = result.kappa;
    j["P"] = result.P;
    j["config"] = {{"block_length", result.config.block_length},
                   {"draws", result.config.draws},
                   {"seed", result.config.seed}};
    j["retried_draws"] = result.retried_draws;
    json contribs = json::array();
    for (const auto& [key, value] : result.contributions) {
      json c = {{"tau", key.tau}, {"h", key.h}, {"value", value}};
      if (horizon_pair) c["h_longer"] = key.h2;
      if (with_series) c["series"] = key.series;
      contribs.push_back(c);
    }
    j["contributions"] = contribs;
    j["diagnostics"] = result.diagnostics;
    return j.dump(2) + "\n";
  }
  if (format != "csv") throw ConfigError("emit_report: format must be 'json' or 'csv'");

  std::ostringstream out;
  out << "test,stat,cv_90,cv_95,cv_99,p_value,kappa,P,draws,block_length,seed\n";
  out << result.test << ',' << fmt9(result.statistic) << ','
      << fmt9(result.critical_values.at(0.90)) << ','
      << fmt9(result.critical_values.at(0.95)) << ','
      << fmt9(result.critical_values.at(0.99)) << ',' << fmt9(result.p_value) << ','
      << result.kappa << ',' << result.P << ',' << result.config.draws << ','
      << result.config.block_length << ',' << result.config.seed << "\n\n";

  // Contributions matrix: rows per (series, horizon [pair]), columns per tau,
  // with row and column sums reproducing the statistic.
  std::set<double> taus;
  std::set<std::string> labels_seen;
  std::vector<std::string> row_order;
  for (const auto& [key, value] : result.contributions) {
    taus.insert(key.tau);
    const std::string label = row_label(key, with_series, horizon_pair);
    if (labels_seen.insert(label).second) row_order.push_back(label);
  }
  std::map<std::string, std::map<double, double>> cells;
  for (const auto& [key, value] : result.contributions) {
    cells[row_label(key, with_series, horizon_pair)][key.tau] += value;
  }

  out << "contributions";
  for (double tau : taus) out << ",tau=" << fmt9(tau);
  out << ",Sum\n";
  std::map<double, double> col_sum;
  for (const auto& label : row_order) {
    out << label;
    double row_sum = 0.0;
    for (double tau : taus) {
      const auto it = cells[label].find(tau);
      const double v = it == cells[label].end() ? 0.0 : it->second;
      row_sum += v;
      col_sum[tau] += v;
      out << ',' << fmt9(v);
    }
    out << ',' << fmt9(row_sum) << '\n';
  }
  out << "Sum";
  double grand = 0.0;
  for (double tau : taus) {
    grand += col_sum[tau];
    out << ',' << fmt9(col_sum[tau]);
  }
  out << ',' << fmt9(grand) << '\n';
  return out.str();
}

std::string emit_size_power_report(const SizePowerReport& report, const std::string& format) {
  if (format == "json") {
    json j;
    j["rejection_rate"] = report.rejection_rate;
    j["rejections"] = report.rejections;
    j["replications"] = report.replications;
    j["P"] = report.config.P;
    j["block_length"] = report.config.mbb.block_length;
    j["nominal_size"] = report.config.nominal_size;
    j["seed"] = report.seed;
    return j.dump(2) + "\n";
  }
  if (format != "csv") throw ConfigError("emit_size_power_report: bad format");
  std::ostringstream out;
  out << "P,block_length,replications,rejections,rejection_rate,nominal_size,seed\n";
  out << report.config.P << ',' << report.config.mbb.block_length << ','
      << report.replications << ',' << report.rejections << ','
      << fmt9(report.rejection_rate) << ',' << fmt9(report.config.nominal_size) << ','
      << report.seed << '\n';
  return out.str();
}

std::string emit_mz_plotdata(const EvalSample& sample, const QrFit& fit, int k, int h) {
  if (k < 0 || k >= sample.K() || h < 0 || h >= sample.H()) {
    throw ConfigError("emit_mz_plotdata: level or horizon index out of range");
  }
  std::ostringstream out;
  out << "forecast,realization,fitted_line_value,diagonal_value\n";
  const Vector& fc = sample.forecasts[k][h];
  for (int t = 0; t < sample.P(); ++t) {
    const double fitted = fit.coefficients[0] + fit.coefficients[1] * fc[t];
    out << fmt9(fc[t]) << ',' << fmt9(sample.y[t]) << ',' << fmt9(fitted) << ','
        << fmt9(fc[t]) << '\n';
  }
  return out.str();
}

}  // namespace qfopt
