#include "fracmra/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fracmra/errors.hpp"
#include "fracmra/systems.hpp"

namespace fracmra::cli {
namespace {

using Json = nlohmann::ordered_json;

// nlohmann picks the shortest round-trip form; reports need fixed %.17g.
void write_json(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        write_json(value, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write_json(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

std::string dump(const Json& j) {
  std::string out;
  write_json(j, out);
  out += '\n';
  return out;
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json diagnostics_json(const Diagnostics& d) {
  Json arr = Json::array();
  for (const auto& s : d) arr.push_back(s);
  return arr;
}

Json report_object(const ValidationReport& r) {
  Json j;
  j["convention"] = {{"kernel", "eq-2.3"}, {"c_alpha", complex_json(r.c_alpha)}, {"ell", r.ell}};
  j["alpha"] = r.alpha.alpha();
  j["function"] = r.function;
  j["conditions"] = {
      {"c51",
       {{"constant_estimate", r.condition_51.constant_estimate},
        {"deviation", r.condition_51.deviation},
        {"pass", r.condition_51.pass}}},
      {"c52",
       {{"limit_estimate", r.condition_52.limit_estimate},
        {"monotone_fraction", r.condition_52.monotone_fraction},
        {"pass", r.condition_52.pass}}},
      {"c53", {{"residual", r.condition_53.residual}, {"pass", r.condition_53.pass}}},
  };
  j["riesz"] = {{"A", r.riesz.A}, {"B", r.riesz.B}};
  j["qmf_defect"] = r.qmf_defect;
  j["theta0"] = {{"value", complex_json(r.theta0.value)},
                 {"modulus", r.theta0.modulus},
                 {"pass", r.theta0.pass}};
  j["verdict"] = r.verdict;
  j["diagnostics"] = diagnostics_json(r.diagnostics);
  return j;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

FunctionDescriptor select_scaling(const std::string& selector, const AngleParam& alpha) {
  if (selector.starts_with("on:")) {
    return orthonormalize(make_scaling(selector.substr(3), alpha), alpha);
  }
  return make_scaling(selector, alpha);
}

FunctionDescriptor select_wavelet(const std::string& selector, const AngleParam& alpha) {
  if (selector.starts_with("derived:")) {
    const auto phi = select_scaling(selector.substr(8), alpha);
    const auto on = orthonormality_test(phi, alpha).pass ? phi : orthonormalize(phi, alpha);
    const auto symbol = two_scale_symbol(on, alpha);
    return wavelet_from_filter(symbol.h, on, alpha);
  }
  return make_wavelet(selector, alpha);
}

UniformGrid signal_grid(const RunConfig& c) {
  return UniformGrid::centered(c.domain_half_width, static_cast<std::size_t>(c.grid_n));
}

SampledSignal select_signal(const RunConfig& c) {
  TestSignalSpec spec;
  if (c.signal == "gaussian") {
    spec.kind = TestSignalKind::gaussian;
  } else if (c.signal == "chirp") {
    spec.kind = TestSignalKind::chirp;
    spec.rate = 0.5;
  } else if (c.signal == "rectangle") {
    spec.kind = TestSignalKind::rectangle;
    spec.lo = -1.0;
    spec.hi = 1.0;
  } else if (c.signal == "hermite") {
    spec.kind = TestSignalKind::hermite;
    spec.order = 3;
  } else if (c.signal == "random") {
    spec.kind = TestSignalKind::bandlimited_random;
    spec.scale = 2.0;
    spec.seed = c.seed;
    spec.band_lo = -4.0;
    spec.band_hi = 4.0;
  } else {
    return load_signal(c.signal);
  }
  return make_test_signal(spec, signal_grid(c));
}

std::string profile_csv(const PeriodizationProfile& p) {
  std::string out = "u,g2\n";
  for (std::size_t i = 0; i < p.g2.size(); ++i) {
    out += format_number(p.u_grid.at(i)) + "," + format_number(p.g2[i]) + "\n";
  }
  return out;
}

std::string run_frft(const RunConfig& c) {
  const AngleParam alpha(c.alpha);
  const auto f = select_signal(c);
  auto table = frft_fast(f, alpha);
  if (c.format == OutputFormat::csv) return spectrum_csv(table);
  Json j;
  j["alpha"] = alpha.alpha();
  j["signal"] = c.signal;
  Json u = Json::array(), re = Json::array(), im = Json::array();
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    u.push_back(table.grid.at(i));
    re.push_back(table.values[i].real());
    im.push_back(table.values[i].imag());
  }
  j["u"] = u;
  j["re"] = re;
  j["im"] = im;
  j["diagnostics"] = diagnostics_json(table.diagnostics);
  return dump(j);
}

std::string run_validate(const RunConfig& c, int& code) {
  const AngleParam alpha(c.alpha);
  const auto report = validate_scaling(select_scaling(c.scaling, alpha), alpha, c.tol);
  code = report.verdict ? kExitOk : kExitVerdictFalse;
  return report_json(report);
}

std::string run_orthonormalize(const RunConfig& c, int& code) {
  const AngleParam alpha(c.alpha);
  const auto phi = select_scaling(c.scaling, alpha);
  const auto before = orthonormality_test(phi, alpha, c.tol);
  const auto on = orthonormalize(phi, alpha);
  const auto profile = periodization(on, alpha);
  const auto after = orthonormality_test(on, alpha, profile, c.tol);
  code = after.pass ? kExitOk : kExitVerdictFalse;
  if (c.format == OutputFormat::csv) return profile_csv(profile);
  const auto riesz = riesz_bounds(periodization(phi, alpha));
  Json j;
  j["alpha"] = alpha.alpha();
  j["function"] = phi.name;
  j["before"] = {{"defect", before.defect},
                 {"gram_defect", before.gram_defect},
                 {"riesz", {{"A", riesz.A}, {"B", riesz.B}}},
                 {"pass", before.pass}};
  j["after"] = {{"defect", after.defect},
                {"gram_defect", after.gram_defect},
                {"tail_bound", after.tail_bound},
                {"pass", after.pass}};
  Diagnostics d = before.diagnostics;
  d.insert(d.end(), after.diagnostics.begin(), after.diagnostics.end());
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  j["diagnostics"] = diagnostics_json(d);
  return dump(j);
}

std::string run_gram(const RunConfig& c) {
  const AngleParam alpha(c.alpha);
  const auto phi = select_scaling(c.scaling, alpha);
  const auto g = gram_matrix(phi, alpha);
  Json j;
  j["alpha"] = alpha.alpha();
  j["function"] = phi.name;
  j["method"] = g.method == GramMethod::time_quadrature ? "time" : "frequency";
  j["order"] = g.order;
  j["identity_defect"] = g.identity_defect();
  Json rows = Json::array();
  for (int n = -g.order; n <= g.order; ++n) {
    Json row = Json::array();
    for (int m = -g.order; m <= g.order; ++m) row.push_back(complex_json(g.at(n, m)));
    rows.push_back(row);
  }
  j["entries"] = rows;
  j["diagnostics"] = diagnostics_json(g.diagnostics);
  return dump(j);
}

std::string run_framebounds(const RunConfig& c) {
  const AngleParam alpha(c.alpha);
  const auto psi = select_wavelet(c.wavelet, alpha);
  WaveletAtomGrid grid;
  grid.alpha = alpha;
  const auto est = frame_ratio(psi, alpha, c.trials, c.seed, grid);
  const auto adm = admissibility(psi, alpha);
  Json j;
  j["alpha"] = alpha.alpha();
  j["wavelet"] = c.wavelet;
  j["trials"] = est.trials;
  j["seed"] = est.seed;
  j["A_hat"] = est.A_hat;
  j["B_hat"] = est.B_hat;
  j["per_signal_ratios"] = est.per_signal_ratios;
  j["admissibility"] = {{"value", adm.value}, {"admissible", adm.admissible}};
  Diagnostics d = est.diagnostics;
  d.insert(d.end(), adm.diagnostics.begin(), adm.diagnostics.end());
  j["diagnostics"] = diagnostics_json(d);
  return dump(j);
}

std::string run_report(const RunConfig& c, int& code) {
  const AngleParam alpha(c.alpha);
  const auto phi = select_scaling(c.scaling, alpha);
  const auto report = validate_scaling(phi, alpha, c.tol);
  code = report.verdict ? kExitOk : kExitVerdictFalse;
  const auto profile = periodization(phi, alpha);
  if (c.format == OutputFormat::csv) return profile_csv(profile);
  const auto limit = limit_profile(phi, alpha);
  Json j = report_object(report);
  Json plot;
  plot["periodization"] = {{"u", profile.u_grid.points()}, {"g2", profile.g2}};
  plot["limit"] = {{"u", limit.u_samples}, {"modulus", limit.table}};
  j["plot"] = plot;
  return dump(j);
}

std::string run_cwt(const RunConfig& c) {
  const AngleParam alpha(c.alpha);
  const auto f = select_signal(c);
  const auto psi = select_wavelet(c.wavelet, alpha);
  std::vector<double> a_grid, b_grid;
  for (int i = 0; i <= 24; ++i) a_grid.push_back(std::exp2(-2.0 + 0.25 * i));
  const double half = 0.5 * c.domain_half_width;
  for (int i = 0; i <= 64; ++i) b_grid.push_back(-half + i * half / 32.0);
  const auto table = cwt(f, psi, alpha, a_grid, b_grid);
  if (c.format == OutputFormat::csv) return cwt_csv(table);
  Json j;
  j["alpha"] = alpha.alpha();
  j["a"] = table.a;
  j["b"] = table.b;
  Json re = Json::array(), im = Json::array();
  for (const auto& z : table.coeffs) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  j["re"] = re;
  j["im"] = im;
  j["diagnostics"] = diagnostics_json(table.diagnostics);
  return dump(j);
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void check_config(const RunConfig& c) {
  if (c.grid_n < 256 || !is_power_of_two(c.grid_n)) {
    throw SpecError("grid-n must be a power of two >= 256");
  }
  if (!(c.tol > 0.0)) throw SpecError("tol must be positive");
  if (!(c.domain_half_width > 0.0)) throw SpecError("domain must be positive");
  if (!std::isfinite(c.alpha)) throw SpecError("alpha must be finite");
  if (c.trials < 1) throw SpecError("trials must be positive");
  if (c.command != Command::frft && !AngleParam(c.alpha).generic()) {
    throw SpecialAngleError("this command needs a generic angle (sin alpha != 0)");
  }
}

RunOutcome run(const RunConfig& c) {
  RunOutcome outcome;
  try {
    check_config(c);
    int code = kExitOk;
    switch (c.command) {
      case Command::frft: outcome.artifact = run_frft(c); break;
      case Command::validate: outcome.artifact = run_validate(c, code); break;
      case Command::orthonormalize: outcome.artifact = run_orthonormalize(c, code); break;
      case Command::gram: outcome.artifact = run_gram(c); break;
      case Command::framebounds: outcome.artifact = run_framebounds(c); break;
      case Command::report: outcome.artifact = run_report(c, code); break;
      case Command::cwt: outcome.artifact = run_cwt(c); break;
    }
    if (!c.out_path.empty()) {
      std::ofstream out(c.out_path, std::ios::binary);
      if (!out) throw SpecError("cannot open output file " + c.out_path);
      out << outcome.artifact;
    }
    outcome.exit_code = code;
  } catch (const FormatError& e) {
    outcome.exit_code = kExitFailure;
    outcome.error = error_json(e.kind(), e.what(), e.line());
  } catch (const Error& e) {
    outcome.exit_code = kExitFailure;
    outcome.error = error_json(e.kind(), e.what());
  } catch (const std::exception& e) {
    outcome.exit_code = kExitFailure;
    outcome.error = error_json("InternalError", e.what());
  }
  if (outcome.exit_code == kExitFailure) outcome.artifact.clear();
  return outcome;
}

SampledSignal parse_signal(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw FormatError(1, "empty signal file");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,re,im") throw FormatError(1, "expected header t,re,im");

  std::vector<double> t;
  std::vector<Complex> v;
  std::vector<std::size_t> lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double cols[3];
    std::size_t pos = 0;
    for (int k = 0; k < 3; ++k) {
      const auto end = k < 2 ? line.find(',', pos) : line.size();
      if (end == std::string::npos) {
        throw FormatError(lineno, "line " + std::to_string(lineno) + ": expected 3 columns");
      }
      const std::string field = line.substr(pos, end - pos);
      std::size_t used = 0;
      try {
        cols[k] = std::stod(field, &used);
      } catch (const std::exception&) {
        used = std::string::npos;
      }
      if (used != field.size() || field.empty()) {
        throw FormatError(lineno, "line " + std::to_string(lineno) + ": bad number '" + field + "'");
      }
      pos = end + 1;
    }
    t.push_back(cols[0]);
    v.emplace_back(cols[1], cols[2]);
    lines.push_back(lineno);
  }
  if (t.size() < 2) throw FormatError(lineno, "need at least two samples");
  const double step = t[1] - t[0];
  if (!(step > 0.0)) throw FormatError(lines[1], "line " + std::to_string(lines[1]) + ": t must increase");
  for (std::size_t i = 2; i < t.size(); ++i) {
    const double expected = t[0] + static_cast<double>(i) * step;
    if (std::abs(t[i] - expected) > 1e-9 * std::max(std::abs(step) * static_cast<double>(i), std::abs(expected))) {
      throw FormatError(lines[i], "line " + std::to_string(lines[i]) + ": non-uniform t spacing");
    }
  }
  return {UniformGrid(t[0], step, t.size()), std::move(v)};
}

SampledSignal load_signal(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(0, "cannot open signal file " + path);
  return parse_signal(in);
}

std::string spectrum_csv(const SpectrumTable& table) {
  std::string out = "u,re,im\n";
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    out += format_number(table.grid.at(i)) + "," + format_number(table.values[i].real()) + "," +
           format_number(table.values[i].imag()) + "\n";
  }
  return out;
}

std::string cwt_csv(const CwtTable& table) {
  std::string out = "a,b,re,im\n";
  for (std::size_t ia = 0; ia < table.a.size(); ++ia) {
    for (std::size_t ib = 0; ib < table.b.size(); ++ib) {
      const auto z = table.at(ia, ib);
      out += format_number(table.a[ia]) + "," + format_number(table.b[ib]) + "," +
             format_number(z.real()) + "," + format_number(z.imag()) + "\n";
    }
  }
  return out;
}

std::string report_json(const ValidationReport& report) { return dump(report_object(report)); }

std::string error_json(std::string_view kind, const std::string& message, std::size_t line) {
  Json j;
  j["error"] = std::string(kind);
  j["message"] = message;
  if (line > 0) j["line"] = line;
  return dump(j);
}

}  // namespace fracmra::cli
