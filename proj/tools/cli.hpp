#pragma once

// Command implementations for the finosc tool. Kept in a header so the test
// suite can drive `run` in-process.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finosc/finosc.hpp"
#include "verify_suite.hpp"

namespace finosc::cli {

struct RunConfig {
  int d = 21;
  std::string out;  ///< empty: stdout
  std::string format = "csv";
};

/// Header plus rows of preformatted cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Shortest-ish round-trip text: 17 significant digits, '.' decimal point.
inline std::string num(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

inline std::string num(int x) { return std::to_string(x); }

inline std::string to_csv(const Table& t) {
  std::string s;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += ',';
      s += cells[i];
    }
    s += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return s;
}

/// Polyline plot of every numeric column against the first one.
inline std::string to_svg(const Table& t) {
  constexpr double W = 800, H = 500, margin = 50;
  auto parse = [](const std::string& c, double& v) {
    const auto r = std::from_chars(c.data(), c.data() + c.size(), v);
    return r.ec == std::errc() && r.ptr == c.data() + c.size();
  };
  const std::size_t ncol = t.header.size();
  std::vector<std::vector<double>> cols(ncol);
  std::vector<bool> numeric(ncol, true);
  for (const auto& r : t.rows)
    for (std::size_t c = 0; c < ncol; ++c) {
      double v = 0;
      if (!parse(r[c], v)) numeric[c] = false;
      cols[c].push_back(v);
    }
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (std::size_t c = 1; c < ncol; ++c) {
    if (!numeric[c]) continue;
    for (double v : cols[c]) {
      if (first) ymin = ymax = v, first = false;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!cols.empty() && !cols[0].empty()) {
    xmin = *std::min_element(cols[0].begin(), cols[0].end());
    xmax = *std::max_element(cols[0].begin(), cols[0].end());
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (W - 2 * margin); };
  auto sy = [&](double y) { return H - margin - (y - ymin) / (ymax - ymin) * (H - 2 * margin); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" width=\"800\" height=\"500\">\n";
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << W - 2 * margin << "\" height=\""
     << H - 2 * margin << "\" fill=\"none\" stroke=\"#888\"/>\n";
  int series = 0;
  for (std::size_t c = 1; c < ncol; ++c) {
    if (!numeric[c]) continue;
    const char* color = colors[series % 7];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < cols[c].size(); ++i) os << (i ? " " : "") << sx(cols[0][i]) << ',' << sy(cols[c][i]);
    os << "\"/>\n";
    os << "<text x=\"" << W - margin - 120 << "\" y=\"" << margin + 15 + 15 * series << "\" fill=\"" << color
       << "\" font-size=\"12\">" << t.header[c] << "</text>\n";
    ++series;
  }
  os << "</svg>\n";
  return os.str();
}

/// Writes through a temporary file and a rename so readers never see a partial file.
inline void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    if (!f.flush()) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, target);
}

inline void emit(const RunConfig& cfg, const Table& t, std::ostream& out) {
  const std::string body = cfg.format == "svg" ? to_svg(t) : to_csv(t);
  if (cfg.out.empty())
    out << body;
  else
    write_atomic(cfg.out, body);
}

inline Table cmd_table1(const RunConfig& cfg, std::ostream& err) {
  const Lattice lat(cfg.d);
  if (cfg.d != 21) err << "warning: reference values for this grid are at d=21; computing d=" << cfg.d << '\n';
  const CoherentFrame frame(lat);
  Table t{{"alpha_idx", "beta_idx", "deviation"}, {}};
  for (const Table1Entry& e : table1(frame)) t.rows.push_back({num(e.alpha_idx), num(e.beta_idx), num(e.deviation)});
  return t;
}

inline Table cmd_spectrum(const RunConfig& cfg, const std::string& method) {
  const Lattice lat(cfg.d);
  const SpectralBasis b = method == "harper" ? harper_basis(lat) : frame_basis(lat);
  Table t{{"m", "eigenvalue", "parity", "alternations", "fourier_index"}, {}};
  for (int m = 0; m < b.size(); ++m) {
    const BasisLabel& l = b.label(m);
    t.rows.push_back({num(m), num(b.value(m)), to_string(l.parity), num(l.alternations), num(l.fourier_index)});
  }
  return t;
}

inline Table cmd_compare(const RunConfig& cfg, bool normalize_ladder) {
  const Lattice lat(cfg.d);
  const CoherentFrame frame(lat);
  const DeviationReport rep =
      deviation_report(frame_basis(lat), harper_basis(lat), ladder_states(frame, lat.dim()), normalize_ladder);
  Table t{{"m", "delta_f", "delta_h", "delta_m", "delta_r"}, {}};
  for (const DeviationRow& r : rep.rows)
    t.rows.push_back({num(r.m), num(r.delta_f), num(r.delta_h), num(r.delta_m), num(r.delta_r)});
  return t;
}

/// Parsed `--signal`: the discrete samples and the matching function on the line.
struct TestSignal {
  Signal samples;
  std::function<double(double)> continuous;
};

inline TestSignal parse_signal(const Lattice& lat, const std::string& text) {
  if (text == "rect") {
    const double edge = lat.step();
    return {rectangular_signal(lat), [edge](double x) { return std::abs(x) <= edge ? 1.0 : 0.0; }};
  }
  const std::string prefix = "gauss:";
  if (text.rfind(prefix, 0) == 0) {
    double kappa = 0.0;
    const char* b = text.data() + prefix.size();
    const char* e = text.data() + text.size();
    const auto r = std::from_chars(b, e, kappa);
    if (r.ec != std::errc() || r.ptr != e || !(kappa > 0.0))
      throw std::invalid_argument("bad gaussian parameter in signal '" + text + "'");
    // g_kappa(n sqrt(delta)) is the periodization of exp(-kappa x^2/2)
    return {gaussian_signal(lat, kappa), [kappa](double x) { return std::exp(-0.5 * kappa * x * x); }};
  }
  throw std::invalid_argument("unknown signal '" + text + "' (expected rect or gauss:<kappa>)");
}

struct FrftOptions {
  double alpha = 0.5;
  std::string signal = "rect";
  std::string method = "frame";
  bool oracle = false;
};

inline Table cmd_frft(const RunConfig& cfg, const FrftOptions& opt, std::ostream& err) {
  const Lattice lat(cfg.d);
  const TestSignal sig = parse_signal(lat, opt.signal);
  std::vector<std::pair<std::string, Signal>> outputs;
  if (opt.method == "frame" || opt.method == "both")
    outputs.emplace_back("frame", apply_frft(frft_kernel(frame_basis(lat), opt.alpha), sig.samples));
  if (opt.method == "harper" || opt.method == "both")
    outputs.emplace_back("harper", apply_frft(frft_kernel(harper_basis(lat), opt.alpha), sig.samples));

  Table t{{"n", "in_re"}, {}};
  for (const auto& [name, _] : outputs) {
    const std::string p = outputs.size() == 1 ? "out" : name;
    t.header.push_back(p + "_re");
    t.header.push_back(p + "_im");
  }
  std::optional<Signal> oracle;
  if (opt.oracle) {
    oracle = continuous_frft_oracle(sig.continuous, opt.alpha, lat);
    t.header.push_back("oracle_re");
    t.header.push_back("oracle_im");
    for (const auto& [name, out] : outputs)
      err << "max |" << name << " - oracle| = " << num(max_abs_distance(out, *oracle)) << '\n';
  }
  for (int n = -lat.half(); n <= lat.half(); ++n) {
    std::vector<std::string> row{num(n), num(sig.samples[n].real())};
    for (const auto& [_, out] : outputs) {
      row.push_back(num(out[n].real()));
      row.push_back(num(out[n].imag()));
    }
    if (oracle) {
      row.push_back(num((*oracle)[n].real()));
      row.push_back(num((*oracle)[n].imag()));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Runs the invariant suite at cfg.d, 5 and 7; returns the number of failures.
inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<int> dims{cfg.d};
  for (int extra : {5, 7})
    if (extra != cfg.d) dims.push_back(extra);
  int failures = 0, total = 0;
  for (int d : dims)
    for (const Check& c : verify_dimension(d)) {
      ++total;
      failures += !c.ok();
      out << (c.ok() ? "PASS" : "FAIL") << "  d=" << c.d << "  " << c.name << "  value=" << num(c.value)
          << "  tol=" << num(c.tol) << '\n';
    }
  out << (total - failures) << '/' << total << " invariants passed\n";
  return failures;
}

/// Full command line. Exit codes: 0 success, 1 verification or runtime
/// failure, 2 usage or configuration error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Finite oscillator tools: coherent-state tables, spectra, basis comparisons, fractional transforms"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--d", cfg.d, "odd lattice dimension >= 5")->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}))->capture_default_str();
  };
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  common(verify);
  CLI::App* t1 = app.add_subcommand("table1", "continuous vs discrete coherent states");
  common(t1);
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues and labels of a basis");
  common(spectrum);
  std::string method = "frame";
  spectrum->add_option("--method", method, "frame or harper")->check(CLI::IsMember({"frame", "harper"}))->capture_default_str();
  CLI::App* cmp = app.add_subcommand("compare", "deviation of finite bases from sampled Hermite-Gaussians");
  common(cmp);
  bool normalize = false;
  cmp->add_flag("--normalize-ladder", normalize, "normalize ladder states before comparing");
  CLI::App* fr = app.add_subcommand("frft", "fractional Fourier transform of a test signal");
  common(fr);
  FrftOptions fo;
  fr->add_option("--alpha", fo.alpha, "transform order")->capture_default_str();
  fr->add_option("--signal", fo.signal, "rect or gauss:<kappa>")->capture_default_str();
  fr->add_option("--method", fo.method, "frame, harper or both")
      ->check(CLI::IsMember({"frame", "harper", "both"}))
      ->capture_default_str();
  fr->add_flag("--oracle", fo.oracle, "add the continuous transform by Hermite expansion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    (void)Lattice(cfg.d);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << " (--d must be an odd integer >= 5)\n";
    return 2;
  }

  try {
    if (verify->parsed()) {
      std::ostringstream report;
      const int failures = cmd_verify(cfg, report);
      if (cfg.out.empty())
        out << report.str();
      else
        write_atomic(cfg.out, report.str());
      return failures == 0 ? 0 : 1;
    }
    if (t1->parsed()) emit(cfg, cmd_table1(cfg, err), out);
    if (spectrum->parsed()) emit(cfg, cmd_spectrum(cfg, method), out);
    if (cmp->parsed()) emit(cfg, cmd_compare(cfg, normalize), out);
    if (fr->parsed()) emit(cfg, cmd_frft(cfg, fo, err), out);
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace finosc::cli
