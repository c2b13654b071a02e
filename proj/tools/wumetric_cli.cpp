// Command-line front end: single evaluations as JSON, parameter scans as
// CSV, the minimal-ellipsoid fit (optionally with an SVG figure), and the
// verification suites. Exit codes: 0 success, 1 verification failure,
// 2 parse error, 3 domain violation, 4 numerical infeasibility.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wumetric/json_io.hpp"
#include "wumetric/svg_fit.hpp"

namespace {

using namespace wumetric;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CVec parse_vector(const std::string& text, int n) {
  std::vector<Complex> entries;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("vector entry '" + pair + "' is not 're,im'");
    size_t used_re = 0, used_im = 0;
    const std::string re_s = pair.substr(0, comma);
    const std::string im_s = pair.substr(comma + 1);
    double re, im;
    try {
      re = std::stod(re_s, &used_re);
      im = std::stod(im_s, &used_im);
    } catch (const std::exception&) {
      throw std::invalid_argument("vector entry '" + pair + "' is not numeric");
    }
    if (used_re != re_s.size() || used_im != im_s.size())
      throw std::invalid_argument("vector entry '" + pair + "' has trailing characters");
    entries.emplace_back(re, im);
  }
  if (static_cast<int>(entries.size()) != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " vector entries, got " +
                                std::to_string(entries.size()));
  CVec v(n);
  for (int i = 0; i < n; ++i) v[i] = entries[i];
  return v;
}

struct GridAxis {
  std::string name;
  std::vector<double> values;
};

/// Grid spec: semicolon-separated axes, each either a comma list
/// ("m=0.1,0.25") or a range "p=0.1:0.9:5" (start:stop:count, inclusive).
std::vector<GridAxis> parse_grid(const std::string& text) {
  std::vector<GridAxis> axes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("grid axis '" + item + "' is missing '='");
    GridAxis axis;
    axis.name = item.substr(0, eq);
    const std::string spec = item.substr(eq + 1);
    if (spec.find(':') != std::string::npos) {
      double start, stop;
      int count;
      if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3 || count < 1)
        throw std::invalid_argument("grid range '" + spec + "' is not start:stop:count");
      for (int i = 0; i < count; ++i)
        axis.values.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
    } else if (!spec.empty()) {
      std::stringstream vs(spec);
      std::string num;
      while (std::getline(vs, num, ',')) {
        size_t used = 0;
        double v;
        try {
          v = std::stod(num, &used);
        } catch (const std::exception&) {
          throw std::invalid_argument("grid value '" + num + "' is not numeric");
        }
        if (used != num.size())
          throw std::invalid_argument("grid value '" + num + "' has trailing characters");
        axis.values.push_back(v);
      }
    }
    axes.push_back(std::move(axis));
  }
  return axes;
}

std::vector<double> axis_values(const std::vector<GridAxis>& axes, const std::string& name,
                                std::vector<double> fallback) {
  for (const GridAxis& a : axes)
    if (a.name == name) return a.values;
  return fallback;
}

int run_kobayashi(double m, int n, double p, const std::string& v_text) {
  const EggParams params(n, m);
  const CVec v = parse_vector(v_text, n);
  const KobayashiBreakdown breakdown = kobayashi_axis(params, p, v, /*with_crossover=*/p > 0.0);
  json out = to_json(breakdown);
  out["m"] = m;
  out["n"] = n;
  out["p"] = p;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_wu(double m, int n, const std::string& z_text) {
  const EggParams params(n, m);
  const CVec z = parse_vector(z_text, n);
  const HermitianForm form = wu_general(params, z);
  json out = to_json(form);
  out["m"] = m;
  out["n"] = n;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_fit(double m, int n, double p, int count, const std::string& svg_path) {
  const EggParams params(n, m);
  const EllipsoidFit fit = fit_min_volume_ellipsoid(params, p, count);
  const double r1_ref = 1.0 / std::pow(1.0 - p * p, 2.0);
  const double r2_ref = 1.0 / (1.0 - std::pow(p, 2.0 * m));
  json out = to_json(fit);
  out["r1_closed_form"] = r1_ref;
  out["r2_closed_form"] = r2_ref;
  out["r1_rel_error"] = std::abs(fit.r1 - r1_ref) / r1_ref;
  out["r2_rel_error"] = std::abs(fit.r2 - r2_ref) / r2_ref;
  if (!svg_path.empty()) {
    const auto samples = indicatrix_boundary(params, p, std::min(count, 1024));
    std::ofstream svg(svg_path);
    if (!svg) throw std::invalid_argument("cannot open SVG output path: " + svg_path);
    svg << render_fit_svg(params, p, fit, samples);
    out["svg"] = svg_path;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& format) {
  VerifyConfig cfg;
  cfg.seed = seed;
  std::vector<CheckResult> results;
  if (suite == "domain")
    results = verify_domain(cfg);
  else if (suite == "kobayashi")
    results = verify_kobayashi(cfg);
  else if (suite == "wu")
    results = verify_wu(cfg);
  else if (suite == "curvature")
    results = verify_curvature(cfg);
  else if (suite == "all")
    results = verify_all(cfg);
  else
    throw std::invalid_argument("unknown suite: " + suite);
  bool all_pass = true;
  if (format == "json") {
    std::cout << to_json(results).dump(2) << "\n";
    for (const CheckResult& r : results) all_pass = all_pass && r.passed;
  } else if (format == "csv") {
    std::printf("name,passed,margin,details\n");
    for (const CheckResult& r : results) {
      all_pass = all_pass && r.passed;
      std::string details = r.details;
      for (char& c : details)
        if (c == ',') c = ';';
      std::printf("%s,%d,%s,%s\n", r.name.c_str(), r.passed ? 1 : 0, fmt17(r.margin).c_str(),
                  details.c_str());
    }
  } else {
    for (const CheckResult& r : results) {
      all_pass = all_pass && r.passed;
      std::printf("%s %-34s margin=%s :: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                  fmt17(r.margin).c_str(), r.details.c_str());
    }
    std::printf("%s: %zu checks\n", all_pass ? "ALL PASS" : "FAILURES PRESENT", results.size());
  }
  return all_pass ? 0 : 1;
}

int run_scan(const std::string& quantity, const std::string& grid_text) {
  const auto axes = parse_grid(grid_text);
  const std::vector<double> ms = axis_values(axes, "m", {0.25});
  const std::vector<double> ns_d = axis_values(axes, "n", {2});
  const std::vector<double> ps = axis_values(axes, "p", {0.5});
  const std::vector<double> dirs_d = axis_values(axes, "dirs", {8});
  std::vector<int> ns;
  for (double d : ns_d) ns.push_back(static_cast<int>(d));
  const int dir_count = dirs_d.empty() ? 0 : static_cast<int>(dirs_d.front());

  if (quantity == "hsc" || quantity == "kobayashi_value") {
    std::printf("m,n,p,dir,value\n");
    for (const double m : ms)
      for (const int n : ns) {
        const EggParams params(n, m);
        const auto directions = scan_directions(n, dir_count);
        for (const double p : ps)
          for (int d = 0; d < dir_count; ++d) {
            double value;
            if (quantity == "hsc") {
              value = hsc_quotient(curvature_axis_closed_form(params, p),
                                   wu_axis(params, p).h, directions[d]);
            } else {
              value = kobayashi_axis(params, p, directions[d]).value;
            }
            std::printf("%s,%d,%s,%d,%s\n", fmt17(m).c_str(), n, fmt17(p).c_str(), d,
                        fmt17(value).c_str());
          }
      }
    return 0;
  }
  if (quantity == "wu_entries") {
    if (ns.size() != 1)
      throw std::invalid_argument("wu_entries scan requires a single n in the grid");
    const int n = ns[0];
    std::string header = "m,n,p";
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        header += ",h" + std::to_string(i) + std::to_string(j) + "_re,h" + std::to_string(i) +
                  std::to_string(j) + "_im";
    std::printf("%s\n", header.c_str());
    for (const double m : ms) {
      const EggParams params(n, m);
      for (const double p : ps) {
        const HermitianForm form = wu_axis(params, p);
        std::string row = fmt17(m) + "," + std::to_string(n) + "," + fmt17(p);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            row += "," + fmt17(form.h(i, j).real()) + "," + fmt17(form.h(i, j).imag());
        std::printf("%s\n", row.c_str());
      }
    }
    return 0;
  }
  throw std::invalid_argument("unknown scan quantity: " + quantity);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariant metrics on pseudo-egg domains"};
  app.require_subcommand(1);

  double m = 0.25, p = 0.5;
  int n = 2, count = 4096;
  std::string v_text, z_text, suite = "all", grid_text, svg_path, format = "text";
  std::string quantity = "hsc";
  std::uint64_t seed = 20260809ULL;

  auto* cmd_k = app.add_subcommand("kobayashi", "Kobayashi metric at an axis point");
  cmd_k->add_option("--m", m)->required();
  cmd_k->add_option("--n", n)->required();
  cmd_k->add_option("--p", p)->required();
  cmd_k->add_option("--v", v_text, "tangent vector re,im;re,im;...")->required();

  auto* cmd_w = app.add_subcommand("wu", "Wu metric matrix at a point");
  cmd_w->add_option("--m", m)->required();
  cmd_w->add_option("--n", n)->required();
  cmd_w->add_option("--z", z_text, "point re,im;re,im;...")->required();

  auto* cmd_f = app.add_subcommand("fit", "minimal-volume ellipsoid fit at an axis point");
  cmd_f->add_option("--m", m)->required();
  cmd_f->add_option("--n", n)->required();
  cmd_f->add_option("--p", p)->required();
  cmd_f->add_option("--count", count);
  cmd_f->add_option("--emit-svg", svg_path);

  auto* cmd_v = app.add_subcommand("verify", "run an invariant suite over the standard grid");
  cmd_v->add_option("--suite", suite)
      ->check(CLI::IsMember({"domain", "kobayashi", "wu", "curvature", "all"}));
  cmd_v->add_option("--seed", seed);
  cmd_v->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));

  auto* cmd_s = app.add_subcommand("scan", "CSV sweep of a quantity over a grid");
  cmd_s->add_option("--quantity", quantity)
      ->check(CLI::IsMember({"hsc", "wu_entries", "kobayashi_value"}));
  cmd_s->add_option("--grid", grid_text, "e.g. \"m=0.1,0.25;n=2;p=0.1:0.9:9;dirs=16\"");
  cmd_s->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_k->parsed()) return run_kobayashi(m, n, p, v_text);
    if (cmd_w->parsed()) return run_wu(m, n, z_text);
    if (cmd_f->parsed()) return run_fit(m, n, p, count, svg_path);
    if (cmd_v->parsed()) return run_verify(suite, seed, format);
    if (cmd_s->parsed()) return run_scan(quantity, grid_text);
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain violation: " << e.what() << "\n";
    return 3;
  } catch (const wumetric::InfeasibleError& e) {
    std::cerr << "numerical infeasibility: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
