#include "axial/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double number(const std::string& s) {
  std::size_t pos = 0;
  double x = 0;
  try {
    x = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
  return x;
}

// "lo:hi:step" or "x1,x2,..."
std::vector<double> values(const std::string& spec) {
  std::vector<double> out;
  const auto parts = split(spec, ':');
  if (parts.size() == 3) {
    const double lo = number(parts[0]), hi = number(parts[1]), st = number(parts[2]);
    if (!(st > 0) || hi < lo) throw UsageError("bad range '" + spec + "'");
    const long n = std::lround(std::floor((hi - lo) / st + 1e-9));
    for (long k = 0; k <= n; ++k) out.push_back(lo + k * st);
    return out;
  }
  for (const auto& p : split(spec, ',')) out.push_back(number(p));
  if (out.empty()) throw UsageError("empty value list");
  return out;
}

axial::Region region(const std::string& spec) {
  const auto p = split(spec, ',');
  if (p.size() != 4) throw UsageError("region needs umin,umax,vmin,vmax");
  return {number(p[0]), number(p[1]), number(p[2]), number(p[3])};
}

void write(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty())
    std::cout << text;
  else
    write(out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axial curvature lines of surfaces in R^4"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  axial::RunConfig cfg;
  std::string region_spec, a_spec, eps_spec, samples_spec;
  app.add_option("--family", cfg.family, "alpha_a | alpha_eps | whitney | normal_form | custom");
  app.add_option("--a", cfg.a, "family parameter a");
  app.add_option("--eps", cfg.eps, "deformation parameter");
  app.add_option("--b", cfg.b, "normal form parameter b");
  app.add_option("--map", cfg.map, "custom map: four polynomials in u, v separated by commas");
  app.add_option("--region", region_spec, "umin,umax,vmin,vmax");
  app.add_option("--grid", cfg.grid, "search grid (>= 16)");
  app.add_option("--out", cfg.out, "output file (portrait: path prefix)");
  app.add_option("--threads", cfg.threads, "worker threads");

  auto* analyze = app.add_subcommand("analyze", "axiumbilics, types, indices and critical points (JSON)");
  auto* portrait = app.add_subcommand("portrait", "streamlines and separatrices (SVG + CSV + JSON summary)");
  portrait->add_option("--seeds", cfg.seeds, "seed grid per axis");
  auto* scan = app.add_subcommand("scan", "axiumbilic counts over an (a, eps) grid (CSV)");
  scan->add_option("--a-values", a_spec, "lo:hi:step or comma list");
  scan->add_option("--eps-values", eps_spec, "lo:hi:step or comma list");
  auto* verify = app.add_subcommand("verify", "exact checks of the resolution polynomials (JSON)");
  bool all = false;
  verify->add_flag("--all", all, "run every claim (default)");
  verify->add_option("--claim", cfg.claims, "claim id; repeatable");
  verify->add_option("--samples", samples_spec, "comma list of rational values of a");
  auto* formsc = app.add_subcommand("forms", "first/second forms, frame and quartic at a point (JSON)");
  formsc->add_option("--u", cfg.u);
  formsc->add_option("--v", cfg.v);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!region_spec.empty()) cfg.region = region(region_spec);
    if (!samples_spec.empty()) cfg.samples = split(samples_spec, ',');
    axial::validate(cfg);
    if (*analyze) {
      cfg.command = "analyze";
      emit(cfg.out, axial::dump(axial::analyze(cfg)));
    } else if (*formsc) {
      cfg.command = "forms";
      emit(cfg.out, axial::dump(axial::forms(cfg)));
    } else if (*scan) {
      cfg.command = "scan";
      cfg.a_values = a_spec.empty() ? std::vector<double>{-9, -7.8, -7, 0, 7, 7.8, 9} : values(a_spec);
      cfg.eps_values = eps_spec.empty() ? std::vector<double>{-0.05, 0.05} : values(eps_spec);
      emit(cfg.out, axial::scan_table(cfg));
    } else if (*verify) {
      cfg.command = "verify";
      if (all) cfg.claims.clear();
      emit(cfg.out, axial::dump(axial::verify(cfg)));
    } else if (*portrait) {
      cfg.command = "portrait";
      if (cfg.out.empty()) throw UsageError("portrait needs --out PREFIX");
      const auto p = axial::portrait(cfg);
      write(cfg.out + ".svg", p.svg);
      write(cfg.out + ".csv", p.csv);
      write(cfg.out + ".json", axial::dump(p.summary));
      std::cout << axial::dump(p.summary);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", e.what()}, {"command", cfg.command}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
