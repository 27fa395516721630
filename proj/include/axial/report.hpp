#pragma once

#include "axial/field.hpp"
#include "axial/portrait.hpp"
#include "axial/umbilic.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace axial {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string command;
  std::string family = "alpha_a";  // alpha_a | alpha_eps | whitney | normal_form | custom
  double a = 0.0, eps = 0.0, b = 0.0;
  std::string map;  // polynomial components for family "custom"
  std::optional<Region> region;
  int grid = 64;
  int threads = 1;
  std::string out;
  // forms
  double u = 0.1, v = 0.1;
  // scan
  std::vector<double> a_values, eps_values;
  // verify
  std::vector<std::string> claims;
  std::vector<std::string> samples;  // rationals for the claim checks
  // portrait
  int seeds = 6;
};

// Throws std::invalid_argument on inconsistent settings.
void validate(const RunConfig& cfg);

AxialFieldPtr field_for(const RunConfig& cfg);
// Alpha families: |u|, |v| < counting_window(a); other families: [-0.5, 0.5]^2 (normal form [-1, 1]^2).
Region default_region(const RunConfig& cfg);
Region region_for(const RunConfig& cfg);

nlohmann::json analyze(const RunConfig& cfg);
nlohmann::json forms(const RunConfig& cfg);
std::string scan_table(const RunConfig& cfg);
nlohmann::json verify(const RunConfig& cfg);

struct PortraitOutput {
  std::string svg, csv;
  nlohmann::json summary;
};
PortraitOutput portrait(const RunConfig& cfg);

// Largest relative differences between the closed forms of alpha^a and the generic pipeline over
// `samples` uniform points of (0, 0.5)^2.
struct CrossValidation {
  double a = 0.0;
  int samples = 0;
  double forms = 0.0;   // E, F, G, N1, N2, barred second form
  double abar = 0.0;    // normalized (a0bar, a1bar)
  double normalization_max = 0.0;  // largest value of the (negative) normalization factor
};
CrossValidation cross_validate_closed_forms(double a, int samples, unsigned long long seed = 20240601ULL);

nlohmann::json to_json(const AxiumbilicRecord& r);
std::string dump(const nlohmann::json& j);  // two-space indent, trailing newline

}  // namespace axial
