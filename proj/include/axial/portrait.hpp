#pragma once

#include "axial/blowup.hpp"
#include "axial/field.hpp"
#include "axial/umbilic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace axial {

enum class FieldSelector { Principal, Mean, AnyRoot };
std::string to_string(FieldSelector f);

enum class Termination { Boundary, Singularity, Axiumbilic, StepLimit, NearSingular };
std::string to_string(Termination t);

struct Streamline {
  int id = 0;
  int branch = 0;
  std::string field;  // principal | mean | separatrix | root
  int source = -1;    // index of the emitting axiumbilic for separatrices
  std::vector<Vec2> points;
  Termination reason = Termination::StepLimit;
  double length() const;
};

struct Exclusion {
  Vec2 center;
  double radius = 5e-3;
  bool critical = false;
};

struct IntegrateOptions {
  double step = 1e-3;
  double max_len = 1.0;
  Region region;
  std::vector<Exclusion> exclusions;
  double ambiguity = 1e-3;  // two candidate roots closer than this stop the line
  double max_turn = 0.2;    // largest accepted change of direction per step
};

// Fixed-step RK4 along a line field. `heading` picks the branch: the first step follows the root nearest to it;
// the root tracked at each stage is the candidate nearest mod pi to the previous direction.
Streamline integrate(const AxialField& field, FieldSelector sel, Vec2 seed, double heading, const IntegrateOptions& opt);

// One streamline per separatrix ray of each classified record, launched 1e-4 from the point.
// The segment inside the exclusion disk follows the linearized ray.
std::vector<Streamline> trace_separatrices(const AxialField& field, const std::vector<AxiumbilicRecord>& records,
                                           const IntegrateOptions& opt, std::vector<std::string>* notices = nullptr);

struct PortraitConfig {
  Region region;
  int seeds = 6;              // seeds per axis
  double step_fraction = 1e-3;
  double length_fraction = 1.0;
  double exclusion = 5e-3;
  int grid = 48;              // axiumbilic search grid
  int threads = 1;
  bool separatrices = true;
  bool mean = true;
};

struct Portrait {
  std::string field_name;
  Region region;
  std::vector<Streamline> streamlines;  // sorted by id
  std::vector<AxiumbilicRecord> axiumbilics;
  std::vector<Vec2> critical;
  std::vector<std::string> notices;
};

Portrait build_portrait(const AxialField& field, const PortraitConfig& cfg);

struct BlowdownCheck {
  double theta_star = 0.0;
  double theta_traced = 0.0;
  double deviation = 0.0;
  bool ok = false;
};

struct PortraitSignature {
  std::string kind;            // "critical" (alpha^a) or "axiumbilic"
  QuarterIndex index;
  int arcs_to_critical = 0;    // saddles on the exceptional circle
  int parabolic_sectors = 0;   // nodes on the exceptional circle
  int hyperbolic_sectors = 0;
  std::string sequence;
  std::vector<int> separatrix_counts;   // per axiumbilic, traced
  std::vector<std::string> types;       // per axiumbilic
  std::vector<BlowdownCheck> blowdown;
  double blowdown_max() const;
  std::string key() const;  // combinatorial summary used for comparisons
};

// Signature of the resolved critical point of alpha^a (index at radius 0.1, resolution, blow-down check).
PortraitSignature critical_signature(double a, int threads = 1);
// Signature of the traced separatrices of a portrait.
PortraitSignature axiumbilic_signature(const Portrait& p);

// Launches from the weighted-blow-up image of each saddle germ at radius r0 and follows the
// line field toward the critical point; the quasi-homogeneous angle is extrapolated to r = 0.
std::vector<BlowdownCheck> blowdown_check(double a, double r0 = 0.02, double tol = 0.05);

std::string render_svg(const Portrait& p);
std::string export_csv(const std::vector<Streamline>& s);
std::vector<Streamline> parse_csv(const std::string& text);

}  // namespace axial
