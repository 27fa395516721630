#pragma once

#include "axial/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace axial {

enum class AxiumbilicType { E3, E4, E5, Unresolved };
std::string to_string(AxiumbilicType t);

struct QuarterIndex {
  int quarters = 0;     // index = quarters / 4
  double raw = 0.0;     // net rotation / 2pi before snapping
  double residual = 0.0;
  double value() const { return quarters / 4.0; }
  std::string str() const;
};

// Invariant line of the linearized field through the point, at position angle `angle` in [0, pi).
struct InvariantDirection {
  double angle = 0.0;
  double lambda = 0.0;  // angular rate: < 0 attracting (separatrix), > 0 repelling (parabolic)
  bool separatrix() const { return lambda < 0.0; }
};

struct AxiumbilicRecord {
  double u = 0.0, v = 0.0;
  std::string branch;
  double det = 0.0;
  AxiumbilicType type = AxiumbilicType::Unresolved;
  std::string note;
  std::vector<InvariantDirection> invariant;
  std::vector<double> separatrix_angles;  // one ray per separatrix line, in [0, 2pi)
  std::optional<QuarterIndex> index;
  bool converged = false;
  double residual = 0.0;
  int iterations = 0;
};

struct Region {
  double u_min = -0.5, u_max = 0.5, v_min = -0.5, v_max = 0.5;
  bool valid() const { return u_max > u_min && v_max > v_min; }
  bool contains(double u, double v, double tol = 0.0) const {
    return u >= u_min - tol && u <= u_max + tol && v >= v_min - tol && v <= v_max + tol;
  }
};

struct AxiumbilicSearch {
  std::vector<AxiumbilicRecord> points;       // converged, regular, sorted by (u, v)
  std::vector<AxiumbilicRecord> critical;     // zeros of beta on the critical set
  std::vector<AxiumbilicRecord> unconverged;  // Newton failures with residual
  std::vector<AxiumbilicRecord> degenerate;   // zeros of beta where the normal frame collapses (D > 0, N1 = 0)
};

struct SearchOptions {
  int grid = 64;
  int threads = 1;
  bool classify = true;
};

AxiumbilicSearch find_axiumbilics(const AxialField& field, const Region& region, const SearchOptions& opt = {});
AxiumbilicSearch find_axiumbilics(const SurfaceMapPtr& map, const Region& region, const SearchOptions& opt = {});

// Newton refinement of beta = 0 from a seed; damping 0.5 when the residual grows, at most 50 iterations.
AxiumbilicRecord refine_axiumbilic(const AxialField& field, double u, double v);

double transversality(const AxialField& field, const AxiumbilicRecord& rec);

// Invariant lines of the linearized quartic field at (u, v).
std::vector<InvariantDirection> invariant_directions(const AxialField& field, double u, double v);

// Fills invariant lines and separatrix rays; returns the rays.
std::vector<double> separatrix_directions(const AxialField& field, AxiumbilicRecord& rec);

// det < 0 -> E5; det > 0 with 3 invariant lines -> E3, with 5 -> E4. Fills rec.
AxiumbilicType classify(const AxialField& field, AxiumbilicRecord& rec);

struct UmbilicDiscriminant {
  double a = 0.0, b = 0.0, I = 0.0, J = 0.0, delta = 0.0;
  AxiumbilicType predicted = AxiumbilicType::Unresolved;
};

// Normal-form predictor. Partition (oracle-checked): delta < 0 -> E3, delta > 0 and a < 0 -> E4,
// delta > 0 and a > 0 -> E5.
UmbilicDiscriminant discriminant(double a, double b);

struct IndexOptions {
  int samples = 720;
  int max_doublings = 3;
};

QuarterIndex index(const AxialField& field, double u, double v, double radius, const IndexOptions& opt = {});

}  // namespace axial
