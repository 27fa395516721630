#pragma once

#include "axial/geometry.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace axial {

struct AuxiliaryInvariants {
  std::array<double, 2> L{}, M{}, N{};
  bool scaled = false;  // built from barred coefficients
};

AuxiliaryInvariants auxiliary_invariants(const FirstForm& I, const ScaledSecondForm& sff, bool scaled);

enum class QuarticForm { Regular, Extended, Family, NormalForm, Synthetic };
std::string to_string(QuarticForm f);

// a[i] multiplies dv^i du^(4-i).
struct AxialQuartic {
  std::array<double, 5> a{};
  QuarticForm form = QuarticForm::Synthetic;
  double u = 0.0, v = 0.0;
  bool has_metric = false;
  FirstForm I;

  double value(double du, double dv) const;
  double max_abs() const;
  // Largest relative residual of the three linear relations (meaningless for NormalForm/Synthetic).
  double relation_residual() const;
};

// Complete a quartic from (a0, a1) with the linear relations.
AxialQuartic quartic_from_a01(double a0, double a1, const FirstForm& I, QuarticForm form);
// Simplified quartic from the normalized coefficients; regular points only.
AxialQuartic quartic_regular(const FirstForm& I, const ScaledSecondForm& sff);
// Long-form a0/a1 expressions of the original quartic, used to cross-check the simplified form.
AxialQuartic quartic_expanded(const FirstForm& I, const ScaledSecondForm& sff);
// Extension across the critical set, from barred coefficients.
AxialQuartic quartic_extended(const FirstForm& I, const ScaledSecondForm& sff, const NormalFrame& frame);

// Real directions (angles in [0, pi), ascending) of the binary form sum c[i] dv^i du^(n-i).
std::vector<double> binary_form_directions(const std::vector<double>& c);

using DeviationFn = std::function<double(double)>;

struct CrossingPair {
  std::vector<double> theta;  // real directions found, ascending in [0, pi)
  std::array<int, 2> principal{-1, -1}, mean{-1, -1};
  std::vector<double> deviation;
  bool grouped = false;        // four directions split into two crossings
  bool by_deviation = false;   // labels decided by the deviation function
  bool near_axiumbilic = false;
  double orthogonality_defect = 0.0;  // max |cos| within the pairs, in the I metric
  int count() const { return static_cast<int>(theta.size()); }
};

CrossingPair solve_directions(const AxialQuartic& q, const DeviationFn& dev = {});

// Squared distance of k_n(theta) from the mean normal curvature H.
double deviation(const SurfaceJet& jet, const NormalFrame& frame, const FirstForm& I, double theta);

// Angle in an I-orthonormal tangent frame of the chart direction theta.
double metric_angle(const FirstForm& I, double theta);
// Cosine of the I-angle between chart directions.
double metric_cos(const FirstForm& I, double t1, double t2);

AxialQuartic normal_form_quartic(double a, double b, double x, double y);
std::function<AxialQuartic(double, double)> normal_form_field(double a, double b);

}  // namespace axial
