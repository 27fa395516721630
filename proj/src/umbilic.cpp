#include "axial/umbilic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace axial {

std::string to_string(AxiumbilicType t) {
  switch (t) {
    case AxiumbilicType::E3: return "E3";
    case AxiumbilicType::E4: return "E4";
    case AxiumbilicType::E5: return "E5";
    case AxiumbilicType::Unresolved: return "unresolved";
  }
  return "unresolved";
}

std::string QuarterIndex::str() const {
  int n = quarters, d = 4;
  if (n == 0) return "0";
  while (d > 1 && n % 2 == 0) {
    n /= 2;
    d /= 2;
  }
  if (d == 1) return std::to_string(n);
  return std::to_string(n) + "/" + std::to_string(d);
}

namespace {

template <class F>
void parallel_for(int n, int threads, F&& body) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) body(i);
    });
  for (auto& th : pool) th.join();
}

bool mixed(const double* s, int n) {
  bool pos = false, neg = false, zero = false;
  for (int i = 0; i < n; ++i) {
    if (s[i] > 0) pos = true;
    else if (s[i] < 0) neg = true;
    else zero = true;
  }
  return zero || (pos && neg);
}

double wrap_2pi(double t) {
  t = std::fmod(t, 2 * M_PI);
  if (t < 0) t += 2 * M_PI;
  return t;
}

}  // namespace

AxiumbilicRecord refine_axiumbilic(const AxialField& field, double u, double v) {
  AxiumbilicRecord rec;
  Vec2 x(u, v);
  Vec2 b = field.beta(x[0], x[1]);
  double res = b.norm();
  int it = 0;
  for (; it < 50; ++it) {
    const Eigen::Matrix2d J = field.beta_jacobian(x[0], x[1]);
    if (std::abs(J.determinant()) < 1e-300) break;
    Vec2 step = J.partialPivLu().solve(-b);
    double lam = 1.0;
    Vec2 xn = x + step;
    Vec2 bn = field.beta(xn[0], xn[1]);
    for (int k = 0; k < 30 && bn.norm() > res && res > 0; ++k) {
      lam *= 0.5;
      xn = x + lam * step;
      bn = field.beta(xn[0], xn[1]);
    }
    const double moved = (xn - x).norm();
    x = xn;
    b = bn;
    res = b.norm();
    if (res == 0.0 || moved <= 1e-15 * (1.0 + x.norm())) {
      ++it;
      break;
    }
  }
  rec.u = x[0];
  rec.v = x[1];
  rec.residual = res;
  rec.iterations = it;
  rec.converged = std::isfinite(res) && res <= 1e-10 * field.beta_scale(x[0], x[1]);
  if (!rec.converged) rec.note = "unconverged";
  return rec;
}

double transversality(const AxialField& field, const AxiumbilicRecord& rec) {
  return field.beta_jacobian(rec.u, rec.v).determinant();
}

std::vector<InvariantDirection> invariant_directions(const AxialField& field, double u, double v) {
  const auto g = field.coefficient_gradients(u, v);
  // G(phi, psi) = sum_i (g_i . (cos phi, sin phi)) cos^(4-i) psi sin^i psi
  std::vector<double> q(6, 0.0);
  for (int i = 0; i < 5; ++i) {
    q[i] += g[i][0];
    q[i + 1] += g[i][1];
  }
  std::vector<InvariantDirection> out;
  std::vector<double> roots;
  try {
    roots = binary_form_directions(q);
  } catch (const std::domain_error&) {
    return out;
  }
  for (double phi : roots) {
    const double c = std::cos(phi), s = std::sin(phi);
    double Gpsi = 0.0, Gphi = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double L = g[i][0] * c + g[i][1] * s;
      const double Lp = -g[i][0] * s + g[i][1] * c;
      const double T = std::pow(c, 4 - i) * std::pow(s, i);
      double Tp = 0.0;
      if (i > 0) Tp += i * std::pow(c, 5 - i) * std::pow(s, i - 1);
      if (i < 4) Tp -= (4 - i) * std::pow(c, 3 - i) * std::pow(s, i + 1);
      Gpsi += L * Tp;
      Gphi += Lp * T;
    }
    InvariantDirection d;
    d.angle = phi;
    d.lambda = -(Gphi + Gpsi) / Gpsi;
    out.push_back(d);
  }
  return out;
}

std::vector<double> separatrix_directions(const AxialField& field, AxiumbilicRecord& rec) {
  rec.invariant = invariant_directions(field, rec.u, rec.v);
  rec.separatrix_angles.clear();
  const double rho = 1e-4 * std::max(1e-2, std::hypot(rec.u, rec.v));
  auto principal_at = [&](double phi) -> int {
    // 1 principal, 0 mean, -1 undecided
    const double pu = rec.u + rho * std::cos(phi), pv = rec.v + rho * std::sin(phi);
    CrossingPair cp;
    try {
      cp = field.crossing(pu, pv);
    } catch (const std::exception&) {
      return -1;
    }
    if (!cp.grouped || !cp.by_deviation || cp.near_axiumbilic) return -1;
    const double t = std::fmod(std::fmod(phi, M_PI) + M_PI, M_PI);
    int best = 0;
    double bd = 1e9;
    for (int k = 0; k < cp.count(); ++k) {
      double d = std::abs(cp.theta[k] - t);
      d = std::min(d, M_PI - d);
      if (d < bd) {
        bd = d;
        best = k;
      }
    }
    return (best == cp.principal[0] || best == cp.principal[1]) ? 1 : 0;
  };
  for (const auto& d : rec.invariant) {
    if (!d.separatrix()) continue;
    double ray = d.angle;
    if (field.has_deviation()) {
      const int fwd = principal_at(d.angle), bwd = principal_at(d.angle + M_PI);
      if (fwd == 0 && bwd == 1) ray = d.angle + M_PI;
    }
    rec.separatrix_angles.push_back(wrap_2pi(ray));
  }
  std::sort(rec.separatrix_angles.begin(), rec.separatrix_angles.end());
  return rec.separatrix_angles;
}

namespace {

// near-double roots show up as small local minima of |G(phi, phi)| on a dense sweep
bool near_transition(const AxialField& field, const AxiumbilicRecord& rec) {
  for (const auto& d : rec.invariant)
    if (std::abs(d.lambda) < 1e-6) return true;
  for (std::size_t i = 0; i + 1 < rec.invariant.size(); ++i)
    if (rec.invariant[i + 1].angle - rec.invariant[i].angle < 1e-6) return true;
  if (rec.invariant.size() >= 2 && rec.invariant.front().angle + M_PI - rec.invariant.back().angle < 1e-6) return true;
  const auto g = field.coefficient_gradients(rec.u, rec.v);
  const int n = 3600;
  std::vector<double> G(n);
  double mx = 0.0;
  for (int k = 0; k < n; ++k) {
    const double phi = M_PI * k / n, c = std::cos(phi), s = std::sin(phi);
    double val = 0.0;
    for (int i = 0; i < 5; ++i) val += (g[i][0] * c + g[i][1] * s) * std::pow(c, 4 - i) * std::pow(s, i);
    G[k] = val;
    mx = std::max(mx, std::abs(val));
  }
  if (mx == 0.0) return true;
  for (int k = 0; k < n; ++k) {
    const double a = std::abs(G[(k + n - 1) % n]), b = std::abs(G[k]), c = std::abs(G[(k + 1) % n]);
    if (b <= a && b <= c && b < 1e-6 * mx) {
      // a true root nearby is fine; a touching minimum without sign change is not
      const double gl = G[(k + n - 1) % n], gr = G[(k + 1) % n];
      const bool wrap_l = k == 0, wrap_r = k == n - 1;
      const double sl = wrap_l ? -gl : gl, sr = wrap_r ? -gr : gr;  // G(phi + pi) = -G(phi)
      if (sl * sr > 0) return true;
    }
  }
  return false;
}

}  // namespace

AxiumbilicType classify(const AxialField& field, AxiumbilicRecord& rec) {
  rec.det = transversality(field, rec);
  separatrix_directions(field, rec);
  const double scale = field.beta_jacobian(rec.u, rec.v).norm();
  if (std::abs(rec.det) <= 1e-12 * scale * scale) {
    rec.type = AxiumbilicType::Unresolved;
    rec.note = "unresolved: non-transversal";
    return rec.type;
  }
  if (near_transition(field, rec)) {
    rec.type = AxiumbilicType::Unresolved;
    rec.note = "unresolved: near type transition";
    return rec.type;
  }
  const std::size_t n = rec.invariant.size();
  if (rec.det < 0) {
    rec.type = AxiumbilicType::E5;
    if (n != 5) rec.note = "E5 by determinant sign with " + std::to_string(n) + " invariant lines";
  } else if (n == 3) {
    rec.type = AxiumbilicType::E3;
  } else if (n == 5) {
    rec.type = AxiumbilicType::E4;
  } else {
    rec.type = AxiumbilicType::Unresolved;
    rec.note = "unresolved: " + std::to_string(n) + " invariant lines";
  }
  return rec.type;
}

AxiumbilicSearch find_axiumbilics(const AxialField& field, const Region& region, const SearchOptions& opt) {
  if (!region.valid()) throw std::invalid_argument("find_axiumbilics: empty region");
  if (opt.grid < 16) throw std::invalid_argument("find_axiumbilics: grid must be at least 16 per side");
  const int n = opt.grid;
  const double du = (region.u_max - region.u_min) / n, dv = (region.v_max - region.v_min) / n;
  std::vector<Vec2> B(static_cast<std::size_t>((n + 1) * (n + 1)));
  parallel_for(n + 1, opt.threads, [&](int i) {
    for (int j = 0; j <= n; ++j) B[i * (n + 1) + j] = field.beta(region.u_min + i * du, region.v_min + j * dv);
  });
  struct Cell {
    double u0, v0, du, dv;
  };
  std::vector<Cell> cells;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2* c[4] = {&B[i * (n + 1) + j], &B[(i + 1) * (n + 1) + j], &B[i * (n + 1) + j + 1],
                          &B[(i + 1) * (n + 1) + j + 1]};
      double s0[4], s1[4];
      for (int k = 0; k < 4; ++k) {
        s0[k] = (*c[k])[0];
        s1[k] = (*c[k])[1];
      }
      if (mixed(s0, 4) && mixed(s1, 4)) cells.push_back({region.u_min + i * du, region.v_min + j * dv, du, dv});
    }
  }
  // Newton from the cell center; when it leaves the (inflated) cell, retry on the flagged quarters, two levels deep
  std::function<void(const Cell&, int, std::vector<AxiumbilicRecord>&)> solve_cell =
      [&](const Cell& c, int depth, std::vector<AxiumbilicRecord>& sink) {
        AxiumbilicRecord r = refine_axiumbilic(field, c.u0 + 0.5 * c.du, c.v0 + 0.5 * c.dv);
        const bool inside = r.converged && std::abs(r.u - (c.u0 + 0.5 * c.du)) <= c.du &&
                            std::abs(r.v - (c.v0 + 0.5 * c.dv)) <= c.dv;
        if (inside || depth == 0) {
          sink.push_back(r);
          return;
        }
        if (r.converged) sink.push_back(r);
        const double hu = 0.5 * c.du, hv = 0.5 * c.dv;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const Cell q{c.u0 + a * hu, c.v0 + b * hv, hu, hv};
            double s0[4], s1[4];
            for (int k = 0; k < 4; ++k) {
              const Vec2 x = field.beta(q.u0 + (k & 1) * hu, q.v0 + (k >> 1) * hv);
              s0[k] = x[0];
              s1[k] = x[1];
            }
            if (mixed(s0, 4) && mixed(s1, 4)) solve_cell(q, depth - 1, sink);
          }
      };
  std::vector<std::vector<AxiumbilicRecord>> per_cell(cells.size());
  parallel_for(static_cast<int>(cells.size()), opt.threads, [&](int k) { solve_cell(cells[k], 3, per_cell[k]); });
  std::vector<AxiumbilicRecord> refined;
  for (auto& v : per_cell) refined.insert(refined.end(), v.begin(), v.end());

  AxiumbilicSearch out;
  const double width = std::max(region.u_max - region.u_min, region.v_max - region.v_min);
  const double tol_in = 1e-9 * width;
  auto merge_into = [](std::vector<AxiumbilicRecord>& list, const AxiumbilicRecord& r, double tol) {
    for (auto& e : list)
      if (std::hypot(e.u - r.u, e.v - r.v) < tol) {
        if (r.residual < e.residual) e = r;
        return;
      }
    list.push_back(r);
  };
  for (const auto& r : refined) {
    if (!std::isfinite(r.u) || !std::isfinite(r.v) || !region.contains(r.u, r.v, tol_in)) continue;
    if (field.critical_measure(r.u, r.v) < 1e-10) {
      AxiumbilicRecord c = r;
      c.note = "critical point";
      merge_into(out.critical, c, 1e-5);
    } else if (r.converged && field.frame_distance(r.u, r.v) < 1e-4 * width) {
      AxiumbilicRecord d = r;
      d.note = "degenerate normal frame";
      merge_into(out.degenerate, d, 1e-5);
    } else if (r.converged) {
      merge_into(out.points, r, 1e-7);
    } else {
      merge_into(out.unconverged, r, 1e-7);
    }
  }
  // flat zeros next to a critical point (high-order contact at bifurcation values) belong to it
  std::erase_if(out.points, [&](const AxiumbilicRecord& r) {
    for (const auto& c : out.critical)
      if (std::hypot(c.u - r.u, c.v - r.v) < 1e-4 * width) return true;
    return false;
  });
  // u is compared on the merge scale so that round-off around a symmetry axis does not decide the order
  auto by_uv = [](const AxiumbilicRecord& a, const AxiumbilicRecord& b) {
    const long long ka = std::llround(a.u * 1e7), kb = std::llround(b.u * 1e7);
    return ka != kb ? ka < kb : a.v < b.v;
  };
  for (auto* list : {&out.points, &out.critical, &out.unconverged, &out.degenerate}) std::sort(list->begin(), list->end(), by_uv);
  if (opt.classify)
    parallel_for(static_cast<int>(out.points.size()), opt.threads, [&](int k) { classify(field, out.points[k]); });
  return out;
}

AxiumbilicSearch find_axiumbilics(const SurfaceMapPtr& map, const Region& region, const SearchOptions& opt) {
  MapField f(map);
  return find_axiumbilics(f, region, opt);
}

UmbilicDiscriminant discriminant(double a, double b) {
  if (a == 0.0) throw std::domain_error("non-transversal: a = 0");
  UmbilicDiscriminant d;
  d.a = a;
  d.b = b;
  d.I = 2 * a * (a / 24 + 1) + 4 + b * b / 4;
  d.J = -(2 * a / 3) * ((a / 6 + 1) * (1 - a / 24) + b * b / 16);
  d.delta = (a + 1) * (a + 1) * (d.I * d.I * d.I - 27 * d.J * d.J);
  const double scale = (a + 1) * (a + 1) * (std::abs(d.I * d.I * d.I) + 27 * d.J * d.J);
  if (std::abs(d.delta) <= 1e-12 * std::max(scale, 1e-300)) d.predicted = AxiumbilicType::Unresolved;
  else if (d.delta < 0) d.predicted = AxiumbilicType::E3;
  else d.predicted = a < 0 ? AxiumbilicType::E4 : AxiumbilicType::E5;
  return d;
}

namespace {

std::vector<double> loop_angles(const AxialField& field, double u, double v) {
  const AxialQuartic q = field.quartic(u, v);
  const std::vector<double> th = binary_form_directions(std::vector<double>(q.a.begin(), q.a.end()));
  const FirstForm I = field.metric(u, v);
  std::vector<double> out;
  for (double t : th) out.push_back(metric_angle(I, t));
  return out;
}

double mod_pi_diff(double a, double b) {
  double d = std::fmod(a - b, M_PI);
  if (d > M_PI / 2) d -= M_PI;
  if (d < -M_PI / 2) d += M_PI;
  return d;
}

}  // namespace

QuarterIndex index(const AxialField& field, double u, double v, double radius, const IndexOptions& opt) {
  if (!(radius > 0)) throw std::invalid_argument("index: radius must be positive");
  int samples = std::max(opt.samples, 8);
  for (int attempt = 0; attempt <= opt.max_doublings; ++attempt, samples *= 2) {
    bool ambiguous = false;
    std::vector<double> a0 = loop_angles(field, u + radius, v);
    if (a0.size() != 4) throw std::runtime_error("index: loop meets a singular point (fewer than four directions)");
    double cur = a0[0], total = 0.0;
    for (int k = 1; k <= samples && !ambiguous; ++k) {
      const double phi = 2 * M_PI * k / samples;
      const auto ang = loop_angles(field, u + radius * std::cos(phi), v + radius * std::sin(phi));
      if (ang.size() != 4) throw std::runtime_error("index: loop meets a singular point (fewer than four directions)");
      double best = 1e9, second = 1e9, bd = 0.0, bt = 0.0;
      for (double t : ang) {
        const double d = mod_pi_diff(t, cur);
        if (std::abs(d) < best) {
          second = best;
          best = std::abs(d);
          bd = d;
          bt = t;
        } else if (std::abs(d) < second) {
          second = std::abs(d);
        }
      }
      if (second - best < 1e-3) ambiguous = true;
      total += bd;
      cur = bt;
    }
    if (ambiguous) continue;
    QuarterIndex qi;
    qi.raw = total / (2 * M_PI);
    qi.quarters = static_cast<int>(std::lround(4.0 * qi.raw));
    qi.residual = std::abs(qi.raw - qi.quarters / 4.0);
    if (qi.residual >= 0.05) throw std::runtime_error("index undefined on this loop");
    return qi;
  }
  throw std::runtime_error("index: branch-tracking ambiguity persists after refinement");
}

}  // namespace axial
