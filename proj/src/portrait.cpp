#include "axial/portrait.hpp"

#include "axial/special_family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace axial {

namespace {

constexpr double kPi = std::numbers::pi;

struct Pick {
  bool ok = false;
  Termination fail = Termination::NearSingular;
  Vec2 dir{1.0, 0.0};
};

std::vector<double> candidates(const AxialField& field, FieldSelector sel, const Vec2& p) {
  const CrossingPair cp = field.crossing(p.x(), p.y());
  if (sel == FieldSelector::AnyRoot) return cp.theta;
  if (!cp.grouped) return {};
  const auto& idx = sel == FieldSelector::Principal ? cp.principal : cp.mean;
  return {cp.theta[idx[0]], cp.theta[idx[1]]};
}

double line_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kPi);
  return std::min(d, kPi - d);
}

Pick pick(const AxialField& field, FieldSelector sel, const Vec2& p, const Vec2& prev, double ambiguity) {
  Pick out;
  std::vector<double> c;
  try {
    c = candidates(field, sel, p);
  } catch (const std::exception&) {
    return out;
  }
  if (c.empty()) return out;
  const double ref = std::atan2(prev.y(), prev.x());
  std::vector<std::pair<double, double>> d;
  for (double t : c) d.emplace_back(line_distance(t, ref), t);
  std::sort(d.begin(), d.end());
  if (d.size() > 1 && line_distance(d[0].second, d[1].second) < ambiguity) return out;
  Vec2 dir(std::cos(d[0].second), std::sin(d[0].second));
  if (dir.dot(prev) < 0) dir = -dir;
  out.ok = true;
  out.dir = dir;
  return out;
}

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

template <class Fn>
void parallel_tasks(int n, int threads, Fn fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

std::string to_string(FieldSelector f) {
  switch (f) {
    case FieldSelector::Principal: return "principal";
    case FieldSelector::Mean: return "mean";
    case FieldSelector::AnyRoot: return "root";
  }
  return "?";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Boundary: return "boundary";
    case Termination::Singularity: return "singularity";
    case Termination::Axiumbilic: return "axiumbilic";
    case Termination::StepLimit: return "step-limit";
    case Termination::NearSingular: return "near-singular";
  }
  return "?";
}

double Streamline::length() const {
  double L = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) L += (points[i] - points[i - 1]).norm();
  return L;
}

Streamline integrate(const AxialField& field, FieldSelector sel, Vec2 seed, double heading, const IntegrateOptions& opt) {
  Streamline s;
  s.field = to_string(sel);
  s.points.push_back(seed);
  Vec2 prev(std::cos(heading), std::sin(heading));
  Vec2 p = seed;
  double len = 0.0;
  const double h = opt.step;
  auto stage = [&](const Vec2& x, const Vec2& ref, Vec2& out) {
    const Pick k = pick(field, sel, x, ref, opt.ambiguity);
    if (!k.ok) return false;
    out = k.dir;
    return true;
  };
  while (true) {
    Vec2 k1, k2, k3, k4;
    // the first stage snaps the heading onto the nearest root of the selected field
    if (!stage(p, prev, k1) || (len > 0.0 && std::acos(std::clamp(k1.dot(prev), -1.0, 1.0)) > opt.max_turn) ||
        !stage(p + 0.5 * h * k1, k1, k2) || !stage(p + 0.5 * h * k2, k2, k3) || !stage(p + h * k3, k3, k4)) {
      s.reason = Termination::NearSingular;
      break;
    }
    const Vec2 step = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    p += step;
    len += step.norm();
    prev = k1;
    s.points.push_back(p);
    if (!opt.region.contains(p.x(), p.y())) {
      s.reason = Termination::Boundary;
      break;
    }
    bool stop = false;
    for (const auto& e : opt.exclusions)
      if ((p - e.center).norm() < e.radius) {
        s.reason = e.critical ? Termination::Singularity : Termination::Axiumbilic;
        stop = true;
        break;
      }
    if (stop) break;
    if (len >= opt.max_len) {
      s.reason = Termination::StepLimit;
      break;
    }
  }
  return s;
}

std::vector<Streamline> trace_separatrices(const AxialField& field, const std::vector<AxiumbilicRecord>& records,
                                           const IntegrateOptions& opt, std::vector<std::string>* notices) {
  std::vector<Streamline> out;
  double R = 5e-3;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.type == AxiumbilicType::Unresolved) {
      if (notices) notices->push_back("skipped unresolved axiumbilic at (" + fmt6(rec.u) + ", " + fmt6(rec.v) + ")");
      continue;
    }
    const Vec2 c(rec.u, rec.v);
    for (const auto& e : opt.exclusions)
      if ((e.center - c).norm() < 1e-9) R = e.radius;
    for (std::size_t k = 0; k < rec.separatrix_angles.size(); ++k) {
      const double phi = rec.separatrix_angles[k];
      const Vec2 d(std::cos(phi), std::sin(phi));
      const Vec2 start = c + 1.05 * R * d;
      Streamline s = integrate(field, FieldSelector::AnyRoot, start, phi, opt);
      s.points.insert(s.points.begin(), c + 1e-4 * d);
      s.field = "separatrix";
      s.branch = static_cast<int>(k);
      s.source = static_cast<int>(i);
      out.push_back(std::move(s));
    }
  }
  return out;
}

Portrait build_portrait(const AxialField& field, const PortraitConfig& cfg) {
  if (!cfg.region.valid()) throw std::invalid_argument("empty region");
  Portrait P;
  P.field_name = field.name();
  P.region = cfg.region;
  SearchOptions so;
  so.grid = cfg.grid;
  so.threads = cfg.threads;
  const AxiumbilicSearch found = find_axiumbilics(field, cfg.region, so);
  P.axiumbilics = found.points;
  for (const auto& c : found.critical) P.critical.emplace_back(c.u, c.v);
  for (const auto& u : found.unconverged)
    P.notices.push_back("unconverged seed near (" + fmt6(u.u) + ", " + fmt6(u.v) + ")");
  for (const auto& d : found.degenerate)
    P.notices.push_back("degenerate normal frame at (" + fmt6(d.u) + ", " + fmt6(d.v) + ")");

  const double width = std::max(cfg.region.u_max - cfg.region.u_min, cfg.region.v_max - cfg.region.v_min);
  IntegrateOptions opt;
  opt.step = cfg.step_fraction * width;
  opt.max_len = cfg.length_fraction * width;
  opt.region = cfg.region;
  for (const auto& a : P.axiumbilics) opt.exclusions.push_back({Vec2(a.u, a.v), cfg.exclusion, false});
  for (const auto& c : P.critical) opt.exclusions.push_back({c, cfg.exclusion, true});
  for (const auto& d : found.degenerate) opt.exclusions.push_back({Vec2(d.u, d.v), cfg.exclusion, true});

  struct Task {
    Vec2 seed;
    FieldSelector sel;
    int branch;
  };
  std::vector<Task> tasks;
  std::vector<FieldSelector> sels{FieldSelector::Principal};
  if (cfg.mean) sels.push_back(FieldSelector::Mean);
  for (int i = 0; i < cfg.seeds; ++i)
    for (int j = 0; j < cfg.seeds; ++j) {
      const double u = cfg.region.u_min + (i + 0.5) * (cfg.region.u_max - cfg.region.u_min) / cfg.seeds;
      const double v = cfg.region.v_min + (j + 0.5) * (cfg.region.v_max - cfg.region.v_min) / cfg.seeds;
      for (auto sel : sels)
        for (int b = 0; b < 2; ++b) tasks.push_back({Vec2(u, v), sel, b});
    }
  std::vector<std::optional<Streamline>> lines(tasks.size());
  parallel_tasks(static_cast<int>(tasks.size()), cfg.threads, [&](int i) {
    const Task& t = tasks[i];
    std::vector<double> c;
    try {
      c = candidates(field, t.sel, t.seed);
    } catch (const std::exception&) {
      return;
    }
    if (static_cast<int>(c.size()) < 2) return;
    const double h = c[t.branch];
    const Streamline fwd = integrate(field, t.sel, t.seed, h, opt);
    const Streamline bwd = integrate(field, t.sel, t.seed, h + kPi, opt);
    Streamline s;
    s.field = fwd.field;
    s.branch = t.branch;
    s.points.assign(bwd.points.rbegin(), bwd.points.rend());
    s.points.insert(s.points.end(), fwd.points.begin() + 1, fwd.points.end());
    s.reason = fwd.reason;
    lines[i] = std::move(s);
  });
  for (auto& l : lines)
    if (l && l->points.size() > 1) P.streamlines.push_back(std::move(*l));
  if (cfg.separatrices) {
    auto seps = trace_separatrices(field, P.axiumbilics, opt, &P.notices);
    for (auto& s : seps) P.streamlines.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < P.streamlines.size(); ++i) P.streamlines[i].id = static_cast<int>(i);
  return P;
}

double PortraitSignature::blowdown_max() const {
  double m = 0.0;
  for (const auto& b : blowdown) m = std::max(m, b.deviation);
  return m;
}

std::string PortraitSignature::key() const {
  std::ostringstream os;
  os << kind;
  if (kind == "critical")
    os << " index=" << index.str() << " arcs=" << arcs_to_critical << " hyperbolic=" << hyperbolic_sectors
       << " parabolic=" << parabolic_sectors << " sequence=[" << sequence << "]";
  if (!separatrix_counts.empty()) {
    os << " separatrices=";
    for (std::size_t i = 0; i < separatrix_counts.size(); ++i)
      os << (i ? "," : "") << types[i] << ":" << separatrix_counts[i];
  }
  return os.str();
}

std::vector<BlowdownCheck> blowdown_check(double a, double r0, double tol) {
  const ResolutionPortrait rp = resolution_portrait(a);
  const FamilyField field({a, 0.0});
  std::vector<BlowdownCheck> out;
  for (const auto& s : rp.singularities) {
    if (s.type != SingularityType::Saddle) continue;
    const double th = s.theta;
    // launch on the second-order germ theta = th + kappa r^2
    const double th0 = th + s.kappa * r0 * r0, c = std::cos(th0), sn = std::sin(th0);
    const Vec2 p0(r0 * r0 * sn, r0 * c);
    const double dth = s.transverse[0] / s.transverse[1] + 2.0 * s.kappa * r0, dr = 1.0;
    const Vec2 dir = -Vec2(2 * r0 * sn * dr + r0 * r0 * c * dth, c * dr - r0 * sn * dth).normalized();
    IntegrateOptions opt;
    opt.step = 2e-3 * r0;
    opt.max_len = r0;
    opt.region = {-1.0, 1.0, -1.0, 1.0};
    opt.exclusions.push_back({Vec2(0, 0), 0.25 * r0, true});
    const Streamline sl = integrate(field, FieldSelector::AnyRoot, p0, std::atan2(dir.y(), dir.x()), opt);
    // least-squares quadratic theta(r) over the traced part, evaluated at r = 0
    Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    int used = 0;
    for (const auto& q : sl.points) {
      const double u = q.x(), v = q.y();
      const double r2 = 0.5 * (v * v + std::sqrt(v * v * v * v + 4 * u * u));
      const double r = std::sqrt(r2);
      if (r <= 0 || r > r0) continue;
      const double t = th + std::remainder(std::atan2(u / r2, v / r) - th, 2 * kPi);
      const Eigen::Vector3d phi(1.0, r, r * r);
      M += phi * phi.transpose();
      rhs += phi * t;
      ++used;
    }
    BlowdownCheck b;
    b.theta_star = th;
    if (used >= 10) {
      b.theta_traced = M.ldlt().solve(rhs)(0);
      b.deviation = std::abs(std::remainder(b.theta_traced - th, 2 * kPi));
    } else {
      b.theta_traced = std::nan("");
      b.deviation = kPi;
    }
    b.ok = b.deviation < tol;
    out.push_back(b);
  }
  return out;
}

PortraitSignature critical_signature(double a, int) {
  PortraitSignature sig;
  sig.kind = "critical";
  const FamilyField field({a, 0.0});
  sig.index = index(field, 0.0, 0.0, 0.1);
  const ResolutionPortrait rp = resolution_portrait(a);
  sig.arcs_to_critical = rp.saddles();
  sig.sequence = rp.sequence();
  // sectors between consecutive arcs; those holding a node are parabolic
  const auto& S = rp.singularities;
  const int n = static_cast<int>(S.size());
  int first = -1;
  for (int i = 0; i < n; ++i)
    if (S[i].type == SingularityType::Saddle) {
      first = i;
      break;
    }
  if (first >= 0) {
    bool node = false;
    for (int k = 1; k <= n; ++k) {
      const auto& s = S[(first + k) % n];
      if (s.type == SingularityType::Node) {
        node = true;
      } else {
        (node ? sig.parabolic_sectors : sig.hyperbolic_sectors)++;
        node = false;
      }
    }
  }
  sig.blowdown = blowdown_check(a);
  return sig;
}

PortraitSignature axiumbilic_signature(const Portrait& p) {
  PortraitSignature sig;
  sig.kind = "axiumbilic";
  sig.separatrix_counts.assign(p.axiumbilics.size(), 0);
  for (const auto& a : p.axiumbilics) sig.types.push_back(to_string(a.type));
  for (const auto& s : p.streamlines) {
    if (s.field != "separatrix" || s.source < 0) continue;
    // counted once it leaves the exclusion disk under integration
    if (s.points.size() >= 12) ++sig.separatrix_counts[s.source];
  }
  int q = 0;
  for (const auto& a : p.axiumbilics)
    if (a.index) q += a.index->quarters;
  sig.index.quarters = q;
  sig.index.raw = q / 4.0;
  return sig;
}

std::string render_svg(const Portrait& p) {
  const Region& r = p.region;
  const double W = r.u_max - r.u_min, H = r.v_max - r.v_min;
  const double sw = std::max(W, H) / 400.0;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt6(800.0) << "\" height=\"" << fmt6(800.0 * H / W)
     << "\" viewBox=\"" << fmt6(r.u_min) << " " << fmt6(-r.v_max) << " " << fmt6(W) << " " << fmt6(H) << "\">\n";
  os << "<title>" << p.field_name << "</title>\n";
  os << "<rect x=\"" << fmt6(r.u_min) << "\" y=\"" << fmt6(-r.v_max) << "\" width=\"" << fmt6(W) << "\" height=\""
     << fmt6(H) << "\" fill=\"white\"/>\n";
  os << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linecap=\"round\">\n";
  os << "<g class=\"axes\" stroke=\"#999999\" stroke-width=\"" << fmt6(sw * 0.5) << "\">\n";
  if (r.v_min <= 0 && r.v_max >= 0)
    os << "<line x1=\"" << fmt6(r.u_min) << "\" y1=\"0.000000\" x2=\"" << fmt6(r.u_max) << "\" y2=\"0.000000\"/>\n";
  if (r.u_min <= 0 && r.u_max >= 0)
    os << "<line x1=\"0.000000\" y1=\"" << fmt6(r.v_min) << "\" x2=\"0.000000\" y2=\"" << fmt6(r.v_max) << "\"/>\n";
  os << "</g>\n";
  const std::map<std::string, std::string> style{
      {"principal", "stroke=\"#1f4e9c\" stroke-width=\"" + fmt6(sw) + "\""},
      {"mean", "stroke=\"#2e8b3e\" stroke-width=\"" + fmt6(sw) + "\" stroke-dasharray=\"" + fmt6(4 * sw) + " " +
                   fmt6(3 * sw) + "\""},
      {"root", "stroke=\"#777777\" stroke-width=\"" + fmt6(sw) + "\""},
      {"separatrix", "stroke=\"#c0392b\" stroke-width=\"" + fmt6(2 * sw) + "\""}};
  for (const char* cls : {"principal", "mean", "root", "separatrix"}) {
    os << "<g class=\"" << cls << "\" " << style.at(cls) << ">\n";
    for (const auto& s : p.streamlines) {
      if (s.field != cls) continue;
      os << "<polyline data-id=\"" << s.id << "\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i)
        os << (i ? " " : "") << fmt6(s.points[i].x()) << "," << fmt6(s.points[i].y());
      os << "\"/>\n";
    }
    os << "</g>\n";
  }
  const double m = std::max(W, H) / 100.0;
  os << "<g class=\"markers\" stroke=\"black\" stroke-width=\"" << fmt6(sw * 0.5) << "\">\n";
  for (const auto& c : p.critical)
    os << "<circle class=\"critical\" cx=\"" << fmt6(c.x()) << "\" cy=\"" << fmt6(c.y()) << "\" r=\"" << fmt6(m)
       << "\" fill=\"black\"/>\n";
  for (const auto& a : p.axiumbilics) {
    const std::string t = to_string(a.type);
    const double x = a.u, y = a.v;
    if (a.type == AxiumbilicType::E3) {
      os << "<polygon class=\"E3\" points=\"" << fmt6(x) << "," << fmt6(y + m) << " " << fmt6(x - 0.866 * m) << ","
         << fmt6(y - 0.5 * m) << " " << fmt6(x + 0.866 * m) << "," << fmt6(y - 0.5 * m) << "\" fill=\"#f1c40f\"/>\n";
    } else if (a.type == AxiumbilicType::E4) {
      os << "<rect class=\"E4\" x=\"" << fmt6(x - m) << "\" y=\"" << fmt6(y - m) << "\" width=\"" << fmt6(2 * m)
         << "\" height=\"" << fmt6(2 * m) << "\" fill=\"#e67e22\"/>\n";
    } else if (a.type == AxiumbilicType::E5) {
      os << "<polygon class=\"E5\" points=\"";
      for (int k = 0; k < 5; ++k) {
        const double ang = kPi / 2 + 2 * kPi * k / 5;
        os << (k ? " " : "") << fmt6(x + m * std::cos(ang)) << "," << fmt6(y + m * std::sin(ang));
      }
      os << "\" fill=\"#8e44ad\"/>\n";
    } else {
      os << "<circle class=\"" << t << "\" cx=\"" << fmt6(x) << "\" cy=\"" << fmt6(y) << "\" r=\"" << fmt6(m)
         << "\" fill=\"white\"/>\n";
    }
  }
  os << "</g>\n</g>\n</svg>\n";
  return os.str();
}

std::string export_csv(const std::vector<Streamline>& lines) {
  std::ostringstream os;
  os << "curve_id,branch,field,idx,u,v\n";
  for (const auto& s : lines)
    for (std::size_t i = 0; i < s.points.size(); ++i)
      os << s.id << ',' << s.branch << ',' << s.field << ',' << i << ',' << fmt6(s.points[i].x()) << ','
         << fmt6(s.points[i].y()) << '\n';
  return os.str();
}

std::vector<Streamline> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "curve_id,branch,field,idx,u,v")
    throw std::invalid_argument("unexpected CSV header");
  std::vector<Streamline> out;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 6) throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": expected 6 fields");
    const int id = std::stoi(f[0]);
    if (out.empty() || out.back().id != id) {
      Streamline s;
      s.id = id;
      s.branch = std::stoi(f[1]);
      s.field = f[2];
      out.push_back(std::move(s));
    }
    if (std::stoul(f[3]) != out.back().points.size())
      throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": point index out of order");
    out.back().points.emplace_back(std::stod(f[4]), std::stod(f[5]));
  }
  return out;
}

}  // namespace axial
