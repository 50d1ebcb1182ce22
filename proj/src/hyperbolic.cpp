#include "quakebend/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qb {

namespace {

constexpr double kPi = 3.14159265358979323846;

double euclid_dist(const PointH3& p, const PointH3& q) {
  return std::sqrt((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y) +
                   (p.t - q.t) * (p.t - q.t));
}

void check_upper(const PointH3& p) {
  if (!(p.t > 0.0)) throw Error("upper half-space requires t > 0");
}

}  // namespace

double dist_h3(const PointH3& p, const PointH3& q) {
  check_upper(p);
  check_upper(q);
  return 2.0 * std::asinh(euclid_dist(p, q) / (2.0 * std::sqrt(p.t * q.t)));
}

Eigen::Vector3d unit_tangent(const PointH3& p, const PointH3& q) {
  check_upper(p);
  check_upper(q);
  double dx = q.x - p.x, dy = q.y - p.y;
  double h = std::hypot(dx, dy);
  if (h <= 1e-13 * (p.t + q.t)) {
    if (std::abs(q.t - p.t) <= 1e-15 * (p.t + q.t)) {
      throw DegenerateVertex("tangent direction undefined between equal points");
    }
    return {0.0, 0.0, q.t > p.t ? 1.0 : -1.0};
  }
  // In the vertical plane through p and q the geodesic is a circle with
  // center (s, 0) on the boundary; the velocity at p is proportional to
  // (p.t, s) in (horizontal, vertical) components.
  double s = (h * h + q.t * q.t - p.t * p.t) / (2.0 * h);
  Eigen::Vector3d v(dx / h * p.t, dy / h * p.t, s);
  return v.normalized();
}

double vertex_angle(const PointH3& a, const PointH3& v, const PointH3& b) {
  Eigen::Vector3d ta = unit_tangent(v, a);
  Eigen::Vector3d tb = unit_tangent(v, b);
  return std::atan2(ta.cross(tb).norm(), ta.dot(tb));
}

PointH3 geodesic_point(const PointH3& p, const PointH3& q, double s) {
  check_upper(p);
  check_upper(q);
  double dx = q.x - p.x, dy = q.y - p.y;
  double h = std::hypot(dx, dy);
  if (h <= 1e-13 * (p.t + q.t)) {
    double sign = q.t > p.t ? 1.0 : -1.0;
    return {p.x, p.y, p.t * std::exp(sign * s)};
  }
  double ex = dx / h, ey = dy / h;
  double sc = (h * h + q.t * q.t - p.t * p.t) / (2.0 * h);
  double R = std::sqrt(sc * sc + p.t * p.t);
  // tan(phi/2) at p, with phi the circle angle; phi decreases toward q and
  // arclength satisfies tan(phi/2) = tan(phi_p/2) e^{-s}.
  double tp = p.t / (R - sc);
  double T = tp * std::exp(-s);
  double denom = 1.0 + T * T;
  double cphi = (1.0 - T * T) / denom;
  double sphi = 2.0 * T / denom;
  double u = sc + R * cphi;
  return {p.x + u * ex, p.y + u * ey, R * sphi};
}

PointH3 apply_h3(const MoebiusElement& g, const PointH3& p) {
  check_upper(p);
  const Mat2c& m = g.matrix();
  Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  Complex z(p.x, p.y);
  double D = std::norm(c * z + d) + std::norm(c) * p.t * p.t;
  Complex zp = ((a * z + b) * std::conj(c * z + d) +
                a * std::conj(c) * p.t * p.t) /
               D;
  return {zp.real(), zp.imag(), p.t / D};
}

PiecewiseGeodesic::PiecewiseGeodesic(std::vector<PointH3> vertices)
    : v_(std::move(vertices)) {
  if (v_.size() < 2) throw Error("piecewise geodesic needs at least 2 vertices");
  cum_.resize(v_.size());
  cum_[0] = 0.0;
  for (std::size_t i = 1; i < v_.size(); ++i) {
    double d = dist_h3(v_[i - 1], v_[i]);
    if (d < 1e-12) throw Error("consecutive vertices coincide");
    cum_[i] = cum_[i - 1] + d;
  }
}

double PiecewiseGeodesic::min_segment_length() const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < segment_count(); ++i) m = std::min(m, segment_length(i));
  return m;
}

double PiecewiseGeodesic::min_interior_angle() const {
  double m = kPi;
  for (std::size_t i = 1; i + 1 < v_.size(); ++i) {
    m = std::min(m, vertex_angle(v_[i - 1], v_[i], v_[i + 1]));
  }
  return m;
}

PointH3 PiecewiseGeodesic::point_at(double s) const {
  s = std::clamp(s, 0.0, total_length());
  auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
  int i = std::max(0, static_cast<int>(it - cum_.begin()) - 1);
  i = std::min(i, segment_count() - 1);
  return geodesic_point(v_[i], v_[i + 1], s - cum_[i]);
}

PiecewiseGeodesic PiecewiseGeodesic::merged_collinear(double tol) const {
  std::vector<PointH3> out;
  out.push_back(v_.front());
  for (std::size_t i = 1; i + 1 < v_.size(); ++i) {
    if (vertex_angle(v_[i - 1], v_[i], v_[i + 1]) < kPi - tol) {
      out.push_back(v_[i]);
    }
  }
  out.push_back(v_.back());
  return PiecewiseGeodesic(out);
}

PiecewiseGeodesic shortcut_curve(const PiecewiseGeodesic& c, double r) {
  if (!(r > 0.0) || !(r < c.min_segment_length() / 2.0)) {
    throw RadiusTooLarge("shortcut radius must lie in (0, min segment/2)");
  }
  const auto& v = c.vertices();
  std::vector<PointH3> out;
  out.push_back(v.front());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    out.push_back(geodesic_point(v[i], v[i - 1], r));
    out.push_back(geodesic_point(v[i], v[i + 1], r));
  }
  out.push_back(v.back());
  return PiecewiseGeodesic(out);
}

namespace {

// Chord length of the isoceles corner triangle with legs r and apex angle
// theta.
double shortcut_chord(double theta, double r) {
  double ch = std::cosh(r) * std::cosh(r) -
              std::sinh(r) * std::sinh(r) * std::cos(theta);
  return std::acosh(std::max(1.0, ch));
}

// Base angle of the same triangle, by the law of sines.
double shortcut_base_angle(double theta, double r) {
  double l = shortcut_chord(theta, r);
  double sl = std::sinh(l);
  if (sl <= 0.0) return kPi / 2.0;
  double s = std::sin(theta) * std::sinh(r) / sl;
  return std::asin(std::clamp(s, 0.0, 1.0));
}

// Largest base angle over corner angles in [theta0, pi].
double worst_base_angle(double theta0, double r) {
  double worst = 0.0;
  const int n = 128;
  for (int k = 0; k <= n; ++k) {
    double theta = theta0 + (kPi - theta0) * k / n;
    worst = std::max(worst, shortcut_base_angle(theta, r));
  }
  return worst;
}

struct ChainBound {
  bool ok = false;
  double slope = 0.0;  // lower bound A with d >= A s - B on the original curve
  double offset = 0.0;  // B
};

// Explicit constants for one shortcut radius r on a curve with minimum
// segment length L and corner angles >= theta0.
//
// Corners of c_r are flatter than pi - delta with delta the worst base
// angle. For a piecewise geodesic with segments >= L_r and corners
// >= pi - delta, induction on the vertices with the hyperbolic law of
// cosines gives d >= sum of lengths - (#corners) * Delta, where
// Delta = log 2 + 2 log sec(delta), valid once
// L_r >= acosh(sqrt(4 cos^2 delta + 1) / cos^2 delta) so the deviation
// angle stays below delta. Converting arclength from c to c_r loses at
// most 2r per corner plus 2r at each end.
ChainBound chain_bound(double L, double theta0, double r) {
  ChainBound out;
  double delta = worst_base_angle(theta0, r);
  if (delta > kPi / 6.0) return out;
  double cosd = std::cos(delta);
  double Delta = std::log(2.0) - 2.0 * std::log(cosd);
  double Lmin =
      std::acosh(std::sqrt(4.0 * cosd * cosd + 1.0) / (cosd * cosd));
  double Lr = std::min(shortcut_chord(theta0, r), L - 2.0 * r);
  if (Lr < Lmin) return out;
  out.ok = true;
  out.slope = (1.0 - Delta / Lr) * (1.0 - 2.0 * r / L);
  out.offset = (1.0 - Delta / Lr) * 6.0 * r + Delta + 2.0 * r;
  return out;
}

struct Feasibility {
  bool ok = false;
  double Q = 0.0;
};

Feasibility feasible(double L, double eps, double theta0) {
  Feasibility best;
  const int n = 240;
  for (int k = 1; k <= n; ++k) {
    double r = 0.4999 * L * k / n;
    ChainBound cb = chain_bound(L, theta0, r);
    if (!cb.ok || cb.slope < 1.0 / (1.0 + eps)) continue;
    if (!best.ok || cb.offset < best.Q) best = {true, cb.offset};
  }
  return best;
}

struct PairSample {
  double s1, s2, arc, dist;
};

std::vector<PairSample> sample_pairs(const PiecewiseGeodesic& c,
                                     std::size_t samples) {
  double total = c.total_length();
  double lo = c.segment_length(0);
  double hi = total - c.segment_length(c.segment_count() - 1);
  if (!(hi - lo > 0.1 * total)) {
    lo = 0.0;
    hi = total;
  }
  std::mt19937_64 rng(0x9E3779B97F4A7C15ull);
  std::uniform_real_distribution<double> ud(lo, hi);
  std::vector<PairSample> out;
  out.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    double s1 = ud(rng), s2 = ud(rng);
    double arc = std::abs(s2 - s1);
    double d = dist_h3(c.point_at(s1), c.point_at(s2));
    out.push_back({s1, s2, arc, d});
  }
  return out;
}

}  // namespace

double quasigeodesic_length_threshold(double eps, double min_angle) {
  if (!(eps > 0.0)) throw Error("certify: eps must be positive");
  if (!(min_angle > 0.0) || !(min_angle <= kPi)) {
    throw Error("certify: min_angle must lie in (0, pi]");
  }
  double hi = 1e5;
  if (!feasible(hi, eps, min_angle).ok) {
    return std::numeric_limits<double>::infinity();
  }
  double lo = 1e-2;
  for (int it = 0; it < 60; ++it) {
    double mid = std::sqrt(lo * hi);
    if (feasible(mid, eps, min_angle).ok) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

QuasiGeodesicCertificate certify_quasigeodesic(const PiecewiseGeodesic& curve,
                                               double eps, double min_angle) {
  QuasiGeodesicCertificate cert;
  PiecewiseGeodesic c = curve.merged_collinear();
  cert.R = quasigeodesic_length_threshold(eps, min_angle);
  if (c.segment_count() == 1) {
    cert.certified = true;
    cert.P = 1.0;
    cert.Q = 0.0;
    cert.R = 0.0;
    return cert;
  }
  double L = c.min_segment_length();
  double theta = c.min_interior_angle();
  if (theta > min_angle && L > cert.R) {
    Feasibility f = feasible(L, eps, min_angle);
    cert.certified = true;
    cert.P = 1.0 + eps;
    cert.Q = f.Q;
    return cert;
  }
  // Not certified: report the worst sampled pair against slope 1 + eps.
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& pr : sample_pairs(curve, 20000)) {
    double excess = pr.arc / (1.0 + eps) - pr.dist;
    if (excess > worst) {
      worst = excess;
      cert.s1 = pr.s1;
      cert.s2 = pr.s2;
      cert.witness_arc = pr.arc;
      cert.witness_dist = pr.dist;
      cert.witness_excess = excess;
    }
  }
  cert.has_witness = worst > 1e-9;
  return cert;
}

std::pair<double, double> empirical_qi_constants(const PiecewiseGeodesic& c,
                                                 std::size_t samples) {
  if (samples < 2) throw Error("empirical fit needs at least 2 samples");
  auto pairs = sample_pairs(c, samples);
  double kappa = std::min(1.0, 0.1 * c.total_length());
  double P = 1.0;
  for (const auto& pr : pairs) {
    if (pr.arc < kappa) continue;
    P = pr.dist > 1e-300 ? std::max(P, pr.arc / pr.dist)
                         : std::numeric_limits<double>::infinity();
  }
  double Q = 0.0;
  for (const auto& pr : pairs) Q = std::max(Q, pr.arc / P - pr.dist);
  return {P, Q};
}

bool qi_oracle_pass(const PiecewiseGeodesic& c, double P, double Q,
                    std::size_t samples) {
  for (const auto& pr : sample_pairs(c, samples)) {
    if (pr.arc / P - Q > pr.dist + 1e-9) return false;
    if (pr.dist > P * pr.arc + Q + 1e-9) return false;
  }
  return true;
}

OrientedGeodesic axis_in_h3(const ProjectivePoint& u,
                            const ProjectivePoint& v) {
  if (proj_equal(u, v, 1e-12)) {
    throw DegenerateAxis("geodesic endpoints coincide");
  }
  return {u, v};
}

}  // namespace qb
