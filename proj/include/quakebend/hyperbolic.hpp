#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quakebend/moebius.hpp"

namespace qb {

/// Upper half-space model of H^3: (x, y, t) with t > 0.
struct PointH3 {
  double x = 0.0, y = 0.0, t = 1.0;
};

double dist_h3(const PointH3& p, const PointH3& q);

/// Initial unit tangent (Euclidean normalization; the model is conformal)
/// of the geodesic from p toward q.
Eigen::Vector3d unit_tangent(const PointH3& p, const PointH3& q);

/// Interior angle at v between the geodesic segments [v,a] and [v,b], in
/// [0, pi].
double vertex_angle(const PointH3& a, const PointH3& v, const PointH3& b);

/// Point at hyperbolic arclength s from p along the geodesic toward q.
PointH3 geodesic_point(const PointH3& p, const PointH3& q, double s);

/// Poincare extension of the PSL(2,C) action on the upper half-space.
PointH3 apply_h3(const MoebiusElement& g, const PointH3& p);

class PiecewiseGeodesic {
 public:
  explicit PiecewiseGeodesic(std::vector<PointH3> vertices);

  const std::vector<PointH3>& vertices() const { return v_; }
  int segment_count() const { return static_cast<int>(v_.size()) - 1; }
  double segment_length(int i) const { return cum_[i + 1] - cum_[i]; }
  double total_length() const { return cum_.back(); }
  double min_segment_length() const;
  /// Minimum interior angle over the non-smooth points; pi if none.
  double min_interior_angle() const;
  PointH3 point_at(double s) const;

  /// Curve with consecutive collinear vertices (angle within tol of pi)
  /// removed.
  PiecewiseGeodesic merged_collinear(double tol = 1e-9) const;

 private:
  std::vector<PointH3> v_;
  std::vector<double> cum_;
};

/// The curve c_r: each interior corner x_i is cut at distance r along both
/// incident segments and the two cut points are joined by a single chord.
/// Requires 0 < r < (min segment length)/2.
PiecewiseGeodesic shortcut_curve(const PiecewiseGeodesic& c, double r);

struct QuasiGeodesicCertificate {
  bool certified = false;
  double P = 0.0;  // multiplicative constant, 1 + eps when certified
  double Q = 0.0;  // additive constant from the 2r-per-corner truncation loss
  double R = 0.0;  // segment-length threshold demanded of the curve
  // Worst sampled pair when not certified; witness_excess is the amount by
  // which s/(1+eps) exceeds the sampled distance there.
  bool has_witness = false;
  double s1 = 0.0, s2 = 0.0;
  double witness_arc = 0.0, witness_dist = 0.0, witness_excess = 0.0;
};

/// Segment-length threshold R(eps, min_angle) produced by the shortcut
/// construction: r is chosen so every corner of c_r is flatter than pi -
/// delta, an explicit zigzag estimate gives c_r a (1-Delta/L_r) lower
/// distance slope, and the 2r-per-corner loss converts the bound back to c.
/// All constants are explicit; the threshold is conservative.
double quasigeodesic_length_threshold(double eps, double min_angle);

QuasiGeodesicCertificate certify_quasigeodesic(const PiecewiseGeodesic& c,
                                               double eps, double min_angle);

/// Least (P, Q) in the documented two-stage fit: P is the worst
/// arclength/distance ratio over sampled pairs at least a curve-scale
/// separation apart, Q the worst additive defect at that P. Sampled pairs are
/// drawn from a fixed deterministic stream, so enlarging `samples` extends the
/// same pair set.
std::pair<double, double> empirical_qi_constants(const PiecewiseGeodesic& c,
                                                 std::size_t samples);

/// True when every sampled parameter pair satisfies
/// s/P - Q <= d <= P s + Q.
bool qi_oracle_pass(const PiecewiseGeodesic& c, double P, double Q,
                    std::size_t samples);

struct OrientedGeodesic {
  ProjectivePoint from, to;
};

/// The geodesic of H^3 with the given ideal endpoints, oriented u -> v.
OrientedGeodesic axis_in_h3(const ProjectivePoint& u, const ProjectivePoint& v);

}  // namespace qb
