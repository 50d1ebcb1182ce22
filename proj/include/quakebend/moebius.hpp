#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "quakebend/errors.hpp"

namespace qb {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;

/// A point of CP^1 in homogeneous coordinates, normalized to unit Euclidean
/// norm with the first nonzero coordinate real and positive.
class ProjectivePoint {
 public:
  ProjectivePoint(Complex z0, Complex z1);
  explicit ProjectivePoint(const Vec2c& z) : ProjectivePoint(z(0), z(1)) {}

  const Vec2c& coords() const { return z_; }
  Complex z0() const { return z_(0); }
  Complex z1() const { return z_(1); }

  static ProjectivePoint infinity() { return {1.0, 0.0}; }
  static ProjectivePoint zero() { return {0.0, 1.0}; }
  static ProjectivePoint affine(Complex z) { return {z, 1.0}; }

 private:
  Vec2c z_;
};

/// Chordal distance |z0 w1 - z1 w0| between unit representatives; zero iff
/// projectively equal, independent of phase.
double proj_dist(const ProjectivePoint& p, const ProjectivePoint& q);
bool proj_equal(const ProjectivePoint& p, const ProjectivePoint& q,
                double tol = 1e-9);

/// An element of PSL(2,C) stored as an SL(2,C) lift. The determinant is
/// renormalized to 1 on construction; equality is up to sign.
class MoebiusElement {
 public:
  MoebiusElement() : m_(Mat2c::Identity()) {}
  explicit MoebiusElement(const Mat2c& m);

  const Mat2c& matrix() const { return m_; }
  Complex trace() const { return m_(0, 0) + m_(1, 1); }
  MoebiusElement inverse() const;

 private:
  Mat2c m_;
};

MoebiusElement compose(const MoebiusElement& g, const MoebiusElement& h);
ProjectivePoint apply(const MoebiusElement& g, const ProjectivePoint& p);
Complex trace_sq(const MoebiusElement& g);

/// Entrywise complex conjugate; an anti-holomorphic involution with
/// (gh)* = g* h*.
MoebiusElement conj_star(const MoebiusElement& g);

/// max-norm distance to the nearest of +h, -h.
double psl_distance(const MoebiusElement& g, const MoebiusElement& h);
bool psl_equal(const MoebiusElement& g, const MoebiusElement& h,
               double tol = 1e-9);

enum class IsometryTag { Identity, Elliptic, Parabolic, Loxodromic };

struct IsometryClass {
  IsometryTag tag;
  double residual;  // distance of tr^2 to the decision boundary of the class
};

/// Classification by tr^2: identity/parabolic at tr^2 = 4, elliptic for real
/// tr^2 in [0,4), loxodromic otherwise. tol bounds |tr^2-4| and |Im tr^2|.
IsometryClass classify(const MoebiusElement& g, double tol = 1e-8);

/// The one (parabolic) or two (elliptic/loxodromic) fixed points on CP^1.
/// For two points the order is deterministic but carries no meaning; callers
/// order via framings. Throws IdentityElement when g is the identity in PSL.
std::vector<ProjectivePoint> fixed_points(const MoebiusElement& g,
                                          double tol = 1e-8);

/// (repelling, attracting) fixed point pair of a loxodromic with tr^2 real > 4.
std::pair<ProjectivePoint, ProjectivePoint> loxodromic_axis(
    const MoebiusElement& g, double tol = 1e-8);

/// Rotation by angle theta about the axis [u,v]: the conjugate of
/// diag(e^{i theta/2}, e^{-i theta/2}) by any T with T(1:0)=u, T(0:1)=v.
/// Fixes u and v; tr^2 = 4 cos^2(theta/2). The sign convention is fixed
/// globally; flipping it conjugates all results.
MoebiusElement elliptic_about(const ProjectivePoint& u,
                              const ProjectivePoint& v, double theta);

/// z -> wz in the chart sending u to 0 and v to infinity: u repelling,
/// v attracting. Requires |w| > 1. tr^2 = w + 2 + 1/w.
MoebiusElement loxodromic_about(const ProjectivePoint& u,
                                const ProjectivePoint& v, Complex w);

/// Eigenvector of X for the eigenvalue other than lambda_other, extracted as
/// the larger column of X - lambda_other * I. Valid whenever the two
/// eigenvalues are distinct.
Vec2c eigenvector_excluding(const Mat2c& X, Complex lambda_other);

/// Uniform-ish random element for property tests and randomized oracles.
MoebiusElement random_moebius(std::mt19937_64& rng);

}  // namespace qb
