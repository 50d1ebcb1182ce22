#include "quakebend/moebius.hpp"

#include <algorithm>
#include <cmath>

namespace qb {

ProjectivePoint::ProjectivePoint(Complex z0, Complex z1) {
  double n = std::sqrt(std::norm(z0) + std::norm(z1));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error("projective point requires a nonzero finite vector");
  }
  z_ << z0 / n, z1 / n;
  Complex lead = std::abs(z_(0)) > 0.0 ? z_(0) : z_(1);
  z_ *= std::abs(lead) / lead;
}

double proj_dist(const ProjectivePoint& p, const ProjectivePoint& q) {
  return std::abs(p.z0() * q.z1() - p.z1() * q.z0());
}

bool proj_equal(const ProjectivePoint& p, const ProjectivePoint& q,
                double tol) {
  return proj_dist(p, q) < tol;
}

MoebiusElement::MoebiusElement(const Mat2c& m) : m_(m) {
  Complex det = m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0);
  if (std::abs(det) < 1e-12) {
    throw SingularMatrix("matrix is not invertible within tolerance");
  }
  m_ /= std::sqrt(det);
}

MoebiusElement MoebiusElement::inverse() const {
  Mat2c inv;
  inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
  return MoebiusElement(inv);
}

MoebiusElement compose(const MoebiusElement& g, const MoebiusElement& h) {
  return MoebiusElement(g.matrix() * h.matrix());
}

ProjectivePoint apply(const MoebiusElement& g, const ProjectivePoint& p) {
  return ProjectivePoint(Vec2c(g.matrix() * p.coords()));
}

Complex trace_sq(const MoebiusElement& g) {
  Complex t = g.trace();
  return t * t;
}

MoebiusElement conj_star(const MoebiusElement& g) {
  return MoebiusElement(g.matrix().conjugate());
}

double psl_distance(const MoebiusElement& g, const MoebiusElement& h) {
  double dp = (g.matrix() - h.matrix()).cwiseAbs().maxCoeff();
  double dm = (g.matrix() + h.matrix()).cwiseAbs().maxCoeff();
  return std::min(dp, dm);
}

bool psl_equal(const MoebiusElement& g, const MoebiusElement& h, double tol) {
  return psl_distance(g, h) < tol;
}

namespace {

// Distance from t2 to the closed real segment [0,4], the elliptic locus.
double dist_to_elliptic_segment(Complex t2) {
  double x = std::clamp(t2.real(), 0.0, 4.0);
  return std::abs(t2 - Complex(x, 0.0));
}

}  // namespace

IsometryClass classify(const MoebiusElement& g, double tol) {
  if (!(tol > 0.0)) throw Error("classify: tol must be positive");
  Complex t2 = trace_sq(g);
  double d4 = std::abs(t2 - 4.0);
  if (d4 < tol) {
    IsometryTag tag = psl_equal(g, MoebiusElement(), tol)
                          ? IsometryTag::Identity
                          : IsometryTag::Parabolic;
    return {tag, d4};
  }
  if (std::abs(t2.imag()) < tol && t2.real() >= 0.0 && t2.real() < 4.0) {
    return {IsometryTag::Elliptic, std::min(d4, 4.0 - t2.real())};
  }
  return {IsometryTag::Loxodromic, dist_to_elliptic_segment(t2)};
}

Vec2c eigenvector_excluding(const Mat2c& X, Complex lambda_other) {
  Mat2c K = X - lambda_other * Mat2c::Identity();
  Vec2c c0 = K.col(0), c1 = K.col(1);
  return c0.norm() >= c1.norm() ? c0 : c1;
}

std::vector<ProjectivePoint> fixed_points(const MoebiusElement& g,
                                          double tol) {
  if (psl_equal(g, MoebiusElement(), tol)) {
    throw IdentityElement("every point is fixed by the identity");
  }
  Complex t = g.trace();
  Complex disc = t * t - 4.0;
  if (std::abs(disc) < tol * tol) {
    // Parabolic: the single eigenvector spans both image and kernel of
    // g - (t/2) I.
    Vec2c v = eigenvector_excluding(g.matrix(), t / 2.0);
    return {ProjectivePoint(v)};
  }
  Complex s = std::sqrt(disc);
  Complex lp = (t + s) / 2.0, lm = (t - s) / 2.0;
  // Deterministic order: larger-modulus eigenvalue first, lexicographic
  // tie-break for elliptics.
  if (std::abs(lp) < std::abs(lm) ||
      (std::abs(lp) == std::abs(lm) &&
       (lp.real() < lm.real() ||
        (lp.real() == lm.real() && lp.imag() < lm.imag())))) {
    std::swap(lp, lm);
  }
  Vec2c vp = eigenvector_excluding(g.matrix(), lm);
  Vec2c vm = eigenvector_excluding(g.matrix(), lp);
  return {ProjectivePoint(vp), ProjectivePoint(vm)};
}

std::pair<ProjectivePoint, ProjectivePoint> loxodromic_axis(
    const MoebiusElement& g, double tol) {
  Complex t2 = trace_sq(g);
  if (!(std::abs(t2.imag()) < tol) || !(t2.real() > 4.0 + tol)) {
    throw NotLoxodromic("tr^2 is not real and greater than 4");
  }
  auto pts = fixed_points(g, tol);
  // fixed_points puts the attracting point (larger |eigenvalue|) first.
  return {pts[1], pts[0]};
}

namespace {

MoebiusElement conjugated_diagonal(const ProjectivePoint& u,
                                   const ProjectivePoint& v, Complex du,
                                   Complex dv) {
  if (proj_dist(u, v) < 1e-12) {
    throw DegenerateAxis("axis endpoints coincide");
  }
  Mat2c T;
  T << u.z0(), v.z0(), u.z1(), v.z1();
  Mat2c D = Mat2c::Zero();
  D(0, 0) = du;
  D(1, 1) = dv;
  Mat2c Tinv;
  Complex det = T(0, 0) * T(1, 1) - T(0, 1) * T(1, 0);
  Tinv << T(1, 1), -T(0, 1), -T(1, 0), T(0, 0);
  Tinv /= det;
  return MoebiusElement(T * D * Tinv);
}

}  // namespace

MoebiusElement elliptic_about(const ProjectivePoint& u,
                              const ProjectivePoint& v, double theta) {
  Complex h = std::polar(1.0, theta / 2.0);
  return conjugated_diagonal(u, v, h, 1.0 / h);
}

MoebiusElement loxodromic_about(const ProjectivePoint& u,
                                const ProjectivePoint& v, Complex w) {
  if (!(std::abs(w) > 1.0)) {
    throw BadMultiplier("loxodromic multiplier must satisfy |w| > 1");
  }
  Complex sw = std::sqrt(w);
  return conjugated_diagonal(u, v, 1.0 / sw, sw);
}

MoebiusElement random_moebius(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (;;) {
    Mat2c m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = Complex(ud(rng), ud(rng));
    Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) > 0.1) return MoebiusElement(m);
  }
}

}  // namespace qb
