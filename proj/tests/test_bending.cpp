#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "quakebend/bending.hpp"

using namespace qb;

namespace {

constexpr double kPi = 3.14159265358979323846;

FNCoordinates grid_fn(const PantsDecomposition& P, int seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ul(0.7, 2.8), ut(-2.0, 2.0);
  FNCoordinates fn;
  for (int c = 0; c < P.curve_count(); ++c) {
    fn.length.push_back(ul(rng));
    fn.twist.push_back(ut(rng));
  }
  return fn;
}

}  // namespace

TEST_CASE("bend with zero-ish weight leaves the character unchanged") {
  auto P = PantsDecomposition::standard(2, "chain");
  auto wl = coordinate_words(*P);
  FNCoordinates fn = grid_fn(*P, 5);
  auto rep = fn_to_rep(P, fn);
  auto base = character(rep, wl);
  for (double w : {1e-14, 2.0 * kPi}) {
    WeightedMultiloop M{{{0, w, +1}}};
    FramedRep fr = make_canonically_framed(rep, M);
    CHECK(char_distance(base, character(bend(fr), wl)) < 1e-8);
  }
}

TEST_CASE("bend equals quakebend at s = 1 with the canonical framing") {
  for (const auto& templ : {std::string("chain"), std::string("theta")}) {
    auto P = PantsDecomposition::standard(2, templ);
    auto wl = coordinate_words(*P);
    for (int seed : {1, 2, 3, 4, 5}) {
      FNCoordinates fn = grid_fn(*P, seed);
      auto rep = fn_to_rep(P, fn);
      std::vector<WeightedMultiloop> cases = {
          {{{0, 0.7, +1}}},
          {{{1, 1.2, +1}}},
          {{{2, 0.5, +1}}},
          {{{1, kPi, +1}}},
          {{{0, 0.4, +1}, {1, 1.1, +1}, {2, 2.8, +1}}},
          {{{0, 0.9, -1}}},
      };
      for (const auto& M : cases) {
        FramedRep fr = make_canonically_framed(rep, M);
        auto via_bend = character(bend(fr), wl);
        auto via_twist = character(quakebend(P, fn, M, 1.0), wl);
        CHECK(char_distance(via_bend, via_twist) < 1e-8);
      }
    }
  }
}

TEST_CASE("bent representations satisfy the relations") {
  auto P = PantsDecomposition::standard(2, "theta");
  for (int seed : {11, 12, 13}) {
    FNCoordinates fn = grid_fn(*P, seed);
    auto rep = fn_to_rep(P, fn);
    for (double w : {0.3, kPi / 2.0, kPi, 2.8}) {
      WeightedMultiloop M{{{1, w, +1}}};
      FramedRep fr = make_canonically_framed(rep, M);
      CHECK(bend(fr).relation_residual() < 1e-8);
      CHECK(quakebend(P, fn, M, 1.0).relation_residual() < 1e-8);
      CHECK(quakebend(P, fn, M, Complex(0.3, 0.4)).relation_residual() < 1e-8);
    }
  }
}

TEST_CASE("words disjoint from M keep bit-identical traces") {
  auto P = PantsDecomposition::standard(2, "chain");
  FNCoordinates fn = grid_fn(*P, 21);
  auto rep = fn_to_rep(P, fn);
  WeightedMultiloop M{{{1, 1.1, +1}}};
  FramedRep fr = make_canonically_framed(rep, M);
  auto bent = bend(fr);
  // Root-pants boundary generators have empty crossing data with every M;
  // their images are not even conjugated.
  for (int s = 0; s < 3; ++s) {
    int g = P->slot_generator(0, s);
    if (g < 0) continue;
    Word w{{g, 1}};
    Complex a = trace_sq(rep.evaluate(w));
    Complex b = trace_sq(bent.evaluate(w));
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
  }
}

TEST_CASE("quakebend at s = 0 is the Fuchsian point") {
  auto P = PantsDecomposition::standard(2, "chain");
  auto wl = coordinate_words(*P);
  FNCoordinates fn = grid_fn(*P, 31);
  WeightedMultiloop M{{{0, 1.0, +1}}};
  CHECK(char_distance(character(fn_to_rep(P, fn), wl),
                      character(quakebend(P, fn, M, 0.0), wl)) == 0.0);
}

TEST_CASE("curve traces off M are independent of s") {
  auto P = PantsDecomposition::standard(2, "chain");
  FNCoordinates fn = grid_fn(*P, 33);
  WeightedMultiloop M{{{2, 0.8, +1}}};
  for (Complex s : {Complex(0.5, 0.0), Complex(0.0, 1.0), Complex(0.7, -0.3)}) {
    auto rep = quakebend(P, fn, M, s);
    for (int c = 0; c < 3; ++c) {
      Complex expect = 4.0 * std::pow(std::cosh(fn.length[c] / 2.0), 2);
      CHECK(std::abs(trace_sq(rep.curve_image(c)) - expect) < 1e-9);
    }
  }
}

TEST_CASE("complexified bend pairs conjugate characters at Fuchsian points") {
  for (const auto& templ : {std::string("chain"), std::string("theta")}) {
    auto P = PantsDecomposition::standard(2, templ);
    for (int seed : {41, 42, 43}) {
      auto rep = fn_to_rep(P, grid_fn(*P, seed));
      WeightedMultiloop M{{{1, 1.3, +1}}};
      FramedRep fr = make_canonically_framed(rep, M);
      BentPair pair = complexified_bend(fr);
      REQUIRE(pair.char_first.values.size() == pair.char_second.values.size());
      for (std::size_t i = 0; i < pair.char_first.values.size(); ++i) {
        CHECK(std::abs(pair.char_first.values[i] -
                       std::conj(pair.char_second.values[i])) < 1e-9);
      }
      CHECK(pair.first.relation_residual() < 1e-8);
      CHECK(pair.second.relation_residual() < 1e-8);
    }
  }
}

TEST_CASE("first factor of the complexified bend is the bending") {
  auto P = PantsDecomposition::standard(2, "chain");
  auto wl = coordinate_words(*P);
  auto rep = fn_to_rep(P, grid_fn(*P, 51));
  WeightedMultiloop M{{{0, 0.9, +1}, {2, 1.7, +1}}};
  FramedRep fr = make_canonically_framed(rep, M);
  BentPair pair = complexified_bend(fr);
  CHECK(char_distance(pair.char_first, character(bend(fr), wl)) < 1e-12);
  // Zero weight: both factors coincide with the input.
  WeightedMultiloop M0{{{0, 1e-14, +1}}};
  BentPair p0 = complexified_bend(make_canonically_framed(rep, M0));
  auto base = character(rep, wl);
  CHECK(char_distance(p0.char_first, base) < 1e-9);
  CHECK(char_distance(p0.char_second, base) < 1e-9);
}

TEST_CASE("Z2 descent: weight-pi bending ignores the framing order") {
  auto P = PantsDecomposition::standard(2, "theta");
  auto wl = coordinate_words(*P);
  for (int seed : {61, 62}) {
    auto rep = fn_to_rep(P, grid_fn(*P, seed));
    WeightedMultiloop M{{{1, kPi, +1}}};
    FramedRep fr = make_canonically_framed(rep, M);
    CHECK(char_distance(character(bend(fr), wl),
                        character(bend(swap_framing(fr, 1)), wl)) < 1e-9);
  }
}

TEST_CASE("support axes of a Fuchsian bend sit on the loop axes") {
  auto P = PantsDecomposition::standard(2, "chain");
  auto rep = fn_to_rep(P, grid_fn(*P, 71));
  WeightedMultiloop M{{{0, 1.2, +1}}};
  FramedRep fr = make_canonically_framed(rep, M);
  BentPair pair = complexified_bend(fr);
  AxisSystem axes = support_axes(pair, M, fr.framing());
  // Curve 0 sits on the root pants, so the corridor is trivial and both
  // factor axes are the original loop axis.
  CHECK(proj_equal(axes.first[0].from, fr.framing().pairs[0].first, 1e-9));
  CHECK(proj_equal(axes.second[0].to, fr.framing().pairs[0].second, 1e-9));
  // Axis endpoints are fixed by the bent holonomies.
  for (int factor = 0; factor < 2; ++factor) {
    const auto& ax = factor == 0 ? axes.first[0] : axes.second[0];
    const auto& g = factor == 0 ? pair.first : pair.second;
    CHECK(proj_dist(apply(g.curve_image(0), ax.from), ax.from) < 1e-9);
    CHECK(proj_dist(apply(g.curve_image(0), ax.to), ax.to) < 1e-9);
  }
}

TEST_CASE("support axes move continuously along an FN path") {
  auto P = PantsDecomposition::standard(2, "chain");
  WeightedMultiloop M{{{1, 0.9, +1}}};
  ProjectivePoint prev_u = ProjectivePoint::zero();
  bool have_prev = false;
  for (int k = 0; k <= 20; ++k) {
    FNCoordinates fn = FNCoordinates::uniform(*P, 1.4, 0.2);
    fn.length[1] = 1.0 + 0.02 * k;
    auto fr = make_canonically_framed(fn_to_rep(P, fn), M);
    BentPair pair = complexified_bend(fr);
    AxisSystem axes = support_axes(pair, M, fr.framing());
    if (have_prev) {
      CHECK(proj_dist(axes.first[0].from, prev_u) < 0.05);
    }
    prev_u = axes.first[0].from;
    have_prev = true;
  }
}

TEST_CASE("support axes refuse parabolic loops") {
  auto T = PantsDecomposition::standard(2, "theta");
  std::vector<MoebiusElement> imgs(T->generator_count());
  int g0 = T->slot_generator(0, 0);
  int g1 = T->slot_generator(0, 1);
  int t0 = T->curves()[0].stable_gen;
  Mat2c d2, d3;
  d2 << 2, 0, 0, 0.5;
  d3 << 3, 0, 0, 1.0 / 3.0;
  imgs[g0] = MoebiusElement(d2);
  imgs[g1] = imgs[g0].inverse();
  imgs[t0] = MoebiusElement(d3);
  SurfaceGroupRep rep(T, imgs);
  WeightedMultiloop M{{{1, kPi, +1}}};
  Framing f;
  f.pairs.emplace_back(ProjectivePoint::infinity(), ProjectivePoint::zero());
  FramedRep fr(rep, M, f);
  BentPair pair = complexified_bend(fr);
  CHECK_THROWS_AS(support_axes(pair, M, f), ParabolicLoop);
}

TEST_CASE("unbend inverts the complexified bend") {
  for (const auto& templ : {std::string("chain"), std::string("theta")}) {
    auto P = PantsDecomposition::standard(2, templ);
    auto rep = fn_to_rep(P, grid_fn(*P, 81));
    WeightedMultiloop M{{{1, 1.1, +1}}};
    FramedRep fr = make_canonically_framed(rep, M);
    BentPair pair = complexified_bend(fr);
    AxisSystem axes = support_axes(pair, M, fr.framing());
    FramedRep rec = unbend(pair, M, axes);
    CHECK(char_distance(framed_character(rec), framed_character(fr)) < 1e-8);
  }
}

TEST_CASE("tampered axes are rejected") {
  auto P = PantsDecomposition::standard(2, "chain");
  auto rep = fn_to_rep(P, grid_fn(*P, 91));
  WeightedMultiloop M{{{0, 1.0, +1}}};
  FramedRep fr = make_canonically_framed(rep, M);
  BentPair pair = complexified_bend(fr);
  AxisSystem axes = support_axes(pair, M, fr.framing());
  AxisSystem bad = axes;
  bad.first[0] = axis_in_h3(ProjectivePoint(Complex(0.21, 0.5), 1.0),
                            ProjectivePoint(Complex(-0.7, 0.1), 1.0));
  CHECK_THROWS_AS(unbend(pair, M, bad), InconsistentAxes);
}

TEST_CASE("quakebend characters pass a central-difference holomorphy test") {
  auto P = PantsDecomposition::standard(2, "chain");
  FNCoordinates fn = grid_fn(*P, 95);
  WeightedMultiloop M{{{0, 1.0, +1}}};
  auto wl = coordinate_words(*P);
  double h = 1e-4;
  auto value = [&](Complex s, std::size_t k) {
    return character(quakebend(P, fn, M, s), wl).values[k];
  };
  for (std::size_t k : {std::size_t(0), std::size_t(8), std::size_t(20)}) {
    Complex s0(0.2, -0.1);
    Complex fx = (value(s0 + h, k) - value(s0 - h, k)) / (2.0 * h);
    Complex fy = (value(s0 + Complex(0, h), k) - value(s0 - Complex(0, h), k)) /
                 (2.0 * h);
    Complex wirtinger_bar = (fx + Complex(0, 1) * fy) / 2.0;
    double scale = std::max(1.0, std::abs(value(s0, k)));
    CHECK(std::abs(wirtinger_bar) < 1e-5 * scale);
  }
}
