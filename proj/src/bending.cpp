#include "quakebend/bending.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qb {

namespace {

struct BendResult {
  SurfaceGroupRep rep;
  Framing transported;
};

// The bending cocycle evaluated on the presentation generators. For a pants
// generator the whole loop is conjugated by the corridor of elliptics
// collected along the spanning-tree path from the root; a stable letter
// additionally picks up the rotation about its own curve's axis at the
// crossing. Corridors use the axes in the input rep's positioning; the
// telescoping identity E(A1) E(A2) = E(A1) E(A2)... makes this equal to
// rotating about the successively bent axes, so relators map to the
// identity exactly.
BendResult bend_core(const SurfaceGroupRep& rep, const WeightedMultiloop& M,
                     const Framing& framing, double sign, bool validate) {
  const PantsDecomposition& P = rep.pants();
  if (validate) {
    FramingReport rp = validate_framing(rep, M, framing);
    if (!rp.pass) {
      throw InvalidFraming("framing points are not fixed by the loop holonomy");
    }
  }

  std::vector<MoebiusElement> insertion(P.curve_count());
  std::vector<bool> in_M(P.curve_count(), false);
  for (std::size_t i = 0; i < M.loops.size(); ++i) {
    int c = M.loops[i].curve;
    in_M[c] = true;
    insertion[c] = elliptic_about(framing.pairs[i].first,
                                  framing.pairs[i].second,
                                  sign * M.loops[i].weight);
  }

  int np = P.pants_count();
  std::vector<MoebiusElement> corridor(np);
  std::vector<int> order(np);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return P.depth(a) < P.depth(b);
  });
  for (int v : order) {
    if (v == P.root()) continue;
    int c = P.parent_curve(v);
    corridor[v] = in_M[c] ? compose(corridor[P.parent(v)], insertion[c])
                          : corridor[P.parent(v)];
  }

  std::vector<MoebiusElement> images(P.generator_count());
  for (int g = 0; g < P.generator_count(); ++g) {
    const GenInfo& gi = P.generator(g);
    if (gi.kind == GenInfo::PantsBoundary) {
      const MoebiusElement& cv = corridor[gi.pants];
      images[g] = compose(compose(cv, rep.generator_image(g)), cv.inverse());
    } else {
      const Curve& e = P.curves()[gi.curve];
      MoebiusElement head = corridor[e.side0.pants];
      if (in_M[gi.curve]) head = compose(head, insertion[gi.curve]);
      images[g] = compose(compose(head, rep.generator_image(g)),
                          corridor[e.side1.pants].inverse());
    }
  }

  Framing transported;
  for (std::size_t i = 0; i < M.loops.size(); ++i) {
    const Curve& e = P.curves()[M.loops[i].curve];
    const MoebiusElement& cv = corridor[e.side0.pants];
    transported.pairs.emplace_back(apply(cv, framing.pairs[i].first),
                                   apply(cv, framing.pairs[i].second));
  }
  return {SurfaceGroupRep(rep.pants_ptr(), std::move(images)),
          std::move(transported)};
}

}  // namespace

SurfaceGroupRep bend(const FramedRep& fr) {
  return bend_core(fr.rep(), fr.multiloop(), fr.framing(), +1.0, true).rep;
}

SurfaceGroupRep quakebend(std::shared_ptr<const PantsDecomposition> P,
                          const FNCoordinates& fn, const WeightedMultiloop& M,
                          Complex s) {
  FNCoordinates shifted = fn;
  for (const auto& loop : M.loops) {
    if (loop.curve < 0 || loop.curve >= P->curve_count()) {
      throw UnknownLoop("multiloop references a curve outside the decomposition");
    }
    shifted.twist[loop.curve] +=
        s * Complex(0.0, loop.weight * loop.orientation);
  }
  return fn_to_rep(P, shifted);
}

BentPair complexified_bend(const FramedRep& fr) {
  BendResult plus = bend_core(fr.rep(), fr.multiloop(), fr.framing(), +1.0,
                              true);
  BendResult minus = bend_core(fr.rep(), fr.multiloop(), fr.framing(), -1.0,
                               false);
  WordList wl = coordinate_words(fr.rep().pants());
  BentPair out{plus.rep,
               minus.rep,
               character(plus.rep, wl),
               character(minus.rep, wl),
               fr.multiloop(),
               std::move(plus.transported),
               std::move(minus.transported)};
  return out;
}

AxisSystem support_axes(const BentPair& pair, const WeightedMultiloop& M,
                        const Framing& framing) {
  if (framing.pairs.size() != M.loops.size() ||
      M.loops.size() != pair.axes_first.pairs.size()) {
    throw Error("axis system query does not match the bent pair");
  }
  AxisSystem axes;
  for (std::size_t i = 0; i < M.loops.size(); ++i) {
    int c = M.loops[i].curve;
    for (const SurfaceGroupRep* rep : {&pair.first, &pair.second}) {
      if (std::abs(trace_sq(rep->curve_image(c)) - 4.0) < 1e-8) {
        throw ParabolicLoop("loop holonomy is parabolic; no axis system");
      }
    }
    const auto& [u1, v1] = pair.axes_first.pairs[i];
    const auto& [u2, v2] = pair.axes_second.pairs[i];
    axes.first.push_back(axis_in_h3(u1, v1));
    axes.second.push_back(axis_in_h3(u2, v2));
  }
  return axes;
}

FramedRep unbend(const BentPair& pair, const WeightedMultiloop& M,
                 const AxisSystem& axes) {
  if (axes.first.size() != M.loops.size() ||
      axes.second.size() != M.loops.size()) {
    throw InconsistentAxes("one axis per loop per factor is required");
  }
  Framing fa, fb;
  for (std::size_t i = 0; i < M.loops.size(); ++i) {
    fa.pairs.emplace_back(axes.first[i].from, axes.first[i].to);
    fb.pairs.emplace_back(axes.second[i].from, axes.second[i].to);
  }
  try {
    FramingReport ra = validate_framing(pair.first, M, fa, 1e-7);
    FramingReport rb = validate_framing(pair.second, M, fb, 1e-7);
    if (!ra.pass || !rb.pass) {
      throw InconsistentAxes("axes are not fixed by the factor holonomies");
    }
  } catch (const InvalidFraming&) {
    throw InconsistentAxes("axes are not a valid framing of the factors");
  }

  BendResult recA = bend_core(pair.first, M, fa, -1.0, false);
  BendResult recB = bend_core(pair.second, M, fb, +1.0, false);
  WordList wl = coordinate_words(pair.first.pants());
  double gap = char_distance(character(recA.rep, wl), character(recB.rep, wl));
  if (gap > 1e-7) {
    throw InconsistentAxes("factor recoveries disagree beyond tolerance");
  }
  return FramedRep(std::move(recA.rep), M, std::move(recA.transported));
}

}  // namespace qb
