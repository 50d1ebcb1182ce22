#include "quakebend/framed.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

namespace qb {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kStableMultiplier = 4.0;  // frozen |w| > 1 constant
}  // namespace

int WeightedMultiloop::find(int curve) const {
  for (std::size_t i = 0; i < loops.size(); ++i) {
    if (loops[i].curve == curve) return static_cast<int>(i);
  }
  return -1;
}

bool weight_is_pi(double w, double tol) {
  double r = std::remainder(w - kPi, 2.0 * kPi);
  return std::abs(r) < tol;
}

Framing canonical_framing(const SurfaceGroupRep& rep,
                          const WeightedMultiloop& M) {
  Framing f;
  for (const auto& loop : M.loops) {
    MoebiusElement g = rep.curve_image(loop.curve);
    auto [repel, attract] = loxodromic_axis(g);
    if (loop.orientation >= 0) {
      f.pairs.emplace_back(repel, attract);
    } else {
      f.pairs.emplace_back(attract, repel);
    }
  }
  return f;
}

FramingReport validate_framing(const SurfaceGroupRep& rep,
                               const WeightedMultiloop& M,
                               const Framing& framing, double tol) {
  if (framing.pairs.size() != M.loops.size()) {
    throw InvalidFraming("framing must list one ordered pair per loop");
  }
  FramingReport out;
  for (std::size_t i = 0; i < M.loops.size(); ++i) {
    const auto& [u, v] = framing.pairs[i];
    if (proj_equal(u, v, 1e-12)) {
      throw InvalidFraming("framing points must be distinct");
    }
    MoebiusElement g = rep.curve_image(M.loops[i].curve);
    double r = std::max(proj_dist(apply(g, u), u), proj_dist(apply(g, v), v));
    out.per_loop.push_back(r);
    out.residual = std::max(out.residual, r);
  }
  out.pass = out.residual < tol;
  return out;
}

FramingPair extend_framing(const SurfaceGroupRep& rep, const Framing& framing,
                           int loop_index, const Word& gamma) {
  if (loop_index < 0 ||
      loop_index >= static_cast<int>(framing.pairs.size())) {
    throw UnknownLoop("no framing pair at this index");
  }
  MoebiusElement g = rep.evaluate(gamma);
  const auto& [u, v] = framing.pairs[loop_index];
  return {apply(g, u), apply(g, v)};
}

bool in_Xp(const SurfaceGroupRep& rep, const WeightedMultiloop& M,
           double tol) {
  return subvariety_flags(rep, M, tol).in_Xp;
}

bool in_Xr(const SurfaceGroupRep& rep, const WeightedMultiloop& M,
           double tol) {
  return subvariety_flags(rep, M, tol).in_Xr;
}

std::vector<std::vector<int>> complement_components(
    const PantsDecomposition& P, const WeightedMultiloop& M) {
  int np = P.pants_count();
  auto removed = [&](int c) { return M.find(c) >= 0; };
  std::vector<int> comp(np, -1);
  int n_comp = 0;
  for (int start = 0; start < np; ++start) {
    if (comp[start] >= 0) continue;
    std::deque<int> q{start};
    comp[start] = n_comp;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int c = 0; c < P.curve_count(); ++c) {
        if (removed(c)) continue;
        const Curve& e = P.curves()[c];
        for (const auto& [a, b] : {std::pair{e.side0.pants, e.side1.pants},
                                   std::pair{e.side1.pants, e.side0.pants}}) {
          if (a == v && comp[b] < 0) {
            comp[b] = n_comp;
            q.push_back(b);
          }
        }
      }
    }
    ++n_comp;
  }
  std::vector<std::vector<int>> out(n_comp);
  for (int v = 0; v < np; ++v) out[comp[v]].push_back(v);
  return out;
}

std::vector<int> component_generators(const PantsDecomposition& P,
                                      const WeightedMultiloop& M,
                                      const std::vector<int>& component) {
  std::set<int> inside(component.begin(), component.end());
  std::vector<int> gens;
  for (int g = 0; g < P.generator_count(); ++g) {
    const GenInfo& gi = P.generator(g);
    if (gi.kind == GenInfo::PantsBoundary) {
      if (inside.count(gi.pants)) gens.push_back(g);
      continue;
    }
    // Stable letter: usable only when the whole loop (the edge plus the
    // spanning-tree return path) stays inside the component and off M.
    const Curve& e = P.curves()[gi.curve];
    if (M.find(gi.curve) >= 0) continue;
    if (!inside.count(e.side0.pants) || !inside.count(e.side1.pants)) continue;
    bool ok = true;
    int a = e.side1.pants, b = e.side0.pants;
    while (a != b && ok) {
      int& up = P.depth(a) >= P.depth(b) ? a : b;
      int pc = P.parent_curve(up);
      if (M.find(pc) >= 0 || !inside.count(P.parent(up))) ok = false;
      up = P.parent(up);
    }
    if (ok) gens.push_back(g);
  }
  return gens;
}

SubvarietyFlags subvariety_flags(const SurfaceGroupRep& rep,
                                 const WeightedMultiloop& M, double tol) {
  SubvarietyFlags flags;
  flags.xp_residual = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < M.loops.size(); ++i) {
    double r = std::abs(trace_sq(rep.curve_image(M.loops[i].curve)) - 4.0);
    if (r < flags.xp_residual) {
      flags.xp_residual = r;
      if (r < tol) {
        flags.in_Xp = true;
        flags.xp_loop = M.loops[i].curve;
      }
    }
  }

  const PantsDecomposition& P = rep.pants();
  auto components = complement_components(P, M);
  flags.xr_residual = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < components.size(); ++k) {
    auto gens = component_generators(P, M, components[k]);
    double worst = 0.0;  // largest commutator defect within this component
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        const MoebiusElement& a = rep.generator_image(gens[i]);
        const MoebiusElement& b = rep.generator_image(gens[j]);
        MoebiusElement comm = compose(compose(a, b),
                                      compose(a.inverse(), b.inverse()));
        worst = std::max(worst, std::abs(comm.trace() - 2.0));
      }
    }
    if (worst < flags.xr_residual) flags.xr_residual = worst;
    if (worst < tol) {
      flags.in_Xr = true;
      if (flags.xr_component < 0) flags.xr_component = static_cast<int>(k);
    }
  }
  return flags;
}

FramedRep::FramedRep(SurfaceGroupRep rep, WeightedMultiloop M, Framing framing,
                     double tol)
    : rep_(std::move(rep)), M_(std::move(M)), framing_(std::move(framing)) {
  std::set<int> seen;
  for (const auto& loop : M_.loops) {
    if (loop.curve < 0 || loop.curve >= rep_.pants().curve_count()) {
      throw UnknownLoop("multiloop references a curve outside the decomposition");
    }
    if (!seen.insert(loop.curve).second) {
      throw UnknownLoop("multiloop lists a curve twice");
    }
    if (!(loop.weight > 0.0)) throw Error("loop weights must be positive");
  }
  FramingReport report = validate_framing(rep_, M_, framing_, tol);
  if (!report.pass) {
    throw InvalidFraming("framing points are not fixed by the loop holonomy");
  }
  flags_ = subvariety_flags(rep_, M_, tol);
}

FramedRep make_canonically_framed(SurfaceGroupRep rep,
                                  const WeightedMultiloop& M) {
  Framing f = canonical_framing(rep, M);
  return FramedRep(std::move(rep), M, std::move(f));
}

FramedRep swap_framing(const FramedRep& fr, int curve) {
  int idx = fr.multiloop().find(curve);
  if (idx < 0) throw UnknownLoop("curve is not a loop of the multiloop");
  Framing f = fr.framing();
  std::swap(f.pairs[idx].first, f.pairs[idx].second);
  return FramedRep(fr.rep(), fr.multiloop(), std::move(f));
}

WordList framed_word_ids(const PantsDecomposition& P,
                         const WeightedMultiloop& M) {
  WordList base = coordinate_words(P);
  std::ostringstream id;
  id << base.id << "+stable[";
  for (std::size_t i = 0; i < M.loops.size(); ++i) {
    id << (i ? "," : "") << "c" << M.loops[i].curve
       << (weight_is_pi(M.loops[i].weight) ? ":pi" : ":lox");
  }
  id << "]";
  base.id = id.str();
  return base;
}

CharacterVector framed_character(const FramedRep& fr) {
  const PantsDecomposition& P = fr.rep().pants();
  WordList wl = framed_word_ids(P, fr.multiloop());
  CharacterVector cv;
  cv.word_list_id = wl.id;

  std::vector<MoebiusElement> stable;
  for (std::size_t i = 0; i < fr.multiloop().loops.size(); ++i) {
    const auto& [u, v] = fr.framing().pairs[i];
    if (weight_is_pi(fr.multiloop().loops[i].weight)) {
      stable.push_back(elliptic_about(u, v, kPi));
    } else {
      stable.push_back(loxodromic_about(u, v, kStableMultiplier));
    }
  }

  for (const auto& w : wl.words) {
    cv.values.push_back(trace_sq(fr.rep().evaluate(w)));
  }
  for (const auto& s : stable) cv.values.push_back(trace_sq(s));
  for (int g = 0; g < P.generator_count(); ++g) {
    for (const auto& s : stable) {
      cv.values.push_back(
          trace_sq(compose(fr.rep().generator_image(g), s)));
    }
  }
  return cv;
}

}  // namespace qb
