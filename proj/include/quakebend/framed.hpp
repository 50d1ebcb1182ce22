#pragma once

#include <optional>
#include <utility>

#include "quakebend/surface.hpp"

namespace qb {

struct LoopSpec {
  int curve;
  double weight;        // in radians, > 0
  int orientation = 1;  // +1 or -1
};

struct WeightedMultiloop {
  std::vector<LoopSpec> loops;

  int find(int curve) const;  // index in loops or -1
};

/// True when w is pi modulo 2 pi.
bool weight_is_pi(double w, double tol = 1e-9);

using FramingPair = std::pair<ProjectivePoint, ProjectivePoint>;

/// Ordered fixed-point pair per loop of the multiloop, aligned with
/// WeightedMultiloop::loops.
struct Framing {
  std::vector<FramingPair> pairs;
};

/// (repelling, attracting) fixed points of every loop holonomy, swapped for
/// loops of orientation -1. Requires loxodromic loop holonomies.
Framing canonical_framing(const SurfaceGroupRep& rep,
                          const WeightedMultiloop& M);

struct FramingReport {
  double residual = 0.0;
  bool pass = false;
  std::vector<double> per_loop;
};

/// Max projective distance between each framing point and its image under
/// the loop holonomy.
FramingReport validate_framing(const SurfaceGroupRep& rep,
                               const WeightedMultiloop& M,
                               const Framing& framing, double tol = 1e-8);

/// Framing at the conjugate representative gamma alpha_m gamma^{-1}:
/// (rho(gamma) u_m, rho(gamma) v_m).
FramingPair extend_framing(const SurfaceGroupRep& rep, const Framing& framing,
                           int loop_index, const Word& gamma);

struct SubvarietyFlags {
  bool in_Xp = false;
  int xp_loop = -1;
  double xp_residual = 0.0;  // min over loops of |tr^2 - 4|
  bool in_Xr = false;
  int xr_component = -1;
  double xr_residual = 0.0;  // min over components of worst commutator defect
};

/// tr^2 rho(m) = 4 for at least one loop of M.
bool in_Xp(const SurfaceGroupRep& rep, const WeightedMultiloop& M,
           double tol = 1e-8);

/// Some component F of S \ M is reducible: every pair of F's adapted
/// generators has commutator trace 2 (shared eigenvector criterion).
bool in_Xr(const SurfaceGroupRep& rep, const WeightedMultiloop& M,
           double tol = 1e-8);

SubvarietyFlags subvariety_flags(const SurfaceGroupRep& rep,
                                 const WeightedMultiloop& M,
                                 double tol = 1e-8);

/// Pants grouped into connected components of the pants graph with the
/// edges of M removed.
std::vector<std::vector<int>> complement_components(
    const PantsDecomposition& P, const WeightedMultiloop& M);

/// Generators of pi_1 of one complement component: boundary generators of
/// its pants plus stable letters whose loop stays inside the component.
std::vector<int> component_generators(const PantsDecomposition& P,
                                      const WeightedMultiloop& M,
                                      const std::vector<int>& component);

class FramedRep {
 public:
  FramedRep(SurfaceGroupRep rep, WeightedMultiloop M, Framing framing,
            double tol = 1e-8);

  const SurfaceGroupRep& rep() const { return rep_; }
  const WeightedMultiloop& multiloop() const { return M_; }
  const Framing& framing() const { return framing_; }
  const SubvarietyFlags& flags() const { return flags_; }

 private:
  SurfaceGroupRep rep_;
  WeightedMultiloop M_;
  Framing framing_;
  SubvarietyFlags flags_;
};

FramedRep make_canonically_framed(SurfaceGroupRep rep,
                                  const WeightedMultiloop& M);

/// The Z_2 action on one loop: (u, v) -> (v, u).
FramedRep swap_framing(const FramedRep& fr, int curve);

/// Word list for the framed character: the coordinate words, each stable
/// letter, and each generator times each stable letter.
WordList framed_word_ids(const PantsDecomposition& P,
                         const WeightedMultiloop& M);

/// Trace-square vector over the framed word list. Stable letters map to
/// loxodromic_about(u, v, w0) with the frozen multiplier w0 = 4 for loops of
/// weight != pi, and to elliptic_about(u, v, pi) for weight-pi loops, which
/// makes every exported value Z_2-invariant on those loops.
CharacterVector framed_character(const FramedRep& fr);

}  // namespace qb
