#pragma once

#include "quakebend/framed.hpp"
#include "quakebend/hyperbolic.hpp"

namespace qb {

/// Bending deformation along the framed multiloop: every generator image is
/// composed with elliptic rotations about the framing axes of the curves its
/// loop crosses, the rotation angle being the crossing sign times the loop
/// weight. Curve holonomies of M keep their traces; words disjoint from M
/// are untouched.
SurfaceGroupRep bend(const FramedRep& fr);

/// Same deformation realized through the Fenchel-Nielsen chart: the twist of
/// every loop m of M is replaced by t_m + s * w_m * i (orientation-signed).
/// s = 0 is the input point, s = 1 the bending, real s the earthquake path;
/// characters are holomorphic in s.
SurfaceGroupRep quakebend(std::shared_ptr<const PantsDecomposition> P,
                          const FNCoordinates& fn, const WeightedMultiloop& M,
                          Complex s);

struct BentPair {
  SurfaceGroupRep first;   // bent by +w
  SurfaceGroupRep second;  // bent by -w about the same axes
  CharacterVector char_first, char_second;
  WeightedMultiloop M;
  // Framing pairs transported to each factor's positioning; the ideal
  // endpoints of the factor axes of every loop.
  Framing axes_first, axes_second;
};

BentPair complexified_bend(const FramedRep& fr);

struct AxisSystem {
  std::vector<OrientedGeodesic> first, second;
};

/// Oriented axes of the two factors' loop holonomies, matched to the framing
/// ordering. Requires every loop to be non-parabolic in both factors.
AxisSystem support_axes(const BentPair& pair, const WeightedMultiloop& M,
                        const Framing& framing);

/// Bends the first factor by -w and the second by +w along the given axes
/// and checks that the two recoveries agree at character level.
FramedRep unbend(const BentPair& pair, const WeightedMultiloop& M,
                 const AxisSystem& axes);

}  // namespace qb
