#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "quakebend/moebius.hpp"

namespace qb {

/// One letter of a word over the adapted presentation generators.
struct Letter {
  int gen;
  int pow;  // +1 or -1
};
using Word = std::vector<Letter>;

Word inverse_word(const Word& w);
Word concat_words(const Word& a, const Word& b);

struct HalfEdge {
  int pants = -1;
  int slot = -1;
};

/// A pants curve, stored as an edge of the trivalent pants graph. side0 is
/// the parent half-edge for spanning-tree edges and the half-edge nearer the
/// root otherwise; crossing sign +1 means crossing from side0 to side1.
struct Curve {
  HalfEdge side0, side1;
  bool tree = false;
  bool bridge = false;   // separating curve
  int stable_gen = -1;   // generator index of the stable letter (non-tree)
  Word dual;             // distinguished transverse loop
};

struct GenInfo {
  enum Kind { PantsBoundary, StableLetter } kind;
  int pants = -1;
  int slot = -1;   // PantsBoundary only
  int curve = -1;  // curve of this boundary slot / of this stable letter
  std::string name;
};

struct CrossingStep {
  int curve;
  int sign;
};

/// A pants decomposition of the closed genus-g surface together with a fixed
/// finite presentation of its fundamental group derived from the pants graph:
/// two free boundary generators per pants plus one stable letter per edge
/// outside a BFS spanning tree.
class PantsDecomposition {
 public:
  /// templ "chain": a necklace of pants, every curve non-separating.
  /// templ "theta": a chain of handles, with separating connector curves
  /// (exactly one for genus 2).
  static std::shared_ptr<const PantsDecomposition> standard(
      int genus, const std::string& templ = "chain");

  int genus() const { return genus_; }
  const std::string& template_id() const { return template_; }
  int pants_count() const { return 2 * genus_ - 2; }
  int curve_count() const { return 3 * genus_ - 3; }
  const std::vector<Curve>& curves() const { return curves_; }

  int generator_count() const { return static_cast<int>(gens_.size()); }
  const GenInfo& generator(int g) const { return gens_.at(g); }
  const std::vector<GenInfo>& generators() const { return gens_; }

  /// Boundary word of one pants slot: a single generator for free slots, a
  /// two-letter inverse product for the derived slot.
  Word slot_word(int pants, int slot) const;
  /// Canonical representative of a pants curve (the side0 boundary word).
  Word curve_word(int curve) const;
  const Word& dual_word(int curve) const { return curves_.at(curve).dual; }

  const std::vector<Word>& relators() const { return relators_; }

  int root() const { return 0; }
  int parent(int pants) const { return parent_.at(pants); }
  int parent_curve(int pants) const { return parent_curve_.at(pants); }
  int depth(int pants) const { return depth_.at(pants); }
  /// Curves crossed by the spanning-tree path root -> pants, in order.
  std::vector<int> tree_path_curves(int pants) const;

  /// Generator index at a free slot, -1 at the derived slot.
  int slot_generator(int pants, int slot) const {
    return slot_gen_.at(pants)[slot];
  }
  int derived_slot(int pants) const { return derived_slot_.at(pants); }

 private:
  PantsDecomposition() = default;
  void finalize();  // BFS tree, generators, relators, duals

  int genus_ = 0;
  std::string template_;
  std::vector<Curve> curves_;
  std::vector<GenInfo> gens_;
  std::vector<Word> relators_;
  std::vector<int> parent_, parent_curve_, depth_;
  // generator index per (pants, slot); -1 at the derived slot
  std::vector<std::array<int, 3>> slot_gen_;
  std::vector<int> derived_slot_;
};

/// Ordered signed crossing sequence of an adapted loop with the curves of M.
/// adapted_id is "c<k>" for the k-th curve loop or "d<k>" for its dual.
/// Curve loops are disjoint from every pants curve, so their data is empty.
std::vector<CrossingStep> crossing_data(const PantsDecomposition& P,
                                        const std::string& adapted_id,
                                        const std::vector<int>& M);

/// Per-curve (length, twist) pairs; real for Fuchsian points, complex with
/// Re length > 0 for quakebends.
struct FNCoordinates {
  std::vector<Complex> length;
  std::vector<Complex> twist;

  static FNCoordinates uniform(const PantsDecomposition& P, Complex len,
                               Complex tw = 0.0);
};

class SurfaceGroupRep {
 public:
  SurfaceGroupRep(std::shared_ptr<const PantsDecomposition> pants,
                  std::vector<MoebiusElement> images);

  const PantsDecomposition& pants() const { return *pants_; }
  std::shared_ptr<const PantsDecomposition> pants_ptr() const { return pants_; }
  const MoebiusElement& generator_image(int g) const { return images_.at(g); }
  const std::vector<MoebiusElement>& images() const { return images_; }
  MoebiusElement evaluate(const Word& w) const;
  MoebiusElement curve_image(int curve) const;
  double relation_residual() const { return residual_; }

  /// Images of the adapted generating set (curve loops and dual loops).
  std::map<std::string, MoebiusElement> adapted_images() const;

  SurfaceGroupRep conjugated(const MoebiusElement& t) const;

 private:
  std::shared_ptr<const PantsDecomposition> pants_;
  std::vector<MoebiusElement> images_;
  double residual_ = 0.0;
};

/// Holonomy representation of the Fenchel-Nielsen point: boundary holonomies
/// are loxodromics with tr = -2 cosh(l/2), pants are glued along the BFS tree
/// with twist translations diag(e^{t/2}, e^{-t/2}) inserted in the frame that
/// diagonalizes the shared boundary holonomy.
SurfaceGroupRep fn_to_rep(std::shared_ptr<const PantsDecomposition> P,
                          const FNCoordinates& fn);

struct WordList {
  std::vector<Word> words;
  std::string id;
};

/// Deterministic coordinate word list: all generators, all products of
/// generator pairs in index order, and index-windowed triples.
WordList coordinate_words(const PantsDecomposition& P);

struct CharacterVector {
  std::vector<Complex> values;
  std::string word_list_id;
};

CharacterVector character(const SurfaceGroupRep& rep, const WordList& words);
double char_distance(const CharacterVector& a, const CharacterVector& b);
double char_sup_norm(const CharacterVector& a);

}  // namespace qb
