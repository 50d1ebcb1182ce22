#include "quakebend/surface.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

namespace qb {

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    out.push_back({it->gen, -it->pow});
  }
  return out;
}

Word concat_words(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

namespace {

struct EdgeDraft {
  HalfEdge h0, h1;
};

std::vector<EdgeDraft> chain_edges(int g) {
  // Necklace: pants 0..2g-3 in a cycle, plus chords pairing the spare
  // boundaries of consecutive even/odd pants. Every edge lies on a cycle,
  // so every curve is non-separating.
  int n = 2 * g - 2;
  std::vector<EdgeDraft> edges;
  for (int k = 0; k < n; ++k) {
    edges.push_back({{k, 1}, {(k + 1) % n, 0}});
  }
  for (int i = 0; i + 1 < n; i += 2) {
    edges.push_back({{i, 2}, {i + 1, 2}});
  }
  return edges;
}

std::vector<EdgeDraft> theta_edges(int g) {
  // Chain of handles: a self-loop at each end, single connector edges at
  // even gaps and double edges at odd gaps. Connector edges are bridges,
  // hence separating curves; for genus 2 this is the one-separating-curve
  // decomposition.
  int n = 2 * g - 2;
  std::vector<EdgeDraft> edges;
  edges.push_back({{0, 0}, {0, 1}});
  std::vector<int> next_free(n, 0);
  next_free[0] = 2;
  for (int gap = 0; gap + 1 < n; ++gap) {
    int a = gap, b = gap + 1;
    int copies = (gap % 2 == 0) ? 1 : 2;
    for (int c = 0; c < copies; ++c) {
      edges.push_back({{a, next_free[a]++}, {b, next_free[b]++}});
    }
  }
  edges.push_back({{n - 1, next_free[n - 1]}, {n - 1, next_free[n - 1] + 1}});
  return edges;
}

}  // namespace

std::shared_ptr<const PantsDecomposition> PantsDecomposition::standard(
    int genus, const std::string& templ) {
  if (genus < 2) throw BadGenus("genus must be at least 2");
  std::vector<EdgeDraft> drafts;
  if (templ == "chain") {
    drafts = chain_edges(genus);
  } else if (templ == "theta") {
    drafts = theta_edges(genus);
  } else {
    throw Error("unknown pants template: " + templ);
  }
  auto P = std::shared_ptr<PantsDecomposition>(new PantsDecomposition());
  P->genus_ = genus;
  P->template_ = templ;
  for (const auto& d : drafts) {
    Curve c;
    c.side0 = d.h0;
    c.side1 = d.h1;
    P->curves_.push_back(c);
  }
  P->finalize();
  return P;
}

void PantsDecomposition::finalize() {
  int np = pants_count();
  int nc = curve_count();
  if (static_cast<int>(curves_.size()) != nc) {
    throw Error("pants graph has the wrong number of curves");
  }

  // Slot sanity: every pants uses each of its three slots exactly once.
  std::vector<std::array<bool, 3>> used(np, {false, false, false});
  for (const auto& c : curves_) {
    for (const HalfEdge* h : {&c.side0, &c.side1}) {
      if (h->pants < 0 || h->pants >= np || h->slot < 0 || h->slot > 2 ||
          used[h->pants][h->slot]) {
        throw Error("invalid pants graph");
      }
      used[h->pants][h->slot] = true;
    }
  }

  // Bridges: curves whose removal disconnects the graph.
  for (int c = 0; c < nc; ++c) {
    if (curves_[c].side0.pants == curves_[c].side1.pants) continue;
    std::vector<bool> vis(np, false);
    std::deque<int> q{0};
    vis[0] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int e = 0; e < nc; ++e) {
        if (e == c) continue;
        for (const auto& [a, b] :
             {std::pair{curves_[e].side0.pants, curves_[e].side1.pants},
              std::pair{curves_[e].side1.pants, curves_[e].side0.pants}}) {
          if (a == v && !vis[b]) {
            vis[b] = true;
            q.push_back(b);
          }
        }
      }
    }
    curves_[c].bridge = !std::all_of(vis.begin(), vis.end(),
                                     [](bool b) { return b; });
  }

  // BFS spanning tree from pants 0; side0 of a tree edge is the parent
  // half-edge, side0 of any other edge is the half-edge nearer the root.
  parent_.assign(np, -1);
  parent_curve_.assign(np, -1);
  depth_.assign(np, 0);
  std::vector<bool> visited(np, false), decided(nc, false);
  visited[0] = true;
  std::deque<int> q{0};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int c = 0; c < nc; ++c) {
      if (decided[c]) continue;
      Curve& e = curves_[c];
      int other = -1;
      if (e.side0.pants == v) {
        other = e.side1.pants;
      } else if (e.side1.pants == v) {
        other = e.side0.pants;
        if (!visited[other]) std::swap(e.side0, e.side1);
      } else {
        continue;
      }
      decided[c] = true;
      if (!visited[other]) {
        e.tree = true;
        visited[other] = true;
        parent_[other] = v;
        parent_curve_[other] = c;
        depth_[other] = depth_[v] + 1;
        q.push_back(other);
      } else if (depth_[e.side1.pants] < depth_[e.side0.pants]) {
        std::swap(e.side0, e.side1);
      }
    }
  }
  if (!std::all_of(visited.begin(), visited.end(), [](bool b) { return b; })) {
    throw Error("pants graph is not connected");
  }

  // Generators: two free boundary slots per pants, then one stable letter
  // per non-tree curve.
  derived_slot_.assign(np, 2);
  for (int v = 1; v < np; ++v) {
    int pc = parent_curve_[v];
    derived_slot_[v] = curves_[pc].side1.slot;
  }
  slot_gen_.assign(np, {-1, -1, -1});
  for (int v = 0; v < np; ++v) {
    for (int s = 0; s < 3; ++s) {
      if (s == derived_slot_[v]) continue;
      GenInfo gi;
      gi.kind = GenInfo::PantsBoundary;
      gi.pants = v;
      gi.slot = s;
      gi.name = "p" + std::to_string(v) + "s" + std::to_string(s);
      slot_gen_[v][s] = static_cast<int>(gens_.size());
      gens_.push_back(gi);
    }
  }
  for (int c = 0; c < nc; ++c) {
    // Record which curve each boundary generator belongs to.
    for (const HalfEdge* h : {&curves_[c].side0, &curves_[c].side1}) {
      int g = slot_gen_[h->pants][h->slot];
      if (g >= 0) gens_[g].curve = c;
    }
    if (!curves_[c].tree) {
      GenInfo gi;
      gi.kind = GenInfo::StableLetter;
      gi.curve = c;
      gi.name = "t" + std::to_string(c);
      curves_[c].stable_gen = static_cast<int>(gens_.size());
      gens_.push_back(gi);
    }
  }

  // Relators: boundary identification along tree edges, HNN conjugation
  // along the rest.
  for (int c = 0; c < nc; ++c) {
    const Curve& e = curves_[c];
    Word w0 = slot_word(e.side0.pants, e.side0.slot);
    Word w1 = slot_word(e.side1.pants, e.side1.slot);
    if (e.tree) {
      relators_.push_back(concat_words(w0, w1));
    } else {
      Word r{{e.stable_gen, 1}};
      r = concat_words(r, w1);
      r.push_back({e.stable_gen, -1});
      relators_.push_back(concat_words(r, w0));
    }
  }

  // Dual loops. Non-tree curves use their stable letter. A tree curve on
  // some fundamental cycle uses that cycle's stable letter, inverted if
  // needed so its own crossing sign is +1. Bridges (separating curves) lie
  // on no cycle and use a two-sided boundary product crossing twice.
  for (int c = 0; c < nc; ++c) {
    Curve& e = curves_[c];
    if (!e.tree) {
      e.dual = Word{{e.stable_gen, 1}};
    } else if (e.bridge) {
      int v = e.side0.pants, i = e.side0.slot;
      int w = e.side1.pants, j = e.side1.slot;
      e.dual = concat_words(slot_word(v, (i + 1) % 3),
                            slot_word(w, (j + 1) % 3));
    }
  }
  for (int c = 0; c < nc; ++c) {
    Curve& e = curves_[c];
    if (!e.tree || e.bridge) continue;
    bool found = false;
    for (int f = 0; f < nc && !found; ++f) {
      if (curves_[f].tree) continue;
      for (const auto& step : crossing_data(*this, "d" + std::to_string(f),
                                            std::vector<int>{c})) {
        e.dual = step.sign > 0 ? curves_[f].dual
                               : inverse_word(curves_[f].dual);
        found = true;
        break;
      }
    }
    if (!found) throw Error("internal: no cycle covers a non-bridge tree edge");
  }
}

Word PantsDecomposition::slot_word(int pants, int slot) const {
  int g = slot_gen_.at(pants)[slot];
  if (g >= 0) return {{g, 1}};
  // Derived slot k: b_k = (b_{k+1} b_{k+2})^{-1}.
  int g1 = slot_gen_.at(pants)[(slot + 1) % 3];
  int g2 = slot_gen_.at(pants)[(slot + 2) % 3];
  return {{g2, -1}, {g1, -1}};
}

Word PantsDecomposition::curve_word(int curve) const {
  const Curve& c = curves_.at(curve);
  return slot_word(c.side0.pants, c.side0.slot);
}

std::vector<int> PantsDecomposition::tree_path_curves(int pants) const {
  std::vector<int> path;
  for (int v = pants; v != 0; v = parent_[v]) path.push_back(parent_curve_[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<CrossingStep> crossing_data(const PantsDecomposition& P,
                                        const std::string& adapted_id,
                                        const std::vector<int>& M) {
  for (int c : M) {
    if (c < 0 || c >= P.curve_count()) throw UnknownLoop("no such curve");
  }
  if (adapted_id.size() < 2 ||
      (adapted_id[0] != 'c' && adapted_id[0] != 'd')) {
    throw UnknownGenerator("adapted generator ids are c<k> and d<k>");
  }
  int k = -1;
  try {
    k = std::stoi(adapted_id.substr(1));
  } catch (...) {
    throw UnknownGenerator("bad adapted generator id: " + adapted_id);
  }
  if (k < 0 || k >= P.curve_count()) {
    throw UnknownGenerator("bad adapted generator id: " + adapted_id);
  }
  auto in_M = [&](int c) {
    return std::find(M.begin(), M.end(), c) != M.end();
  };
  // Curve loops are disjoint from all pants curves.
  if (adapted_id[0] == 'c') return {};

  const Curve& e = P.curves()[k];
  std::vector<CrossingStep> seq;
  if (e.tree && e.bridge) {
    seq = {{k, +1}, {k, -1}};
  } else {
    // The dual is (up to inversion) a stable letter t_f: it crosses f from
    // side0 to side1, then returns to the root side along the spanning
    // tree, crossing the tree path between the endpoints of f.
    int f = k;
    int sign_flip = +1;
    if (e.tree) {
      const auto& dual = P.dual_word(k);
      f = P.generator(dual[0].gen).curve;
      sign_flip = dual[0].pow;
    }
    const Curve& fc = P.curves()[f];
    seq.push_back({f, +1});
    std::vector<int> up, down;
    int a = fc.side1.pants, b = fc.side0.pants;
    while (a != b) {
      if (P.depth(a) >= P.depth(b)) {
        up.push_back(P.parent_curve(a));
        a = P.parent(a);
      } else {
        down.push_back(P.parent_curve(b));
        b = P.parent(b);
      }
    }
    for (int c : up) seq.push_back({c, -1});
    for (auto it = down.rbegin(); it != down.rend(); ++it) {
      seq.push_back({*it, +1});
    }
    if (sign_flip < 0) {
      std::reverse(seq.begin(), seq.end());
      for (auto& s : seq) s.sign = -s.sign;
    }
  }
  std::vector<CrossingStep> out;
  for (const auto& s : seq) {
    if (in_M(s.curve)) out.push_back(s);
  }
  return out;
}

FNCoordinates FNCoordinates::uniform(const PantsDecomposition& P, Complex len,
                                     Complex tw) {
  FNCoordinates fn;
  fn.length.assign(P.curve_count(), len);
  fn.twist.assign(P.curve_count(), tw);
  return fn;
}

SurfaceGroupRep::SurfaceGroupRep(
    std::shared_ptr<const PantsDecomposition> pants,
    std::vector<MoebiusElement> images)
    : pants_(std::move(pants)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != pants_->generator_count()) {
    throw Error("one image per presentation generator is required");
  }
  residual_ = 0.0;
  for (const auto& r : pants_->relators()) {
    residual_ = std::max(residual_, psl_distance(evaluate(r), MoebiusElement()));
  }
}

MoebiusElement SurfaceGroupRep::evaluate(const Word& w) const {
  MoebiusElement out;
  for (const auto& l : w) {
    if (l.gen < 0 || l.gen >= static_cast<int>(images_.size())) {
      throw UnknownGenerator("word references an unknown generator");
    }
    out = compose(out, l.pow > 0 ? images_[l.gen] : images_[l.gen].inverse());
  }
  return out;
}

MoebiusElement SurfaceGroupRep::curve_image(int curve) const {
  return evaluate(pants_->curve_word(curve));
}

std::map<std::string, MoebiusElement> SurfaceGroupRep::adapted_images() const {
  std::map<std::string, MoebiusElement> out;
  for (int c = 0; c < pants_->curve_count(); ++c) {
    out["c" + std::to_string(c)] = curve_image(c);
    out["d" + std::to_string(c)] = evaluate(pants_->dual_word(c));
  }
  return out;
}

SurfaceGroupRep SurfaceGroupRep::conjugated(const MoebiusElement& t) const {
  std::vector<MoebiusElement> imgs;
  imgs.reserve(images_.size());
  for (const auto& g : images_) {
    imgs.push_back(compose(compose(t, g), t.inverse()));
  }
  return SurfaceGroupRep(pants_, std::move(imgs));
}

namespace {

MoebiusElement twist_matrix(Complex t) {
  Mat2c m = Mat2c::Zero();
  m(0, 0) = std::exp(t / 2.0);
  m(1, 1) = std::exp(-t / 2.0);
  return MoebiusElement(m);
}

// Inverse of the frame that diagonalizes X to -diag(e^{l/2}, e^{-l/2});
// columns are the attracting and repelling eigenvectors. Eigenvalues are
// known analytically from the curve length, so no numerical eigensolver is
// involved and the construction is analytic in the FN coordinates.
MoebiusElement diag_frame_inv(const Mat2c& X, Complex length) {
  Complex att = -std::exp(length / 2.0);
  Complex rep = -std::exp(-length / 2.0);
  Mat2c ninv;
  ninv.col(0) = eigenvector_excluding(X, rep);
  ninv.col(1) = eigenvector_excluding(X, att);
  return MoebiusElement(ninv);
}

}  // namespace

SurfaceGroupRep fn_to_rep(std::shared_ptr<const PantsDecomposition> P,
                          const FNCoordinates& fn) {
  int nc = P->curve_count();
  if (static_cast<int>(fn.length.size()) != nc ||
      static_cast<int>(fn.twist.size()) != nc) {
    throw InvalidLength("FN coordinates must list every pants curve");
  }
  for (const auto& l : fn.length) {
    if (!(l.real() > 0.0)) {
      throw InvalidLength("FN lengths require positive real part");
    }
  }

  int np = P->pants_count();
  std::vector<Complex> trace(nc);
  for (int c = 0; c < nc; ++c) trace[c] = -2.0 * std::cosh(fn.length[c] / 2.0);

  // Raw per-pants matrices in the Fricke normal form, with the derived slot
  // k satisfying b_k = (b_{k+1} b_{k+2})^{-1} and tr b_i the boundary trace.
  std::vector<std::array<Mat2c, 3>> raw(np);
  std::vector<std::array<int, 3>> slot_curve(np);
  for (int c = 0; c < nc; ++c) {
    const Curve& e = P->curves()[c];
    slot_curve[e.side0.pants][e.side0.slot] = c;
    slot_curve[e.side1.pants][e.side1.slot] = c;
  }
  for (int v = 0; v < np; ++v) {
    int k = P->derived_slot(v);
    int sa = (k + 1) % 3, sb = (k + 2) % 3;
    Complex ta = trace[slot_curve[v][sa]];
    Complex tb = trace[slot_curve[v][sb]];
    Complex zeta = -std::exp(fn.length[slot_curve[v][k]] / 2.0);
    Mat2c A, B;
    A << ta, -1.0, 1.0, 0.0;
    B << 0.0, zeta, -1.0 / zeta, tb;
    raw[v][sa] = A;
    raw[v][sb] = B;
    raw[v][k] = (A * B).inverse();
  }

  std::vector<MoebiusElement> images(P->generator_count());
  std::vector<MoebiusElement> conj(np);

  // All diagonalizing frames are taken on the raw matrices, which depend on
  // the lengths only. Twists then enter solely through the diagonal factor
  // T(t), which makes the construction manifestly analytic in every twist
  // and keeps the complex-twist path identical to elliptic insertion about
  // the positioned axes.
  auto gluing = [&](int c, const HalfEdge& h0, const HalfEdge& h1) {
    Mat2c x_raw_inv = raw[h0.pants][h0.slot].inverse().eval();
    MoebiusElement fx = diag_frame_inv(x_raw_inv, fn.length[c]);
    MoebiusElement fy = diag_frame_inv(raw[h1.pants][h1.slot], fn.length[c]);
    return compose(compose(fx, twist_matrix(fn.twist[c])), fy.inverse());
  };

  std::vector<int> order(np);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return P->depth(a) < P->depth(b);
  });

  for (int v : order) {
    if (v != P->root()) {
      int c = P->parent_curve(v);
      const Curve& e = P->curves()[c];
      conj[v] = compose(conj[e.side0.pants], gluing(c, e.side0, e.side1));
    }
    for (int s = 0; s < 3; ++s) {
      int g = P->slot_generator(v, s);
      if (g >= 0) {
        images[g] = MoebiusElement(Mat2c(
            conj[v].matrix() * raw[v][s] * conj[v].inverse().matrix()));
      }
    }
  }

  for (int c = 0; c < nc; ++c) {
    const Curve& e = P->curves()[c];
    if (e.tree) continue;
    images[e.stable_gen] =
        compose(compose(conj[e.side0.pants], gluing(c, e.side0, e.side1)),
                conj[e.side1.pants].inverse());
  }

  return SurfaceGroupRep(P, std::move(images));
}

WordList coordinate_words(const PantsDecomposition& P) {
  constexpr int kTripleWindow = 4;
  WordList wl;
  int n = P.generator_count();
  for (int i = 0; i < n; ++i) wl.words.push_back({{i, 1}});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) wl.words.push_back({{i, 1}, {j, 1}});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n && k - i <= kTripleWindow; ++k) {
        wl.words.push_back({{i, 1}, {j, 1}, {k, 1}});
      }
    }
  }
  std::ostringstream id;
  id << "cw1/" << P.template_id() << "/g" << P.genus() << "/w" << kTripleWindow;
  wl.id = id.str();
  return wl;
}

CharacterVector character(const SurfaceGroupRep& rep, const WordList& words) {
  CharacterVector cv;
  cv.word_list_id = words.id;
  cv.values.reserve(words.words.size());
  for (const auto& w : words.words) {
    cv.values.push_back(trace_sq(rep.evaluate(w)));
  }
  return cv;
}

double char_distance(const CharacterVector& a, const CharacterVector& b) {
  if (a.word_list_id != b.word_list_id ||
      a.values.size() != b.values.size()) {
    throw Error("character vectors use different word lists");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  }
  return m;
}

double char_sup_norm(const CharacterVector& a) {
  double m = 0.0;
  for (const auto& v : a.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace qb
