#include "glform/gl_form.hpp"

#include <algorithm>
#include <stdexcept>

#include "glform/error.hpp"

namespace glform {

GoeritzData goeritz_matrix(const Diagram& d, const FaceStructure& fs, const Coloring& coloring, int dropped_face) {
  if (d.is_split()) throw Error(ErrorCode::disconnected, "Goeritz form of a split diagram");
  GoeritzData g;
  g.shaded = coloring.shaded;
  if (d.crossing_count() == 0) return g;

  std::vector<int> position(fs.size(), -1);
  for (int f = 0; f < fs.size(); ++f)
    if (!coloring.is_shaded(f)) g.basis.push_back(f);
  const int full = static_cast<int>(g.basis.size());
  for (int k = 0; k < full; ++k) position[g.basis[k]] = k;

  IntMatrix full_form(full, full);
  for (int x = 0; x < d.crossing_count(); ++x) {
    const CrossingClass cls = classify_crossing(d, fs, coloring, x);
    if (cls.gl_type == GlType::II) g.mu += cls.eta;
    // The unshaded corners sit opposite each other.
    const int first = coloring.is_shaded(fs.face_of({x, 0})) ? 1 : 0;
    const int i = position[fs.face_of({x, first})];
    const int j = position[fs.face_of({x, first + 2})];
    if (i == j) continue;
    full_form(i, j) -= cls.eta;
    full_form(j, i) -= cls.eta;
    full_form(i, i) += cls.eta;
    full_form(j, j) += cls.eta;
  }

  int dropped = full - 1;
  if (dropped_face >= 0) {
    if (dropped_face >= fs.size() || position[dropped_face] < 0)
      throw std::invalid_argument("dropped face is not an unshaded face");
    dropped = position[dropped_face];
  }
  g.basis.erase(g.basis.begin() + dropped);
  IntMatrix reduced(full - 1, full - 1);
  for (int r = 0, rr = 0; r < full; ++r) {
    if (r == dropped) continue;
    for (int c = 0, cc = 0; c < full; ++c) {
      if (c == dropped) continue;
      reduced(rr, cc++) = full_form(r, c);
    }
    ++rr;
  }
  g.matrix = SymMatrix::from_matrix(std::move(reduced));

  const int shaded_faces = fs.size() - full;
  g.b1_surface = d.crossing_count() - shaded_faces + 1;
  g.euler_number = -2 * g.mu;
  g.signature = signature_triple(g.matrix);
  return g;
}

GoeritzData goeritz_matrix(const Diagram& d, const Coloring& coloring) {
  return goeritz_matrix(d, faces(d), coloring);
}

std::pair<GoeritzData, GoeritzData> goeritz_pair(const Diagram& d) {
  const FaceStructure fs = faces(d);
  const auto [first, second] = checkerboard(d, fs);
  return {goeritz_matrix(d, fs, first), goeritz_matrix(d, fs, second)};
}

int knot_signature(const Diagram& d) {
  if (d.is_split()) throw Error(ErrorCode::disconnected, "signature of a split diagram");
  if (!d.is_knot()) throw Error(ErrorCode::multi_component, "signature is only defined here for knots");
  const auto [first, second] = goeritz_pair(d);
  const int via_first = first.signature.signature() - first.mu;
  const int via_second = second.signature.signature() - second.mu;
  if (via_first != via_second) throw std::logic_error("checkerboard surfaces disagree on the signature");
  return via_first;
}

Integer link_determinant(const Diagram& d) {
  if (d.is_split()) return 0;
  if (d.crossing_count() == 0) return 1;
  const FaceStructure fs = faces(d);
  return abs(det_exact(goeritz_matrix(d, fs, checkerboard(d, fs).first).matrix));
}

std::vector<Integer> h1_factors(const Diagram& d) {
  std::vector<Integer> out;
  const auto pieces = split_pieces(d);
  for (const Diagram& piece : pieces) {
    if (piece.crossing_count() == 0) continue;
    const FaceStructure fs = faces(piece);
    auto factors = smith_normal_form(goeritz_matrix(piece, fs, checkerboard(piece, fs).first).matrix);
    out.insert(out.end(), factors.begin(), factors.end());
  }
  for (std::size_t k = 1; k < pieces.size(); ++k) out.push_back(0);
  std::stable_partition(out.begin(), out.end(), [](const Integer& f) { return f != 0; });
  return out;
}

CoverBetti cover_betti(const GoeritzData& g) {
  return {g.signature.n_plus, g.signature.n_minus, g.signature.n_zero};
}

}  // namespace glform
