#pragma once

// Goeritz forms of checkerboard surfaces and the Gordon-Litherland data
// derived from them.

#include <utility>
#include <vector>

#include "glform/diagram.hpp"
#include "glform/exact_forms.hpp"

namespace glform {

struct GoeritzData {
  Color shaded = Color::black;
  // Indexed by the unshaded faces in `basis`; the highest such face id is dropped.
  SymMatrix matrix;
  std::vector<int> basis;
  int mu = 0;  // sum of eta over Type II crossings
  int b1_surface = 0;
  int euler_number = 0;
  SignatureTriple signature;
};

struct CoverBetti {
  int b2_plus = 0;
  int b2_minus = 0;
  int nullity = 0;

  friend bool operator==(const CoverBetti&, const CoverBetti&) = default;
};

// Throws Disconnected for split diagrams. `dropped_face` picks the unshaded
// face left out of the basis; by default the one with the highest id.
GoeritzData goeritz_matrix(const Diagram& d, const FaceStructure& fs, const Coloring& coloring,
                           int dropped_face = -1);
GoeritzData goeritz_matrix(const Diagram& d, const Coloring& coloring);

// Both checkerboard surfaces, in the order returned by checkerboard().
std::pair<GoeritzData, GoeritzData> goeritz_pair(const Diagram& d);

// sigma(G) - mu; both colorings are computed and must agree.
int knot_signature(const Diagram& d);

// 0 for split diagrams.
Integer link_determinant(const Diagram& d);

// Invariant factors of H1 of the double branched cover, a zero per extra
// split piece.
std::vector<Integer> h1_factors(const Diagram& d);

CoverBetti cover_betti(const GoeritzData& g);
inline int euler_number(const GoeritzData& g) { return -2 * g.mu; }

}  // namespace glform
