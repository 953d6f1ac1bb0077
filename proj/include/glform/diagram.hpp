#pragma once

// Planar link diagrams in PD notation.
//
// A crossing lists its four edge labels counterclockwise, starting at the
// incoming under-strand. Slots 0 and 2 carry the under-strand, slots 1 and 3
// the over-strand. Corner k of a crossing is the region between slot k and
// slot k+1 (mod 4).

#include <array>
#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace glform {

struct Crossing {
  std::array<int, 4> edges{};

  friend bool operator==(const Crossing&, const Crossing&) = default;
  friend auto operator<=>(const Crossing&, const Crossing&) = default;
};

struct Port {
  int crossing = 0;
  int slot = 0;

  friend bool operator==(const Port&, const Port&) = default;
};

enum class Smoothing {
  a = 0,  // joins slots 0-1 and 2-3; merges corners 1 and 3
  b = 1,  // joins slots 0-3 and 1-2; merges corners 0 and 2
};

class Diagram {
 public:
  // The 0-crossing unknot.
  Diagram() = default;

  // Validates the records and relabels edges to 1..2c preserving label order.
  // free_loops counts crossingless components drawn disjointly from the rest.
  static Diagram from_crossings(std::vector<Crossing> crossings, int free_loops = 0);
  static Diagram unlink(int components);

  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
  int edge_count() const noexcept { return 2 * crossing_count(); }
  int free_loops() const noexcept { return free_loops_; }
  int component_count() const noexcept { return strand_components_ + free_loops_; }
  bool is_knot() const noexcept { return component_count() == 1; }

  int edge_at(Port p) const { return crossings_[p.crossing].edges[p.slot]; }
  // Port where the edge enters a crossing / leaves a crossing.
  Port head(int edge) const { return ends_[edge - 1][1]; }
  Port tail(int edge) const { return ends_[edge - 1][0]; }
  bool incoming(Port p) const { return head(edge_at(p)) == p; }
  // Other end of the edge attached at p.
  Port across(Port p) const;

  // +1 when the over-strand runs from slot 3 to slot 1.
  int sign(int crossing) const { return over_from_slot3_[crossing] ? 1 : -1; }
  int component_of_edge(int edge) const { return edge_component_[edge - 1]; }

  // Number of connected pieces of the projection, free loops included.
  int piece_count() const noexcept { return projection_pieces_ + free_loops_; }
  // Projection piece containing the crossing, in 0..pieces-1 (free loops excluded).
  int piece_of(int crossing) const { return crossing_piece_[crossing]; }
  bool is_split() const noexcept { return piece_count() > 1; }

  friend bool operator==(const Diagram& x, const Diagram& y) {
    return x.crossings_ == y.crossings_ && x.free_loops_ == y.free_loops_;
  }

 private:
  void index();

  std::vector<Crossing> crossings_;
  int free_loops_ = 1;
  int strand_components_ = 0;
  int projection_pieces_ = 0;
  std::vector<std::array<Port, 2>> ends_;  // per edge: {tail, head}
  std::vector<bool> over_from_slot3_;
  std::vector<int> edge_component_;
  std::vector<int> crossing_piece_;
};

Diagram parse_pd(std::string_view text);
std::string to_pd(const Diagram& d);

int writhe(const Diagram& d);
Diagram mirror(const Diagram& d);
Diagram change_crossings(const Diagram& d, std::span<const int> crossings);
Diagram resolve(const Diagram& d, int crossing, Smoothing smoothing);
// Strips monogons (R1) and untwisting bigons (R2) until none remain.
Diagram simplify(const Diagram& d);
// Connected pieces of the projection, each as its own diagram; free loops
// become 0-crossing unknots.
std::vector<Diagram> split_pieces(const Diagram& d);

// Minimal PD over all relabelings obtained from a starting edge, a direction
// and planar reflection. Later components are started from their first
// contact with earlier ones, so the code ignores component orientation.
std::string canonical_code(const Diagram& d);

struct DealternatingSet {
  int distance = 0;
  std::vector<int> crossings;
};
DealternatingSet dealternating_distance(const Diagram& d);
bool is_alternating(const Diagram& d);

// ---- faces and checkerboard colorings ----

struct Corner {
  int crossing = 0;
  int index = 0;

  friend bool operator==(const Corner&, const Corner&) = default;
};

struct Face {
  int id = 0;
  std::vector<Corner> boundary;
};

struct FaceStructure {
  std::vector<Face> faces;
  std::vector<std::array<int, 4>> corner_face;  // face id per crossing corner

  int face_of(Corner c) const { return corner_face[c.crossing][c.index]; }
  int size() const { return static_cast<int>(faces.size()); }
};

FaceStructure faces(const Diagram& d);

enum class Color { white, black };

constexpr Color opposite(Color c) { return c == Color::white ? Color::black : Color::white; }

struct Coloring {
  std::vector<Color> color;  // indexed by face id
  Color shaded = Color::black;

  bool is_shaded(int face) const { return color[face] == shaded; }
  int count(Color c) const;
  Coloring with_shaded(Color c) const {
    Coloring out = *this;
    out.shaded = c;
    return out;
  }
};

// The first coloring makes the face left of edge 1 white (per projection
// piece); the second is its global swap. Both shade black.
std::pair<Coloring, Coloring> checkerboard(const Diagram& d, const FaceStructure& fs);
std::pair<Coloring, Coloring> checkerboard(const Diagram& d);

enum class GlType { I, II };

struct CrossingClass {
  int eta = 1;
  GlType gl_type = GlType::I;
};

// eta is +1 when the shaded corners are the ones swept by rotating the
// over-strand counterclockwise (corners 1 and 3). A crossing is Type II when
// its oriented smoothing merges the two shaded corners.
CrossingClass classify_crossing(const Diagram& d, const FaceStructure& fs, const Coloring& coloring, int crossing);

}  // namespace glform
