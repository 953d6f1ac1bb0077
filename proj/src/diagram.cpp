#include "glform/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>

#include "glform/error.hpp"

namespace glform {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

Diagram Diagram::unlink(int components) {
  if (components < 1) throw Error(ErrorCode::malformed_code, "a diagram needs at least one component");
  Diagram d;
  d.free_loops_ = components;
  return d;
}

Diagram Diagram::from_crossings(std::vector<Crossing> crossings, int free_loops) {
  if (free_loops < 0) throw Error(ErrorCode::malformed_code, "negative free loop count");
  std::map<int, int> uses;
  for (const auto& x : crossings) {
    for (int e : x.edges) {
      if (e <= 0) throw Error(ErrorCode::malformed_code, "edge labels must be positive");
      ++uses[e];
    }
  }
  for (const auto& [label, count] : uses) {
    if (count != 2) {
      throw Error(ErrorCode::bad_valence,
                  "edge " + std::to_string(label) + " appears " + std::to_string(count) + " times");
    }
  }
  std::map<int, int> rank;
  for (const auto& [label, count] : uses) rank.emplace(label, static_cast<int>(rank.size()) + 1);
  for (auto& x : crossings)
    for (int& e : x.edges) e = rank.at(e);

  Diagram d;
  d.crossings_ = std::move(crossings);
  d.free_loops_ = free_loops;
  if (d.crossings_.empty() && free_loops == 0) d.free_loops_ = 1;
  d.index();
  return d;
}

Port Diagram::across(Port p) const {
  const auto& ends = ends_[edge_at(p) - 1];
  return ends[0] == p ? ends[1] : ends[0];
}

void Diagram::index() {
  const int n = crossing_count();
  const int edges = 2 * n;

  std::vector<std::vector<Port>> occurrences(edges);
  for (int x = 0; x < n; ++x)
    for (int s = 0; s < 4; ++s) occurrences[crossings_[x].edges[s] - 1].push_back({x, s});

  // Provisional ends; orientation is fixed per component below.
  ends_.assign(edges, {});
  for (int e = 0; e < edges; ++e) ends_[e] = {occurrences[e][0], occurrences[e][1]};

  edge_component_.assign(edges, -1);
  strand_components_ = 0;
  for (int start = 0; start < edges; ++start) {
    if (edge_component_[start] >= 0) continue;
    const int comp = strand_components_++;
    std::vector<int> cycle;
    Port leave = ends_[start][0];
    int forward = 0;
    int backward = 0;
    while (true) {
      const int e = edge_at(leave) - 1;
      if (edge_component_[e] >= 0) break;
      edge_component_[e] = comp;
      cycle.push_back(e);
      const Port arrive = ends_[e][0] == leave ? ends_[e][1] : ends_[e][0];
      ends_[e] = {leave, arrive};
      if (arrive.slot == 0 || leave.slot == 2) ++forward;
      if (arrive.slot == 2 || leave.slot == 0) ++backward;
      leave = {arrive.crossing, (arrive.slot + 2) % 4};
    }
    if (forward > 0 && backward > 0)
      throw Error(ErrorCode::malformed_code, "under-strand directions are inconsistent along a component");
    bool reverse = backward > 0;
    if (forward == 0 && backward == 0 && cycle.size() > 1) {
      // Entirely over: follow increasing labels.
      const auto lowest = std::min_element(cycle.begin(), cycle.end());
      const auto next = std::next(lowest) == cycle.end() ? cycle.begin() : std::next(lowest);
      reverse = *next != *lowest + 1;
    }
    if (reverse)
      for (int e : cycle) std::swap(ends_[e][0], ends_[e][1]);
  }

  over_from_slot3_.assign(n, false);
  for (int x = 0; x < n; ++x) over_from_slot3_[x] = incoming({x, 3});

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int e = 0; e < edges; ++e)
    parent[find_root(parent, ends_[e][0].crossing)] = find_root(parent, ends_[e][1].crossing);
  crossing_piece_.assign(n, -1);
  std::map<int, int> piece_ids;
  for (int x = 0; x < n; ++x) {
    const int root = find_root(parent, x);
    auto [it, inserted] = piece_ids.emplace(root, static_cast<int>(piece_ids.size()));
    crossing_piece_[x] = it->second;
  }
  projection_pieces_ = static_cast<int>(piece_ids.size());

  if (n > 0) {
    const FaceStructure fs = faces(*this);
    std::vector<int> face_count(projection_pieces_, 0);
    std::vector<int> vertex_count(projection_pieces_, 0);
    for (int x = 0; x < n; ++x) ++vertex_count[crossing_piece_[x]];
    for (const auto& f : fs.faces) ++face_count[crossing_piece_[f.boundary.front().crossing]];
    for (int piece = 0; piece < projection_pieces_; ++piece) {
      // V - E + F = 2 with E = 2V.
      if (face_count[piece] != vertex_count[piece] + 2) {
        throw Error(ErrorCode::non_spherical_embedding,
                    "piece with " + std::to_string(vertex_count[piece]) + " crossings has " +
                        std::to_string(face_count[piece]) + " faces");
      }
    }
  }
}

// ---- text form ----

namespace {

class PdReader {
 public:
  explicit PdReader(std::string text) : text_(std::move(text)) {}

  bool done() const { return pos_ == text_.size(); }
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  bool accept(std::string_view token) {
    if (text_.compare(pos_, token.size(), token) != 0) return false;
    pos_ += token.size();
    return true;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  int integer() {
    int value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::malformed_code, why + " at offset " + std::to_string(pos_));
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

Diagram parse_pd(std::string_view text) {
  std::string compact;
  compact.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);

  PdReader in(std::move(compact));
  int declared = 0;
  if (in.accept("components=")) {
    declared = in.integer();
    if (declared < 1) in.fail("component count must be positive");
    in.expect(";");
  }
  in.expect("PD[");
  std::vector<Crossing> crossings;
  if (!in.peek(']')) {
    do {
      in.expect("X[");
      Crossing x;
      for (int s = 0; s < 4; ++s) {
        if (s > 0) in.expect(",");
        x.edges[s] = in.integer();
        if (x.edges[s] <= 0) in.fail("edge labels must be positive");
      }
      if (!in.accept("]")) in.fail("a crossing takes exactly four labels");
      crossings.push_back(x);
    } while (in.accept(","));
  }
  in.expect("]");
  if (!in.done()) in.fail("trailing characters");

  if (crossings.empty()) return Diagram::unlink(declared == 0 ? 1 : declared);
  Diagram d = Diagram::from_crossings(std::move(crossings), 0);
  if (declared == 0 || declared == d.component_count()) return d;
  if (declared < d.component_count())
    throw Error(ErrorCode::malformed_code, "declared component count is below the strand count");
  std::vector<Crossing> records = d.crossings();
  return Diagram::from_crossings(std::move(records), declared - d.component_count());
}

std::string to_pd(const Diagram& d) {
  std::string out;
  if (d.free_loops() > 0) out += "components=" + std::to_string(d.component_count()) + ";";
  out += "PD[";
  bool first = true;
  for (const auto& x : d.crossings()) {
    if (!first) out += ",";
    first = false;
    out += "X[";
    for (int s = 0; s < 4; ++s) {
      if (s > 0) out += ",";
      out += std::to_string(x.edges[s]);
    }
    out += "]";
  }
  out += "]";
  return out;
}

// ---- orientation data ----

int writhe(const Diagram& d) {
  int total = 0;
  for (int x = 0; x < d.crossing_count(); ++x) total += d.sign(x);
  return total;
}

Diagram change_crossings(const Diagram& d, std::span<const int> which) {
  std::vector<Crossing> records = d.crossings();
  for (int x : which) {
    if (x < 0 || x >= d.crossing_count())
      throw Error(ErrorCode::inconsistent_input, "crossing index " + std::to_string(x) + " out of range");
    const auto& e = d.crossings()[x].edges;
    // The old over-strand becomes the under-strand; start at its incoming slot.
    records[x].edges = d.sign(x) > 0 ? std::array<int, 4>{e[3], e[0], e[1], e[2]}
                                     : std::array<int, 4>{e[1], e[2], e[3], e[0]};
  }
  return Diagram::from_crossings(std::move(records), d.free_loops());
}

Diagram mirror(const Diagram& d) {
  std::vector<int> all(d.crossing_count());
  std::iota(all.begin(), all.end(), 0);
  return change_crossings(d, all);
}

// ---- alternation ----

DealternatingSet dealternating_distance(const Diagram& d) {
  DealternatingSet out;
  if (d.crossing_count() == 0) return out;
  const FaceStructure fs = faces(d);
  const Coloring coloring = checkerboard(d, fs).first;
  const int pieces = d.piece_count() - d.free_loops();
  std::vector<std::vector<int>> black_one(pieces);
  std::vector<std::vector<int>> white_one(pieces);
  for (int x = 0; x < d.crossing_count(); ++x) {
    auto& bucket = coloring.color[fs.face_of({x, 1})] == Color::black ? black_one : white_one;
    bucket[d.piece_of(x)].push_back(x);
  }
  for (int p = 0; p < pieces; ++p) {
    const auto& minority = black_one[p].size() <= white_one[p].size() ? black_one[p] : white_one[p];
    out.crossings.insert(out.crossings.end(), minority.begin(), minority.end());
  }
  std::sort(out.crossings.begin(), out.crossings.end());
  out.distance = static_cast<int>(out.crossings.size());
  return out;
}

bool is_alternating(const Diagram& d) { return dealternating_distance(d).distance == 0; }

}  // namespace glform
