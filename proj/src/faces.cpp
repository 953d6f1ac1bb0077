#include <algorithm>
#include <deque>
#include <stdexcept>

#include "glform/diagram.hpp"

namespace glform {

FaceStructure faces(const Diagram& d) {
  FaceStructure fs;
  const int n = d.crossing_count();
  if (n == 0) {
    fs.faces = {Face{0, {}}, Face{1, {}}};
    return fs;
  }
  fs.corner_face.assign(n, {-1, -1, -1, -1});
  for (int x = 0; x < n; ++x) {
    for (int i = 0; i < 4; ++i) {
      if (fs.corner_face[x][i] >= 0) continue;
      Face face{static_cast<int>(fs.faces.size()), {}};
      Corner c{x, i};
      // The face lies to the right when leaving along slot index+1.
      while (fs.corner_face[c.crossing][c.index] < 0) {
        fs.corner_face[c.crossing][c.index] = face.id;
        face.boundary.push_back(c);
        const Port next = d.across({c.crossing, (c.index + 1) % 4});
        c = {next.crossing, next.slot};
      }
      fs.faces.push_back(std::move(face));
    }
  }
  return fs;
}

int Coloring::count(Color c) const { return static_cast<int>(std::count(color.begin(), color.end(), c)); }

std::pair<Coloring, Coloring> checkerboard(const Diagram& d, const FaceStructure& fs) {
  Coloring first;
  if (d.crossing_count() == 0) {
    first.color = {Color::white, Color::black};
  } else {
    constexpr int unset = -1;
    std::vector<int> color(fs.size(), unset);
    const int pieces = d.piece_count() - d.free_loops();
    std::vector<int> seed_edge(pieces, 0);
    for (int e = d.edge_count(); e >= 1; --e) seed_edge[d.piece_of(d.head(e).crossing)] = e;
    for (int piece = 0; piece < pieces; ++piece) {
      // Left of an edge entering at slot j is corner j-1.
      const Port h = d.head(seed_edge[piece]);
      const int seed = fs.face_of({h.crossing, (h.slot + 3) % 4});
      color[seed] = 0;
      std::deque<int> queue{seed};
      while (!queue.empty()) {
        const int f = queue.front();
        queue.pop_front();
        for (const Corner& c : fs.faces[f].boundary) {
          for (int step : {1, 3}) {
            const int g = fs.face_of({c.crossing, (c.index + step) % 4});
            if (color[g] == unset) {
              color[g] = 1 - color[f];
              queue.push_back(g);
            } else if (color[g] == color[f]) {
              throw std::logic_error("face adjacency is not bipartite");
            }
          }
        }
      }
    }
    first.color.reserve(fs.size());
    for (int c : color) first.color.push_back(c == 0 ? Color::white : Color::black);
  }
  Coloring second = first;
  for (auto& c : second.color) c = opposite(c);
  return {std::move(first), std::move(second)};
}

std::pair<Coloring, Coloring> checkerboard(const Diagram& d) { return checkerboard(d, faces(d)); }

CrossingClass classify_crossing(const Diagram& d, const FaceStructure& fs, const Coloring& coloring, int crossing) {
  const bool shaded_odd = coloring.is_shaded(fs.face_of({crossing, 1}));
  CrossingClass out;
  out.eta = shaded_odd ? 1 : -1;
  // Positive crossings smooth along slots 0-1 / 2-3, joining corners 1 and 3.
  const bool smoothing_joins_odd = d.sign(crossing) > 0;
  out.gl_type = smoothing_joins_odd == shaded_odd ? GlType::II : GlType::I;
  return out;
}

}  // namespace glform
