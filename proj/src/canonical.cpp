#include <algorithm>
#include <deque>
#include <optional>

#include "glform/diagram.hpp"

namespace glform {

namespace {

Diagram reflect_planar(const Diagram& d) {
  std::vector<Crossing> records = d.crossings();
  for (auto& x : records) std::swap(x.edges[1], x.edges[3]);
  return Diagram::from_crossings(std::move(records), d.free_loops());
}

// Labels edges by walking from `start` (a port being left), then from each
// first contact with an unlabeled strand, and returns sorted records.
std::vector<Crossing> encode(const Diagram& d, Port start) {
  const int n = d.crossing_count();
  std::vector<int> label(d.edge_count() + 1, 0);
  std::vector<std::array<bool, 4>> is_head(n, {false, false, false, false});
  int next = 1;
  std::deque<Port> contacts;

  auto walk = [&](Port from) {
    Port leave = from;
    do {
      const int e = d.edge_at(leave);
      label[e] = next++;
      const Port arrive = d.across(leave);
      is_head[arrive.crossing][arrive.slot] = true;
      contacts.push_back({arrive.crossing, (arrive.slot + 1) % 4});
      leave = {arrive.crossing, (arrive.slot + 2) % 4};
    } while (!(leave == from));
  };

  walk(start);
  while (true) {
    while (!contacts.empty()) {
      const Port p = contacts.front();
      contacts.pop_front();
      if (label[d.edge_at(p)] == 0) walk(p);
    }
    // Split projections: continue from the lowest unlabeled edge.
    int e = 1;
    while (e <= d.edge_count() && label[e] != 0) ++e;
    if (e > d.edge_count()) break;
    walk(d.tail(e));
  }

  std::vector<Crossing> records(n);
  for (int x = 0; x < n; ++x) {
    const int shift = is_head[x][0] ? 0 : 2;
    for (int s = 0; s < 4; ++s) records[x].edges[s] = label[d.crossings()[x].edges[(s + shift) % 4]];
  }
  std::sort(records.begin(), records.end());
  return records;
}

}  // namespace

std::string canonical_code(const Diagram& d) {
  if (d.crossing_count() == 0) return to_pd(d);
  std::optional<std::vector<Crossing>> best;
  for (const Diagram& view : {d, reflect_planar(d)}) {
    for (int e = 1; e <= view.edge_count(); ++e) {
      for (Port start : {view.tail(e), view.head(e)}) {
        auto records = encode(view, start);
        if (!best || records < *best) best = std::move(records);
      }
    }
  }
  return to_pd(Diagram::from_crossings(std::move(*best), d.free_loops()));
}

}  // namespace glform
