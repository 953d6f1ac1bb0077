#include <algorithm>
#include <map>
#include <optional>

#include "glform/diagram.hpp"
#include "glform/error.hpp"

namespace glform {

namespace {

enum class Removal { keep, straight, a, b };

int paired_slot(int slot, Removal how) {
  switch (how) {
    case Removal::straight: return (slot + 2) % 4;
    case Removal::a: return slot ^ 1;
    case Removal::b: return 3 - slot;
    case Removal::keep: break;
  }
  return slot;
}

// Deletes crossings, joining their slots per `how`, then re-orients and
// relabels what remains. Orientation follows the old one where a component
// keeps the majority of its old edge directions.
Diagram rebuild(const Diagram& d, const std::vector<Removal>& how) {
  const int n = d.crossing_count();
  std::vector<int> kept_index(n, -1);
  int kept = 0;
  for (int x = 0; x < n; ++x)
    if (how[x] == Removal::keep) kept_index[x] = kept++;

  auto removed = [&](Port p) { return how[p.crossing] != Removal::keep; };
  std::vector<std::array<bool, 4>> seen(n, {false, false, false, false});

  std::vector<std::array<Port, 4>> link(kept);
  for (int x = 0; x < n; ++x) {
    if (how[x] != Removal::keep) continue;
    for (int s = 0; s < 4; ++s) {
      Port q = d.across({x, s});
      while (removed(q)) {
        seen[q.crossing][q.slot] = true;
        const Port r{q.crossing, paired_slot(q.slot, how[q.crossing])};
        seen[r.crossing][r.slot] = true;
        q = d.across(r);
      }
      link[kept_index[x]][s] = {kept_index[q.crossing], q.slot};
    }
  }

  int new_loops = 0;
  for (int x = 0; x < n; ++x) {
    if (how[x] == Removal::keep) continue;
    for (int s = 0; s < 4; ++s) {
      if (seen[x][s]) continue;
      ++new_loops;
      Port cur{x, s};
      do {
        seen[cur.crossing][cur.slot] = true;
        const Port r{cur.crossing, paired_slot(cur.slot, how[cur.crossing])};
        seen[r.crossing][r.slot] = true;
        cur = d.across(r);
      } while (!(cur == Port{x, s}));
    }
  }

  std::vector<int> old_of(kept);
  for (int x = 0; x < n; ++x)
    if (kept_index[x] >= 0) old_of[kept_index[x]] = x;

  // Walk strands: leave through a port, arrive at the linked one, exit opposite.
  std::vector<std::array<int, 4>> label(kept, {0, 0, 0, 0});
  std::vector<std::array<bool, 4>> is_head(kept, {false, false, false, false});
  int next_label = 1;
  for (int x = 0; x < kept; ++x) {
    for (int s = 0; s < 4; ++s) {
      if (label[x][s] != 0) continue;
      std::vector<std::pair<Port, Port>> cycle;  // (tail, head)
      int agree = 0;
      Port leave{x, s};
      do {
        const Port arrive = link[leave.crossing][leave.slot];
        cycle.emplace_back(leave, arrive);
        if (d.incoming({old_of[arrive.crossing], arrive.slot})) ++agree;
        if (d.incoming({old_of[leave.crossing], leave.slot})) --agree;
        leave = {arrive.crossing, (arrive.slot + 2) % 4};
      } while (!(leave == Port{x, s}));
      if (agree < 0) {
        std::reverse(cycle.begin(), cycle.end());
        for (auto& [t, h] : cycle) std::swap(t, h);
      }
      for (const auto& [t, h] : cycle) {
        label[t.crossing][t.slot] = next_label;
        label[h.crossing][h.slot] = next_label;
        is_head[h.crossing][h.slot] = true;
        ++next_label;
      }
    }
  }

  std::vector<Crossing> records(kept);
  for (int x = 0; x < kept; ++x) {
    const int shift = is_head[x][0] ? 0 : 2;
    for (int s = 0; s < 4; ++s) records[x].edges[s] = label[x][(s + shift) % 4];
  }
  return Diagram::from_crossings(std::move(records), d.free_loops() + new_loops);
}

std::optional<std::vector<int>> find_reduction(const Diagram& d) {
  const int n = d.crossing_count();
  for (int x = 0; x < n; ++x)
    for (int i = 0; i < 4; ++i)
      if (d.across({x, (i + 1) % 4}) == Port{x, i}) return std::vector<int>{x};
  for (int x = 0; x < n; ++x) {
    for (int i = 0; i < 4; ++i) {
      const Port p = d.across({x, (i + 1) % 4});
      if (p.crossing == x || !(d.across({p.crossing, (p.slot + 1) % 4}) == Port{x, i})) continue;
      // Bigon; it untwists when one of its edges is over at both ends.
      if ((i + 1) % 2 == p.slot % 2) return std::vector<int>{x, p.crossing};
    }
  }
  return std::nullopt;
}

}  // namespace

Diagram resolve(const Diagram& d, int crossing, Smoothing smoothing) {
  if (crossing < 0 || crossing >= d.crossing_count())
    throw Error(ErrorCode::inconsistent_input, "crossing index " + std::to_string(crossing) + " out of range");
  std::vector<Removal> how(d.crossing_count(), Removal::keep);
  how[crossing] = smoothing == Smoothing::a ? Removal::a : Removal::b;
  return rebuild(d, how);
}

Diagram simplify(const Diagram& d) {
  Diagram current = d;
  while (auto reduction = find_reduction(current)) {
    std::vector<Removal> how(current.crossing_count(), Removal::keep);
    for (int x : *reduction) how[x] = Removal::straight;
    current = rebuild(current, how);
  }
  return current;
}

std::vector<Diagram> split_pieces(const Diagram& d) {
  std::vector<Diagram> out;
  const int pieces = d.piece_count() - d.free_loops();
  std::vector<std::vector<Crossing>> records(pieces);
  for (int x = 0; x < d.crossing_count(); ++x) records[d.piece_of(x)].push_back(d.crossings()[x]);
  for (auto& r : records) out.push_back(Diagram::from_crossings(std::move(r), 0));
  for (int k = 0; k < d.free_loops(); ++k) out.push_back(Diagram::unlink(1));
  return out;
}

}  // namespace glform
