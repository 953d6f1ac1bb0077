#include <algorithm>

#include "doctest.h"
#include "glform/bounds.hpp"
#include "glform/error.hpp"
#include "../support/corpus.hpp"

using namespace glform;

namespace {

const char* kTrefoil = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";

ErrorCode code_of(auto f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no glform::Error thrown");
  return ErrorCode::io_error;
}

KnotRecord record(const std::string& name) {
  const std::string base = name.back() == '*' ? name.substr(0, name.size() - 1) : name;
  const KnotRecord* r = corpus::census9().find(name);
  if (!r) r = corpus::census10().find(name);
  if (!r) {
    r = corpus::census9().find(base);
    if (!r) r = corpus::census10().find(base);
    REQUIRE(r);
    return mirror_record(*r);
  }
  return *r;
}

KnotRecord bare(const KnotRecord& r) {
  KnotRecord out;
  out.name = r.name;
  out.pd = r.pd;
  return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::vector<const Interval*> intervals(const BoundsReport& r) {
  return {&r.b_plus, &r.b_minus, &r.b_plus_star, &r.b_minus_star, &r.gamma3, &r.gamma4, &r.dalt, &r.alt};
}

// Every band move across a face of d that yields a knot. The band joins two
// edge segments on the face boundary; crossings are untouched and the result
// is relabeled along its new orientation.
std::vector<Diagram> band_moves(const Diagram& d) {
  std::vector<Diagram> out;
  const int n = d.crossing_count();
  if (n == 0) return out;
  const FaceStructure fs = faces(d);
  auto id = [](Port p) { return 4 * p.crossing + p.slot; };
  std::vector<int> partner(4 * n);
  for (int x = 0; x < n; ++x)
    for (int s = 0; s < 4; ++s) partner[id({x, s})] = id(d.across({x, s}));

  for (const Face& f : fs.faces) {
    const int m = static_cast<int>(f.boundary.size());
    for (int k = 0; k < m; ++k)
      for (int l = k + 1; l < m; ++l) {
        const Corner ck = f.boundary[k];
        const Corner cl = f.boundary[l];
        const int pk = id({ck.crossing, (ck.index + 1) % 4});
        const int pl = id({cl.crossing, (cl.index + 1) % 4});
        const int qk = partner[pk];
        const int ql = partner[pl];
        if (pk == ql || pl == qk) continue;  // same edge
        std::vector<int> link = partner;
        link[qk] = pl;
        link[pl] = qk;
        link[pk] = ql;
        link[ql] = pk;

        std::vector<int> label(4 * n, 0);
        std::vector<int> arrived(4 * n, 0);
        int leave = 2;  // port (0, 2)
        int edges = 0;
        while (label[leave] == 0) {
          ++edges;
          label[leave] = edges;
          label[link[leave]] = edges;
          arrived[link[leave]] = 1;
          const int at = link[leave];
          leave = 4 * (at / 4) + (at % 4 + 2) % 4;
        }
        if (edges != 2 * n) continue;
        std::string pd = "PD[";
        for (int x = 0; x < n; ++x) {
          const int first = arrived[4 * x] ? 0 : 2;
          pd += x ? ",X[" : "X[";
          for (int j = 0; j < 4; ++j) pd += (j ? "," : "") + std::to_string(label[4 * x + (first + j) % 4]);
          pd += "]";
        }
        out.push_back(parse_pd(pd + "]"));
      }
  }
  return out;
}

}  // namespace

TEST_CASE("surface upper bounds") {
  const auto unknot = surface_upper_bounds(Diagram::unlink(1));
  CHECK(unknot.b_plus == 0);
  CHECK(unknot.b_minus == 0);

  for (const auto& [name, d] : corpus::all_diagrams()) {
    if (!is_alternating(d) || d.crossing_count() == 0) continue;
    CAPTURE(name);
    const auto s = surface_upper_bounds(d);
    CHECK(s.b_plus == 0);
    CHECK(s.b_minus == 0);
  }

  const Diagram t = corpus::torus_4_3();
  const auto s = surface_upper_bounds(t);
  const auto [g1, g2] = goeritz_pair(t);
  CHECK(s.first == cover_betti(g1));
  CHECK(s.second == cover_betti(g2));
  CHECK(s.b_plus == std::min(s.first.b2_plus, s.second.b2_plus));
  CHECK(s.b_minus == std::min(s.first.b2_minus, s.second.b2_minus));
  CHECK(s.b_plus + s.b_minus >= 1);  // the diagram is not alternating and T(4,3) is not 4d alternating
}

TEST_CASE("genus bounds") {
  auto g = prop2_bounds(0, 0, Genus::three);
  CHECK(g.plus == 0);
  CHECK(g.minus == 0);
  CHECK(g.provenance == "Prop2-g3");

  g = prop2_bounds(1, -2, Genus::three);
  CHECK(g.plus == 0);
  CHECK(g.minus == 2);
  CHECK_FALSE(g.plus_clamped);
  const auto trefoil = surface_upper_bounds(parse_pd(record("3_1").pd));
  CHECK(trefoil.b_plus <= g.plus);
  CHECK(trefoil.b_minus <= g.minus);

  g = prop2_bounds(3, 6, Genus::four);
  CHECK(g.plus == 6);
  CHECK(g.minus == 0);
  CHECK(g.provenance == "Prop2-g4");

  g = prop2_bounds(1, 4, Genus::four);
  CHECK(g.minus == 0);
  CHECK(g.minus_clamped);

  CHECK(code_of([] { prop2_bounds(1, 3, Genus::three); }) == ErrorCode::odd_sigma);
  CHECK(code_of([] { prop2_bounds(-1, 0, Genus::three); }) == ErrorCode::inconsistent_input);
}

TEST_CASE("nonorientable genus sum constraints") {
  const auto c3 = prop3_bounds(2, Genus::three);
  CHECK(c3.bound == 2);
  CHECK(c3.provenance == "Prop3-gamma3");
  const auto c4 = prop3_bounds(1, Genus::four);
  CHECK(c4.bound == 1);
  CHECK(c4.provenance == "Prop3-gamma4");
  CHECK(code_of([] { prop3_bounds(0, Genus::four); }) == ErrorCode::inconsistent_input);

  CHECK(prop3_gamma_lower(batson_lower(6, 1), 0) == 1);
  for (long n = 1; n <= 6; ++n) CHECK(prop3_gamma_lower(n - 1, 0) == n - 1);
  CHECK(prop3_gamma_lower(0, 0) == 0);
}

TEST_CASE("dealternating and alternation bounds") {
  CHECK(prop4_bound(0, 0) == 0);
  CHECK(prop4_bound(1, 0) == 1);
  CHECK(prop4_bound(2, 3) == 5);

  CHECK(prop5_bound(0).bound == 0);
  CHECK(prop5_bound(1).bound == 2);
  CHECK(prop5_bound(2).bound == 2);
  CHECK(prop5_bound(3).bound == 4);
  CHECK(prop5_bound(3).provenance == "Prop5");
  CHECK(code_of([] { prop5_bound(-1); }) == ErrorCode::inconsistent_input);
}

TEST_CASE("Batson lower bound and V0") {
  CHECK(batson_lower(6, 1) == 1);
  CHECK(batson_lower(2, 0) == 1);
  CHECK(batson_lower(0, 0) == 0);
  CHECK(batson_lower(-4, 0) == 0);
  CHECK(batson_lower(8, 1) == 2);
  CHECK(code_of([] { batson_lower(2, std::nullopt); }) == ErrorCode::missing_data);
  CHECK(code_of([] { batson_lower(3, 0); }) == ErrorCode::odd_sigma);

  CHECK(v0_from_cp2(1) == 0);
  CHECK(v0_from_cp2(3) == 1);
  CHECK(v0_from_cp2(5) == 3);
  CHECK(v0_from_cp2(7) == 6);
  CHECK(code_of([] { v0_from_cp2(2); }) == ErrorCode::even_n);
  CHECK(code_of([] { v0_from_cp2(0); }) == ErrorCode::non_positive_n);
  CHECK(code_of([] { v0_from_cp2(-3); }) == ErrorCode::non_positive_n);

  // The table values behind the two non-obvious examples.
  const KnotRecord k8 = record("8_19*");
  CHECK(*k8.sigma == 6);
  CHECK(batson_lower(*k8.sigma, k8.v0_mirror) == 1);
  const KnotRecord k10 = record("10_128*");
  CHECK(*k10.sigma == 6);
  CHECK(*k10.v0_mirror == v0_from_cp2(3));
  const KnotRecord k136 = record("10_136");
  CHECK(*k136.sigma == 2);
  CHECK(*k136.v0_mirror == v0_from_cp2(1));
  CHECK(batson_lower(*k136.sigma, k136.v0_mirror) == 1);
}

TEST_CASE("Batson bound never exceeds the surface bound") {
  int checked = 0;
  for (const auto* t : {&corpus::census9(), &corpus::census10()})
    for (const auto& r : t->rows)
      for (const KnotRecord& rec : {r, mirror_record(r)}) {
        if (!rec.v0_mirror) continue;
        CAPTURE(rec.name);
        const auto s = surface_upper_bounds(parse_pd(rec.pd));
        CHECK(batson_lower(*rec.sigma, rec.v0_mirror) <= s.b_plus);
        ++checked;
      }
  CHECK(checked == 4);  // V0 is tabulated for four knots
}

TEST_CASE("H(2)-move signature") {
  for (const auto& [name, d] : corpus::all_diagrams()) {
    CAPTURE(name);
    const H2Move m = h2_move_sigma(d, d);
    CHECK(m.sigma == 0);
    CHECK(m.cls == H2Class::neutral);
  }

  // Every unoriented band move between knots bounds a cobordism with b2 = 1.
  int moves = 0;
  int nonzero = 0;
  for (const auto& r : corpus::census9().rows) {
    if (corpus::crossings_of(r) > 8) continue;
    CAPTURE(r.name);
    const Diagram d = parse_pd(r.pd);
    for (const Diagram& e : band_moves(d)) {
      const H2Move m = h2_move_sigma(d, e);
      CHECK(std::abs(m.sigma) <= 1);
      CHECK(m.cls == (m.sigma == 1 ? H2Class::positive : m.sigma == -1 ? H2Class::negative : H2Class::neutral));
      CHECK(h2_move_sigma(e, d).sigma == -m.sigma);
      nonzero += m.sigma != 0;
      ++moves;
    }
  }
  CHECK(moves > 100);
  CHECK(nonzero > 0);

  // Left-handed trefoil to unknot is a positive move; the mirror is negative.
  const Diagram t = parse_pd(kTrefoil);
  int to_unknot = 0;
  for (const Diagram& e : band_moves(t)) {
    if (link_determinant(e) != 1) continue;
    ++to_unknot;
    CHECK(knot_signature(e) == 0);
    const H2Move m = h2_move_sigma(t, e);
    CHECK(m.sigma == 1);
    CHECK(m.cls == H2Class::positive);
    const H2Move mm = h2_move_sigma(mirror(t), mirror(e));
    CHECK(mm.sigma == -m.sigma);
  }
  CHECK(to_unknot > 0);

  // sigma jumps by 4 with no writhe change: impossible for one band.
  const Diagram unknot = Diagram::unlink(1);
  const Diagram t44 = parse_pd(record("8_19").pd);
  CHECK(code_of([&] { h2_move_sigma(unknot, parse_pd(record("3_1").pd)); }) == ErrorCode::inconsistent_input);
  CHECK_THROWS_AS(h2_move_sigma(unknot, t44), Error);
}

TEST_CASE("almost alternating audit") {
  const Diagram t = parse_pd(kTrefoil);
  const AuditRecord none = almost_alternating_audit(t, {});
  CHECK(none.n == 0);
  CHECK(none.n1 == 0);
  CHECK(none.n2 == 0);
  CHECK(none.b2_minus_b == 0);
  CHECK(none.b2_plus_w == 0);
  CHECK(none.all_ok());

  const Diagram torus = corpus::torus_4_3();
  const auto set = dealternating_distance(torus);
  REQUIRE(set.distance == 1);
  const AuditRecord a = almost_alternating_audit(torus, set.crossings);
  CHECK(a.all_ok());
  CHECK(a.n == 1);
  CHECK(a.n1 + a.n2 == 1);
  CHECK(a.sigma == 6);
  CHECK(a.b2_plus_w + a.b2_minus_b <= 1);

  const std::array<int, 1> one{0};
  CHECK(code_of([&] { almost_alternating_audit(t, one); }) == ErrorCode::not_dealternating);
  CHECK(code_of([&] { almost_alternating_audit(torus, {}); }) == ErrorCode::not_dealternating);
}

TEST_CASE("audit inequalities hold for every minimal dealternating set") {
  int audited = 0;
  for (const auto& [name, d] : corpus::all_diagrams()) {
    if (d.crossing_count() == 0) continue;
    CAPTURE(name);
    const auto set = dealternating_distance(d);
    for (const Diagram& x : {d, mirror(d)}) {
      const AuditRecord a = almost_alternating_audit(x, set.crossings);
      CHECK(a.n == set.distance);
      CHECK(a.n1 + a.n2 == a.n);
      CHECK(a.euler_b_ok);
      CHECK(a.euler_w_ok);
      CHECK(a.n1_ok);
      CHECK(a.n2_ok);
      CHECK(a.total_ok);
      CHECK(a.b2_plus_w + a.b2_minus_b <= a.n);
      // The surfaces of x bound b+ and b- by the audited b2 terms.
      const auto s = surface_upper_bounds(x);
      CHECK(a.sigma == knot_signature(x));
      CHECK(s.b_plus <= a.b2_plus_w);
      CHECK(s.b_minus <= a.b2_minus_b);
      ++audited;
    }
  }
  CHECK(audited > 150);
}

TEST_CASE("report examples") {
  SUBCASE("certified trefoil") {
    KnotRecord rec = bare(record("3_1"));
    const QAVerdict v = qa_certify(parse_pd(rec.pd));
    const BoundsReport r = aggregate_report(rec, {}, v);
    CHECK(r.b_plus_star.lower == 0);
    CHECK(r.b_plus_star.upper == 0);
    CHECK(has(r.b_plus_star.upper_provenance, "Thm3-QA"));
    CHECK(r.b_minus_star.lower == 0);
    CHECK(r.b_minus_star.upper == 0);
    CHECK(has(r.b_minus_star.upper_provenance, "Thm3-QA"));
    CHECK(r.four_dim_alternating == FourDim::yes);
    CHECK(r.sigma == -2);
    CHECK(r.det == 3);
  }
  SUBCASE("8_19 mirror") {
    const BoundsReport r = aggregate_report(record("8_19*"), {});
    CHECK(r.sigma == 6);
    CHECK(r.b_plus_star.lower == 1);
    CHECK(r.b_plus_star.lower_provenance == std::vector<std::string>{"Thm2-Batson"});
    REQUIRE(r.b_plus_star.upper);
    const auto s = surface_upper_bounds(parse_pd(record("8_19*").pd));
    CHECK(*r.b_plus_star.upper <= s.b_plus);
    CHECK(r.four_dim_alternating == FourDim::no);
    CHECK(r.contradictions.empty());
  }
  SUBCASE("no data") {
    const BoundsReport r = aggregate_report(bare(record("9_46")), {});
    for (const Interval* i : intervals(r)) CHECK(i->lower == 0);
    CHECK(r.four_dim_alternating == FourDim::unknown);
    CHECK(r.b_plus.upper_provenance == std::vector<std::string>{"surface"});
    CHECK(has(r.b_plus_star.upper_provenance, "push-in"));
    CHECK_FALSE(r.notes.empty());
  }
  SUBCASE("slice flag") {
    KnotRecord rec = bare(record("9_46"));
    rec.slice = true;
    const BoundsReport r = aggregate_report(rec, {});
    CHECK(r.four_dim_alternating == FourDim::yes);
    CHECK(r.b_plus_star.upper == 0);
    CHECK(has(r.b_plus_star.upper_provenance, "slice"));
  }
  SUBCASE("definiteness obstruction flag") {
    KnotRecord rec = bare(record("9_46"));
    rec.no_posdef_filling = true;
    CHECK(aggregate_report(rec, {}).four_dim_alternating == FourDim::no);
  }
  SUBCASE("10_128 mirror") {
    const BoundsReport r = aggregate_report(record("10_128*"), {});
    CHECK(r.sigma == 6);
    CHECK(r.b_plus_star.lower >= 1);
    CHECK(r.four_dim_alternating == FourDim::no);
  }
  SUBCASE("quasi-alternating verdict overrides table gaps") {
    KnotRecord rec = bare(record("8_21"));
    const QAVerdict v = qa_certify(parse_pd(rec.pd));
    REQUIRE(v.status == QaStatus::certified);
    const BoundsReport r = aggregate_report(rec, {}, v);
    CHECK(r.four_dim_alternating == FourDim::yes);
    CHECK(r.b_plus_star.upper == 0);
    CHECK(r.b_minus_star.upper == 0);
  }
}

TEST_CASE("report errors") {
  const KnotRecord trefoil = record("3_1");
  CHECK(code_of([&] { aggregate_report(trefoil, {mirror(parse_pd(trefoil.pd))}); }) ==
        ErrorCode::inconsistent_diagrams);
  CHECK(code_of([&] { aggregate_report(trefoil, {parse_pd(record("4_1").pd)}); }) ==
        ErrorCode::inconsistent_diagrams);
  KnotRecord wrong = trefoil;
  wrong.sigma = 2;
  CHECK(code_of([&] { aggregate_report(wrong, {}); }) == ErrorCode::inconsistent_input);
  wrong = trefoil;
  wrong.det = 5;
  CHECK(code_of([&] { aggregate_report(wrong, {}); }) == ErrorCode::inconsistent_input);
}

TEST_CASE("reports over the census are consistent") {
  int rows = 0;
  for (const auto* t : {&corpus::census9(), &corpus::census10()})
    for (const auto& r : t->rows)
      for (const KnotRecord& rec : {r, mirror_record(r)}) {
        CAPTURE(rec.name);
        const BoundsReport rep = aggregate_report(rec, {});
        CHECK(rep.contradictions.empty());
        CHECK(rep.sigma == *rec.sigma);
        for (const Interval* i : intervals(rep)) {
          CHECK(i->lower >= 0);
          CHECK_FALSE(i->contradictory());
          if (i->lower > 0) CHECK_FALSE(i->lower_provenance.empty());
          if (i->upper) CHECK_FALSE(i->upper_provenance.empty());
          CHECK(std::is_sorted(i->lower_provenance.begin(), i->lower_provenance.end()));
          CHECK(std::is_sorted(i->upper_provenance.begin(), i->upper_provenance.end()));
        }
        // Pushing in and QA knots.
        if (rep.b_plus.upper) CHECK(*rep.b_plus_star.upper <= *rep.b_plus.upper);
        if (rec.qa && *rec.qa) CHECK(rep.four_dim_alternating == FourDim::yes);
        if (rec.alternating && *rec.alternating) {
          CHECK(rep.b_plus.upper == 0);
          CHECK(rep.b_minus.upper == 0);
        }
        ++rows;
      }
  CHECK(rows == 500);
}

TEST_CASE("reports are deterministic and ignore diagram order") {
  for (const char* name : {"8_19", "8_20", "8_21", "7_4"}) {
    CAPTURE(name);
    const KnotRecord rec = record(name);
    std::vector<Diagram> extra;
    for (const auto& a : corpus::alternative_diagrams())
      if (a.name == name) extra.push_back(a.diagram);
    REQUIRE_FALSE(extra.empty());
    const BoundsReport a = aggregate_report(rec, extra);
    CHECK(a == aggregate_report(rec, extra));
    std::vector<Diagram> reversed(extra.rbegin(), extra.rend());
    CHECK(a == aggregate_report(rec, reversed));
    // Extra diagrams can only tighten.
    const BoundsReport alone = aggregate_report(rec, {});
    if (alone.dalt.upper) CHECK(*a.dalt.upper <= *alone.dalt.upper);
    if (alone.b_plus.upper) CHECK(*a.b_plus.upper <= *alone.b_plus.upper);
    CHECK(a.b_plus_star.lower >= alone.b_plus_star.lower);
  }
}

TEST_CASE("mirror records") {
  const KnotRecord r = record("10_128");
  const KnotRecord m = mirror_record(r);
  CHECK(m.name == "10_128*");
  CHECK(*m.sigma == -*r.sigma);
  CHECK(*m.tau == -*r.tau);
  CHECK(m.v0 == r.v0_mirror);
  CHECK(m.v0_mirror == r.v0);
  CHECK(m.g4 == r.g4);
  CHECK(knot_signature(parse_pd(m.pd)) == *m.sigma);
  const BoundsReport a = aggregate_report(r, {});
  const BoundsReport b = aggregate_report(m, {});
  CHECK(a.b_plus.upper == b.b_minus.upper);
  CHECK(a.b_minus_star.lower == b.b_plus_star.lower);
}
