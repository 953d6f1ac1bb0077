#include "glform/bounds.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "glform/error.hpp"
#include "glform/gl_form.hpp"

namespace glform {

KnotRecord mirror_record(const KnotRecord& rec) {
  KnotRecord m = rec;
  m.name = rec.name + "*";
  m.pd = to_pd(mirror(parse_pd(rec.pd)));
  if (rec.sigma) m.sigma = -*rec.sigma;
  if (rec.tau) m.tau = -*rec.tau;
  m.v0 = rec.v0_mirror;
  m.v0_mirror = rec.v0;
  return m;
}

const char* four_dim_name(FourDim f) {
  switch (f) {
    case FourDim::yes: return "yes";
    case FourDim::no: return "no";
    case FourDim::unknown: return "unknown";
  }
  return "unknown";
}

const char* h2_class_name(H2Class c) {
  switch (c) {
    case H2Class::positive: return "positive";
    case H2Class::negative: return "negative";
    case H2Class::neutral: return "neutral";
  }
  return "neutral";
}

SurfaceBounds surface_upper_bounds(const Diagram& d) {
  const auto [g1, g2] = goeritz_pair(d);
  SurfaceBounds s;
  s.first = cover_betti(g1);
  s.second = cover_betti(g2);
  s.b_plus = std::min(s.first.b2_plus, s.second.b2_plus);
  s.b_minus = std::min(s.first.b2_minus, s.second.b2_minus);
  return s;
}

namespace {

void require_even(long sigma) {
  if (sigma % 2 != 0) throw Error(ErrorCode::odd_sigma, "signature " + std::to_string(sigma) + " is odd");
}

}  // namespace

GenusBounds prop2_bounds(long genus, long sigma, Genus which) {
  require_even(sigma);
  if (genus < 0) throw Error(ErrorCode::inconsistent_input, "negative genus");
  GenusBounds b;
  b.provenance = which == Genus::three ? "Prop2-g3" : "Prop2-g4";
  b.plus = genus + sigma / 2;
  b.minus = genus - sigma / 2;
  if (b.plus < 0) {
    b.plus = 0;
    b.plus_clamped = true;
  }
  if (b.minus < 0) {
    b.minus = 0;
    b.minus_clamped = true;
  }
  return b;
}

SumConstraint prop3_bounds(long gamma, Genus which) {
  if (gamma < 1) throw Error(ErrorCode::inconsistent_input, "nonorientable genus must be at least 1");
  return {gamma, which == Genus::three ? "Prop3-gamma3" : "Prop3-gamma4"};
}

SumConstraint prop5_bound(long alt) {
  if (alt < 0) throw Error(ErrorCode::inconsistent_input, "negative alternation number");
  return {2 * ((alt + 1) / 2), "Prop5"};
}

long batson_lower(long sigma, std::optional<long> v0_mirror) {
  require_even(sigma);
  if (!v0_mirror) throw Error(ErrorCode::missing_data, "V0 of the mirror is not available");
  return std::max(0L, sigma / 2 - 2 * *v0_mirror);
}

long v0_from_cp2(long n) {
  if (n <= 0) throw Error(ErrorCode::non_positive_n, "n must be positive");
  if (n % 2 == 0) throw Error(ErrorCode::even_n, "n must be odd");
  return (n - 1) * (n + 1) / 8;
}

H2Move h2_move_sigma(const Diagram& d1, const Diagram& d2) {
  const long dw = writhe(d2) - writhe(d1);
  if (dw % 2 != 0) throw Error(ErrorCode::inconsistent_input, "writhe difference is odd");
  H2Move m;
  m.sigma = (knot_signature(d2) - knot_signature(d1)) + dw / 2;
  if (std::abs(m.sigma) > 1)
    throw Error(ErrorCode::inconsistent_input, "cobordism signature " + std::to_string(m.sigma) + " exceeds b2 = 1");
  m.cls = m.sigma == 1 ? H2Class::positive : m.sigma == -1 ? H2Class::negative : H2Class::neutral;
  return m;
}

AuditRecord almost_alternating_audit(const Diagram& d, std::span<const int> changed) {
  const Diagram alternated = change_crossings(d, changed);
  if (!is_alternating(alternated)) throw Error(ErrorCode::not_dealternating, "changed set does not alternate the diagram");

  const FaceStructure fs = faces(d);
  const FaceStructure fs_alt = faces(alternated);
  const auto colorings = checkerboard(d, fs);
  const auto colorings_alt = checkerboard(alternated, fs_alt);
  // Same projection, so the k-th coloring shades the same regions in both.
  const GoeritzData g[2] = {goeritz_matrix(d, fs, colorings.first), goeritz_matrix(d, fs, colorings.second)};
  const GoeritzData ga[2] = {goeritz_matrix(alternated, fs_alt, colorings_alt.first),
                             goeritz_matrix(alternated, fs_alt, colorings_alt.second)};

  // B' is the positive definite side, W' the negative definite one.
  auto positive = [](const SignatureTriple& t) { return t.n_minus == 0 && t.n_zero == 0; };
  auto negative = [](const SignatureTriple& t) { return t.n_plus == 0 && t.n_zero == 0; };
  int b = -1;
  for (int k = 1; k >= 0; --k)
    if (positive(ga[k].signature) && negative(ga[1 - k].signature)) b = k;
  if (b < 0) throw std::logic_error("alternated diagram has no definite pair of checkerboard forms");
  const int w = 1 - b;
  const Coloring& cb = b == 0 ? colorings.first : colorings.second;

  AuditRecord a;
  a.n = static_cast<int>(changed.size());
  a.shaded_b = cb.shaded;
  for (int x : changed) (classify_crossing(d, fs, cb, x).gl_type == GlType::II ? a.n1 : a.n2) += 1;
  a.b2_minus_b = g[b].signature.n_minus;
  a.b2_plus_w = g[w].signature.n_plus;
  a.sigma = knot_signature(d);
  a.sigma_alternated = knot_signature(alternated);
  a.euler_b = g[b].euler_number;
  a.euler_b_alternated = ga[b].euler_number;
  a.euler_w = g[w].euler_number;
  a.euler_w_alternated = ga[w].euler_number;

  a.euler_b_ok = std::abs(a.euler_b_alternated - a.euler_b) / 2 <= 2 * a.n1;
  a.euler_w_ok = std::abs(a.euler_w_alternated - a.euler_w) / 2 <= 2 * a.n2;
  // Doubled to stay in integers.
  a.n1_ok = 2 * a.n1 >= 2 * a.b2_minus_b + (a.sigma - a.sigma_alternated);
  a.n2_ok = 2 * a.n2 >= 2 * a.b2_plus_w + (a.sigma_alternated - a.sigma);
  a.total_ok = a.n >= a.b2_plus_w + a.b2_minus_b;
  return a;
}

namespace {

class Propagator {
 public:
  void lower(Interval& iv, long value, const char* source) {
    if (value > iv.lower) {
      iv.lower = value;
      iv.lower_provenance = {source};
      changed_ = true;
    } else if (value == iv.lower && value > 0) {
      changed_ |= add(iv.lower_provenance, source);
    }
  }

  void upper(Interval& iv, long value, const char* source) {
    if (!iv.upper || value < *iv.upper) {
      iv.upper = value;
      iv.upper_provenance = {source};
      changed_ = true;
    } else if (value == *iv.upper) {
      changed_ |= add(iv.upper_provenance, source);
    }
  }

  void upper(Interval& iv, const std::optional<long>& value, const char* source) {
    if (value) upper(iv, *value, source);
  }

  bool take_changed() { return std::exchange(changed_, false); }

 private:
  static bool add(std::vector<std::string>& list, const char* source) {
    if (std::find(list.begin(), list.end(), source) != list.end()) return false;
    list.emplace_back(source);
    std::sort(list.begin(), list.end());
    return true;
  }

  bool changed_ = false;
};

std::string describe(const char* what, const std::vector<std::string>& provenance) {
  std::string out = what;
  out += " via ";
  for (std::size_t k = 0; k < provenance.size(); ++k) out += (k ? "," : "") + provenance[k];
  return out;
}

}  // namespace

BoundsReport aggregate_report(const KnotRecord& rec, const std::vector<Diagram>& diagrams,
                              const std::optional<QAVerdict>& qa) {
  std::vector<Diagram> all{parse_pd(rec.pd)};
  all.insert(all.end(), diagrams.begin(), diagrams.end());

  BoundsReport r;
  r.name = rec.name;
  r.sigma = knot_signature(all.front());
  r.det = link_determinant(all.front());
  for (std::size_t k = 1; k < all.size(); ++k) {
    if (knot_signature(all[k]) != r.sigma || link_determinant(all[k]) != r.det)
      throw Error(ErrorCode::inconsistent_diagrams, "diagram " + std::to_string(k) + " disagrees on signature or det");
  }
  if (rec.sigma && *rec.sigma != r.sigma)
    throw Error(ErrorCode::inconsistent_input, "table signature " + std::to_string(*rec.sigma) + " but computed " +
                                                   std::to_string(r.sigma));
  if (rec.det && Integer(*rec.det) != r.det)
    throw Error(ErrorCode::inconsistent_input, "table det " + std::to_string(*rec.det) + " but computed " + r.det.get_str());

  std::optional<long> surface_plus, surface_minus, diagram_dalt;
  for (const Diagram& d : all) {
    const SurfaceBounds s = surface_upper_bounds(d);
    surface_plus = std::min<long>(surface_plus.value_or(s.b_plus), s.b_plus);
    surface_minus = std::min<long>(surface_minus.value_or(s.b_minus), s.b_minus);
    const long dist = dealternating_distance(d).distance;
    diagram_dalt = std::min(diagram_dalt.value_or(dist), dist);
  }

  std::optional<GenusBounds> p2g3, p2g4;
  if (rec.g3) p2g3 = prop2_bounds(*rec.g3, r.sigma, Genus::three);
  if (rec.g4) p2g4 = prop2_bounds(*rec.g4, r.sigma, Genus::four);
  for (const auto* p : {&p2g3, &p2g4})
    if (*p && ((*p)->plus_clamped || (*p)->minus_clamped))
      r.notes.push_back((*p)->provenance + ": negative bound clamped to 0");

  std::optional<long> batson_plus, batson_minus;
  if (rec.v0_mirror) batson_plus = batson_lower(r.sigma, rec.v0_mirror);
  else r.notes.push_back("Thm2-Batson: V0 of the mirror unavailable for b+*");
  if (rec.v0) batson_minus = batson_lower(-r.sigma, rec.v0);
  else r.notes.push_back("Thm2-Batson: V0 unavailable for b-*");

  const bool certified = qa && qa->status == QaStatus::certified;
  if (certified) qa_conclusions(*qa);  // validates, and rejects links
  const bool qa_known = certified || rec.qa.value_or(false);
  if (!certified && rec.qa.value_or(false)) r.notes.push_back("Thm3-QA: quasi-alternating per table flag");

  Propagator p;
  for (int round = 0; round < 1000; ++round) {
    p.upper(r.b_plus, surface_plus, "surface");
    p.upper(r.b_minus, surface_minus, "surface");
    if (p2g3) {
      p.upper(r.b_plus, p2g3->plus, "Prop2-g3");
      p.upper(r.b_minus, p2g3->minus, "Prop2-g3");
    }
    if (p2g4) {
      p.upper(r.b_plus_star, p2g4->plus, "Prop2-g4");
      p.upper(r.b_minus_star, p2g4->minus, "Prop2-g4");
    }
    if (batson_plus) p.lower(r.b_plus_star, *batson_plus, "Thm2-Batson");
    if (batson_minus) p.lower(r.b_minus_star, *batson_minus, "Thm2-Batson");
    if (qa_known) {
      p.upper(r.b_plus_star, 0, "Thm3-QA");
      p.upper(r.b_minus_star, 0, "Thm3-QA");
    }
    if (rec.slice.value_or(false)) {
      p.upper(r.b_plus_star, 0, "slice");
      p.upper(r.b_minus_star, 0, "slice");
    }

    // Pushing a surface into the 4-ball.
    p.upper(r.b_plus_star, r.b_plus.upper, "push-in");
    p.upper(r.b_minus_star, r.b_minus.upper, "push-in");
    p.lower(r.b_plus, r.b_plus_star.lower, "push-in");
    p.lower(r.b_minus, r.b_minus_star.lower, "push-in");

    if (rec.gamma3) {
      p.lower(r.gamma3, *rec.gamma3, "input");
      p.upper(r.gamma3, *rec.gamma3, "input");
    }
    if (rec.gamma4) {
      p.lower(r.gamma4, *rec.gamma4, "input");
      p.upper(r.gamma4, *rec.gamma4, "input");
    }
    if (rec.dalt) {
      p.lower(r.dalt, *rec.dalt, "input");
      p.upper(r.dalt, *rec.dalt, "input");
    }
    if (rec.alt) {
      p.lower(r.alt, *rec.alt, "input");
      p.upper(r.alt, *rec.alt, "input");
    }

    struct Sum {
      Interval& plus;
      Interval& minus;
      Interval& total;
      const char* label;
    };
    for (const Sum& s : {Sum{r.b_plus, r.b_minus, r.gamma3, "Prop3-gamma3"},
                         Sum{r.b_plus_star, r.b_minus_star, r.gamma4, "Prop3-gamma4"},
                         Sum{r.b_plus, r.b_minus, r.dalt, "Prop4"}}) {
      p.lower(s.total, prop3_gamma_lower(s.plus.lower, s.minus.lower), s.label);
      if (s.total.upper) {
        p.upper(s.plus, *s.total.upper - s.minus.lower, s.label);
        p.upper(s.minus, *s.total.upper - s.plus.lower, s.label);
      }
    }

    // dalt from the supplied diagrams; a dealternating set is a Gordian path to an alternating knot.
    p.upper(r.dalt, diagram_dalt, "diagram");
    p.upper(r.alt, r.dalt.upper, "diagram");
    p.lower(r.dalt, r.alt.lower, "diagram");

    if (r.alt.upper) {
      const long cap = prop5_bound(std::max(0L, *r.alt.upper)).bound;
      p.upper(r.b_plus_star, cap - r.b_minus_star.lower, "Prop5");
      p.upper(r.b_minus_star, cap - r.b_plus_star.lower, "Prop5");
    }
    if (const long s = r.b_plus_star.lower + r.b_minus_star.lower; s > 0) p.lower(r.alt, 2 * ((s + 1) / 2) - 1, "Prop5");

    if (!p.take_changed()) break;
  }

  for (const auto& [label, iv] : {std::pair<const char*, const Interval*>{"b_plus", &r.b_plus},
                                  {"b_minus", &r.b_minus},
                                  {"b_plus_star", &r.b_plus_star},
                                  {"b_minus_star", &r.b_minus_star},
                                  {"gamma3", &r.gamma3},
                                  {"gamma4", &r.gamma4},
                                  {"dalt", &r.dalt},
                                  {"alt", &r.alt}})
    if (iv->contradictory()) r.contradictions.emplace_back(label);

  const bool zero = r.b_plus_star.upper == 0L && r.b_minus_star.upper == 0L;
  const bool positive = r.b_plus_star.lower > 0 || r.b_minus_star.lower > 0;
  const bool obstructed = rec.no_posdef_filling.value_or(false);
  if (zero && (positive || obstructed)) r.contradictions.emplace_back("four_dim_alternating");
  if (zero) {
    r.four_dim_alternating = FourDim::yes;
    std::vector<std::string> why = r.b_plus_star.upper_provenance;
    why.insert(why.end(), r.b_minus_star.upper_provenance.begin(), r.b_minus_star.upper_provenance.end());
    std::sort(why.begin(), why.end());
    why.erase(std::unique(why.begin(), why.end()), why.end());
    r.reason = describe("b+* = b-* = 0", why);
  } else if (r.b_plus_star.lower > 0) {
    r.four_dim_alternating = FourDim::no;
    r.reason = describe("b+* > 0", r.b_plus_star.lower_provenance);
  } else if (r.b_minus_star.lower > 0) {
    r.four_dim_alternating = FourDim::no;
    r.reason = describe("b-* > 0", r.b_minus_star.lower_provenance);
  } else if (obstructed) {
    r.four_dim_alternating = FourDim::no;
    r.reason = "no positive definite filling (input flag)";
  } else {
    r.reason = "no certificate, flag or positive lower bound";
  }
  return r;
}

}  // namespace glform
