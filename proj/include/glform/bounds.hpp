#pragma once

// Interval bounds on b±, b±*, γ3, γ4, dalt and alt, each side tagged with
// the result that produced it.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "glform/diagram.hpp"
#include "glform/gl_form.hpp"
#include "glform/quasialt.hpp"

namespace glform {

struct KnotRecord {
  std::string name;
  std::string pd;
  std::optional<long> sigma, det, v0, v0_mirror, tau, g3, g4, gamma3, gamma4, alt, dalt;
  std::optional<bool> slice, qa, alternating, no_posdef_filling;
};

// Swaps chirality: negates sigma and tau, exchanges v0 and v0_mirror.
KnotRecord mirror_record(const KnotRecord& rec);

struct Interval {
  long lower = 0;
  std::optional<long> upper;
  std::vector<std::string> lower_provenance;
  std::vector<std::string> upper_provenance;

  bool contradictory() const { return upper && lower > *upper; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class FourDim { yes, no, unknown };
const char* four_dim_name(FourDim f);

struct BoundsReport {
  std::string name;
  int sigma = 0;
  Integer det;
  Interval b_plus, b_minus, b_plus_star, b_minus_star, gamma3, gamma4, dalt, alt;
  FourDim four_dim_alternating = FourDim::unknown;
  std::string reason;
  std::vector<std::string> notes;
  std::vector<std::string> contradictions;

  friend bool operator==(const BoundsReport&, const BoundsReport&) = default;
};

struct SurfaceBounds {
  int b_plus = 0;
  int b_minus = 0;
  CoverBetti first, second;
};
SurfaceBounds surface_upper_bounds(const Diagram& d);

enum class Genus { three, four };

struct GenusBounds {
  long plus = 0;
  long minus = 0;
  bool plus_clamped = false;
  bool minus_clamped = false;
  std::string provenance;
};
// b± <= g ± σ/2 (b±* for the 4-genus); OddSigma, InconsistentInput for g < 0.
GenusBounds prop2_bounds(long genus, long sigma, Genus which);

struct SumConstraint {
  long bound = 0;
  std::string provenance;
};
// b+ + b- <= γ3, or b+* + b-* <= γ4; InconsistentInput for γ < 1.
SumConstraint prop3_bounds(long gamma, Genus which);
// The converse reading: γ >= b+ + b- from lower bounds.
inline long prop3_gamma_lower(long plus_lower, long minus_lower) { return plus_lower + minus_lower; }

inline long prop4_bound(long b_plus_lower, long b_minus_lower) { return b_plus_lower + b_minus_lower; }

// b+* + b-* <= 2 ceil(alt / 2); InconsistentInput for alt < 0.
SumConstraint prop5_bound(long alt);

// max(0, σ/2 - 2 V0(K*)); MissingData if V0(K*) is absent, OddSigma.
long batson_lower(long sigma, std::optional<long> v0_mirror);

// V0 of a knot bounding a disk in the punctured CP2 with class n.
long v0_from_cp2(long n);

enum class H2Class { positive, negative, neutral };
const char* h2_class_name(H2Class c);
struct H2Move {
  long sigma = 0;
  H2Class cls = H2Class::neutral;
};
H2Move h2_move_sigma(const Diagram& d1, const Diagram& d2);

struct AuditRecord {
  int n = 0;
  int n1 = 0;  // changed crossings of Type II for the shaded surface B
  int n2 = 0;  // changed crossings of Type I for B, hence Type II for W
  Color shaded_b = Color::black;
  int b2_minus_b = 0;
  int b2_plus_w = 0;
  int sigma = 0;
  int sigma_alternated = 0;
  int euler_b = 0, euler_b_alternated = 0;
  int euler_w = 0, euler_w_alternated = 0;
  bool euler_b_ok = false;
  bool euler_w_ok = false;
  bool n1_ok = false;
  bool n2_ok = false;
  bool total_ok = false;

  bool all_ok() const { return euler_b_ok && euler_w_ok && n1_ok && n2_ok && total_ok; }
};
// Throws NotDealternating if changing `changed` does not alternate d.
AuditRecord almost_alternating_audit(const Diagram& d, std::span<const int> changed);

// `diagrams` are extra diagrams of the same knot; rec.pd is always used.
// Throws InconsistentDiagrams on σ/det disagreement among them.
BoundsReport aggregate_report(const KnotRecord& rec, const std::vector<Diagram>& diagrams,
                              const std::optional<QAVerdict>& qa = std::nullopt);

}  // namespace glform
