#pragma once

// Exact linear algebra for integral symmetric bilinear forms.

#include <gmpxx.h>

#include <initializer_list>
#include <vector>

namespace glform {

using Integer = mpz_class;
using Rational = mpq_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  Integer& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Integer& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> entries_;
};

// Square and symmetric by construction; n = 0 is the empty form.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : m_(n, n) {}
  // Throws NotSymmetric, also for non-square or ragged input.
  static SymMatrix from_matrix(IntMatrix m);
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static SymMatrix from_rows(const std::vector<std::vector<long>>& rows);

  int size() const noexcept { return m_.rows(); }
  const Integer& operator()(int i, int j) const { return m_(i, j); }
  // Writes both (i, j) and (j, i).
  void set(int i, int j, const Integer& value) {
    m_(i, j) = value;
    m_(j, i) = value;
  }
  const IntMatrix& matrix() const noexcept { return m_; }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  IntMatrix m_;
};

struct SignatureTriple {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;

  int signature() const { return n_plus - n_minus; }
  int dimension() const { return n_plus + n_minus + n_zero; }
  friend bool operator==(const SignatureTriple&, const SignatureTriple&) = default;
};

enum class Definiteness { positive, negative, indefinite, degenerate, empty };

const char* definiteness_name(Definiteness d);

// Congruence diagonalization over Q: largest |diagonal| pivot first, then
// hyperbolic 2x2 blocks when the remaining diagonal vanishes.
SignatureTriple signature_triple(const SymMatrix& m);

// Fraction-free (Bareiss) elimination; the empty form has determinant 1.
Integer det_exact(const IntMatrix& m);
inline Integer det_exact(const SymMatrix& m) { return det_exact(m.matrix()); }

// Invariant factors d1 | d2 | ... over Z, one per diagonal position, zeros last.
std::vector<Integer> smith_normal_form(const IntMatrix& m);
inline std::vector<Integer> smith_normal_form(const SymMatrix& m) { return smith_normal_form(m.matrix()); }

Definiteness definiteness(const SignatureTriple& t);
inline Definiteness definiteness(const SymMatrix& m) { return definiteness(signature_triple(m)); }

}  // namespace glform
