#include "glform/exact_forms.hpp"

#include <algorithm>
#include <numeric>

#include "glform/error.hpp"

namespace glform {

SymMatrix SymMatrix::from_matrix(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::not_symmetric, "matrix is not square");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i))
        throw Error(ErrorCode::not_symmetric,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose");
  SymMatrix out;
  out.m_ = std::move(m);
  return out;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const int n = static_cast<int>(rows.size());
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw Error(ErrorCode::not_symmetric, "matrix is not square");
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return from_matrix(std::move(m));
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<long>> copy;
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

const char* definiteness_name(Definiteness d) {
  switch (d) {
    case Definiteness::positive: return "positive";
    case Definiteness::negative: return "negative";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::degenerate: return "degenerate";
    case Definiteness::empty: return "empty";
  }
  return "unknown";
}

SignatureTriple signature_triple(const SymMatrix& m) {
  const int n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);

  std::vector<int> active(n);
  std::iota(active.begin(), active.end(), 0);
  SignatureTriple out;

  auto drop = [&](int idx) { active.erase(std::find(active.begin(), active.end(), idx)); };

  while (!active.empty()) {
    int pivot = -1;
    for (int i : active)
      if (sgn(a[i][i]) != 0 && (pivot < 0 || abs(a[i][i]) > abs(a[pivot][pivot]))) pivot = i;

    if (pivot >= 0) {
      const Rational p = a[pivot][pivot];
      (sgn(p) > 0 ? out.n_plus : out.n_minus) += 1;
      drop(pivot);
      for (int r : active) {
        if (sgn(a[r][pivot]) == 0) continue;
        const Rational factor = a[r][pivot] / p;
        for (int c : active) a[r][c] -= factor * a[pivot][c];
      }
      continue;
    }

    // Zero diagonal: any nonzero entry spans a hyperbolic plane.
    int hi = -1;
    int hj = -1;
    for (int i : active) {
      for (int j : active) {
        if (i != j && sgn(a[i][j]) != 0) {
          hi = i;
          hj = j;
          break;
        }
      }
      if (hi >= 0) break;
    }
    if (hi < 0) {
      out.n_zero += static_cast<int>(active.size());
      break;
    }
    const Rational b = a[hi][hj];
    out.n_plus += 1;
    out.n_minus += 1;
    drop(hi);
    drop(hj);
    // Schur complement against [[0, b], [b, 0]].
    std::vector<Rational> col_i(n), col_j(n);
    for (int r : active) {
      col_i[r] = a[r][hi];
      col_j[r] = a[r][hj];
    }
    for (int r : active)
      for (int c : active) a[r][c] -= (col_i[r] * col_j[c] + col_j[r] * col_i[c]) / b;
  }
  return out;
}

Integer det_exact(const IntMatrix& input) {
  const int n = input.rows();
  if (n != input.cols()) throw Error(ErrorCode::not_symmetric, "determinant of a non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = input;
  Integer previous = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (a(r, k) != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(a(k, c), a(swap_row, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<Integer> smith_normal_form(const IntMatrix& input) {
  IntMatrix a = input;
  const int rows = a.rows();
  const int cols = a.cols();
  const int diag = std::min(rows, cols);
  std::vector<Integer> factors;
  factors.reserve(diag);

  bool exhausted = false;
  for (int t = 0; t < diag && !exhausted; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      int pr = -1;
      int pc = -1;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pr < 0 || abs(a(i, j)) < abs(a(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr < 0) {
        for (int rest = t; rest < diag; ++rest) factors.push_back(0);
        exhausted = true;
        break;
      }
      for (int c = 0; c < cols; ++c) std::swap(a(t, c), a(pr, c));
      for (int r = 0; r < rows; ++r) std::swap(a(r, t), a(r, pc));

      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        for (int c = t; c < cols; ++c) a(i, c) -= q * a(t, c);
        if (a(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        for (int r = t; r < rows; ++r) a(r, j) -= q * a(r, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // The pivot must divide the rest of the block.
      int bad_row = -1;
      for (int i = t + 1; i < rows && bad_row < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;
      for (int c = t; c < cols; ++c) a(t, c) += a(bad_row, c);
    }
    if (!exhausted) factors.push_back(abs(a(t, t)));
  }

  std::stable_partition(factors.begin(), factors.end(), [](const Integer& f) { return f != 0; });
  const auto nonzero = static_cast<std::size_t>(
      std::count_if(factors.begin(), factors.end(), [](const Integer& f) { return f != 0; }));
  for (std::size_t i = 0; i < nonzero; ++i)
    for (std::size_t j = i + 1; j < nonzero; ++j) {
      Integer g, l;
      mpz_gcd(g.get_mpz_t(), factors[i].get_mpz_t(), factors[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), factors[i].get_mpz_t(), factors[j].get_mpz_t());
      factors[i] = g;
      factors[j] = l;
    }
  return factors;
}

Definiteness definiteness(const SignatureTriple& t) {
  const int n = t.dimension();
  if (n == 0) return Definiteness::empty;
  if (t.n_zero > 0) return Definiteness::degenerate;
  if (t.n_plus == n) return Definiteness::positive;
  if (t.n_minus == n) return Definiteness::negative;
  return Definiteness::indefinite;
}

}  // namespace glform
