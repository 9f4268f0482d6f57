#include "weillift/intmat.hpp"

#include <algorithm>
#include <cstdlib>

namespace weillift {

IntMat identity_matrix(int n) {
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat transpose(const IntMat& a) {
  if (a.empty()) return {};
  IntMat t(a[0].size(), IntVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

IntMat matmul(const IntMat& a, const IntMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat c(n, IntVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        c[i][j] = checked_add(c[i][j], checked_mul(a[i][l], b[l][j]));
    }
  return c;
}

IntVec matvec(const IntMat& a, const IntVec& v) {
  IntVec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], v);
  return r;
}

RatVec matvec(const IntMat& a, const RatVec& v) {
  RatVec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (a[i][j] != 0) r[i] += a[i][j] * v[j];
  return r;
}

i64 dot(const IntVec& a, const IntVec& b) {
  i64 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

mpq_class dot(const RatVec& a, const RatVec& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

i64 content(const IntVec& v) {
  i64 g = 0;
  for (i64 x : v) g = gcd(g, x);
  return g;
}

namespace {

void row_addmul(IntMat& a, std::size_t dst, std::size_t src, i64 f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < a[dst].size(); ++j)
    a[dst][j] = checked_add(a[dst][j], checked_mul(f, a[src][j]));
}

void col_addmul(IntMat& a, std::size_t dst, std::size_t src, i64 f) {
  if (f == 0) return;
  for (auto& row : a) row[dst] = checked_add(row[dst], checked_mul(f, row[src]));
}

void col_swap(IntMat& a, std::size_t i, std::size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
}

}  // namespace

SmithForm smith_normal_form(const IntMat& input) {
  IntMat a = input;
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  SmithForm s;
  s.U = identity_matrix(static_cast<int>(m));
  s.V = identity_matrix(static_cast<int>(n));
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    bool have_pivot = true;
    for (;;) {
      std::size_t pi = m, pj = n;
      i64 best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
            best = std::llabs(a[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0) {
        have_pivot = false;
        break;
      }
      std::swap(a[t], a[pi]);
      std::swap(s.U[t], s.U[pi]);
      col_swap(a, t, pj);
      col_swap(s.V, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        i64 q = a[i][t] / a[t][t];
        row_addmul(a, i, t, -q);
        row_addmul(s.U, i, t, -q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        i64 q = a[t][j] / a[t][t];
        col_addmul(a, j, t, -q);
        col_addmul(s.V, j, t, -q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_addmul(a, t, bad, 1);
      row_addmul(s.U, t, bad, 1);
    }
    if (!have_pivot) break;
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : s.U[t]) x = -x;
    }
  }
  s.rank = static_cast<int>(t);
  s.diag.assign(std::min(m, n), 0);
  for (std::size_t i = 0; i < std::min(m, n); ++i) s.diag[i] = a[i][i];
  return s;
}

IntMat hermite_rows(IntMat a) {
  const std::size_t r = a.size(), n = r ? a[0].size() : 0;
  std::size_t p = 0;
  for (std::size_t c = 0; c < n && p < r; ++c) {
    for (;;) {
      std::size_t best = r;
      for (std::size_t i = p; i < r; ++i)
        if (a[i][c] != 0 && (best == r || std::llabs(a[i][c]) < std::llabs(a[best][c]))) best = i;
      if (best == r) break;
      std::swap(a[p], a[best]);
      bool clean = true;
      for (std::size_t i = p + 1; i < r; ++i) {
        if (a[i][c] == 0) continue;
        row_addmul(a, i, p, -(a[i][c] / a[p][c]));
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[p][c] == 0) continue;
    if (a[p][c] < 0)
      for (auto& x : a[p]) x = -x;
    for (std::size_t i = 0; i < p; ++i) {
      i64 q = a[i][c] / a[p][c];
      if (a[i][c] % a[p][c] < 0) --q;
      row_addmul(a, i, p, -q);
    }
    ++p;
  }
  a.resize(p);
  return a;
}

IntMat integer_kernel(const IntMat& a) {
  if (a.empty()) return {};
  const std::size_t n = a[0].size();
  SmithForm s = smith_normal_form(a);
  IntMat basis;
  for (std::size_t j = static_cast<std::size_t>(s.rank); j < n; ++j) {
    IntVec col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = s.V[i][j];
    basis.push_back(col);
  }
  if (basis.empty()) return basis;
  return hermite_rows(basis);
}

mpz_class determinant(const IntMat& input) {
  const std::size_t n = input.size();
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(input[i][j]);
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::optional<RatVec> solve_rational(const RatMat& a, const RatVec& b) {
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  RatMat w(m, RatVec(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a[i][j];
    w[i][n] = b[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && w[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(w[p], w[row]);
    mpq_class inv = 1 / w[row][c];
    for (std::size_t j = c; j <= n; ++j) w[row][j] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || w[i][c] == 0) continue;
      mpq_class f = w[i][c];
      for (std::size_t j = c; j <= n; ++j) w[i][j] -= f * w[row][j];
    }
    piv.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (w[i][n] != 0) return std::nullopt;
  RatVec x(n, 0);
  for (std::size_t r = 0; r < row; ++r) x[piv[r]] = w[r][n];
  return x;
}

}  // namespace weillift
