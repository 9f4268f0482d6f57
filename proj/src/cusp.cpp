#include "weillift/cusp.hpp"

#include <algorithm>
#include <cmath>
#include <omp.h>

namespace weillift {

namespace {

// One solution s of f . s = gcd(f), built by folding extended gcds left to right.
IntVec gcd_combination(const IntVec& f) {
  IntVec s(f.size(), 0);
  i64 g = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    if (g == 0) {
      g = f[i] > 0 ? f[i] : -f[i];
      s[i] = f[i] > 0 ? 1 : -1;
      continue;
    }
    ExtGcd e = ext_gcd(g, f[i]);
    for (std::size_t j = 0; j < i; ++j) s[j] = checked_mul(s[j], e.x);
    s[i] = e.y;
    g = e.g;
  }
  return s;
}

RatVec axpy(const RatVec& x, const mpq_class& a, const RatVec& y) {
  RatVec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += a * y[i];
  return r;
}

IntMat gram_of_rows(const IntegralLattice& L, const IntMat& B) {
  IntMat g(B.size(), IntVec(B.size()));
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) g[i][j] = L.pair(B[i], B[j]);
  return g;
}

}  // namespace

RatVec IsotropicCusp::orthogonal_projection(const IntegralLattice& L, const RatVec& lam) const {
  const RatVec zr = to_rat(z);
  mpq_class lz = L.pair(lam, zr), lzp = L.pair(lam, z_prime), zpzp = L.pair(z_prime, z_prime);
  RatVec r = axpy(lam, -lz, z_prime);
  return axpy(r, lz * zpzp - lzp, zr);
}

RatVec IsotropicCusp::project(const IntegralLattice& L, const RatVec& lam) const {
  mpq_class lz = L.pair(lam, to_rat(z));
  return axpy(orthogonal_projection(L, lam), lz / level, zeta_K);
}

RatVec IsotropicCusp::to_K_coords(const RatVec& v) const {
  const std::size_t n = v.size(), k = K_basis.size();
  RatMat a(n, RatVec(k));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = K_basis[j][i];
  auto y = solve_rational(a, v);
  if (!y) throw ValidationError("vector does not lie in K ⊗ Q");
  return *y;
}

RatVec IsotropicCusp::from_K_coords(const RatVec& y) const {
  RatVec v(z.size(), 0);
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += y[j] * K_basis[j][i];
  return v;
}

IsotropicCusp cusp_data(const IntegralLattice& L, const IntVec& z, const RatVec& z_prime) {
  const int n = L.rank();
  if (static_cast<int>(z.size()) != n || static_cast<int>(z_prime.size()) != n)
    throw ValidationError("cusp vectors must have length " + std::to_string(n));
  if (n < 2) throw ValidationError("cusp data needs rank at least 2");
  if (content(z) != 1) throw ValidationError("z is not primitive");
  if (L.norm(z) != 0) throw ValidationError("z is not isotropic");
  RatVec gzp = matvec(L.gram(), z_prime);
  IntVec gzp_int(n);
  for (int i = 0; i < n; ++i) {
    if (gzp[i].get_den() != 1) throw ValidationError("z' is not in the dual lattice");
    gzp_int[i] = gzp[i].get_num().get_si();
  }
  if (L.pair(to_rat(z), z_prime) != 1) throw ValidationError("(z, z') must equal 1");

  IsotropicCusp c;
  c.z = z;
  c.z_prime = z_prime;
  IntVec f = matvec(L.gram(), z);
  c.level = content(f);
  c.zeta = gcd_combination(f);
  if (L.pair(z, c.zeta) != c.level) throw std::logic_error("cusp_data: no zeta with (z, zeta) = N_z");
  const RatVec zeta_r = to_rat(c.zeta);
  c.zeta_K = c.orthogonal_projection(L, zeta_r);
  RatVec rest = axpy(axpy(zeta_r, -1, c.zeta_K), -mpq_class(c.level), z_prime);
  for (int i = 0; i < n; ++i)
    if (z[i] != 0) {
      c.zeta_B = rest[i] / z[i];
      break;
    }
  c.K_basis = integer_kernel({f, gzp_int});
  c.K_gram = gram_of_rows(L, c.K_basis);
  if (static_cast<int>(c.K_basis.size()) != n - 2) throw std::logic_error("cusp_data: rank of K");
  Signature sk = c.K().signature(), sl = L.signature();
  if (sk.plus != sl.plus - 1 || sk.minus != sl.minus - 1)
    throw std::logic_error("cusp_data: signature of K");
  return c;
}

IntMat k_gram_via_projection(const IntegralLattice& L, const IsotropicCusp& c) {
  IntVec f = matvec(L.gram(), c.z);
  IntMat perp = integer_kernel({f});
  IntMat img;
  for (const auto& row : perp) {
    RatVec p = c.orthogonal_projection(L, to_rat(row));
    IntVec v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i].get_den() != 1) throw std::logic_error("projection of L ∩ z^⊥ is not integral");
      v[i] = p[i].get_num().get_si();
    }
    img.push_back(v);
  }
  return gram_of_rows(L, hermite_rows(img));
}

RatVec lift_from_K(const IntegralLattice& L, const IsotropicCusp& c, const RatVec& gamma_L) {
  mpq_class t = L.pair(gamma_L, c.zeta_K) / c.level;
  return axpy(gamma_L, -t, to_rat(c.z));
}

CuspReport verify_cusp(const IntegralLattice& L, const IsotropicCusp& c) {
  CuspReport r;
  IntegralLattice K = c.K();
  mpz_class dl = abs(L.det()), dk = abs(K.det());
  r.index_formula = dl == dk * c.level * c.level;
  r.gram_two_ways = k_gram_via_projection(L, c) == c.K_gram;

  DiscriminantForm DK = discriminant_form(K), DL = discriminant_form(L);
  const RatVec zr = to_rat(c.z);
  auto image = [&](const RatVec& lam) {
    return DK.reduce(c.K_gram, c.to_K_coords(c.project(L, lam)));
  };
  bool well_defined = true;
  for (int i = 0; i < L.rank(); ++i) {
    IntVec e(L.rank(), 0);
    e[i] = 1;
    if (image(to_rat(e)) != 0) well_defined = false;
  }
  std::vector<char> hit(DK.module->size(), 0);
  for (std::size_t idx = 0; idx < DL.module->size(); ++idx) {
    RatVec lam = DL.rep(idx);
    mpq_class lz = L.pair(lam, zr);
    if (lz.get_den() != 1 || mod(lz.get_num().get_si(), c.level) != 0) continue;
    hit[image(lam)] = 1;
  }
  r.surjective = well_defined && std::all_of(hit.begin(), hit.end(), [](char h) { return h; });

  // dual basis of K: rows of K_gram^{-1} in K coordinates
  r.generators_fixed = true;
  const std::size_t k = c.K_gram.size();
  RatMat g(k, RatVec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g[i][j] = c.K_gram[i][j];
  for (std::size_t i = 0; i < k; ++i) {
    RatVec e(k, 0);
    e[i] = 1;
    auto y = solve_rational(g, e);
    RatVec gamma = c.from_K_coords(*y);
    if (c.project(L, gamma) != gamma) r.generators_fixed = false;
  }
  return r;
}

std::vector<IsotropicVector> find_isotropic_vectors(const IntegralLattice& L, int bound, Exec exec,
                                                    double budget) {
  if (bound < 1) throw ValidationError("coordinate bound must be at least 1");
  const int n = L.rank();
  const double total_d = std::pow(2.0 * bound + 1.0, n);
  if (total_d > budget)
    throw BudgetExceeded("isotropic box search needs " + std::to_string(total_d) +
                             " candidates, budget is " + std::to_string(budget),
                         total_d, budget);
  const i64 side = 2 * bound + 1;
  const i64 total = static_cast<i64>(total_d);
  const IntMat& G = L.gram();

  auto test = [&](i64 idx, IntVec& v, std::vector<IsotropicVector>& out) {
    for (int i = n - 1; i >= 0; --i) {
      v[i] = idx % side - bound;
      idx /= side;
    }
    int first = 0;
    while (first < n && v[first] == 0) ++first;
    if (first == n || v[first] < 0) return;
    IntVec gv = matvec(G, v);
    if (dot(v, gv) != 0 || content(v) != 1) return;
    out.push_back({v, content(gv)});
  };

  std::vector<IsotropicVector> found;
  if (exec == Exec::serial) {
    IntVec v(n);
    for (i64 idx = 0; idx < total; ++idx) test(idx, v, found);
  } else {
#pragma omp parallel
    {
      std::vector<IsotropicVector> local;
      IntVec v(n);
#pragma omp for schedule(static)
      for (i64 idx = 0; idx < total; ++idx) test(idx, v, local);
#pragma omp critical
      found.insert(found.end(), local.begin(), local.end());
    }
  }
  std::sort(found.begin(), found.end(),
            [](const IsotropicVector& a, const IsotropicVector& b) { return a.z < b.z; });
  return found;
}

}  // namespace weillift
