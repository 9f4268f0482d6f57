#include "weillift/special.hpp"

#include <cmath>
#include <numbers>

namespace weillift {

long double hurwitz_zeta(long double s, long double a) {
  if (!(s > 1)) throw std::domain_error("hurwitz_zeta: need s > 1");
  if (!(a > 0)) throw std::domain_error("hurwitz_zeta: need a > 0");
  const int N = 24;
  long double sum = 0;
  for (int n = 0; n < N; ++n) sum += std::pow(n + a, -s);
  const long double x = N + a;
  sum += std::pow(x, 1 - s) / (s - 1) + std::pow(x, -s) / 2;
  // sum_k B_2k / (2k)! * s (s+1) ... (s+2k-2) x^{-s-2k+1}
  long double rising = s, xp = std::pow(x, -s - 1), fact = 2;
  for (int k = 1; k <= 12; ++k) {
    long double b = bernoulli(2 * k).get_d();
    long double term = b / fact * rising * xp;
    sum += term;
    if (std::fabs(term) < 1e-30L * std::fabs(sum)) break;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    xp /= x * x;
    fact *= (2 * k + 1) * (2 * k + 2);
  }
  return sum;
}

long double partial_zeta(long double s, i64 b, i64 N) {
  i64 r = mod(b, N);
  if (r == 0) r = N;
  return std::pow(static_cast<long double>(N), -s) *
         hurwitz_zeta(s, static_cast<long double>(r) / static_cast<long double>(N));
}

namespace {

i64 pow_mod(i64 g, i64 e, i64 m) {
  i64 r = 1 % m;
  g = mod(g, m);
  while (e > 0) {
    if (e & 1) r = static_cast<i64>((__int128)r * g % m);
    g = static_cast<i64>((__int128)g * g % m);
    e >>= 1;
  }
  return r;
}

i64 primitive_root(i64 pk, i64 p) {
  const i64 order = pk / p * (p - 1);
  auto fs = factor(order);
  for (i64 g = 2; g < pk; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [q, e] : fs)
      if (pow_mod(g, order / q, pk) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

}  // namespace

DirichletGroup::DirichletGroup(i64 N) : N_(N) {
  if (N < 1) throw std::invalid_argument("DirichletGroup: modulus must be positive");
  // cyclic factors: (generator, order, modulus of the component)
  struct Factor {
    i64 g, ord, pk;
  };
  std::vector<Factor> fac;
  for (auto [p, k] : factor(N)) {
    i64 pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    if (p == 2) {
      if (k >= 2) fac.push_back({pk - 1, 2, pk});
      if (k >= 3) fac.push_back({5, pk / 4, pk});
    } else {
      fac.push_back({primitive_root(pk, p), pk / p * (p - 1), pk});
    }
  }
  for (const auto& f : fac) {
    orders_.push_back(f.ord);
    count_ *= static_cast<std::size_t>(f.ord);
  }
  unit_index_.assign(N, -1);
  for (i64 u = 0; u < N; ++u) {
    if (gcd(u, N) != 1) continue;
    std::vector<i64> lg(fac.size(), 0);
    for (std::size_t k = 0; k < fac.size(); ++k) {
      const auto& f = fac[k];
      const i64 target = mod(u, f.pk);
      if (f.pk % 8 == 0) {
        // u = (-1)^s 5^t mod 2^k
        bool found = false;
        for (i64 s = 0; s < 2 && !found; ++s)
          for (i64 t = 0; t < f.pk / 4; ++t)
            if (mod((s ? -1 : 1) * pow_mod(5, t, f.pk), f.pk) == target) {
              if (f.g == 5) lg[k] = t;
              else lg[k] = s;
              found = true;
              break;
            }
      } else {
        i64 x = 1;
        for (i64 t = 0; t < f.ord; ++t, x = mod(x * f.g, f.pk))
          if (x == target) {
            lg[k] = t;
            break;
          }
      }
    }
    unit_index_[u] = static_cast<i64>(units_.size());
    units_.push_back(u);
    logs_.push_back(std::move(lg));
  }
}

cld DirichletGroup::value(std::size_t j, i64 n) const {
  i64 r = mod(n, N_);
  i64 ui = unit_index_[r];
  if (ui < 0) return 0;
  long double phase = 0;
  std::size_t rest = j;
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    i64 ek = static_cast<i64>(rest % orders_[k]);
    rest /= orders_[k];
    phase += static_cast<long double>(mod(ek * logs_[ui][k], orders_[k])) / orders_[k];
  }
  const long double t = 2 * std::numbers::pi_v<long double> * phase;
  return {std::cos(t), std::sin(t)};
}

cld dirichlet_l(const DirichletGroup& G, std::size_t j, long double s) {
  const i64 N = G.modulus();
  cld sum = 0;
  for (i64 a : G.units()) {
    i64 r = a == 0 ? N : a;  // N = 1
    sum += G.value(j, a) * hurwitz_zeta(s, static_cast<long double>(r) / N);
  }
  return sum * std::pow(static_cast<long double>(N), -s);
}

double k_bessel_half(int n, double z) {
  if (n < 0) throw std::domain_error("k_bessel_half: n must be non-negative");
  if (!(z > 0)) throw std::domain_error("k_bessel_half: z must be positive");
  // (n+m)! / (m! (n-m)!) (2z)^{-m}
  double sum = 0, term = 1;
  for (int m = 0; m <= n; ++m) {
    if (m > 0) term *= static_cast<double>((n + m) * (n - m + 1)) / (m * 2.0 * z);
    sum += term;
  }
  return std::sqrt(std::numbers::pi / (2 * z)) * std::exp(-z) * sum;
}

double bessel_k(double nu, double z) {
  double a = std::fabs(nu);
  double h = a - 0.5;
  if (std::fabs(h - std::round(h)) < 1e-14) return k_bessel_half(static_cast<int>(std::round(h)), z);
  return std::cyl_bessel_k(a, z);
}

}  // namespace weillift
