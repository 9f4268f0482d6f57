#include "weillift/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace weillift {

namespace {

using Poly = std::vector<i64>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division by a monic polynomial.
Poly poly_div_exact(Poly a, const Poly& b) {
  std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    i64 c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

Poly cyclotomic_poly(i64 m) {
  Poly num{1}, den{1};
  for (i64 d : divisors(m)) {
    int mu = moebius(m / d);
    if (mu == 0) continue;
    Poly f(d + 1, 0);
    f[0] = -1;
    f[d] = 1;
    if (mu > 0)
      num = poly_mul(num, f);
    else
      den = poly_mul(den, f);
  }
  return poly_div_exact(num, den);
}

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// a = q * b + r
void qpoly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  const std::size_t db = b.size() - 1;
  while (!r.empty() && r.size() - 1 >= db) {
    std::size_t shift = r.size() - 1 - db;
    mpq_class c = r.back() / b.back();
    q[shift] = c;
    for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= c * b[j];
    trim(r);
  }
}

QPoly qpoly_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  QPoly r(std::max(a.size(), q.size() + b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= q[i] * b[j];
  trim(r);
  return r;
}

}  // namespace

std::shared_ptr<const CycloField> CycloField::get(i64 order) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<i64, std::shared_ptr<const CycloField>> registry;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(order);
    if (it != registry.end()) return it->second;
  }
  auto f = std::make_shared<CycloField>();
  f->order = order;
  f->phi = cyclotomic_poly(order);
  f->degree = static_cast<int>(f->phi.size()) - 1;
  const int n = f->degree;
  f->powers.assign(order, std::vector<i64>(n, 0));
  f->powers[0][0] = 1;
  for (i64 j = 1; j < order; ++j) {
    const auto& prev = f->powers[j - 1];
    auto& cur = f->powers[j];
    i64 top = prev[n - 1];
    for (int k = n - 1; k > 0; --k) cur[k] = prev[k - 1];
    cur[0] = 0;
    if (top != 0)
      for (int k = 0; k < n; ++k) cur[k] = checked_add(cur[k], -checked_mul(top, f->phi[k]));
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = registry.emplace(order, f);
  return it->second;
}

CycloNum::CycloNum() : CycloNum(mpq_class(0), 1) {}

CycloNum::CycloNum(long n) : CycloNum(mpq_class(n), 1) {}

CycloNum::CycloNum(const mpq_class& r, i64 order) : field_(CycloField::get(order)) {
  num_.assign(field_->degree, 0);
  num_[0] = r.get_num();
  den_ = r.get_den();
}

CycloNum::CycloNum(std::shared_ptr<const CycloField> f, std::vector<mpz_class> num, mpz_class den)
    : field_(std::move(f)), num_(std::move(num)), den_(std::move(den)) {
  reduce_content();
}

void CycloNum::reduce_content() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  mpz_class g = den_;
  bool all_zero = true;
  for (const auto& c : num_) {
    if (c == 0) continue;
    all_zero = false;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (all_zero) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

CycloNum CycloNum::from_periodic(std::shared_ptr<const CycloField> f,
                                 const std::vector<mpz_class>& per, const mpz_class& den) {
  const int n = f->degree;
  std::vector<mpz_class> out(n, 0);
  for (i64 j = 0; j < f->order; ++j) {
    const mpz_class& c = per[j];
    if (c == 0) continue;
    if (j < n) {
      out[j] += c;
      continue;
    }
    const auto& row = f->powers[j];
    for (int k = 0; k < n; ++k) {
      i64 p = row[k];
      if (p > 0)
        mpz_addmul_ui(out[k].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
      else if (p < 0)
        mpz_submul_ui(out[k].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-p));
    }
  }
  return CycloNum(std::move(f), std::move(out), den);
}

CycloNum CycloNum::zeta(i64 order, i64 k) {
  auto f = CycloField::get(order);
  std::vector<mpz_class> per(order, 0);
  per[mod(k, order)] = 1;
  return from_periodic(f, per, 1);
}

CycloNum CycloNum::root_of_unity(i64 a, i64 b) {
  if (b < 1) throw std::invalid_argument("root_of_unity: denominator must be positive");
  i64 g = gcd(a, b);
  if (g == 0) g = 1;
  i64 bb = b / g;
  return zeta(bb, mod(a / g, bb));
}

CycloNum CycloNum::from_root_counts(i64 order, const std::vector<i64>& counts) {
  auto f = CycloField::get(order);
  std::vector<mpz_class> per(order, 0);
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k] != 0) per[k % order] += mpz_class(static_cast<long>(counts[k]));
  return from_periodic(f, per, 1);
}

CycloNum CycloNum::from_coeffs(i64 order, const std::vector<mpq_class>& c) {
  auto f = CycloField::get(order);
  mpz_class den = 1;
  for (const auto& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> per(order, 0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    mpq_class t = c[k] * den;
    per[k % order] += t.get_num();
  }
  return from_periodic(f, per, den);
}

CycloNum CycloNum::sqrt_nat(i64 n) {
  if (n < 1) throw std::invalid_argument("sqrt_nat: n must be positive");
  i64 s = 1;
  CycloNum r(1L);
  for (auto [p, e] : factor(n)) {
    for (int k = 0; k < e / 2; ++k) s *= p;
    if (e % 2 == 0) continue;
    if (p == 2) {
      r *= zeta(8, 1) + zeta(8, 7);
    } else {
      std::vector<i64> counts(p, 0);
      for (i64 k = 0; k < p; ++k) counts[(k * k) % p] += 1;
      CycloNum g = from_root_counts(p, counts);
      // g = sqrt(p) for p = 1 mod 4 and i*sqrt(p) for p = 3 mod 4
      if (p % 4 == 3) g *= zeta(4, 3);
      r *= g;
    }
  }
  return r * mpq_class(s);
}

std::vector<mpq_class> CycloNum::coeffs() const {
  std::vector<mpq_class> out(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) {
    out[i] = mpq_class(num_[i], den_);
    out[i].canonicalize();
  }
  return out;
}

CycloNum CycloNum::lift(i64 m) const {
  const i64 M = order();
  if (m == M) return *this;
  if (m % M != 0) throw std::invalid_argument("lift: target order must be a multiple");
  auto f = CycloField::get(m);
  std::vector<mpz_class> per(m, 0);
  const i64 step = m / M;
  for (std::size_t i = 0; i < num_.size(); ++i) per[static_cast<i64>(i) * step] = num_[i];
  return from_periodic(f, per, den_);
}

std::optional<CycloNum> CycloNum::descend(i64 m) const {
  const i64 M = order();
  if (m == M) return *this;
  if (M % m != 0) throw std::invalid_argument("descend: target order must divide");
  auto small = CycloField::get(m);
  const int n = degree(), k = small->degree;
  const i64 step = M / m;
  // columns: image of zeta_m^j in the big basis; solve A y = x by elimination
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(k + 1));
  for (int j = 0; j < k; ++j) {
    const auto& col = field_->powers[static_cast<i64>(j) * step];
    for (int i = 0; i < n; ++i) a[i][j] = col[i];
  }
  for (int i = 0; i < n; ++i) a[i][k] = mpq_class(num_[i], den_);
  int row = 0;
  std::vector<int> pivcol;
  for (int c = 0; c < k && row < n; ++c) {
    int p = row;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    mpq_class inv = 1 / a[row][c];
    for (int j = c; j <= k; ++j) a[row][j] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == row || a[i][c] == 0) continue;
      mpq_class t = a[i][c];
      for (int j = c; j <= k; ++j) a[i][j] -= t * a[row][j];
    }
    pivcol.push_back(c);
    ++row;
  }
  for (int i = row; i < n; ++i)
    if (a[i][k] != 0) return std::nullopt;
  std::vector<mpq_class> y(k, 0);
  for (int r = 0; r < row; ++r) y[pivcol[r]] = a[r][k];
  return from_coeffs(m, y);
}

CycloNum CycloNum::normalized() const {
  for (i64 m : divisors(order())) {
    auto d = descend(m);
    if (d) return *d;
  }
  return *this;
}

bool CycloNum::is_zero() const {
  for (const auto& c : num_)
    if (c != 0) return false;
  return true;
}

std::optional<mpq_class> CycloNum::rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return std::nullopt;
  mpq_class r(num_[0], den_);
  r.canonicalize();
  return r;
}

CycloNum CycloNum::conj() const {
  const i64 M = order();
  std::vector<mpz_class> per(M, 0);
  for (std::size_t i = 0; i < num_.size(); ++i) per[mod(-static_cast<i64>(i), M)] = num_[i];
  return from_periodic(field_, per, den_);
}

CycloNum CycloNum::times_root(i64 k) const {
  const i64 M = order();
  k = mod(k, M);
  if (k == 0) return *this;
  std::vector<mpz_class> per(M, 0);
  for (std::size_t i = 0; i < num_.size(); ++i) per[(static_cast<i64>(i) + k) % M] = num_[i];
  return from_periodic(field_, per, den_);
}

CycloNum CycloNum::inv() const {
  if (is_zero()) throw std::domain_error("CycloNum: inversion of zero");
  const int n = degree();
  QPoly phi(n + 1), a(n);
  for (int i = 0; i <= n; ++i) phi[i] = field_->phi[i];
  for (int i = 0; i < n; ++i) a[i] = num_[i];
  trim(a);
  // extended Euclid: s1 * a = r1 (mod phi)
  QPoly r0 = phi, r1 = a, s0{}, s1{mpq_class(1)};
  while (r1.size() > 1) {
    QPoly q, r;
    qpoly_divmod(r0, r1, q, r);
    QPoly s2 = qpoly_sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant since Phi is irreducible
  mpq_class c = r1[0] / mpq_class(den_);
  std::vector<mpq_class> out(n, 0);
  QPoly q, rem;
  qpoly_divmod(s1, phi, q, rem);
  for (std::size_t i = 0; i < rem.size(); ++i) out[i] = rem[i] / c;
  return from_coeffs(order(), out);
}

std::complex<double> CycloNum::approx() const {
  const i64 M = order();
  long double re = 0, im = 0;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    mpq_class c(num_[i], den_);
    long double v = c.get_d();
    long double ang = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(i) /
                      static_cast<long double>(M);
    re += v * std::cos(ang);
    im += v * std::sin(ang);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

CycloNum CycloNum::operator-() const {
  CycloNum r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  if (order() != o.order()) {
    i64 m = lcm(order(), o.order());
    CycloNum a = lift(m);
    a += o.lift(m);
    return *this = std::move(a);
  }
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), o.den_.get_mpz_t());
    mpz_class fa = l / den_, fb = l / o.den_;
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * fa + o.num_[i] * fb;
    den_ = l;
  }
  reduce_content();
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) { return *this += -o; }

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  if (order() != o.order()) {
    i64 m = lcm(order(), o.order());
    CycloNum a = lift(m);
    a *= o.lift(m);
    return *this = std::move(a);
  }
  const i64 M = order();
  const std::size_t n = num_.size();
  std::vector<mpz_class> per(M, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (o.num_[j] == 0) continue;
      mpz_addmul(per[(i + j) % M].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
    }
  }
  return *this = from_periodic(field_, per, den_ * o.den_);
}

CycloNum& CycloNum::operator*=(const mpq_class& r) {
  for (auto& c : num_) c *= r.get_num();
  den_ *= r.get_den();
  reduce_content();
  return *this;
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  if (a.order() != b.order()) {
    i64 m = lcm(a.order(), b.order());
    return a.lift(m) == b.lift(m);
  }
  return a.den_ == b.den_ && a.num_ == b.num_;
}

}  // namespace weillift
