#include "keypoly/residue.hpp"

#include <algorithm>
#include <optional>

#include "keypoly/error.hpp"

namespace keypoly {

TowerPtr TowerField::base(uint64_t p) {
  auto f = std::shared_ptr<TowerField>(new TowerField());
  f->p_ = p;
  f->dims_ = {1};
  return f;
}

TowerPtr TowerField::extend(const RPoly& lambda) const {
  RPoly l = lambda;
  trim(l);
  if (deg(l) < 1) throw Error(ErrorKind::NotIrreducible, "extension by a constant");
  if (!is_one(l.back())) throw Error(ErrorKind::NotIrreducible, "extension polynomial is not monic");
  auto f = std::shared_ptr<TowerField>(new TowerField());
  f->p_ = p_;
  f->mins_ = mins_;
  f->mins_.push_back(l);
  f->dims_ = dims_;
  f->dims_.push_back(degree() * size_t(deg(l)));
  f->parent_ = shared_from_this();
  return f;
}

Integer TowerField::order() const {
  if (!p_) throw Error(ErrorKind::InvalidInput, "order of an infinite field");
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), p_, degree());
  return q;
}

RElem TowerField::zero() const { return RElem{std::vector<Scalar>(degree(), Scalar::zero(p_))}; }

RElem TowerField::one() const {
  RElem r = zero();
  r.c[0] = Scalar::one(p_);
  return r;
}

RElem TowerField::from_scalar(const Scalar& s) const {
  RElem r = zero();
  r.c[0] = s;
  return r;
}

RElem TowerField::generator() const {
  if (mins_.empty()) throw Error(ErrorKind::InvalidInput, "base field has no generator");
  RElem r = zero();
  r.c[dims_[dims_.size() - 2]] = Scalar::one(p_);
  return r;
}

RElem TowerField::embed(const RElem& a) const {
  if (a.c.size() > degree()) throw Error(ErrorKind::InvalidInput, "element does not embed");
  RElem r = a;
  r.c.resize(degree(), Scalar::zero(p_));
  return r;
}

bool TowerField::is_zero(const RElem& a) const {
  for (const auto& s : a.c)
    if (!s.is_zero()) return false;
  return true;
}

bool TowerField::is_one(const RElem& a) const {
  if (a.c.empty() || !a.c[0].is_one()) return false;
  for (size_t i = 1; i < a.c.size(); ++i)
    if (!a.c[i].is_zero()) return false;
  return true;
}

bool TowerField::in_prime_field(const RElem& a) const {
  for (size_t i = 1; i < a.c.size(); ++i)
    if (!a.c[i].is_zero()) return false;
  return true;
}

RElem TowerField::add(const RElem& a, const RElem& b) const {
  RElem r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), Scalar::zero(p_));
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

RElem TowerField::sub(const RElem& a, const RElem& b) const { return add(a, neg(b)); }

RElem TowerField::neg(const RElem& a) const {
  RElem r = a;
  for (auto& s : r.c) s = -s;
  return r;
}

RElem TowerField::scale(const RElem& a, const Scalar& s) const {
  RElem r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

RElem TowerField::mul_level(size_t level, const RElem& a, const RElem& b) const {
  if (level == 0) return RElem{{a.c[0] * b.c[0]}};
  size_t m = dims_[level - 1], d = dims_[level] / m;
  auto block = [&](const RElem& x, size_t i) {
    return RElem{std::vector<Scalar>(x.c.begin() + long(i * m), x.c.begin() + long((i + 1) * m))};
  };
  std::vector<RElem> A(d), B(d);
  bool a_zero = true, b_zero = true;
  for (size_t i = 0; i < d; ++i) {
    A[i] = block(a, i);
    B[i] = block(b, i);
    a_zero = a_zero && is_zero(A[i]);
    b_zero = b_zero && is_zero(B[i]);
  }
  RElem zm{std::vector<Scalar>(m, Scalar::zero(p_))};
  if (a_zero || b_zero) return RElem{std::vector<Scalar>(m * d, Scalar::zero(p_))};
  std::vector<RElem> tmp(2 * d - 1, zm);
  for (size_t i = 0; i < d; ++i) {
    if (is_zero(A[i])) continue;
    for (size_t j = 0; j < d; ++j) {
      if (is_zero(B[j])) continue;
      tmp[i + j] = add(tmp[i + j], mul_level(level - 1, A[i], B[j]));
    }
  }
  const RPoly& lam = mins_[level - 1];
  for (size_t t = 2 * d - 2; t >= d; --t) {
    if (!is_zero(tmp[t])) {
      for (size_t s = 0; s < d; ++s) tmp[t - d + s] = sub(tmp[t - d + s], mul_level(level - 1, tmp[t], lam[s]));
    }
    if (t == d) break;
  }
  RElem r;
  r.c.reserve(m * d);
  for (size_t i = 0; i < d; ++i) r.c.insert(r.c.end(), tmp[i].c.begin(), tmp[i].c.end());
  return r;
}

RElem TowerField::mul(const RElem& a, const RElem& b) const { return mul_level(depth(), embed(a), embed(b)); }

RElem TowerField::inv(const RElem& a) const {
  if (is_zero(a)) throw Error(ErrorKind::InvalidInput, "inverse of zero residue");
  size_t n = degree();
  RElem x = embed(a);
  if (n == 1) return RElem{{x.c[0].inverse()}};
  // columns of the multiplication-by-a matrix, augmented with the unit vector
  std::vector<std::vector<Scalar>> M(n, std::vector<Scalar>(n + 1, Scalar::zero(p_)));
  for (size_t j = 0; j < n; ++j) {
    RElem e = zero();
    e.c[j] = Scalar::one(p_);
    RElem col = mul(x, e);
    for (size_t i = 0; i < n; ++i) M[i][j] = col.c[i];
  }
  M[0][n] = Scalar::one(p_);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && M[piv][c].is_zero()) ++piv;
    if (piv == n) throw Error(ErrorKind::NotIrreducible, "residue tower has zero divisors");
    std::swap(M[piv], M[c]);
    Scalar inv = M[c][c].inverse();
    for (auto& s : M[c]) s *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c].is_zero()) continue;
      Scalar f = M[r][c];
      for (size_t k = c; k <= n; ++k) M[r][k] -= f * M[c][k];
    }
  }
  RElem r = zero();
  for (size_t i = 0; i < n; ++i) r.c[i] = M[i][n];
  return r;
}

RElem TowerField::pow(const RElem& a, const Integer& e) const {
  RElem base = e < 0 ? inv(a) : embed(a);
  Integer k = abs(e);
  RElem r = one();
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = mul(r, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return r;
}

RElem TowerField::random(std::mt19937_64& rng) const {
  RElem r = zero();
  for (auto& s : r.c) {
    if (p_) {
      s = Scalar(p_, long(rng() % p_));
    } else {
      s = Scalar(0, long(rng() % 7) - 3);
    }
  }
  return r;
}

std::string TowerField::str(const RElem& a) const {
  if (in_prime_field(a)) return a.c.empty() ? "0" : a.c[0].str();
  std::string s = "[";
  for (size_t i = 0; i < a.c.size(); ++i) s += (i ? "," : "") + a.c[i].str();
  return s + "]";
}

std::vector<std::string> TowerField::coordinates(const RElem& a) const {
  std::vector<std::string> out;
  RElem x = embed(a);
  for (const auto& s : x.c) out.push_back(s.str());
  return out;
}

void TowerField::trim(RPoly& f) const {
  while (!f.empty() && is_zero(f.back())) f.pop_back();
}

RPoly TowerField::padd(const RPoly& a, const RPoly& b) const {
  RPoly r(std::max(a.size(), b.size()), zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = add(r[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
  trim(r);
  return r;
}

RPoly TowerField::psub(const RPoly& a, const RPoly& b) const {
  RPoly nb = b;
  for (auto& c : nb) c = neg(c);
  return padd(a, nb);
}

RPoly TowerField::pmul(const RPoly& a, const RPoly& b) const {
  if (a.empty() || b.empty()) return {};
  RPoly r(a.size() + b.size() - 1, zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

RPoly TowerField::pscale(const RPoly& a, const RElem& c) const {
  RPoly r = a;
  for (auto& x : r) x = mul(x, c);
  trim(r);
  return r;
}

void TowerField::pdivmod(const RPoly& a, const RPoly& b, RPoly& q, RPoly& r) const {
  RPoly bb = b;
  trim(bb);
  if (bb.empty()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
  r = a;
  for (auto& c : r) c = embed(c);
  trim(r);
  q.clear();
  if (r.size() < bb.size()) return;
  long db = long(bb.size()) - 1;
  q.assign(r.size() - bb.size() + 1, zero());
  RElem inv_lc = inv(bb.back());
  for (long k = long(r.size()) - 1; k >= db; --k) {
    if (is_zero(r[k])) continue;
    RElem c = mul(r[k], inv_lc);
    q[k - db] = c;
    for (long j = 0; j <= db; ++j) r[k - db + j] = sub(r[k - db + j], mul(c, bb[j]));
  }
  trim(r);
  trim(q);
}

RPoly TowerField::pmod(const RPoly& a, const RPoly& b) const {
  RPoly q, r;
  pdivmod(a, b, q, r);
  return r;
}

RPoly TowerField::pmonic(const RPoly& a) const {
  RPoly r = a;
  trim(r);
  if (r.empty()) return r;
  return pscale(r, inv(r.back()));
}

RPoly TowerField::pgcd(const RPoly& a, const RPoly& b) const {
  RPoly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    RPoly r = pmod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return pmonic(x);
}

RPoly TowerField::pderiv(const RPoly& a) const {
  RPoly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(scale(a[i], Scalar(p_, long(i))));
  trim(r);
  return r;
}

RPoly TowerField::ppowmod(const RPoly& a, const Integer& e, const RPoly& m) const {
  RPoly base = pmod(a, m), r = {one()};
  r = pmod(r, m);
  Integer k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = pmod(pmul(r, base), m);
    k >>= 1;
    if (k > 0) base = pmod(pmul(base, base), m);
  }
  return r;
}

RElem TowerField::peval(const RPoly& f, const RElem& x) const {
  RElem acc = zero();
  for (size_t i = f.size(); i-- > 0;) acc = add(mul(acc, x), embed(f[i]));
  return acc;
}

std::string TowerField::pstr(const RPoly& f, const std::string& var) const {
  if (f.empty()) return "0";
  std::string out;
  for (size_t i = f.size(); i-- > 0;) {
    if (is_zero(f[i])) continue;
    std::string c = str(f[i]);
    std::string term;
    if (i == 0) {
      term = c;
    } else {
      std::string mono = var + (i > 1 ? "^" + std::to_string(i) : "");
      term = is_one(f[i]) ? mono : c + "*" + mono;
    }
    out += out.empty() ? term : " + " + term;
  }
  return out;
}

// ---- factorization

namespace {

bool poly_less(const TowerField& F, const RPoly& a, const RPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;) {
    RElem x = F.embed(a[i]), y = F.embed(b[i]);
    for (size_t k = x.c.size(); k-- > 0;) {
      auto c = x.c[k] <=> y.c[k];
      if (c != 0) return c < 0;
    }
  }
  return false;
}

RPoly pth_root(const TowerField& F, const RPoly& f) {
  uint64_t p = F.characteristic();
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, F.degree() - 1);
  RPoly r;
  for (size_t i = 0; i < f.size(); i += p) r.push_back(F.pow(f[i], e));
  F.trim(r);
  return r;
}

RPoly pdiv_exact(const TowerField& F, const RPoly& a, const RPoly& b) {
  RPoly q, r;
  F.pdivmod(a, b, q, r);
  if (!r.empty()) throw Error(ErrorKind::InvalidInput, "inexact residue division");
  return q;
}

void squarefree(const TowerField& F, const RPoly& f, int mult, std::vector<FactorEntry>& out) {
  if (F.deg(f) < 1) return;
  RPoly d = F.pderiv(f);
  if (d.empty()) {
    squarefree(F, pth_root(F, f), mult * int(F.characteristic()), out);
    return;
  }
  RPoly c = F.pgcd(f, d);
  RPoly w = pdiv_exact(F, f, c);
  int i = 1;
  while (F.deg(w) > 0) {
    RPoly y = F.pgcd(w, c);
    RPoly z = pdiv_exact(F, w, y);
    if (F.deg(z) > 0) out.push_back({F.pmonic(z), i * mult});
    ++i;
    w = y;
    c = pdiv_exact(F, c, y);
  }
  if (F.deg(c) > 0) {
    if (!F.characteristic()) throw Error(ErrorKind::InvalidInput, "square-free decomposition failed");
    squarefree(F, pth_root(F, c), mult * int(F.characteristic()), out);
  }
}

std::vector<std::pair<RPoly, int>> distinct_degree(const TowerField& F, RPoly g) {
  std::vector<std::pair<RPoly, int>> out;
  Integer q = F.order();
  RPoly X = F.x_poly();
  RPoly h = F.pmod(X, g);
  for (int d = 1; 2 * d <= F.deg(g); ++d) {
    h = F.ppowmod(h, q, g);
    RPoly G = F.pgcd(g, F.psub(h, X));
    if (F.deg(G) > 0) {
      out.push_back({G, d});
      g = pdiv_exact(F, g, G);
      h = F.pmod(h, g);
    }
  }
  if (F.deg(g) > 0) out.push_back({F.pmonic(g), F.deg(g)});
  return out;
}

void equal_degree(const TowerField& F, const RPoly& g, int d, std::mt19937_64& rng, std::vector<RPoly>& out) {
  int n = F.deg(g);
  if (n == d) {
    out.push_back(F.pmonic(g));
    return;
  }
  Integer q = F.order();
  uint64_t p = F.characteristic();
  for (;;) {
    RPoly a;
    for (int i = 0; i < n; ++i) a.push_back(F.random(rng));
    F.trim(a);
    if (F.deg(a) < 1) continue;
    RPoly b;
    if (p == 2) {
      // trace map from F_{q^d} to F_2
      size_t k = F.degree() * size_t(d);
      RPoly t = F.pmod(a, g), acc = t;
      for (size_t i = 1; i < k; ++i) {
        t = F.pmod(F.pmul(t, t), g);
        acc = F.padd(acc, t);
      }
      b = acc;
    } else {
      Integer e;
      mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), unsigned(d));
      e = (e - 1) / 2;
      b = F.psub(F.ppowmod(a, e, g), {F.one()});
    }
    RPoly G = F.pgcd(g, b);
    if (F.deg(G) > 0 && F.deg(G) < n) {
      equal_degree(F, G, d, rng, out);
      equal_degree(F, pdiv_exact(F, g, G), d, rng, out);
      return;
    }
  }
}

bool rabin_irreducible(const TowerField& F, const RPoly& f) {
  int n = F.deg(f);
  if (n < 1) return false;
  if (n == 1) return true;
  RPoly m = F.pmonic(f);
  RPoly d = F.pderiv(m);
  if (d.empty() || F.deg(F.pgcd(m, d)) > 0) return false;
  Integer q = F.order();
  RPoly X = F.x_poly();
  auto frob = [&](int k) {
    RPoly h = F.pmod(X, m);
    for (int i = 0; i < k; ++i) h = F.ppowmod(h, q, m);
    return h;
  };
  if (!(F.psub(frob(n), F.pmod(X, m))).empty()) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r) continue;
    bool prime = true;
    for (int s = 2; s * s <= r; ++s)
      if (r % s == 0) prime = false;
    if (!prime) continue;
    if (F.deg(F.pgcd(m, F.psub(frob(n / r), X))) > 0) return false;
  }
  return true;
}

// ---- rational residue field

const Integer kDivisorLimit("1000000000000");

std::vector<Integer> divisors(const Integer& n) {
  Integer a = abs(n);
  if (a > kDivisorLimit) throw Error(ErrorKind::UnsupportedResidueField, "coefficient too large for root search");
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      small.push_back(d);
      if (d * d != a) large.push_back(a / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<Rational> to_rationals(const RPoly& f) {
  std::vector<Rational> r;
  for (const auto& c : f) r.push_back(c.c[0].rational());
  return r;
}

RPoly from_rationals(const TowerField& F, const std::vector<Rational>& v) {
  RPoly r;
  for (const auto& q : v) r.push_back(F.from_scalar(Scalar(0, q)));
  F.trim(r);
  return r;
}

std::vector<Integer> integral_primitive(const std::vector<Rational>& f) {
  Integer l = 1;
  for (const auto& c : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> r;
  Integer g = 0;
  for (const auto& c : f) {
    Rational s = c * l;
    r.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.back().get_mpz_t());
  }
  for (auto& x : r) x /= g;
  return r;
}

Rational eval_rational(const std::vector<Rational>& f, const Rational& x) {
  Rational acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

std::vector<Rational> div_linear(const std::vector<Rational>& f, const Rational& root) {
  // synthetic division by (X - root)
  std::vector<Rational> q(f.size() - 1);
  Rational carry = 0;
  for (size_t i = f.size(); i-- > 1;) {
    carry = carry * root + f[i];
    q[i - 1] = carry;
  }
  return q;
}

std::optional<Rational> find_rational_root(const std::vector<Rational>& f) {
  if (f[0] == 0) return Rational(0);
  std::vector<Integer> a = integral_primitive(f);
  for (const auto& r : divisors(a.front()))
    for (const auto& s : divisors(a.back()))
      for (int sign : {1, -1}) {
        Rational x(r * sign, s);
        x.canonicalize();
        if (eval_rational(f, x) == 0) return x;
      }
  return std::nullopt;
}

// Split a monic quartic without rational roots into two quadratics, if possible.
std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>> split_quartic(const std::vector<Rational>& f) {
  Integer L = 1;
  for (const auto& c : f) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> e(5);
  Rational Lp = 1;
  for (int i = 4; i >= 0; --i) {
    Rational s = f[i] * Lp;
    if (s.get_den() != 1) throw Error(ErrorKind::InvalidInput, "quartic scaling failed");
    e[i] = s.get_num();
    Lp *= L;
  }
  for (const auto& d0 : divisors(e[0])) {
    for (int sign : {1, -1}) {
      Integer b = d0 * sign, d = e[0] / b;
      Integer a, c;
      bool found = false;
      if (b != d) {
        Integer num = e[1] - b * e[3], den = d - b;
        if (num % den != 0) continue;
        a = num / den;
        c = e[3] - a;
        found = a * c + b + d == e[2];
      } else {
        if (b * e[3] != e[1]) continue;
        Integer disc = e[3] * e[3] - 4 * (e[2] - 2 * b);
        if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) continue;
        Integer s = sqrt(disc);
        if ((e[3] + s) % 2 != 0) continue;
        a = (e[3] + s) / 2;
        c = e[3] - a;
        found = true;
      }
      if (!found) continue;
      Rational Lq(L);
      std::vector<Rational> q1 = {Rational(b) / (Lq * Lq), Rational(a) / Lq, Rational(1)};
      std::vector<Rational> q2 = {Rational(d) / (Lq * Lq), Rational(c) / Lq, Rational(1)};
      return std::make_pair(q1, q2);
    }
  }
  return std::nullopt;
}

void factor_squarefree_rational(const TowerField& F, std::vector<Rational> f, int mult, int bound,
                                std::vector<FactorEntry>& out) {
  while (f.size() > 2) {
    auto root = find_rational_root(f);
    if (!root) break;
    out.push_back({from_rationals(F, {-*root, Rational(1)}), mult});
    f = div_linear(f, *root);
  }
  int n = int(f.size()) - 1;
  if (n < 1) return;
  if (n <= 3) {
    out.push_back({from_rationals(F, f), mult});
    return;
  }
  if (n == 4 && bound >= 4) {
    auto split = split_quartic(f);
    if (split) {
      out.push_back({from_rationals(F, split->first), mult});
      out.push_back({from_rationals(F, split->second), mult});
    } else {
      out.push_back({from_rationals(F, f), mult});
    }
    return;
  }
  throw Error(ErrorKind::UnsupportedResidueField,
              "factor of degree " + std::to_string(n) + " over Q exceeds the supported bound");
}

}  // namespace

Factorization factor_residual(const TowerField& F, const RPoly& f_in, uint64_t seed, int degree_bound) {
  RPoly f = f_in;
  for (auto& c : f) c = F.embed(c);
  F.trim(f);
  if (f.empty()) throw Error(ErrorKind::ZeroPolynomial, "factorization of zero");
  Factorization res;
  res.unit = f.back();
  if (F.deg(f) == 0) return res;
  f = F.pmonic(f);
  std::vector<FactorEntry> sqf;
  squarefree(F, f, 1, sqf);
  if (F.is_finite()) {
    std::mt19937_64 rng(seed);
    for (const auto& [g, m] : sqf) {
      for (const auto& [G, d] : distinct_degree(F, g)) {
        std::vector<RPoly> parts;
        equal_degree(F, G, d, rng, parts);
        for (auto& h : parts) res.factors.push_back({h, m});
      }
    }
  } else if (F.degree() == 1) {
    for (const auto& [g, m] : sqf) {
      std::vector<Rational> r = to_rationals(F.pmonic(g));
      factor_squarefree_rational(F, r, m, degree_bound, res.factors);
    }
  } else {
    for (const auto& [g, m] : sqf) {
      if (F.deg(g) > 1)
        throw Error(ErrorKind::UnsupportedResidueField, "factorization over an extension of Q is not supported");
      res.factors.push_back({g, m});
    }
  }
  std::sort(res.factors.begin(), res.factors.end(), [&](const FactorEntry& a, const FactorEntry& b) {
    if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
    if (poly_less(F, a.factor, b.factor)) return true;
    if (poly_less(F, b.factor, a.factor)) return false;
    return a.multiplicity < b.multiplicity;
  });
  return res;
}

bool is_irreducible(const TowerField& F, const RPoly& f_in, int degree_bound) {
  RPoly f = f_in;
  for (auto& c : f) c = F.embed(c);
  F.trim(f);
  if (F.deg(f) < 1) return false;
  if (F.deg(f) == 1) return true;
  if (F.is_finite()) return rabin_irreducible(F, f);
  Factorization fa = factor_residual(F, f, 0, degree_bound);
  return fa.factors.size() == 1 && fa.factors[0].multiplicity == 1;
}

}  // namespace keypoly
