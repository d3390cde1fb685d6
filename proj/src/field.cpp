#include "bigact/field.hpp"

#include <algorithm>
#include <sstream>

#include "bigact/errors.hpp"

namespace bigact::ff {

namespace {

using Poly = std::vector<int>; // low coefficient first, trimmed

void trim(Poly &a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

int inv_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a; e > 0; e >>= 1, b = b * b % p)
    if (e & 1)
      r = r * b % p;
  return r;
}

Poly poly_mod(Poly a, const Poly &m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = inv_mod(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = a.back() * lead_inv % p;
    for (int i = 0; i <= dm; ++i)
      a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly &a, const Poly &b, const Poly &m, int p) {
  if (a.empty() || b.empty())
    return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly &m, int p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  for (; e; e >>= 1) {
    if (e & 1)
      r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
  }
  return r;
}

Poly poly_sub(Poly a, const Poly &b, int p) {
  if (a.size() < b.size())
    a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] = ((a[i] - b[i]) % p + p) % p;
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::int64_t> prime_factors(std::int64_t v) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0)
        v /= d;
    }
  }
  if (v > 1)
    out.push_back(v);
  return out;
}

} // namespace

Params::Params(int p, int s) : p_(p), s_(s), q0_(1), q_(1) {
  if (p < 3 || !is_prime(p))
    throw ParameterError("p must be an odd prime, got " + std::to_string(p));
  if (s < 1)
    throw ParameterError("s must be positive, got " + std::to_string(s));
  for (int i = 0; i < s && q0_ <= (1 << 20); ++i)
    q0_ *= p;
  q_ = q0_ > (1 << 20) ? std::int64_t{1} << 40 : static_cast<std::int64_t>(p) * q0_ * q0_;
  if (q_ > (1 << 20))
    throw ParameterError("q = p^(2s+1) too large for this implementation");
}

bool is_prime(std::int64_t v) {
  if (v < 2)
    return false;
  for (std::int64_t d = 2; d * d <= v; ++d)
    if (v % d == 0)
      return false;
  return true;
}

bool is_irreducible(const std::vector<int> &low, int p) {
  const int n = static_cast<int>(low.size());
  if (n == 1)
    return true;
  Poly f = low;
  f.push_back(1);
  const Poly t{0, 1};
  // Rabin: t^(p^n) = t mod f and gcd(t^(p^(n/r)) - t, f) = 1 for primes r | n.
  auto frob_pow = [&](int k) {
    Poly h = t;
    for (int i = 0; i < k; ++i)
      h = poly_powmod(h, static_cast<std::uint64_t>(p), f, p);
    return h;
  };
  if (poly_sub(frob_pow(n), t, p) != Poly{})
    return false;
  for (auto r : prime_factors(n)) {
    Poly g = poly_gcd(f, poly_sub(frob_pow(n / static_cast<int>(r)), t, p), p);
    if (g.size() != 1)
      return false;
  }
  return true;
}

std::vector<int> find_modulus(int p, int n) {
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i)
    count *= static_cast<std::uint64_t>(p);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<int> low(n);
    std::uint64_t v = idx;
    for (int i = 0; i < n; ++i, v /= p)
      low[i] = static_cast<int>(v % p);
    if (is_irreducible(low, p))
      return low;
  }
  throw IntegrityError("no irreducible polynomial found");
}

std::shared_ptr<const Field> Field::make(int p, int n) {
  if (p < 3 || !is_prime(p))
    throw ParameterError("field characteristic must be an odd prime, got " + std::to_string(p));
  if (n < 1)
    throw ParameterError("field degree must be positive");
  return std::shared_ptr<const Field>(new Field(p, n, find_modulus(p, n)));
}

Field::Field(int p, int n, std::vector<int> modulus)
    : p_(p), n_(n), q_(1), modulus_(std::move(modulus)) {
  pow_p_.push_back(1);
  for (int i = 0; i < n; ++i) {
    q_ *= static_cast<std::uint32_t>(p);
    pow_p_.push_back(q_);
  }

  neg_.resize(q_);
  for (std::uint32_t v = 0; v < q_; ++v) {
    std::uint32_t r = 0;
    for (int k = 0; k < n_; ++k) {
      const auto d = (v / pow_p_[k]) % p_;
      r += ((p_ - d) % p_) * pow_p_[k];
    }
    neg_[v] = r;
  }
  if (q_ <= 1024) {
    add_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) {
        std::uint32_t r = 0;
        for (int k = 0; k < n_; ++k) {
          const auto da = (a / pow_p_[k]) % p_;
          const auto db = (b / pow_p_[k]) % p_;
          r += ((da + db) % p_) * pow_p_[k];
        }
        add_[static_cast<std::size_t>(a) * q_ + b] = r;
      }
  }

  Poly f = modulus_;
  f.push_back(1);
  auto to_poly = [&](std::uint32_t v) {
    Poly r(n_);
    for (int k = 0; k < n_; ++k, v /= p_)
      r[k] = static_cast<int>(v % p_);
    trim(r);
    return r;
  };
  auto from_poly = [&](const Poly &a) {
    std::uint32_t v = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
      v += static_cast<std::uint32_t>(a[k]) * pow_p_[k];
    return v;
  };

  const std::uint64_t group = q_ - 1;
  const auto factors = prime_factors(static_cast<std::int64_t>(group));
  std::uint32_t g = 0;
  for (std::uint32_t cand = 1; cand < q_ && g == 0; ++cand) {
    bool primitive = true;
    for (auto r : factors) {
      if (poly_powmod(to_poly(cand), group / static_cast<std::uint64_t>(r), f, p_) == Poly{1}) {
        primitive = false;
        break;
      }
    }
    if (primitive)
      g = cand;
  }
  if (g == 0)
    throw IntegrityError("no primitive element found");

  exp_.resize(group);
  log_.assign(q_, 0);
  Poly cur{1};
  const Poly gp = to_poly(g);
  for (std::uint64_t i = 0; i < group; ++i) {
    const auto v = from_poly(cur);
    exp_[i] = v;
    log_[v] = static_cast<std::uint32_t>(i);
    cur = poly_mulmod(cur, gp, f, p_);
  }
}

std::string Field::modulus_string() const {
  std::ostringstream os;
  os << "t^" << n_;
  for (int k = n_ - 1; k >= 0; --k) {
    const int c = modulus_[k];
    if (c == 0)
      continue;
    os << " + ";
    if (c != 1 || k == 0)
      os << c;
    if (k >= 1)
      os << (c != 1 ? "*" : "") << "t";
    if (k >= 2)
      os << "^" << k;
  }
  return os.str();
}

Fq Field::gen() const {
  if (n_ == 1) {
    // The modulus is t itself, so its root is 0 in F_p.
    return Fq{static_cast<std::uint32_t>(((-modulus_[0]) % p_ + p_) % p_)};
  }
  return Fq{static_cast<std::uint32_t>(p_)};
}

Fq Field::from_int(std::int64_t c) const {
  return Fq{static_cast<std::uint32_t>(((c % p_) + p_) % p_)};
}

Fq Field::from_coords(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) > n_)
    throw ParameterError("too many coordinates for F_q element");
  std::uint32_t v = 0;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const int c = ((coords[k] % p_) + p_) % p_;
    v += static_cast<std::uint32_t>(c) * pow_p_[k];
  }
  return Fq{v};
}

std::vector<int> Field::coords(Fq e) const {
  std::vector<int> out(n_);
  auto v = e.v;
  for (int k = 0; k < n_; ++k, v /= p_)
    out[k] = static_cast<int>(v % p_);
  return out;
}

int Field::prime_value(Fq e) const {
  if (!in_prime_field(e))
    throw IntegrityError("element is not in the prime field");
  return static_cast<int>(e.v);
}

Fq Field::add(Fq a, Fq b) const {
  if (!add_.empty())
    return Fq{add_[static_cast<std::size_t>(a.v) * q_ + b.v]};
  std::uint32_t r = 0;
  for (int k = 0; k < n_; ++k) {
    const auto da = (a.v / pow_p_[k]) % p_;
    const auto db = (b.v / pow_p_[k]) % p_;
    r += ((da + db) % p_) * pow_p_[k];
  }
  return Fq{r};
}

Fq Field::mul(Fq a, Fq b) const {
  if (a.is_zero() || b.is_zero())
    return Fq{0};
  const std::uint64_t l = static_cast<std::uint64_t>(log_[a.v]) + log_[b.v];
  return Fq{exp_[l % (q_ - 1)]};
}

Fq Field::inv(Fq a) const {
  if (a.is_zero())
    throw ParameterError("division by zero in F_q");
  const std::uint32_t l = log_[a.v];
  return Fq{exp_[l == 0 ? 0 : (q_ - 1) - l]};
}

Fq Field::pow(Fq a, std::uint64_t e) const {
  if (e == 0)
    return one();
  if (a.is_zero())
    return zero();
  const std::uint64_t group = q_ - 1;
  const std::uint64_t l = (static_cast<std::uint64_t>(log_[a.v]) * (e % group)) % group;
  return Fq{exp_[l]};
}

Fq Field::frobenius(Fq a, std::int64_t k) const {
  if (a.is_zero())
    return a;
  const auto kk = static_cast<int>(((k % n_) + n_) % n_);
  const std::uint64_t group = q_ - 1;
  const std::uint64_t l = (static_cast<std::uint64_t>(log_[a.v]) * pow_p_[kk]) % group;
  return Fq{exp_[l]};
}

int Field::trace(Fq a) const {
  Fq acc = zero();
  for (int k = 0; k < n_; ++k)
    acc = add(acc, frobenius(a, k));
  return prime_value(acc);
}

std::vector<Fq> Field::basis() const {
  std::vector<Fq> out;
  Fq cur = one();
  for (int i = 0; i < n_; ++i) {
    out.push_back(cur);
    cur = mul(cur, gen());
  }
  return out;
}

bool Field::is_line_rep(Fq a) const {
  if (a.is_zero())
    return false;
  auto c = coords(a);
  for (int k = n_ - 1; k >= 0; --k)
    if (c[k] != 0)
      return c[k] == 1;
  return false;
}

std::vector<Fq> Field::line_reps() const {
  std::vector<Fq> out;
  for (std::uint32_t v = 1; v < q_; ++v)
    if (is_line_rep(Fq{v}))
      out.push_back(Fq{v});
  return out;
}

std::string Field::to_string(Fq a) const {
  if (in_prime_field(a))
    return std::to_string(a.v);
  std::ostringstream os;
  os << "[";
  auto c = coords(a);
  for (int k = 0; k < n_; ++k)
    os << (k ? "," : "") << c[k];
  os << "]";
  return os.str();
}

} // namespace bigact::ff
