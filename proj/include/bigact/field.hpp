#ifndef BIGACT_FIELD_HPP
#define BIGACT_FIELD_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace bigact::ff {

// Tower parameters: p odd prime, q0 = p^s, q = p*q0^2 = p^(2s+1).
class Params {
public:
  Params(int p, int s);

  int p() const { return p_; }
  int s() const { return s_; }
  int n() const { return 2 * s_ + 1; }
  std::int64_t q0() const { return q0_; }
  std::int64_t q() const { return q_; }

  // The construction is stated for s >= 2; s = 1 is still computed.
  bool s_at_least_two() const { return s_ >= 2; }

  bool operator==(const Params &) const = default;

private:
  int p_;
  int s_;
  std::int64_t q0_;
  std::int64_t q_;
};

bool is_prime(std::int64_t v);

// Element of F_{p^n}. The value packs the coordinates in the power basis
// as base-p digits, little-endian: v = c0 + c1*p + ... + c_{n-1}*p^{n-1}.
struct Fq {
  std::uint32_t v = 0;

  constexpr bool is_zero() const { return v == 0; }
  friend constexpr auto operator<=>(Fq, Fq) = default;
};

// F_{p^n} with modulus the numerically smallest monic irreducible (coefficient
// digits read little-endian). Immutable after construction.
class Field {
public:
  static std::shared_ptr<const Field> make(int p, int n);

  int p() const { return p_; }
  int degree() const { return n_; }
  std::uint32_t order() const { return q_; }

  // Coefficients c0..c_{n-1} of the monic modulus (leading 1 omitted).
  const std::vector<int> &modulus() const { return modulus_; }
  std::string modulus_string() const;

  Fq zero() const { return Fq{0}; }
  Fq one() const { return Fq{1}; }
  // Root t of the modulus.
  Fq gen() const;
  Fq from_int(std::int64_t c) const;
  Fq from_coords(std::span<const int> coords) const;
  std::vector<int> coords(Fq e) const;
  bool in_prime_field(Fq e) const { return e.v < static_cast<std::uint32_t>(p_); }
  // Prime-field value of e; e must lie in F_p.
  int prime_value(Fq e) const;

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }
  Fq neg(Fq a) const { return Fq{neg_[a.v]}; }
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;
  Fq pow(Fq a, std::uint64_t e) const;
  Fq scale(Fq a, int c) const { return mul(a, from_int(c)); }

  // a^(p^(k mod n)); negative k gives iterated p-th roots.
  Fq frobenius(Fq a, std::int64_t k) const;
  Fq pth_root(Fq a) const { return frobenius(a, -1); }
  // Absolute trace to F_p.
  int trace(Fq a) const;

  // gamma_i = t^(i-1), i = 1..n.
  std::vector<Fq> basis() const;
  // Representatives of F_q^* / F_p^*: highest nonzero coordinate equal to 1.
  std::vector<Fq> line_reps() const;
  bool is_line_rep(Fq a) const;

  std::string to_string(Fq a) const;

private:
  Field(int p, int n, std::vector<int> modulus);

  int p_;
  int n_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^k, k = 0..n
  std::vector<std::uint32_t> log_;    // log_[0] unused
  std::vector<std::uint32_t> exp_;    // exp_[i] = g^i, i < q-1
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> add_;    // q*q table when q is small, else empty
};

using FieldPtr = std::shared_ptr<const Field>;

// Smallest monic irreducible of degree n over F_p in the little-endian digit order.
std::vector<int> find_modulus(int p, int n);
bool is_irreducible(const std::vector<int> &monic_low_coeffs, int p);

} // namespace bigact::ff

#endif
