#ifndef BIGACT_LAURENT_HPP
#define BIGACT_LAURENT_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bigact/field.hpp"

namespace bigact::laurent {

using ff::Fq;
using ff::FieldPtr;

struct Term {
  std::int64_t exp;
  Fq coeff;
  friend bool operator==(const Term &, const Term &) = default;
};

// Sparse Laurent polynomial in z over F_q. Terms are sorted by exponent and
// never carry a zero coefficient.
class LaurentPoly {
public:
  LaurentPoly() = default;
  explicit LaurentPoly(FieldPtr field) : field_(std::move(field)) {}
  LaurentPoly(FieldPtr field, std::vector<Term> terms);

  static LaurentPoly monomial(FieldPtr field, std::int64_t exp, Fq coeff);
  static LaurentPoly constant(FieldPtr field, Fq coeff) { return monomial(std::move(field), 0, coeff); }

  const FieldPtr &field() const { return field_; }
  const std::vector<Term> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Lowest exponent; std::nullopt for the zero polynomial.
  std::optional<std::int64_t> valuation() const;
  std::optional<std::int64_t> max_exponent() const;
  Fq coeff(std::int64_t exp) const;

  LaurentPoly operator-() const;
  LaurentPoly &operator+=(const LaurentPoly &o);
  LaurentPoly &operator-=(const LaurentPoly &o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b) { return a -= b; }
  friend bool operator==(const LaurentPoly &a, const LaurentPoly &b) { return a.terms_ == b.terms_; }

  LaurentPoly scaled(Fq c) const;
  LaurentPoly shifted(std::int64_t by) const;
  // Terms with exponent in [lo, hi).
  LaurentPoly slice(std::int64_t lo, std::int64_t hi) const;

private:
  FieldPtr field_;
  std::vector<Term> terms_;
};

void require_same_field(const LaurentPoly &a, const LaurentPoly &b);

// Reference product: every pairwise product, sorted, then combined.
LaurentPoly mul(const LaurentPoly &a, const LaurentPoly &b);
// OpenMP product over chunks of `a`; equal to mul() term for term.
LaurentPoly mul_parallel(const LaurentPoly &a, const LaurentPoly &b);

// a^(p^k): coefficient-wise Frobenius with exponents scaled by p^k.
LaurentPoly pow_pk(const LaurentPoly &a, int k);
// a^e for e >= 0, assembled from the base-p digits of e.
LaurentPoly pow(const LaurentPoly &a, std::uint64_t e);

// Sub-sum over strictly negative exponents.
LaurentPoly principal_part(const LaurentPoly &a);

// Power series in z known modulo z^prec.
class TruncatedSeries {
public:
  TruncatedSeries(LaurentPoly known, std::int64_t prec);

  const LaurentPoly &known() const { return known_; }
  std::int64_t precision() const { return prec_; }
  const FieldPtr &field() const { return known_.field(); }
  // Throws ParameterError for exp >= precision().
  Fq coeff(std::int64_t exp) const;
  std::optional<std::int64_t> valuation() const { return known_.valuation(); }

  friend TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b);
  friend TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b);
  friend TruncatedSeries operator+(const TruncatedSeries &a, const LaurentPoly &b);
  friend TruncatedSeries operator-(const TruncatedSeries &a, const LaurentPoly &b);

private:
  LaurentPoly known_;
  std::int64_t prec_;
};

// Product with precision prec(b) + v(a).
TruncatedSeries mul(const LaurentPoly &a, const TruncatedSeries &b);
// s^(p^k), known modulo z^(prec*p^k).
TruncatedSeries pow_pk(const TruncatedSeries &s, int k);

} // namespace bigact::laurent

#endif
