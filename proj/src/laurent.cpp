#include "bigact/laurent.hpp"

#include <algorithm>
#include <limits>

#include "bigact/errors.hpp"

namespace bigact::laurent {

namespace detail {

// Sorts by exponent and merges equal exponents, dropping zeros.
std::vector<Term> combine(const ff::Field &f, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.exp < b.exp; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto &t : terms) {
    if (!out.empty() && out.back().exp == t.exp)
      out.back().coeff = f.add(out.back().coeff, t.coeff);
    else
      out.push_back(t);
    if (out.back().coeff.is_zero())
      out.pop_back();
  }
  return out;
}

} // namespace detail

LaurentPoly::LaurentPoly(FieldPtr field, std::vector<Term> terms)
    : field_(std::move(field)), terms_(detail::combine(*field_, std::move(terms))) {}

LaurentPoly LaurentPoly::monomial(FieldPtr field, std::int64_t exp, Fq coeff) {
  LaurentPoly r(std::move(field));
  if (!coeff.is_zero())
    r.terms_.push_back({exp, coeff});
  return r;
}

std::optional<std::int64_t> LaurentPoly::valuation() const {
  if (terms_.empty())
    return std::nullopt;
  return terms_.front().exp;
}

std::optional<std::int64_t> LaurentPoly::max_exponent() const {
  if (terms_.empty())
    return std::nullopt;
  return terms_.back().exp;
}

Fq LaurentPoly::coeff(std::int64_t exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term &t, std::int64_t e) { return t.exp < e; });
  if (it != terms_.end() && it->exp == exp)
    return it->coeff;
  return Fq{};
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(field_);
  r.terms_.reserve(terms_.size());
  for (const auto &t : terms_)
    r.terms_.push_back({t.exp, field_->neg(t.coeff)});
  return r;
}

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &o) {
  require_same_field(*this, o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->exp < j->exp)) {
      out.push_back(*i++);
    } else if (i == terms_.end() || j->exp < i->exp) {
      out.push_back(*j++);
    } else {
      const Fq c = field_->add(i->coeff, j->coeff);
      if (!c.is_zero())
        out.push_back({i->exp, c});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentPoly &LaurentPoly::operator-=(const LaurentPoly &o) { return *this += -o; }

LaurentPoly LaurentPoly::scaled(Fq c) const {
  LaurentPoly r(field_);
  if (c.is_zero())
    return r;
  r.terms_.reserve(terms_.size());
  for (const auto &t : terms_)
    r.terms_.push_back({t.exp, field_->mul(t.coeff, c)});
  return r;
}

LaurentPoly LaurentPoly::shifted(std::int64_t by) const {
  LaurentPoly r = *this;
  for (auto &t : r.terms_)
    t.exp += by;
  return r;
}

LaurentPoly LaurentPoly::slice(std::int64_t lo, std::int64_t hi) const {
  LaurentPoly r(field_);
  for (const auto &t : terms_)
    if (t.exp >= lo && t.exp < hi)
      r.terms_.push_back(t);
  return r;
}

void require_same_field(const LaurentPoly &a, const LaurentPoly &b) {
  if (a.field() != b.field())
    throw ParameterError("Laurent polynomials over different field contexts");
}

LaurentPoly mul(const LaurentPoly &a, const LaurentPoly &b) {
  require_same_field(a, b);
  const auto &f = *a.field();
  std::vector<Term> prod;
  prod.reserve(a.size() * b.size());
  for (const auto &ta : a.terms())
    for (const auto &tb : b.terms())
      prod.push_back({ta.exp + tb.exp, f.mul(ta.coeff, tb.coeff)});
  return LaurentPoly(a.field(), std::move(prod));
}

LaurentPoly pow_pk(const LaurentPoly &a, int k) {
  const auto &f = *a.field();
  std::int64_t scale = 1;
  for (int i = 0; i < k; ++i)
    scale *= f.p();
  std::vector<Term> out;
  out.reserve(a.size());
  for (const auto &t : a.terms())
    out.push_back({t.exp * scale, f.frobenius(t.coeff, k)});
  return LaurentPoly(a.field(), std::move(out));
}

LaurentPoly pow(const LaurentPoly &a, std::uint64_t e) {
  const auto &f = *a.field();
  LaurentPoly r = LaurentPoly::constant(a.field(), f.one());
  for (int k = 0; e > 0; ++k, e /= static_cast<std::uint64_t>(f.p())) {
    const auto d = e % static_cast<std::uint64_t>(f.p());
    if (d == 0)
      continue;
    const LaurentPoly ak = pow_pk(a, k);
    for (std::uint64_t i = 0; i < d; ++i)
      r = mul(r, ak);
  }
  return r;
}

LaurentPoly principal_part(const LaurentPoly &a) {
  return a.slice(std::numeric_limits<std::int64_t>::min(), 0);
}

TruncatedSeries::TruncatedSeries(LaurentPoly known, std::int64_t prec)
    : known_(known.slice(std::numeric_limits<std::int64_t>::min(), prec)), prec_(prec) {}

Fq TruncatedSeries::coeff(std::int64_t exp) const {
  if (exp >= prec_)
    throw ParameterError("coefficient of z^" + std::to_string(exp) + " is beyond the known precision " +
                         std::to_string(prec_));
  return known_.coeff(exp);
}

TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b) {
  return TruncatedSeries(a.known_ + b.known_, std::min(a.prec_, b.prec_));
}

TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b) {
  return TruncatedSeries(a.known_ - b.known_, std::min(a.prec_, b.prec_));
}

TruncatedSeries operator+(const TruncatedSeries &a, const LaurentPoly &b) {
  return TruncatedSeries(a.known_ + b, a.prec_);
}

TruncatedSeries operator-(const TruncatedSeries &a, const LaurentPoly &b) {
  return TruncatedSeries(a.known_ - b, a.prec_);
}

TruncatedSeries mul(const LaurentPoly &a, const TruncatedSeries &b) {
  const auto va = a.valuation();
  if (!va)
    return TruncatedSeries(LaurentPoly(b.field()), std::numeric_limits<std::int64_t>::max() / 4);
  return TruncatedSeries(mul(a, b.known()), b.precision() + *va);
}

TruncatedSeries pow_pk(const TruncatedSeries &s, int k) {
  std::int64_t scale = 1;
  for (int i = 0; i < k; ++i)
    scale *= s.field()->p();
  return TruncatedSeries(pow_pk(s.known(), k), s.precision() * scale);
}

} // namespace bigact::laurent
