#include "bigact/local.hpp"

#include <map>

#include "bigact/errors.hpp"

namespace bigact::local {

using laurent::Term;

std::int64_t UniformizerData::residual_valuation() const {
  const auto v = residual.valuation();
  if (!v)
    throw IntegrityError("residual vanishes identically");
  return *v;
}

UniformizerData build_uniformizer(const Params &params, const FieldPtr &field) {
  if (field->p() != params.p() || field->degree() != params.n())
    throw ParameterError("field does not match the tower parameters");
  const std::int64_t q = params.q();
  const std::int64_t q0 = params.q0();
  const Fq one = field->one();
  const Fq mone = field->from_int(-1);

  UniformizerData d{params, 0, 0, 0, 0, LaurentPoly(field), LaurentPoly(field), LaurentPoly(field)};
  d.a1 = (q * q - q * q0 - q) / q0;
  d.a2 = (q * q - q0 - q) / q0;
  d.b1 = d.a1 - q * q0;
  d.b2 = d.a2 - q * q0;
  if (d.a1 <= 0 || d.a2 <= 0 || d.b1 <= 0 || d.b2 <= 0)
    throw IntegrityError("uniformizer exponents must be positive");

  d.x_of_z = LaurentPoly(field, {{-q, one}, {d.a1, one}, {d.a2, mone}});
  d.y_head = LaurentPoly(field, {{-(q + q0), one},
                                 {d.b1, one},
                                 {d.b2, mone},
                                 {d.a1 * q0 - q, one},
                                 {d.a2 * q0 - q, mone},
                                 {d.a1 * (1 + q0), one},
                                 {d.a2 * (1 + q0), one},
                                 {d.a1 + d.a2 * q0, mone},
                                 {d.a1 * q0 + d.a2, mone}});

  const int n = params.n();
  const LaurentPoly xq0 = laurent::pow_pk(d.x_of_z, params.s());
  const LaurentPoly xq = laurent::pow_pk(d.x_of_z, n);
  const LaurentPoly f1 = laurent::mul(xq0, xq - d.x_of_z);
  d.residual = laurent::pow_pk(d.y_head, n) - d.y_head - f1;

  if (d.residual_valuation() != q * d.b1)
    throw IntegrityError("uniformizer residual has valuation " + std::to_string(d.residual_valuation()) +
                         ", expected q*b1 = " + std::to_string(q * d.b1));
  return d;
}

TruncatedSeries hensel_T0(const UniformizerData &data, std::int64_t prec) {
  const std::int64_t qb1 = data.params.q() * data.b1;
  if (prec <= qb1)
    throw ParameterError("Hensel precision must exceed q*b1 = " + std::to_string(qb1));
  const int n = data.params.n();
  TruncatedSeries t(data.residual, prec);
  for (;;) {
    TruncatedSeries next(laurent::pow_pk(t, n).known() + data.residual, prec);
    if (next.known() == t.known())
      return t;
    t = std::move(next);
  }
}

bool hensel_verifies(const UniformizerData &data, const TruncatedSeries &t0) {
  const TruncatedSeries lhs = laurent::pow_pk(t0, data.params.n()) - t0 + data.residual;
  return lhs.known().is_zero();
}

Chart::Chart(std::string name, Params params, LaurentPoly x, std::optional<LaurentPoly> y, std::int64_t x_pole,
             std::int64_t y1_pole, std::optional<std::int64_t> tail)
    : name_(std::move(name)), params_(params), x_of_z_(std::move(x)), y_head_(std::move(y)), x_pole_(x_pole),
      y1_pole_(y1_pole), tail_valuation_(tail) {}

Chart Chart::over_k(const Params &params, const FieldPtr &field) {
  return Chart("K", params, LaurentPoly::monomial(field, -1, field->one()), std::nullopt, 1, 0, std::nullopt);
}

Chart Chart::over_ky1(const UniformizerData &data) {
  const auto q = data.params.q();
  return Chart("K(y1)", data.params, data.x_of_z, data.y_head, q, q + data.params.q0(), q * data.b1);
}

Expansion expand_at_infinity(const TowerPoly &expr, const Chart &chart) {
  if (!expr.below_level(2))
    throw UnsupportedError("expansion at infinity supports polynomials in x and y1 only");
  if (!chart.allows_y1() && expr.degree(1) > 0)
    throw UnsupportedError("y1 does not exist over " + chart.name());

  const auto &field = chart.field();
  std::map<std::uint32_t, LaurentPoly> xpow;
  std::map<std::uint32_t, LaurentPoly> ypow;
  auto power = [](std::map<std::uint32_t, LaurentPoly> &cache, const LaurentPoly &base,
                  std::uint32_t e) -> const LaurentPoly & {
    auto it = cache.find(e);
    if (it == cache.end())
      it = cache.emplace(e, laurent::pow(base, e)).first;
    return it->second;
  };

  Expansion out{LaurentPoly(field), 0, std::nullopt};
  std::vector<Term> acc;
  for (const auto &t : expr.terms()) {
    const auto i = t.mono.x();
    const auto j = t.mono.gen(1);
    out.pole_budget = std::max(out.pole_budget, static_cast<std::int64_t>(i) * chart.x_pole() +
                                                    static_cast<std::int64_t>(j) * chart.y1_pole());
    LaurentPoly term = power(xpow, chart.x_of_z(), i);
    if (j > 0)
      term = laurent::mul(term, power(ypow, *chart.y_head(), j));
    const auto scaled = term.scaled(t.coeff);
    acc.insert(acc.end(), scaled.terms().begin(), scaled.terms().end());
  }
  out.series = LaurentPoly(field, std::move(acc));

  if (chart.tail_valuation()) {
    out.tail_margin = *chart.tail_valuation() - out.pole_budget;
    if (expr.degree(1) > 0 && *out.tail_margin <= 0)
      throw UnsupportedError("T0 tail may reach the principal part (margin " + std::to_string(*out.tail_margin) +
                             "); an explicit T0 precision is required");
  }
  return out;
}

ReducedPart reduce_mod_wp(const LaurentPoly &a) {
  const auto &field = a.field();
  const auto &f = *field;
  const std::int64_t p = f.p();

  std::map<std::int64_t, Fq> neg;
  std::vector<Term> dropped;
  for (const auto &t : a.terms()) {
    if (t.exp < 0)
      neg.emplace(t.exp, t.coeff);
    else
      dropped.push_back(t);
  }

  ReducedPart out{LaurentPoly(field), {}, LaurentPoly(field, std::move(dropped)), 0};
  out.constant_trace = f.trace(a.coeff(0));

  // Most negative first; c z^(pm) -> c^(1/p) z^m moves strictly towards 0.
  for (auto it = neg.begin(); it != neg.end();) {
    const auto e = it->first;
    if (e % p != 0) {
      ++it;
      continue;
    }
    const Fq root = f.pth_root(it->second);
    neg.erase(it);
    out.witnesses.push_back({e / p, root});
    auto [jt, inserted] = neg.try_emplace(e / p, root);
    if (!inserted) {
      jt->second = f.add(jt->second, root);
      if (jt->second.is_zero())
        neg.erase(jt);
    }
    it = neg.upper_bound(e);
  }

  std::vector<Term> red;
  red.reserve(neg.size());
  for (const auto &[e, c] : neg)
    red.push_back({e, c});
  out.reduced = LaurentPoly(field, std::move(red));
  return out;
}

bool verify_reduction(const LaurentPoly &original, const ReducedPart &part) {
  const auto &field = original.field();
  const auto &f = *field;
  std::vector<Term> acc(part.reduced.terms());
  acc.insert(acc.end(), part.dropped.terms().begin(), part.dropped.terms().end());
  for (const auto &w : part.witnesses) {
    acc.push_back({w.exponent * f.p(), f.frobenius(w.coeff, 1)});
    acc.push_back({w.exponent, f.neg(w.coeff)});
  }
  if (!(LaurentPoly(field, std::move(acc)) == original))
    return false;
  for (const auto &t : part.reduced.terms())
    if (t.exp >= 0 || t.exp % f.p() == 0)
      return false;
  return true;
}

ConductorResult conductor_of_cover(const std::string &label, const TowerPoly &rhs, const Chart &chart) {
  return conductor_of_expansion(label, expand_at_infinity(rhs, chart));
}

ConductorResult conductor_of_expansion(const std::string &label, const Expansion &ex) {
  ConductorResult r;
  r.label = label;
  r.part = reduce_mod_wp(laurent::principal_part(ex.series) + ex.series.slice(0, 1));
  r.pole_budget = ex.pole_budget;
  r.tail_margin = ex.tail_margin;
  if (!r.part.reduced.is_zero()) {
    r.break_point = -*r.part.reduced.valuation();
    r.conductor = r.break_point + 1;
  }
  // A ramified cover keeps F_q as its constant field; only an unramified
  // constant with nonzero trace produces a constant-field extension.
  r.geometric = !(r.part.reduced.is_zero() && r.part.constant_trace != 0);
  return r;
}

} // namespace bigact::local
