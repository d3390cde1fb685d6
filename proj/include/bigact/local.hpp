#ifndef BIGACT_LOCAL_HPP
#define BIGACT_LOCAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigact/field.hpp"
#include "bigact/laurent.hpp"
#include "bigact/tower.hpp"

namespace bigact::local {

using ff::FieldPtr;
using ff::Fq;
using ff::Params;
using laurent::LaurentPoly;
using laurent::TruncatedSeries;
using tower::TowerPoly;

// Local parameter z at the place over x = infinity of K(y1):
//   x = z^-q + z^a1 - z^a2,  y1 = y_head + T0,
// where y_head is the nine-term head of the expansion and
//   y_head^q - y_head - f1(x) = residual,  v(residual) = q*b1.
struct UniformizerData {
  Params params;
  std::int64_t a1 = 0;
  std::int64_t a2 = 0;
  std::int64_t b1 = 0;
  std::int64_t b2 = 0;
  LaurentPoly x_of_z;
  LaurentPoly y_head;
  LaurentPoly residual;

  std::int64_t residual_valuation() const;
};

// Builds x(z), y_head and the exact residual. Throws IntegrityError when the
// residual valuation is not q*b1.
UniformizerData build_uniformizer(const Params &params, const FieldPtr &field);

// Solves T^q - T + residual = 0 by T <- T^q + residual, modulo z^prec.
// Requires prec > q*b1.
TruncatedSeries hensel_T0(const UniformizerData &data, std::int64_t prec);
// T0^q - T0 + residual vanishes modulo z^prec(T0).
bool hensel_verifies(const UniformizerData &data, const TruncatedSeries &t0);

// Place at which a right-hand side is expanded: infinity of K = F_q(x)
// (z = 1/x), or the unique place over infinity of K(y1).
class Chart {
public:
  static Chart over_k(const Params &params, const FieldPtr &field);
  static Chart over_ky1(const UniformizerData &data);

  bool allows_y1() const { return y_head_.has_value(); }
  const std::string &name() const { return name_; }
  const Params &params() const { return params_; }
  const FieldPtr &field() const { return x_of_z_.field(); }
  const LaurentPoly &x_of_z() const { return x_of_z_; }
  const std::optional<LaurentPoly> &y_head() const { return y_head_; }
  std::int64_t x_pole() const { return x_pole_; }
  std::int64_t y1_pole() const { return y1_pole_; }
  // v(T0) when y1 = y_head + T0.
  std::optional<std::int64_t> tail_valuation() const { return tail_valuation_; }

private:
  Chart(std::string name, Params params, LaurentPoly x, std::optional<LaurentPoly> y, std::int64_t x_pole,
        std::int64_t y1_pole, std::optional<std::int64_t> tail);

  std::string name_;
  Params params_;
  LaurentPoly x_of_z_;
  std::optional<LaurentPoly> y_head_;
  std::int64_t x_pole_;
  std::int64_t y1_pole_;
  std::optional<std::int64_t> tail_valuation_;
};

struct Expansion {
  LaurentPoly series;
  std::int64_t pole_budget = 0;
  // v(T0) - pole_budget: the omitted T0 terms have valuation >= this.
  std::optional<std::int64_t> tail_margin;
};

// Substitutes x <- x(z), y1 <- y_head. Throws UnsupportedError when expr
// involves other generators or when the T0 tail could reach the principal part.
Expansion expand_at_infinity(const TowerPoly &expr, const Chart &chart);

// u = coeff * z^exponent; the eliminated term was u^p - u.
struct WpWitness {
  std::int64_t exponent = 0;
  Fq coeff;
};

struct ReducedPart {
  LaurentPoly reduced; // negative exponents prime to p only
  std::vector<WpWitness> witnesses;
  LaurentPoly dropped; // nonnegative part of the input
  int constant_trace = 0;
};

// Canonical representative modulo (Frob_p - Id)(F_q((z))).
ReducedPart reduce_mod_wp(const LaurentPoly &a);
// original = reduced + sum wp(u_i) + dropped, exactly.
bool verify_reduction(const LaurentPoly &original, const ReducedPart &part);

struct ConductorResult {
  std::string label;
  ReducedPart part;
  std::int64_t break_point = 0; // largest pole of the reduced part
  std::int64_t conductor = 0;   // break + 1, or 0 when unramified
  bool geometric = true;
  std::int64_t pole_budget = 0;
  std::optional<std::int64_t> tail_margin;
};

// Conductor of the degree-p cover w^p - w = rhs over the chart's function field.
ConductorResult conductor_of_cover(const std::string &label, const TowerPoly &rhs, const Chart &chart);
// Same, starting from an already expanded right-hand side.
ConductorResult conductor_of_expansion(const std::string &label, const Expansion &ex);

} // namespace bigact::local

#endif
