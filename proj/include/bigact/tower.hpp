#ifndef BIGACT_TOWER_HPP
#define BIGACT_TOWER_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bigact/exec.hpp"
#include "bigact/field.hpp"

namespace bigact::tower {

using ff::FieldPtr;
using ff::Fq;
using ff::Params;

inline constexpr int kGens = 5;

// x^e[0] * g_1^e[1] * ... * g_5^e[5]. Ordered level-major: g_5 exponent first, x last.
struct Monomial {
  std::array<std::uint32_t, kGens + 1> e{};

  std::uint32_t x() const { return e[0]; }
  std::uint32_t gen(int i) const { return e[static_cast<std::size_t>(i)]; }
  Monomial times(const Monomial &o) const;

  friend bool operator==(const Monomial &, const Monomial &) = default;
  friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b);
};

struct MonomialHash {
  std::size_t operator()(const Monomial &m) const noexcept;
};

struct TowerTerm {
  Monomial mono;
  Fq coeff;
  friend bool operator==(const TowerTerm &, const TowerTerm &) = default;
};

// Polynomial in x and the five tower generators with F_q coefficients. Not
// reduced by itself; Presentation::normalize produces the normal form.
class TowerPoly {
public:
  explicit TowerPoly(FieldPtr field) : field_(std::move(field)) {}
  TowerPoly(FieldPtr field, std::vector<TowerTerm> terms);

  static TowerPoly constant(FieldPtr field, Fq c);
  static TowerPoly x(FieldPtr field, std::uint32_t exp = 1);
  // Generator g_i, i = 1..5.
  static TowerPoly gen(FieldPtr field, int i, std::uint32_t exp = 1);
  static TowerPoly monomial(FieldPtr field, const Monomial &m, Fq c);

  const FieldPtr &field() const { return field_; }
  const std::vector<TowerTerm> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Fq coeff(const Monomial &m) const;

  // Largest exponent of variable v (0 = x, 1..5 = generators).
  std::uint32_t degree(int v) const;
  // True when only x and generators with index < level appear.
  bool below_level(int level) const;

  TowerPoly operator-() const;
  TowerPoly scaled(Fq c) const;
  friend TowerPoly operator+(const TowerPoly &a, const TowerPoly &b);
  friend TowerPoly operator-(const TowerPoly &a, const TowerPoly &b);
  // Raw product, no relation rewriting.
  friend TowerPoly operator*(const TowerPoly &a, const TowerPoly &b);
  friend bool operator==(const TowerPoly &a, const TowerPoly &b) { return a.terms_ == b.terms_; }

private:
  FieldPtr field_;
  std::vector<TowerTerm> terms_;
};

// Sum of c * m^q over the terms (c^q = c for c in F_q); no rewriting.
TowerPoly raw_frobenius_q(const TowerPoly &a, std::uint32_t q);

// Right-hand sides over F_q[x].
struct CoverPolys {
  TowerPoly f1; // x^q0 (x^q - x)
  TowerPoly f2; // x^2q0 (x^q - x)
  TowerPoly g1; // x^q0 (x^2q - x^2)
  TowerPoly g2; // x^2q0 (x^2q - x^2)
  TowerPoly w_primed; // 2 y1 f2 + f1 f2
};
CoverPolys cover_polys(const Params &params, const FieldPtr &field);

enum class PresentationKind { unprimed, primed, mixed };
enum class RewriteOrder { highest_first, lowest_first };

// Triangular Artin-Schreier presentation g_i^q - g_i = R_i(x, g_1..g_{i-1}).
//   unprimed: y1, y2, v1, v2, w   with R = f1, f2, y1^q x - x^q y1, y2^q x - x^q y2, y2^q y1 - y1^q y2
//   primed:   y1, y2, v1', v2', w' with R = f1, f2, g1, g2, 2 y1 f2 + f1 f2
//   mixed:    y1, y2, v1', v2', w  (the generator set the automorphism tables act on)
class Presentation {
public:
  static std::shared_ptr<const Presentation> make(const Params &params, FieldPtr field, PresentationKind kind);

  const Params &params() const { return params_; }
  const FieldPtr &field() const { return field_; }
  PresentationKind kind() const { return kind_; }
  std::uint32_t q() const { return static_cast<std::uint32_t>(params_.q()); }

  // Variable names; 0 = "x".
  const std::string &name(int v) const { return names_[static_cast<std::size_t>(v)]; }
  // R_i as written and in normal form (i = 1..5).
  const TowerPoly &raw_relation(int i) const { return raw_[static_cast<std::size_t>(i - 1)]; }
  const TowerPoly &relation(int i) const { return rel_[static_cast<std::size_t>(i - 1)]; }

  TowerPoly normalize(const TowerPoly &a, RewriteOrder order = RewriteOrder::highest_first) const;
  TowerPoly mul(const TowerPoly &a, const TowerPoly &b) const { return normalize(a * b); }
  TowerPoly pow(const TowerPoly &a, std::uint32_t e) const;
  // u^q - u in normal form.
  TowerPoly wp(const TowerPoly &u) const;

  std::string to_string(const TowerPoly &a) const;

private:
  Presentation(const Params &params, FieldPtr field, PresentationKind kind);

  Params params_;
  FieldPtr field_;
  PresentationKind kind_;
  std::array<std::string, kGens + 1> names_;
  std::vector<TowerPoly> raw_;
  std::vector<TowerPoly> rel_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

// Endomorphism given by the images of x and of each generator.
// Composition: (a o b)(e) = a(b(e)).
class Endo {
public:
  Endo(PresentationPtr pres, TowerPoly x_image, std::array<TowerPoly, kGens> images);
  static Endo identity(PresentationPtr pres);

  const PresentationPtr &presentation() const { return pres_; }
  // Image of variable v (0 = x, 1..5 = generators).
  const TowerPoly &image(int v) const;
  TowerPoly apply(const TowerPoly &a) const;
  bool is_identity() const;
  // image(g_i) - g_i.
  TowerPoly shift(int i) const;

  friend bool operator==(const Endo &a, const Endo &b);

private:
  PresentationPtr pres_;
  TowerPoly x_image_;
  std::array<TowerPoly, kGens> images_;
};

struct EndoCheck {
  bool certified = false;
  int violated_level = 0; // 1..5 when not certified
  std::optional<TowerPoly> defect;
};

// Checks image(g_i)^q - image(g_i) = R_i(images) for every level.
EndoCheck check_endo(const Endo &e);

Endo compose(const Endo &a, const Endo &b);
// Inverse of an endo with image(x) = x + c and image(g_i) = g_i + (terms below level i).
Endo invert(const Endo &a);
// a o b o a^-1 o b^-1
Endo commutator(const Endo &a, const Endo &b);

// sigma_gamma and tau_gamma on the mixed presentation:
//   sigma: y1 -> y1 + gamma, v1' -> v1' + gamma, w -> w + gamma y2
//   tau:   y2 -> y2 + gamma, v1' -> v1' + gamma, w -> w - gamma y1
Endo sigma(const PresentationPtr &mixed, Fq gamma);
Endo tau(const PresentationPtr &mixed, Fq gamma);

struct DegreeBound {
  std::uint32_t x_max = 0;
  std::array<std::uint32_t, kGens> gen_max{};
};

// Generator exponents up to max(target)+1 (capped at q-1), x-degree up to ceil(deg_x/q)+1.
DegreeBound default_bound(const Presentation &pres, const TowerPoly &target);

struct WpSolveResult {
  std::optional<TowerPoly> witness; // u with u^q - u = target, no constant term
  DegreeBound bound;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  std::size_t kernel_dim = 0; // over F_q, within the bound
};

// Solves u^q - u = target over the F_q-span of the monomials within the bound.
// An empty witness means no solution inside the bound, not insolubility.
WpSolveResult wp_solve(const Presentation &pres, const TowerPoly &target,
                       std::optional<DegreeBound> bound = std::nullopt);

struct Prolongation {
  Fq a;
  Endo endo;
  std::array<TowerPoly, kGens> shifts;      // u_i with endo(g_i) = g_i + u_i
  std::array<std::size_t, kGens> kernel_dims{};
  boost::multiprecision::cpp_int multiplicity; // q^(sum of kernel dims)
};

// Lifts x -> x + a level by level through the presentation.
Prolongation prolong_translation(const PresentationPtr &pres, Fq a);
std::vector<Prolongation> prolong_many(const PresentationPtr &pres, std::span<const Fq> values,
                                       Exec exec = Exec::parallel);

struct CocycleCheck {
  Endo defect; // prolong(a+b)^-1 o prolong(a) o prolong(b)
  bool fixes_k = false;
  bool certified = false;
};
CocycleCheck cocycle_check(const Prolongation &pa, const Prolongation &pb, const Prolongation &pab);

struct PresentationLink {
  std::string primed;
  std::string unprimed;
  TowerPoly witness; // primed = unprimed + witness + (F_q constant)
  bool verified = false;
};

// Links each primed generator to the unprimed one via wp_solve on the
// difference of right-hand sides.
std::vector<PresentationLink> presentation_equiv(const Params &params, const FieldPtr &field);

} // namespace bigact::tower

#endif
