#ifndef BIGACT_GENUS_HPP
#define BIGACT_GENUS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bigact/exec.hpp"
#include "bigact/field.hpp"
#include "bigact/local.hpp"

namespace bigact::genus {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using ff::FieldPtr;
using ff::Fq;
using ff::Params;

enum class CoverClassId { y2, v1p, v2p, w, y1_over_k, ree_line };

std::string label(CoverClassId id);
// Accepts the labels above and the ASCII aliases y2, v1, v2, w, y1, ree.
std::optional<CoverClassId> parse_class(const std::string &s);

// Degree-p subcovers grouped by the leading right-hand side of the line
//   c_1 R_1 + ... + c_k R_k  (leading = last nonzero coefficient).
// Over K(y1): R = (f2, g1, g2, 2 y1 f2 + f1 f2); over K: R = (f1, f2).
struct CoverClass {
  CoverClassId id;
  std::string label;
  std::string base; // "K(y1)" or "K"
  std::size_t components = 0;
  std::size_t leading = 0; // index into the components
  Int line_count;
};

CoverClass cover_class(const Params &params, CoverClassId id);

struct LineSample {
  std::vector<Fq> coeffs;
  std::int64_t conductor = 0;
  bool geometric = true;
};

struct ClassResult {
  CoverClass cls;
  local::ConductorResult representative; // leading coefficient gamma_1 = 1
  std::vector<LineSample> samples;
  bool constant = true;
  std::optional<std::size_t> offending;
  Int base_genus;
  Int genus;
};

// 2g - 2 = p (2 g_base - 2) + (p - 1) m. Throws IntegrityError when g is not an integer.
Int rh_genus(const Int &base_genus, std::int64_t conductor, int p);

// Garcia-Stichtenoth for an elementary abelian extension of degree p^N:
//   sum count*genus - p/(p-1) (p^(N-1) - 1) g_base.
Int gs_aggregate(const std::vector<std::pair<Int, Int>> &pieces, const Int &base_genus, int p, int N);

// Everything the class pipeline needs, built once per (p, s).
struct Setup {
  Params params;
  FieldPtr field;
  local::UniformizerData uniformizer;
  tower::CoverPolys polys;
};
Setup make_setup(const Params &params);
Setup make_setup(const Params &params, local::UniformizerData cached);

// Conductor of one class: the gamma_1 representative plus `samples` lines drawn
// from mt19937_64(seed ^ class tag), coefficient = draw mod q.
ClassResult class_conductor(const Setup &setup, CoverClassId id, std::size_t samples, std::uint64_t seed,
                            Exec exec = Exec::parallel);

struct TowerClasses {
  std::vector<ClassResult> over_ky1; // y2, v1', v2', w
  std::vector<ClassResult> over_k;   // y1 over K, Ree line
};
TowerClasses class_conductors(const Setup &setup, std::size_t samples, std::uint64_t seed,
                              Exec exec = Exec::parallel);

struct GenusReport {
  Params params;
  Int genus_ky1;
  std::vector<std::pair<std::string, Int>> class_genera;
  Int class_count_total;
  Int genus_f;              // subtraction p/(p-1)(p^(N-1)-1) g(K(y1)), N = 4n
  Int gs_subtraction;
  Rational alt_subtraction; // (q-1)/(p-1) * q/(2q0) * (q-1), the closed-form variant
  Rational genus_f_alt_subtraction;
  Int ree_genus;            // (y1, y2)-tower over K
  std::vector<std::string> discrepancies;
};

GenusReport genus_report(const Params &params, const TowerClasses &classes);
GenusReport genus_of_F(const Params &params, std::size_t samples = 8, std::uint64_t seed = 1);

struct BigActionReport {
  Params params;
  Int group_order;          // q^6
  Int genus;
  Rational bound;           // 2p/(p-1) g
  bool big_action = false;
  Rational ratio;           // |G| / g
  std::int64_t q0 = 0;
  Rational genus_alt_reading;
  bool big_action_alt_reading = false;
  bool readings_agree = false;
};

BigActionReport verify_big_action(const Params &params, const GenusReport &genus);

struct AuditRow {
  std::string item;
  Rational closed_form;
  Rational pipeline;
  bool match = false;
  bool closed_form_integral = true;
  Rational difference; // closed_form - pipeline
};

std::vector<AuditRow> formula_audit(const Params &params, const TowerClasses &classes, const GenusReport &genus);

std::string to_string(const Rational &r);

} // namespace bigact::genus

#endif
