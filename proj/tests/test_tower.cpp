#include <doctest.h>

#include "bigact/errors.hpp"
#include "bigact/tower.hpp"
#include "generators.hpp"

using namespace bigact;
using namespace bigact::tower;
using ff::Field;
using ff::Fq;
using ff::Params;

namespace {

struct Ctx {
  Params params;
  ff::FieldPtr field;
  PresentationPtr mixed;
  explicit Ctx(int p = 3, int s = 1)
      : params(p, s), field(Field::make(p, params.n())),
        mixed(Presentation::make(params, field, PresentationKind::mixed)) {}
  TowerPoly x(std::uint32_t e = 1) const { return TowerPoly::x(field, e); }
  TowerPoly g(int i, std::uint32_t e = 1) const { return TowerPoly::gen(field, i, e); }
  TowerPoly c(Fq a) const { return TowerPoly::constant(field, a); }
  TowerPoly c(int a) const { return c(field->from_int(a)); }
};

bool in_normal_form(const TowerPoly &a, std::uint32_t q) {
  for (const auto &t : a.terms())
    for (int i = 1; i <= kGens; ++i)
      if (t.mono.gen(i) >= q)
        return false;
  return true;
}

} // namespace

TEST_CASE("cover polynomials at (3,1) by hand") {
  Ctx c;
  const auto polys = cover_polys(c.params, c.field);
  CHECK(polys.f1 == c.x(30) - c.x(4));
  CHECK(polys.f2 == c.x(33) - c.x(7));
  CHECK(polys.g1 == c.x(57) - c.x(5));
  CHECK(polys.g2 == c.x(60) - c.x(8));
  CHECK(polys.w_primed == c.c(2) * c.g(1) * polys.f2 + polys.f1 * polys.f2);
}

TEST_CASE("relations of the three presentations") {
  Ctx c;
  const auto un = Presentation::make(c.params, c.field, PresentationKind::unprimed);
  const auto pr = Presentation::make(c.params, c.field, PresentationKind::primed);
  CHECK(un->raw_relation(3) == c.g(1, 27) * c.x() - c.x(27) * c.g(1));
  CHECK(un->raw_relation(5) == c.g(2, 27) * c.g(1) - c.g(1, 27) * c.g(2));
  CHECK(pr->raw_relation(5) == cover_polys(c.params, c.field).w_primed);
  CHECK(c.mixed->name(5) == "w");
  CHECK(pr->name(5) == "w'");
  for (int i = 1; i <= kGens; ++i)
    CHECK(in_normal_form(un->relation(i), 27));
}

TEST_CASE("normalize rewrites g^q = g + R") {
  Ctx c;
  const auto &m = *c.mixed;
  CHECK(m.normalize(c.g(1, 27)) == c.g(1) + m.relation(1));
  CHECK(m.wp(c.g(1)) == m.relation(1));
  CHECK(m.wp(c.g(4)) == m.relation(4));
  CHECK(m.wp(c.x()) == c.x(27) - c.x());
  CHECK(m.pow(c.g(2), 30) == m.normalize(c.g(2, 30)));
}

TEST_CASE("property: normalization is confluent and idempotent on 1000 random elements") {
  Ctx c;
  gen::Rng rng(31);
  for (int k = 0; k < 1000; ++k) {
    const auto a = gen::tower(rng, c.field, 3, 40);
    const auto h = c.mixed->normalize(a, RewriteOrder::highest_first);
    const auto l = c.mixed->normalize(a, RewriteOrder::lowest_first);
    REQUIRE(h == l);
    REQUIRE(in_normal_form(h, 27));
    REQUIRE(c.mixed->normalize(h) == h);
  }
}

TEST_CASE("sigma and tau are certified; a broken map is not") {
  for (auto [p, s] : {std::pair{3, 1}, {5, 1}}) {
    Ctx c(p, s);
    for (auto gamma : c.field->basis()) {
      CHECK(check_endo(sigma(c.mixed, gamma)).certified);
      CHECK(check_endo(tau(c.mixed, gamma)).certified);
    }
  }
  Ctx c;
  std::array<TowerPoly, kGens> img{c.g(1) + c.x(), c.g(2), c.g(3), c.g(4), c.g(5)};
  const auto bad = check_endo(Endo(c.mixed, c.x(), img));
  CHECK_FALSE(bad.certified);
  CHECK(bad.violated_level == 1);
  REQUIRE(bad.defect.has_value());
  CHECK_FALSE(bad.defect->is_zero());
}

TEST_CASE("property: endos are ring homomorphisms on 1000 random pairs") {
  Ctx c;
  gen::Rng rng(32);
  const auto basis = c.field->basis();
  for (int k = 0; k < 1000; ++k) {
    const auto gamma = basis[static_cast<std::size_t>(k) % basis.size()];
    const Endo e = k % 2 == 0 ? sigma(c.mixed, gamma) : tau(c.mixed, gamma);
    const auto a = c.mixed->normalize(gen::tower(rng, c.field, 3, 4));
    const auto b = c.mixed->normalize(gen::tower(rng, c.field, 3, 4));
    REQUIRE(e.apply(c.mixed->mul(a, b)) == c.mixed->mul(e.apply(a), e.apply(b)));
    REQUIRE(e.apply(a + b) == e.apply(a) + e.apply(b));
  }
}

TEST_CASE("composition and inverse") {
  Ctx c;
  const auto t = c.field->gen();
  const auto s1 = sigma(c.mixed, t);
  const auto inv = invert(s1);
  CHECK(compose(s1, inv).is_identity());
  CHECK(compose(inv, s1).is_identity());
  CHECK(check_endo(inv).certified);
  // sigma_a o sigma_b = sigma_(a+b)
  CHECK(compose(sigma(c.mixed, t), sigma(c.mixed, c.field->one())) ==
        sigma(c.mixed, c.field->add(t, c.field->one())));
  CHECK(Endo::identity(c.mixed).is_identity());

  std::array<TowerPoly, kGens> img{c.g(1), c.g(2), c.g(3), c.g(4), c.g(5)};
  CHECK_THROWS_AS(invert(Endo(c.mixed, c.x(2), img)), UnsupportedError);
}

TEST_CASE("commutators: [sigma_i, tau_j] moves w by -2 gamma_i gamma_j") {
  // Hand computation with (a o b)(e) = a(b(e)), applying the innermost map first:
  //   tau^-1(w) = w + g_j y1
  //   sigma^-1: w - g_i y2 + g_j (y1 - g_i)
  //   tau:      w - g_j y1 - g_i (y2 + g_j) + g_j y1 - g_i g_j = w - g_i y2 - 2 g_i g_j
  //   sigma:    w - 2 g_i g_j
  for (auto [p, s] : {std::pair{3, 1}, {5, 1}}) {
    Ctx c(p, s);
    const auto &f = *c.field;
    const auto basis = f.basis();
    for (auto gi : basis)
      for (auto gj : basis) {
        const auto k = commutator(sigma(c.mixed, gi), tau(c.mixed, gj));
        CHECK_FALSE(k.is_identity());
        CHECK(k.shift(5) == c.c(f.mul(f.from_int(-2), f.mul(gi, gj))));
        for (int v = 1; v < 5; ++v)
          CHECK(k.shift(v).is_zero());
        CHECK(k.image(0) == c.x());
        CHECK(commutator(sigma(c.mixed, gi), sigma(c.mixed, gj)).is_identity());
        CHECK(commutator(tau(c.mixed, gi), tau(c.mixed, gj)).is_identity());
      }
    const auto e = tau(c.mixed, basis[1]);
    CHECK(commutator(e, e).is_identity());
  }
}

TEST_CASE("wp_solve recovers witnesses and reports failures within the bound") {
  Ctx c;
  gen::Rng rng(33);
  for (int k = 0; k < 60; ++k) {
    auto u = c.mixed->normalize(gen::tower(rng, c.field, 3, 3, 2));
    u = u - c.c(u.coeff(Monomial{})); // canonical witness has no constant term
    const auto target = c.mixed->wp(u);
    DegreeBound b;
    b.x_max = u.degree(0);
    for (int i = 1; i <= kGens; ++i)
      b.gen_max[static_cast<std::size_t>(i - 1)] = u.degree(i);
    const auto r = wp_solve(*c.mixed, target, b);
    CAPTURE(c.mixed->to_string(u));
    REQUIRE(r.witness.has_value());
    REQUIRE(*r.witness == u);
    REQUIRE(c.mixed->wp(*r.witness) == target);
    if (const auto d = wp_solve(*c.mixed, target); d.witness)
      REQUIRE(c.mixed->wp(*d.witness) == target);
  }
  // wp(y2^3) = f2^3 has no y2, so the default bound cannot see the witness.
  const auto hidden = c.mixed->wp(c.g(2, 3));
  CHECK(hidden == c.mixed->normalize(cover_polys(c.params, c.field).f2 * cover_polys(c.params, c.field).f2 *
                                     cover_polys(c.params, c.field).f2));
  CHECK_FALSE(wp_solve(*c.mixed, hidden).witness.has_value());

  // x is not of the form u^q - u in F_q[x].
  const auto r = wp_solve(*c.mixed, c.x());
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.unknowns > 0);
  CHECK(r.rank < r.unknowns);
}

TEST_CASE("prolongations of x -> x + a at (3,1), all 27 values") {
  Ctx c;
  std::vector<Fq> all;
  for (std::uint32_t v = 0; v < 27; ++v)
    all.push_back({v});
  const auto par = prolong_many(c.mixed, all, Exec::parallel);
  const auto ser = prolong_many(c.mixed, all, Exec::serial);
  const boost::multiprecision::cpp_int q5 = boost::multiprecision::pow(boost::multiprecision::cpp_int(27), 5);
  REQUIRE(par.size() == 27);
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(par[i].endo == ser[i].endo);
    CHECK(par[i].endo.image(0) == c.x() + c.c(all[i]));
    CHECK(check_endo(par[i].endo).certified);
    CHECK(par[i].multiplicity == q5);
    for (auto k : par[i].kernel_dims)
      CHECK(k == 1);
  }
  CHECK(par[0].endo.is_identity());
  // y1 shift for f1 = x^q0 (x^q - x): (x + a)^q0 ((x+a)^q - (x+a)) - f1 = a^q0 (x^q - x), so u = a^q0 x.
  const Fq a{5};
  CHECK(par[5].shifts[0] == c.c(c.field->frobenius(a, 1)) * c.x());

  for (std::size_t i = 0; i < all.size(); i += 4)
    for (std::size_t j = 0; j < all.size(); j += 3) {
      const auto s = c.field->add(all[i], all[j]);
      const auto cc = cocycle_check(par[i], par[j], par[s.v]);
      CHECK(cc.certified);
      CHECK(cc.fixes_k);
    }
}

TEST_CASE("presentation links") {
  Ctx c;
  const auto links = presentation_equiv(c.params, c.field);
  REQUIRE(links.size() == 5);
  for (const auto &l : links)
    CHECK(l.verified);
  CHECK(links[0].witness.is_zero());
  CHECK(links[1].witness.is_zero());
  CHECK(links[2].witness == c.g(1) * c.x());
  CHECK(links[3].witness == c.g(2) * c.x());
  CHECK(links[4].witness == c.g(2) * c.g(1));
}
