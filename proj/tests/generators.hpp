#ifndef BIGACT_TESTS_GENERATORS_HPP
#define BIGACT_TESTS_GENERATORS_HPP

#include <random>

#include "bigact/laurent.hpp"
#include "bigact/tower.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline bigact::ff::Fq element(Rng &rng, const bigact::ff::Field &f) {
  return {static_cast<std::uint32_t>(rng() % f.order())};
}

inline bigact::ff::Fq nonzero(Rng &rng, const bigact::ff::Field &f) {
  return {static_cast<std::uint32_t>(1 + rng() % (f.order() - 1))};
}

inline std::int64_t range(Rng &rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline bigact::laurent::LaurentPoly laurent(Rng &rng, const bigact::ff::FieldPtr &field, std::size_t max_terms,
                                            std::int64_t lo, std::int64_t hi) {
  std::vector<bigact::laurent::Term> t;
  const auto k = static_cast<std::size_t>(range(rng, 0, static_cast<std::int64_t>(max_terms)));
  for (std::size_t i = 0; i < k; ++i)
    t.push_back({range(rng, lo, hi), element(rng, *field)});
  return bigact::laurent::LaurentPoly(field, std::move(t));
}

// Random tower polynomial; exponents may exceed q - 1 so normalization has work to do.
inline bigact::tower::TowerPoly tower(Rng &rng, const bigact::ff::FieldPtr &field, std::size_t max_terms,
                                      std::uint32_t max_exp, int levels = bigact::tower::kGens) {
  std::vector<bigact::tower::TowerTerm> t;
  const auto k = static_cast<std::size_t>(range(rng, 0, static_cast<std::int64_t>(max_terms)));
  for (std::size_t i = 0; i < k; ++i) {
    bigact::tower::Monomial m;
    for (int v = 0; v <= levels; ++v)
      m.e[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(rng() % (max_exp + 1));
    t.push_back({m, element(rng, *field)});
  }
  return bigact::tower::TowerPoly(field, std::move(t));
}

} // namespace gen

#endif
