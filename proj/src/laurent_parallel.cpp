#include <algorithm>

#include <omp.h>

#include "bigact/laurent.hpp"

namespace bigact::laurent {

namespace detail {
std::vector<Term> combine(const ff::Field &f, std::vector<Term> terms);
}

LaurentPoly mul_parallel(const LaurentPoly &a, const LaurentPoly &b) {
  require_same_field(a, b);
  const auto &f = *a.field();
  const auto &ta = a.terms();
  const auto &tb = b.terms();
  const auto na = static_cast<std::int64_t>(ta.size());

  const int nthreads = std::max(1, omp_get_max_threads());
  std::vector<std::vector<Term>> partial(static_cast<std::size_t>(nthreads));

#pragma omp parallel num_threads(nthreads)
  {
    const int tid = omp_get_thread_num();
    const int nt = omp_get_num_threads();
    const std::int64_t lo = na * tid / nt;
    const std::int64_t hi = na * (tid + 1) / nt;
    std::vector<Term> local;
    local.reserve(static_cast<std::size_t>(hi - lo) * tb.size());
    for (std::int64_t i = lo; i < hi; ++i)
      for (const auto &t : tb)
        local.push_back({ta[i].exp + t.exp, f.mul(ta[i].coeff, t.coeff)});
    partial[static_cast<std::size_t>(tid)] = detail::combine(f, std::move(local));
  }

  std::vector<Term> all;
  for (auto &v : partial)
    all.insert(all.end(), v.begin(), v.end());
  return LaurentPoly(a.field(), std::move(all));
}

} // namespace bigact::laurent
