#include "bigact/genus.hpp"

#include <exception>
#include <random>

#include "bigact/errors.hpp"

namespace bigact::genus {

namespace {

Int ipow(std::int64_t base, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i)
    r *= base;
  return r;
}

Rational rat(std::int64_t v) { return Rational(v); }

std::uint64_t class_tag(CoverClassId id) {
  return 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(id) + 1);
}

std::vector<tower::TowerPoly> components(const Setup &s, const CoverClass &c) {
  if (c.base == "K")
    return {s.polys.f1, s.polys.f2};
  return {s.polys.f2, s.polys.g1, s.polys.g2, s.polys.w_primed};
}

local::Chart chart_for(const Setup &s, const CoverClass &c) {
  return c.base == "K" ? local::Chart::over_k(s.params, s.field) : local::Chart::over_ky1(s.uniformizer);
}

Int genus_ky1(const Setup &s) {
  const auto cls = cover_class(s.params, CoverClassId::y1_over_k);
  const auto r = local::conductor_of_cover(cls.label, s.polys.f1, local::Chart::over_k(s.params, s.field));
  const Int line = rh_genus(0, r.conductor, s.params.p());
  return gs_aggregate({{line, cls.line_count}}, 0, s.params.p(), s.params.n());
}

} // namespace

std::string label(CoverClassId id) {
  switch (id) {
  case CoverClassId::y2:
    return "y_2";
  case CoverClassId::v1p:
    return "v'_1";
  case CoverClassId::v2p:
    return "v'_2";
  case CoverClassId::w:
    return "w";
  case CoverClassId::y1_over_k:
    return "y_1-over-K";
  case CoverClassId::ree_line:
    return "ree-line";
  }
  return "?";
}

std::optional<CoverClassId> parse_class(const std::string &s) {
  for (auto id : {CoverClassId::y2, CoverClassId::v1p, CoverClassId::v2p, CoverClassId::w, CoverClassId::y1_over_k,
                  CoverClassId::ree_line})
    if (s == label(id))
      return id;
  if (s == "y2")
    return CoverClassId::y2;
  if (s == "v1" || s == "v1'")
    return CoverClassId::v1p;
  if (s == "v2" || s == "v2'")
    return CoverClassId::v2p;
  if (s == "w'")
    return CoverClassId::w;
  if (s == "y1")
    return CoverClassId::y1_over_k;
  if (s == "ree")
    return CoverClassId::ree_line;
  return std::nullopt;
}

CoverClass cover_class(const Params &params, CoverClassId id) {
  const Int lines = Int(params.q() - 1) / (params.p() - 1);
  const Int q = params.q();
  switch (id) {
  case CoverClassId::y2:
    return {id, label(id), "K(y1)", 4, 0, lines};
  case CoverClassId::v1p:
    return {id, label(id), "K(y1)", 4, 1, q * lines};
  case CoverClassId::v2p:
    return {id, label(id), "K(y1)", 4, 2, q * q * lines};
  case CoverClassId::w:
    return {id, label(id), "K(y1)", 4, 3, q * q * q * lines};
  case CoverClassId::y1_over_k:
    return {id, label(id), "K", 2, 0, lines};
  case CoverClassId::ree_line:
    return {id, label(id), "K", 2, 1, q * lines};
  }
  throw ParameterError("unknown cover class");
}

Int rh_genus(const Int &base_genus, std::int64_t conductor, int p) {
  if (conductor < 0 || conductor == 1 || (conductor > 0 && (conductor - 1) % p == 0))
    throw ParameterError("conductor must be 0 or m >= 2 with m - 1 prime to p, got " + std::to_string(conductor));
  const Int two_g_minus_2 = Int(p) * (2 * base_genus - 2) + Int(p - 1) * conductor;
  if (two_g_minus_2 % 2 != 0)
    throw IntegrityError("Riemann-Hurwitz gives a non-integral genus for conductor " + std::to_string(conductor));
  return two_g_minus_2 / 2 + 1;
}

Int gs_aggregate(const std::vector<std::pair<Int, Int>> &pieces, const Int &base_genus, int p, int N) {
  if (N < 0)
    throw ParameterError("negative extension exponent");
  Int total = 0;
  Int sum = 0;
  for (const auto &[g, count] : pieces) {
    total += count;
    sum += g * count;
  }
  if (total != (ipow(p, N) - 1) / (p - 1))
    throw ParameterError("line count " + total.str() + " does not match (p^N - 1)/(p - 1)");
  // p/(p-1) * (p^(N-1) - 1), with p^(N-1) = p^N / p so N = 0 stays exact.
  const Rational coeff = Rational(p, p - 1) * (Rational(ipow(p, N), p) - 1);
  const Rational g = Rational(sum) - coeff * Rational(base_genus);
  if (denominator(g) != 1)
    throw IntegrityError("Garcia-Stichtenoth aggregate is not an integer");
  return numerator(g);
}

Setup make_setup(const Params &params) {
  auto field = ff::Field::make(params.p(), params.n());
  auto u = local::build_uniformizer(params, field);
  return make_setup(params, std::move(u));
}

Setup make_setup(const Params &params, local::UniformizerData cached) {
  auto field = cached.x_of_z.field();
  return Setup{params, field, std::move(cached), tower::cover_polys(params, field)};
}

ClassResult class_conductor(const Setup &setup, CoverClassId id, std::size_t samples, std::uint64_t seed,
                            Exec exec) {
  const auto &f = *setup.field;
  const CoverClass cls = cover_class(setup.params, id);
  const auto comps = components(setup, cls);
  const auto chart = chart_for(setup, cls);

  ClassResult res{cls, local::conductor_of_cover(cls.label, comps[cls.leading], chart), {}, true, std::nullopt, 0, 0};

  std::vector<local::Expansion> ex;
  ex.reserve(comps.size());
  for (const auto &c : comps)
    ex.push_back(local::expand_at_infinity(c, chart));

  std::mt19937_64 rng(seed ^ class_tag(id));
  const auto q = static_cast<std::uint64_t>(setup.params.q());
  res.samples.resize(samples);
  for (auto &s : res.samples) {
    s.coeffs.assign(comps.size(), f.zero());
    for (std::size_t j = 0; j < cls.leading; ++j)
      s.coeffs[j] = ff::Fq{static_cast<std::uint32_t>(rng() % q)};
    do {
      s.coeffs[cls.leading] = ff::Fq{static_cast<std::uint32_t>(rng() % q)};
    } while (s.coeffs[cls.leading].is_zero());
  }

  std::vector<std::exception_ptr> errors(samples);
  auto work = [&](std::int64_t k) {
    try {
      auto &s = res.samples[static_cast<std::size_t>(k)];
      local::Expansion line{laurent::LaurentPoly(setup.field), 0, std::nullopt};
      for (std::size_t j = 0; j < comps.size(); ++j) {
        line.series += ex[j].series.scaled(s.coeffs[j]);
        line.pole_budget = std::max(line.pole_budget, ex[j].pole_budget);
        line.tail_margin = ex[j].tail_margin;
      }
      const auto r = local::conductor_of_expansion(cls.label, line);
      s.conductor = r.conductor;
      s.geometric = r.geometric;
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  };
  const auto n = static_cast<std::int64_t>(samples);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k)
      work(k);
  } else {
    for (std::int64_t k = 0; k < n; ++k)
      work(k);
  }
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);

  for (std::size_t k = 0; k < res.samples.size(); ++k) {
    if (res.samples[k].conductor != res.representative.conductor) {
      res.constant = false;
      res.offending = k;
      break;
    }
  }

  res.base_genus = cls.base == "K" ? Int(0) : genus_ky1(setup);
  res.genus = rh_genus(res.base_genus, res.representative.conductor, setup.params.p());
  return res;
}

TowerClasses class_conductors(const Setup &setup, std::size_t samples, std::uint64_t seed, Exec exec) {
  TowerClasses out;
  for (auto id : {CoverClassId::y2, CoverClassId::v1p, CoverClassId::v2p, CoverClassId::w})
    out.over_ky1.push_back(class_conductor(setup, id, samples, seed, exec));
  for (auto id : {CoverClassId::y1_over_k, CoverClassId::ree_line})
    out.over_k.push_back(class_conductor(setup, id, samples, seed, exec));
  return out;
}

GenusReport genus_report(const Params &params, const TowerClasses &classes) {
  const int p = params.p();
  const int n = params.n();
  const std::int64_t q = params.q();
  const std::int64_t q0 = params.q0();
  if (classes.over_ky1.size() != 4 || classes.over_k.size() != 2)
    throw ParameterError("genus report needs the four classes over K(y1) and the two over K");

  GenusReport r{params, 0, {}, 0, 0, 0, 0, 0, 0, {}};
  const auto &y1k = classes.over_k[0];
  const auto &ree = classes.over_k[1];
  r.genus_ky1 = gs_aggregate({{y1k.genus, y1k.cls.line_count}}, 0, p, n);

  std::vector<std::pair<Int, Int>> pieces;
  Int weighted = 0;
  for (const auto &c : classes.over_ky1) {
    if (c.base_genus != r.genus_ky1)
      throw IntegrityError("class " + c.cls.label + " was computed over a different base genus");
    r.class_genera.emplace_back(c.cls.label, c.genus);
    pieces.emplace_back(c.genus, c.cls.line_count);
    r.class_count_total += c.cls.line_count;
    weighted += c.genus * c.cls.line_count;
  }
  const Int expected_lines = (ipow(q, 4) - 1) / (p - 1);
  if (r.class_count_total != expected_lines)
    throw IntegrityError("class line counts do not sum to (q^4 - 1)/(p - 1)");

  r.genus_f = gs_aggregate(pieces, r.genus_ky1, p, 4 * n);
  r.gs_subtraction = weighted - r.genus_f;
  r.alt_subtraction = Rational(q - 1, p - 1) * Rational(q, 2 * q0) * (q - 1);
  r.genus_f_alt_subtraction = Rational(weighted) - r.alt_subtraction;
  r.ree_genus = gs_aggregate({{y1k.genus, y1k.cls.line_count}, {ree.genus, ree.cls.line_count}}, 0, p, 2 * n);

  if (Rational(r.gs_subtraction) != r.alt_subtraction)
    r.discrepancies.push_back("subtraction term: Garcia-Stichtenoth gives " + r.gs_subtraction.str() +
                              ", closed-form variant gives " + to_string(r.alt_subtraction));
  for (const auto &c : classes.over_ky1)
    if (!c.constant)
      r.discrepancies.push_back("conductor not constant on class " + c.cls.label);
  for (const auto &c : classes.over_k)
    if (!c.constant)
      r.discrepancies.push_back("conductor not constant on class " + c.cls.label);
  return r;
}

GenusReport genus_of_F(const Params &params, std::size_t samples, std::uint64_t seed) {
  const auto setup = make_setup(params);
  return genus_report(params, class_conductors(setup, samples, seed));
}

BigActionReport verify_big_action(const Params &params, const GenusReport &genus) {
  const int p = params.p();
  BigActionReport r{params, ipow(params.q(), 6), genus.genus_f, 0, false, 0, params.q0(), 0, false, false};
  const Rational factor(2 * p, p - 1);
  r.bound = factor * Rational(r.genus);
  // Exact rational comparison; cpp_rational compares by cross multiplication.
  r.big_action = r.genus >= 2 && Rational(r.group_order) > r.bound;
  r.ratio = r.genus == 0 ? Rational(0) : Rational(r.group_order, r.genus);
  r.genus_alt_reading = genus.genus_f_alt_subtraction;
  r.big_action_alt_reading = r.genus_alt_reading >= 2 && Rational(r.group_order) > factor * r.genus_alt_reading;
  r.readings_agree = r.big_action == r.big_action_alt_reading;
  return r;
}

std::vector<AuditRow> formula_audit(const Params &params, const TowerClasses &classes, const GenusReport &genus) {
  const std::int64_t p = params.p();
  const std::int64_t q = params.q();
  const std::int64_t q0 = params.q0();
  const Rational h(q, 2 * q0);

  auto cond = [&](CoverClassId id) -> std::int64_t {
    for (const auto *list : {&classes.over_ky1, &classes.over_k})
      for (const auto &c : *list)
        if (c.cls.id == id)
          return c.representative.conductor;
    throw ParameterError("class missing from audit input");
  };
  auto gen = [&](CoverClassId id) -> Int {
    for (const auto &c : classes.over_ky1)
      if (c.cls.id == id)
        return c.genus;
    throw ParameterError("class missing from audit input");
  };

  std::vector<AuditRow> rows;
  auto add = [&](std::string item, Rational closed, Rational pipeline) {
    AuditRow row;
    row.item = std::move(item);
    row.closed_form = closed;
    row.pipeline = pipeline;
    row.match = closed == pipeline;
    row.closed_form_integral = denominator(closed) == 1;
    row.difference = closed - pipeline;
    rows.push_back(std::move(row));
  };

  add("conductor w' = 2+p*q0+2q+p*q0*q", rat(2 + p * q0 + 2 * q + p * q0 * q), rat(cond(CoverClassId::w)));
  add("conductor y1/K = p*q0+2", rat(p * q0 + 2), rat(cond(CoverClassId::y1_over_k)));
  if (p == 3)
    add("Ree lower break q+3q0+1 (y2 break over K(y1))", rat(q + 3 * q0 + 1), rat(cond(CoverClassId::y2) - 1));

  const Rational g_y2 = h * (q * p + q0 * p - q0 - 1);
  const Rational g_v1 = h * (2 * q * p - q - 1);
  const Rational g_v2 = h * (2 * q * p + q0 * p - q0 - q - 1);
  const Rational g_w = h * (2 * p * q + 2 * p * q0 - q0 - q - 1);
  add("genus K(y1,y2_i) = q/(2q0)[qp+q0p-q0-1]", g_y2, Rational(gen(CoverClassId::y2)));
  add("genus K(y1,v'1_i) = q/(2q0)[2qp-q-1]", g_v1, Rational(gen(CoverClassId::v1p)));
  add("genus K(y1,v'2_i) = q/(2q0)[2qp+q0p-q0-q-1]", g_v2, Rational(gen(CoverClassId::v2p)));
  add("genus K(y1,w'_i) = q/(2q0)[2pq+2pq0-q0-q-1]", g_w, Rational(gen(CoverClassId::w)));
  add("genus K(y1) = q/(2q0)(q-1)", h * (q - 1), Rational(genus.genus_ky1));

  const Rational lines(q - 1, p - 1);
  const Rational g_f = lines * (Rational(q * q * q) * g_w + Rational(q * q) * g_v2 + Rational(q) * g_v1 + g_y2) -
                       lines * h * (q - 1);
  add("genus F, closed-form aggregate", g_f, Rational(genus.genus_f));
  if (p == 3)
    add("Ree genus (3/2)q0(q-1)(q+q0+1)", Rational(3, 2) * q0 * (q - 1) * (q + q0 + 1), Rational(genus.ree_genus));
  return rows;
}

std::string to_string(const Rational &r) {
  if (denominator(r) == 1)
    return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace bigact::genus
