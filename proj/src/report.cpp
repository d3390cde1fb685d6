#include "bigact/report.hpp"

#include <chrono>
#include <cstdlib>
#include <set>

#include <omp.h>

#include "bigact/errors.hpp"
#include "bigact/genus.hpp"
#include "bigact/tower.hpp"
#include "bigact/version.hpp"

namespace bigact::report {

namespace {

using ff::Fq;
using genus::Int;
using genus::Rational;
using tower::Endo;
using tower::Presentation;
using tower::PresentationKind;
using tower::PresentationPtr;
using tower::TowerPoly;

std::string big(const Int &v) { return v.str(); }

Json coords(const ff::Field &f, ff::Fq a) { return f.coords(a); }

class Timings {
public:
  explicit Timings(bool on) : on_(on) {}
  template <class F> auto time(const std::string &name, F &&fn) {
    const auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record(name, t0);
    } else {
      auto r = fn();
      record(name, t0);
      return r;
    }
  }
  void attach(Json &report) const {
    if (on_)
      report["timings_s"] = data_;
  }

private:
  void record(const std::string &name, std::chrono::steady_clock::time_point t0) {
    if (on_)
      data_[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  bool on_;
  Json data_ = Json::object();
};

// Shared state of one run; sections are appended in a fixed order.
struct Run {
  RunConfig cfg;
  ff::Params params;
  ff::FieldPtr field;
  std::optional<genus::Setup> setup;
  bool cache_hit = false;
  Json report = Json::object();
  Json checks = Json::object();
  Timings timings;

  explicit Run(const RunConfig &c) : cfg(c), params(validate(c)), timings(c.timings) {
    field = ff::Field::make(params.p(), params.n());
    report["artifact_version"] = kVersion;
    report["config"] = config_json();
    report["params"] = params_json();
  }

  Json config_json() const {
    Json j;
    j["command"] = cfg.commands.empty() ? "verify" : cfg.commands.front();
    j["p"] = cfg.p;
    j["s"] = cfg.s;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["rng"] = "mt19937_64(seed ^ class_tag), coefficient = draw mod q";
    return j;
  }

  Json params_json() const {
    Json j;
    j["p"] = params.p();
    j["s"] = params.s();
    j["n"] = params.n();
    j["q0"] = params.q0();
    j["q"] = params.q();
    j["s_at_least_two"] = params.s_at_least_two();
    j["field_modulus"] = field->modulus_string();
    return j;
  }

  genus::Setup &get_setup() {
    if (!setup) {
      auto u = timings.time("uniformizer", [&] {
        return cached_uniformizer(params, field, resolve_cache_dir(cfg), &cache_hit);
      });
      setup = genus::make_setup(params, std::move(u));
    }
    return *setup;
  }

  void check(const std::string &name, bool ok) { checks[name] = ok; }

  Outcome finish(std::size_t audit_mismatches) {
    bool ok = true;
    for (const auto &[k, v] : checks.items())
      ok = ok && v.get<bool>();
    Json status;
    status["checks"] = checks;
    status["integrity_ok"] = ok;
    status["audit_mismatches"] = audit_mismatches;
    int code = !ok ? integrity_failure : audit_mismatches > 0 ? audit_mismatch : ExitCode::ok;
    status["exit_code"] = code;
    report["status"] = status;
    timings.attach(report);
    return {report, code};
  }

  Outcome fail(const std::string &what) {
    checks["exception"] = false;
    auto out = finish(0);
    out.report["status"]["failed_check"] = what;
    return out;
  }
};

Json uniformizer_section(Run &run) {
  const auto &d = run.get_setup().uniformizer;
  const auto qb1 = run.params.q() * d.b1;
  Json j;
  j["a1"] = d.a1;
  j["a2"] = d.a2;
  j["b1"] = d.b1;
  j["b2"] = d.b2;
  j["q_b1"] = qb1;
  j["residual_valuation"] = d.residual_valuation();
  j["residual_lowest_coeff"] = run.field->to_string(d.residual.coeff(d.residual_valuation()));
  j["residual_terms"] = d.residual.size();
  const bool lowest_one = d.residual.coeff(d.residual_valuation()) == run.field->one();
  run.check("uniformizer_residual", d.residual_valuation() == qb1 && lowest_one);

  const auto prec = qb1 + run.params.q();
  const auto t0 = run.timings.time("hensel", [&] { return local::hensel_T0(d, prec); });
  const bool ok = local::hensel_verifies(d, t0);
  j["hensel"] = {{"precision", prec}, {"t0_valuation", *t0.valuation()}, {"verified", ok}};
  run.check("hensel_T0", ok);
  return j;
}

Json class_json(const ff::Field &f, const genus::ClassResult &c) {
  Json j;
  j["label"] = c.cls.label;
  j["base"] = c.cls.base;
  j["leading_component"] = c.cls.leading;
  j["line_count"] = big(c.cls.line_count);
  j["conductor"] = c.representative.conductor;
  j["break"] = c.representative.break_point;
  j["geometric"] = c.representative.geometric;
  j["pole_budget"] = c.representative.pole_budget;
  if (c.representative.tail_margin)
    j["tail_margin"] = *c.representative.tail_margin;
  Json support = Json::array();
  for (auto it = c.representative.part.reduced.terms().rbegin(); it != c.representative.part.reduced.terms().rend();
       ++it)
    support.push_back(-it->exp);
  j["reduced_pole_orders"] = support;
  j["wp_witnesses"] = c.representative.part.witnesses.size();
  j["base_genus"] = big(c.base_genus);
  j["genus"] = big(c.genus);
  Json samples = Json::array();
  for (const auto &s : c.samples) {
    Json coeffs = Json::array();
    for (auto a : s.coeffs)
      coeffs.push_back(f.to_string(a));
    samples.push_back({{"coeffs", coeffs}, {"conductor", s.conductor}, {"geometric", s.geometric}});
  }
  j["samples"] = samples;
  j["constant_on_samples"] = c.constant;
  if (c.offending)
    j["offending_sample"] = *c.offending;
  return j;
}

bool reduction_ok(const genus::Setup &setup, const genus::ClassResult &c) {
  const auto comps = c.cls.base == "K" ? std::vector<TowerPoly>{setup.polys.f1, setup.polys.f2}
                                       : std::vector<TowerPoly>{setup.polys.f2, setup.polys.g1, setup.polys.g2,
                                                                setup.polys.w_primed};
  const auto chart = c.cls.base == "K" ? local::Chart::over_k(setup.params, setup.field)
                                       : local::Chart::over_ky1(setup.uniformizer);
  const auto ex = local::expand_at_infinity(comps[c.cls.leading], chart);
  const auto original = laurent::principal_part(ex.series) + ex.series.slice(0, 1);
  return local::verify_reduction(original, c.representative.part);
}

genus::TowerClasses classes_section(Run &run) {
  auto &setup = run.get_setup();
  auto classes = run.timings.time("class_conductors",
                                  [&] { return genus::class_conductors(setup, run.cfg.samples, run.cfg.seed); });
  Json j = Json::array();
  bool constant = true;
  bool reduced = true;
  for (const auto *list : {&classes.over_ky1, &classes.over_k})
    for (const auto &c : *list) {
      j.push_back(class_json(*run.field, c));
      constant = constant && c.constant;
      reduced = reduced && reduction_ok(setup, c);
    }
  run.report["classes"] = j;
  run.check("class_conductor_constant", constant);
  run.check("wp_reduction_identity", reduced);
  const auto &k = classes.over_ky1;
  run.check("conductor_monotone", k[0].representative.conductor < k[1].representative.conductor &&
                                      k[1].representative.conductor < k[2].representative.conductor &&
                                      k[2].representative.conductor < k[3].representative.conductor);
  return classes;
}

genus::GenusReport genus_section(Run &run, const genus::TowerClasses &classes) {
  const auto g = genus::genus_report(run.params, classes);
  Json j;
  j["genus_K_y1"] = big(g.genus_ky1);
  Json per = Json::object();
  for (const auto &[label, v] : g.class_genera)
    per[label] = big(v);
  j["class_genera"] = per;
  j["class_count_total"] = big(g.class_count_total);
  j["genus_F"] = big(g.genus_f);
  j["gs_subtraction"] = big(g.gs_subtraction);
  j["alt_subtraction"] = genus::to_string(g.alt_subtraction);
  j["genus_F_alt_subtraction"] = genus::to_string(g.genus_f_alt_subtraction);
  j["ree_genus"] = big(g.ree_genus);
  j["discrepancies"] = g.discrepancies;
  run.report["genus"] = j;
  const Int q = run.params.q();
  run.check("class_count_identity",
            g.class_count_total == (q * q * q * q - 1) / (run.params.p() - 1));
  return g;
}

void big_action_section(Run &run, const genus::GenusReport &g) {
  const auto b = genus::verify_big_action(run.params, g);
  Json j;
  j["group_order"] = big(b.group_order);
  j["genus"] = big(b.genus);
  j["bound"] = genus::to_string(b.bound);
  j["big_action"] = b.big_action;
  j["ratio"] = genus::to_string(b.ratio);
  j["genus_alt_reading"] = genus::to_string(b.genus_alt_reading);
  j["big_action_alt_reading"] = b.big_action_alt_reading;
  j["readings_agree"] = b.readings_agree;
  run.report["big_action"] = j;
  run.check("big_action_readings_agree", b.readings_agree);
}

std::size_t audit_section(Run &run, const genus::TowerClasses &classes, const genus::GenusReport &g) {
  std::size_t mismatches = 0;
  Json rows = Json::array();
  for (const auto &r : genus::formula_audit(run.params, classes, g)) {
    Json row;
    row["item"] = r.item;
    row["closed_form"] = genus::to_string(r.closed_form);
    row["pipeline"] = genus::to_string(r.pipeline);
    row["status"] = r.match ? "MATCH" : "MISMATCH";
    row["difference"] = genus::to_string(r.difference);
    row["closed_form_integral"] = r.closed_form_integral;
    rows.push_back(row);
    mismatches += r.match ? 0 : 1;
  }
  run.report["audit"] = rows;
  return mismatches;
}

void commutator_section(Run &run) {
  const auto &f = *run.field;
  auto mixed = Presentation::make(run.params, run.field, PresentationKind::mixed);
  const auto basis = f.basis();
  const auto n = basis.size();

  std::vector<Endo> sig;
  std::vector<Endo> tau;
  Json endos = Json::array();
  bool certified = true;
  for (std::size_t i = 0; i < n; ++i) {
    sig.push_back(tower::sigma(mixed, basis[i]));
    tau.push_back(tower::tau(mixed, basis[i]));
    const bool cs = tower::check_endo(sig.back()).certified;
    const bool ct = tower::check_endo(tau.back()).certified;
    endos.push_back({{"i", i + 1}, {"sigma_certified", cs}, {"tau_certified", ct}});
    certified = certified && cs && ct;
  }
  run.check("sigma_tau_certified", certified);

  const Fq minus_two = f.from_int(-2);
  Json st = Json::array();
  bool exact = true;
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = tower::commutator(sig[i], tau[j]);
      const auto shift = c.shift(5);
      const Fq expected = f.mul(minus_two, f.mul(basis[i], basis[j]));
      bool lower_fixed = c.image(0) == TowerPoly::x(run.field);
      for (int v = 1; v < 5; ++v)
        lower_fixed = lower_fixed && c.shift(v).is_zero();
      const bool ok = lower_fixed && shift == TowerPoly::constant(run.field, expected) && !c.is_identity();
      exact = exact && ok;
      row.push_back({{"w_shift", mixed->to_string(shift)},
                     {"w_shift_coords", coords(f, shift.coeff(tower::Monomial{}))},
                     {"identity", c.is_identity()},
                     {"equals_minus_2_gamma_i_gamma_j", ok}});
    }
    st.push_back(row);
  }
  run.check("commutator_sigma_tau", exact);

  bool ss = true;
  bool self = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      ss = ss && tower::commutator(sig[i], sig[j]).is_identity();
    self = self && tower::commutator(tau[i], tau[i]).is_identity() && tower::commutator(sig[i], sig[i]).is_identity();
  }
  run.check("commutator_sigma_sigma_identity", ss);
  run.check("commutator_self_identity", self);

  Json j;
  j["convention"] = "(a o b)(e) = a(b(e)), [a,b] = a o b o a^-1 o b^-1";
  j["endos"] = endos;
  j["sigma_tau"] = st;
  j["sigma_sigma_identity"] = ss;
  j["self_identity"] = self;
  run.report["commutators"] = j;
}

Json prolongation_json(const ff::Field &f, const Presentation &pres, const tower::Prolongation &pr) {
  Json shifts = Json::array();
  for (const auto &u : pr.shifts)
    shifts.push_back(pres.to_string(u));
  Json kd = Json::array();
  for (auto k : pr.kernel_dims)
    kd.push_back(k);
  return {{"a", f.to_string(pr.a)},
          {"a_coords", coords(f, pr.a)},
          {"x_image", pres.to_string(pr.endo.image(0))},
          {"shifts", shifts},
          {"kernel_dims", kd},
          {"multiplicity", big(pr.multiplicity)}};
}

bool restricts_to_translation(const ff::FieldPtr &field, const tower::Prolongation &pr) {
  return pr.endo.image(0) == TowerPoly::x(field) + TowerPoly::constant(field, pr.a);
}

void prolong_section(Run &run) {
  const auto &f = *run.field;
  auto mixed = Presentation::make(run.params, run.field, PresentationKind::mixed);
  const auto basis = f.basis();

  // Every a when q is small; otherwise 0, the basis and gamma_1 + gamma_j.
  std::vector<Fq> sample;
  if (f.order() <= 27) {
    for (std::uint32_t v = 0; v < f.order(); ++v)
      sample.push_back({v});
  } else {
    sample.push_back(f.zero());
    sample.insert(sample.end(), basis.begin(), basis.end());
    for (std::size_t j = 1; j < basis.size(); ++j)
      sample.push_back(f.add(basis[0], basis[j]));
  }
  const Fq b = basis[1];
  std::set<Fq> all(sample.begin(), sample.end());
  for (auto a : sample)
    all.insert(f.add(a, b));
  const std::vector<Fq> values(all.begin(), all.end());
  const auto prs = run.timings.time("prolongations", [&] { return tower::prolong_many(mixed, values); });
  auto find = [&](Fq a) -> const tower::Prolongation & {
    return prs[static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), a) - values.begin())];
  };

  const Int expected_mult = boost::multiprecision::pow(Int(run.params.q()), tower::kGens);
  Json samples = Json::array();
  bool restrict_ok = true;
  bool mult_ok = true;
  bool cocycle_ok = true;
  Json cocycles = Json::array();
  for (auto a : sample) {
    const auto &pa = find(a);
    samples.push_back(prolongation_json(f, *mixed, pa));
    restrict_ok = restrict_ok && restricts_to_translation(run.field, pa);
    mult_ok = mult_ok && pa.multiplicity == expected_mult;
    const auto cc = tower::cocycle_check(pa, find(b), find(f.add(a, b)));
    cocycle_ok = cocycle_ok && cc.certified && cc.fixes_k;
    cocycles.push_back({{"a", f.to_string(a)}, {"b", f.to_string(b)}, {"certified", cc.certified},
                        {"fixes_K", cc.fixes_k}});
  }
  run.check("prolongation_restricts_to_translation", restrict_ok);
  run.check("prolongation_multiplicity", mult_ok);
  run.check("prolongation_cocycle", cocycle_ok);
  run.report["prolongations"] = {{"samples", samples}, {"cocycle_checks", cocycles}};
}

void equivalence_section(Run &run) {
  auto unprimed = Presentation::make(run.params, run.field, PresentationKind::unprimed);
  const auto links = tower::presentation_equiv(run.params, run.field);
  Json j = Json::array();
  bool ok = true;
  for (const auto &l : links) {
    j.push_back({{"primed", l.primed}, {"unprimed", l.unprimed}, {"witness", unprimed->to_string(l.witness)},
                 {"verified", l.verified}});
    ok = ok && l.verified;
  }
  run.report["presentation_equivalence"] = j;
  run.check("presentation_equivalence", ok);
}

template <class Body> Outcome guarded(const RunConfig &cfg, Body &&body) {
  if (cfg.threads)
    omp_set_num_threads(*cfg.threads);
  Run run(cfg);
  try {
    return body(run);
  } catch (const IntegrityError &e) {
    return run.fail(e.what());
  } catch (const UnsupportedError &e) {
    return run.fail(e.what());
  }
}

} // namespace

ff::Params validate(const RunConfig &cfg) {
  if (cfg.p < 3 || !ff::is_prime(cfg.p))
    throw UsageError("--p must be an odd prime, got " + std::to_string(cfg.p));
  if (cfg.s < 1)
    throw UsageError("--s must be at least 1, got " + std::to_string(cfg.s));
  if (cfg.threads && *cfg.threads < 1)
    throw UsageError("--threads must be positive");
  try {
    return ff::Params(cfg.p, cfg.s);
  } catch (const ParameterError &e) {
    throw UsageError(e.what());
  }
}

Outcome run_verify(const RunConfig &cfg) {
  return guarded(cfg, [](Run &run) {
    run.report["uniformizer"] = uniformizer_section(run);
    const auto classes = classes_section(run);
    const auto g = genus_section(run, classes);
    big_action_section(run, g);
    run.timings.time("commutators", [&] { commutator_section(run); });
    prolong_section(run);
    run.timings.time("presentation_equivalence", [&] { equivalence_section(run); });
    const auto mismatches = audit_section(run, classes, g);
    return run.finish(mismatches);
  });
}

Outcome run_conductor(const RunConfig &cfg) {
  const auto id = genus::parse_class(cfg.class_label);
  if (!id)
    throw UsageError("unknown class '" + cfg.class_label + "' (expected y2, v1, v2, w, y1 or ree)");
  return guarded(cfg, [&](Run &run) {
    auto &setup = run.get_setup();
    const auto c = genus::class_conductor(setup, *id, run.cfg.samples, run.cfg.seed);
    run.report["classes"] = Json::array({class_json(*run.field, c)});
    run.check("class_conductor_constant", c.constant);
    run.check("wp_reduction_identity", reduction_ok(setup, c));
    return run.finish(0);
  });
}

Outcome run_genus(const RunConfig &cfg) {
  return guarded(cfg, [](Run &run) {
    const auto classes = classes_section(run);
    const auto g = genus_section(run, classes);
    big_action_section(run, g);
    return run.finish(0);
  });
}

Outcome run_commutators(const RunConfig &cfg) {
  return guarded(cfg, [](Run &run) {
    commutator_section(run);
    return run.finish(0);
  });
}

Outcome run_prolong(const RunConfig &cfg) {
  const auto params = validate(cfg);
  if (cfg.a_coords.size() != static_cast<std::size_t>(params.n()))
    throw UsageError("--a needs " + std::to_string(params.n()) + " coordinates");
  for (int c : cfg.a_coords)
    if (c < 0 || c >= params.p())
      throw UsageError("--a coordinates must lie in [0, p)");
  return guarded(cfg, [&](Run &run) {
    auto mixed = Presentation::make(run.params, run.field, PresentationKind::mixed);
    const Fq a = run.field->from_coords(run.cfg.a_coords);
    const auto pr = tower::prolong_translation(mixed, a);
    run.report["prolongations"] = {{"samples", Json::array({prolongation_json(*run.field, *mixed, pr)})}};
    run.check("prolongation_restricts_to_translation", restricts_to_translation(run.field, pr));
    run.check("prolongation_multiplicity",
              pr.multiplicity == boost::multiprecision::pow(Int(run.params.q()), tower::kGens));
    return run.finish(0);
  });
}

Outcome run_audit(const RunConfig &cfg) {
  return guarded(cfg, [](Run &run) {
    const auto classes = classes_section(run);
    const auto g = genus_section(run, classes);
    return run.finish(audit_section(run, classes, g));
  });
}

Outcome run(const RunConfig &cfg) {
  const std::string cmd = cfg.commands.empty() ? "verify" : cfg.commands.front();
  if (cmd == "verify")
    return run_verify(cfg);
  if (cmd == "conductor")
    return run_conductor(cfg);
  if (cmd == "genus")
    return run_genus(cfg);
  if (cmd == "commutators")
    return run_commutators(cfg);
  if (cmd == "prolong")
    return run_prolong(cfg);
  if (cmd == "audit")
    return run_audit(cfg);
  throw UsageError("unknown command '" + cmd + "'");
}

std::string render(const Json &report, Format format) {
  return format == Format::json ? report.dump(2) + "\n" : render_markdown(report);
}

} // namespace bigact::report
