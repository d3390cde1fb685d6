#include "bigact/tower.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <sstream>
#include <unordered_map>

#include "bigact/errors.hpp"

namespace bigact::tower {

namespace {

using TermMap = std::unordered_map<Monomial, Fq, MonomialHash>;

void accumulate(const ff::Field &f, TermMap &m, const Monomial &mono, Fq c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = m.try_emplace(mono, c);
  if (!inserted) {
    it->second = f.add(it->second, c);
    if (it->second.is_zero())
      m.erase(it);
  }
}

TowerPoly from_map(const FieldPtr &field, const TermMap &m) {
  std::vector<TowerTerm> terms;
  terms.reserve(m.size());
  for (const auto &[mono, c] : m)
    terms.push_back({mono, c});
  return TowerPoly(field, std::move(terms));
}

Monomial var_mono(int v, std::uint32_t exp) {
  Monomial m;
  m.e[static_cast<std::size_t>(v)] = exp;
  return m;
}

} // namespace

Monomial Monomial::times(const Monomial &o) const {
  Monomial r;
  for (std::size_t i = 0; i < e.size(); ++i)
    r.e[i] = e[i] + o.e[i];
  return r;
}

std::strong_ordering operator<=>(const Monomial &a, const Monomial &b) {
  for (int i = kGens; i >= 0; --i) {
    const auto k = static_cast<std::size_t>(i);
    if (a.e[k] != b.e[k])
      return a.e[k] <=> b.e[k];
  }
  return std::strong_ordering::equal;
}

std::size_t MonomialHash::operator()(const Monomial &m) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto v : m.e) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

TowerPoly::TowerPoly(FieldPtr field, std::vector<TowerTerm> terms) : field_(std::move(field)) {
  std::sort(terms.begin(), terms.end(), [](const TowerTerm &a, const TowerTerm &b) { return a.mono < b.mono; });
  for (const auto &t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono)
      terms_.back().coeff = field_->add(terms_.back().coeff, t.coeff);
    else
      terms_.push_back(t);
    if (terms_.back().coeff.is_zero())
      terms_.pop_back();
  }
}

TowerPoly TowerPoly::constant(FieldPtr field, Fq c) { return monomial(std::move(field), Monomial{}, c); }

TowerPoly TowerPoly::x(FieldPtr field, std::uint32_t exp) {
  auto one = field->one();
  return monomial(std::move(field), var_mono(0, exp), one);
}

TowerPoly TowerPoly::gen(FieldPtr field, int i, std::uint32_t exp) {
  if (i < 1 || i > kGens)
    throw ParameterError("generator index out of range");
  auto one = field->one();
  return monomial(std::move(field), var_mono(i, exp), one);
}

TowerPoly TowerPoly::monomial(FieldPtr field, const Monomial &m, Fq c) {
  TowerPoly r(std::move(field));
  if (!c.is_zero())
    r.terms_.push_back({m, c});
  return r;
}

Fq TowerPoly::coeff(const Monomial &m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const TowerTerm &t, const Monomial &mm) { return t.mono < mm; });
  if (it != terms_.end() && it->mono == m)
    return it->coeff;
  return Fq{};
}

std::uint32_t TowerPoly::degree(int v) const {
  std::uint32_t d = 0;
  for (const auto &t : terms_)
    d = std::max(d, t.mono.e[static_cast<std::size_t>(v)]);
  return d;
}

bool TowerPoly::below_level(int level) const {
  for (const auto &t : terms_)
    for (int i = level; i <= kGens; ++i)
      if (t.mono.gen(i) != 0)
        return false;
  return true;
}

TowerPoly TowerPoly::operator-() const {
  TowerPoly r(field_);
  r.terms_ = terms_;
  for (auto &t : r.terms_)
    t.coeff = field_->neg(t.coeff);
  return r;
}

TowerPoly TowerPoly::scaled(Fq c) const {
  TowerPoly r(field_);
  if (c.is_zero())
    return r;
  r.terms_ = terms_;
  for (auto &t : r.terms_)
    t.coeff = field_->mul(t.coeff, c);
  return r;
}

TowerPoly operator+(const TowerPoly &a, const TowerPoly &b) {
  if (a.field_ != b.field_)
    throw ParameterError("tower elements over different field contexts");
  std::vector<TowerTerm> all = a.terms_;
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return TowerPoly(a.field_, std::move(all));
}

TowerPoly operator-(const TowerPoly &a, const TowerPoly &b) { return a + (-b); }

TowerPoly operator*(const TowerPoly &a, const TowerPoly &b) {
  if (a.field_ != b.field_)
    throw ParameterError("tower elements over different field contexts");
  const auto &f = *a.field_;
  TermMap acc;
  acc.reserve(a.size() * b.size());
  for (const auto &ta : a.terms_)
    for (const auto &tb : b.terms_)
      accumulate(f, acc, ta.mono.times(tb.mono), f.mul(ta.coeff, tb.coeff));
  return from_map(a.field_, acc);
}

TowerPoly raw_frobenius_q(const TowerPoly &a, std::uint32_t q) {
  std::vector<TowerTerm> out;
  out.reserve(a.size());
  for (const auto &t : a.terms()) {
    Monomial m = t.mono;
    for (auto &v : m.e)
      v *= q;
    out.push_back({m, t.coeff});
  }
  return TowerPoly(a.field(), std::move(out));
}

CoverPolys cover_polys(const Params &params, const FieldPtr &field) {
  const auto q = static_cast<std::uint32_t>(params.q());
  const auto q0 = static_cast<std::uint32_t>(params.q0());
  auto X = [&](std::uint32_t e) { return TowerPoly::x(field, e); };
  const TowerPoly y1 = TowerPoly::gen(field, 1);
  const TowerPoly two = TowerPoly::constant(field, field->from_int(2));
  CoverPolys c{X(q0 + q) - X(q0 + 1), X(2 * q0 + q) - X(2 * q0 + 1), X(q0 + 2 * q) - X(q0 + 2),
               X(2 * q0 + 2 * q) - X(2 * q0 + 2), TowerPoly(field)};
  c.w_primed = two * y1 * c.f2 + c.f1 * c.f2;
  return c;
}

Presentation::Presentation(const Params &params, FieldPtr field, PresentationKind kind)
    : params_(params), field_(std::move(field)), kind_(kind) {
  if (field_->p() != params_.p() || field_->degree() != params_.n())
    throw ParameterError("field does not match the tower parameters");
  const auto cp = cover_polys(params_, field_);
  const auto qq = q();
  auto G = [&](int i, std::uint32_t e = 1) { return TowerPoly::gen(field_, i, e); };
  auto X = [&](std::uint32_t e) { return TowerPoly::x(field_, e); };

  switch (kind_) {
  case PresentationKind::unprimed:
    names_ = {"x", "y1", "y2", "v1", "v2", "w"};
    raw_ = {cp.f1, cp.f2, G(1, qq) * X(1) - X(qq) * G(1), G(2, qq) * X(1) - X(qq) * G(2),
            G(2, qq) * G(1) - G(1, qq) * G(2)};
    break;
  case PresentationKind::primed:
    names_ = {"x", "y1", "y2", "v1'", "v2'", "w'"};
    raw_ = {cp.f1, cp.f2, cp.g1, cp.g2, cp.w_primed};
    break;
  case PresentationKind::mixed:
    names_ = {"x", "y1", "y2", "v1'", "v2'", "w"};
    raw_ = {cp.f1, cp.f2, cp.g1, cp.g2, G(2, qq) * G(1) - G(1, qq) * G(2)};
    break;
  }
  for (int i = 1; i <= kGens; ++i) {
    if (!raw_[static_cast<std::size_t>(i - 1)].below_level(i))
      throw IntegrityError("relation " + std::to_string(i) + " is not triangular");
    // Relations 1..i-1 are in place, which is all that R_i can involve.
    rel_.push_back(normalize(raw_[static_cast<std::size_t>(i - 1)]));
  }
}

PresentationPtr Presentation::make(const Params &params, FieldPtr field, PresentationKind kind) {
  return PresentationPtr(new Presentation(params, std::move(field), kind));
}

TowerPoly Presentation::normalize(const TowerPoly &a, RewriteOrder order) const {
  const auto &f = *field_;
  const auto qq = q();
  TermMap done;
  TermMap cur;
  for (const auto &t : a.terms())
    accumulate(f, cur, t.mono, t.coeff);

  while (!cur.empty()) {
    TermMap next;
    for (const auto &[m, c] : cur) {
      int pick = 0;
      if (order == RewriteOrder::highest_first) {
        for (int i = kGens; i >= 1 && !pick; --i)
          if (m.gen(i) >= qq)
            pick = i;
      } else {
        for (int i = 1; i <= kGens && !pick; ++i)
          if (m.gen(i) >= qq)
            pick = i;
      }
      if (!pick) {
        accumulate(f, done, m, c);
        continue;
      }
      if (pick > static_cast<int>(rel_.size()))
        throw IntegrityError("relation requested before it was built");
      // g^q -> g + R
      Monomial base = m;
      base.e[static_cast<std::size_t>(pick)] -= qq - 1;
      accumulate(f, next, base, c);
      base.e[static_cast<std::size_t>(pick)] -= 1;
      for (const auto &r : rel_[static_cast<std::size_t>(pick - 1)].terms())
        accumulate(f, next, base.times(r.mono), f.mul(c, r.coeff));
    }
    cur = std::move(next);
  }
  return from_map(field_, done);
}

TowerPoly Presentation::pow(const TowerPoly &a, std::uint32_t e) const {
  TowerPoly r = TowerPoly::constant(field_, field_->one());
  TowerPoly b = normalize(a);
  for (; e; e >>= 1) {
    if (e & 1)
      r = mul(r, b);
    if (e > 1)
      b = mul(b, b);
  }
  return r;
}

TowerPoly Presentation::wp(const TowerPoly &u) const {
  const TowerPoly nu = normalize(u);
  return normalize(raw_frobenius_q(nu, q())) - nu;
}

std::string Presentation::to_string(const TowerPoly &a) const {
  if (a.is_zero())
    return "0";
  std::ostringstream os;
  bool first = true;
  const auto &f = *field_;
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    std::vector<std::string> factors;
    for (int v = kGens; v >= 0; --v) {
      const auto e = it->mono.e[static_cast<std::size_t>(v)];
      if (e == 0)
        continue;
      factors.push_back(names_[static_cast<std::size_t>(v)] + (e > 1 ? "^" + std::to_string(e) : ""));
    }
    std::string coeff = f.to_string(it->coeff);
    std::string sign = " + ";
    if (f.in_prime_field(it->coeff) && static_cast<int>(it->coeff.v) == f.p() - 1 && f.p() > 2) {
      sign = " - ";
      coeff = "1";
    }
    if (first)
      os << (sign == " - " ? "-" : "");
    else
      os << sign;
    first = false;
    std::string body;
    for (std::size_t k = 0; k < factors.size(); ++k)
      body += (k ? "*" : "") + factors[k];
    if (factors.empty())
      os << coeff;
    else if (coeff == "1")
      os << body;
    else
      os << coeff << "*" << body;
  }
  return os.str();
}

// --- endomorphisms -------------------------------------------------------

Endo::Endo(PresentationPtr pres, TowerPoly x_image, std::array<TowerPoly, kGens> images)
    : pres_(std::move(pres)), x_image_(std::move(x_image)), images_(std::move(images)) {}

Endo Endo::identity(PresentationPtr pres) {
  const auto &field = pres->field();
  std::array<TowerPoly, kGens> imgs{TowerPoly(field), TowerPoly(field), TowerPoly(field), TowerPoly(field),
                                    TowerPoly(field)};
  for (int i = 1; i <= kGens; ++i)
    imgs[static_cast<std::size_t>(i - 1)] = TowerPoly::gen(field, i);
  return Endo(std::move(pres), TowerPoly::x(field), std::move(imgs));
}

const TowerPoly &Endo::image(int v) const {
  return v == 0 ? x_image_ : images_[static_cast<std::size_t>(v - 1)];
}

TowerPoly Endo::shift(int i) const { return image(i) - TowerPoly::gen(pres_->field(), i); }

TowerPoly Endo::apply(const TowerPoly &a) const {
  const auto &field = pres_->field();
  const auto &f = *field;
  std::array<bool, kGens + 1> trivial{};
  trivial[0] = x_image_ == TowerPoly::x(field);
  for (int i = 1; i <= kGens; ++i)
    trivial[static_cast<std::size_t>(i)] = image(i) == TowerPoly::gen(field, i);

  std::array<std::vector<TowerPoly>, kGens + 1> powers;
  auto power = [&](int v, std::uint32_t e) -> const TowerPoly & {
    auto &cache = powers[static_cast<std::size_t>(v)];
    if (cache.empty())
      cache.push_back(TowerPoly::constant(field, f.one()));
    while (cache.size() <= e)
      cache.push_back(pres_->mul(cache.back(), image(v)));
    return cache[e];
  };

  TermMap acc;
  for (const auto &t : a.terms()) {
    Monomial kept;
    for (int v = 0; v <= kGens; ++v)
      if (trivial[static_cast<std::size_t>(v)])
        kept.e[static_cast<std::size_t>(v)] = t.mono.e[static_cast<std::size_t>(v)];
    TowerPoly cur = TowerPoly::monomial(field, kept, t.coeff);
    for (int v = 0; v <= kGens; ++v) {
      const auto e = t.mono.e[static_cast<std::size_t>(v)];
      if (!trivial[static_cast<std::size_t>(v)] && e > 0)
        cur = cur * power(v, e);
    }
    cur = pres_->normalize(cur);
    for (const auto &ct : cur.terms())
      accumulate(f, acc, ct.mono, ct.coeff);
  }
  return from_map(field, acc);
}

bool Endo::is_identity() const { return *this == identity(pres_); }

bool operator==(const Endo &a, const Endo &b) {
  return a.pres_ == b.pres_ && a.x_image_ == b.x_image_ && a.images_ == b.images_;
}

EndoCheck check_endo(const Endo &e) {
  const auto &pres = *e.presentation();
  for (int i = 1; i <= kGens; ++i) {
    const TowerPoly lhs = pres.wp(e.image(i));
    const TowerPoly rhs = e.apply(pres.relation(i));
    TowerPoly defect = lhs - rhs;
    if (!defect.is_zero())
      return EndoCheck{false, i, std::move(defect)};
  }
  return EndoCheck{true, 0, std::nullopt};
}

Endo compose(const Endo &a, const Endo &b) {
  if (a.presentation() != b.presentation())
    throw ParameterError("composing endomorphisms of different presentations");
  std::array<TowerPoly, kGens> imgs{b.image(1), b.image(2), b.image(3), b.image(4), b.image(5)};
  for (int i = 1; i <= kGens; ++i)
    imgs[static_cast<std::size_t>(i - 1)] = a.apply(b.image(i));
  return Endo(a.presentation(), a.apply(b.image(0)), std::move(imgs));
}

Endo invert(const Endo &a) {
  const auto &pres = a.presentation();
  const auto &field = pres->field();
  const TowerPoly xs = a.image(0) - TowerPoly::x(field);
  if (xs.size() > 1 || (xs.size() == 1 && !(xs.terms()[0].mono == Monomial{})))
    throw UnsupportedError("inversion needs image(x) = x + constant");
  for (int i = 1; i <= kGens; ++i)
    if (!a.shift(i).below_level(i))
      throw UnsupportedError("inversion needs a unipotent-triangular endomorphism (level " + std::to_string(i) +
                             ")");

  Endo inv = Endo::identity(pres);
  std::array<TowerPoly, kGens> imgs{inv.image(1), inv.image(2), inv.image(3), inv.image(4), inv.image(5)};
  TowerPoly x_img = TowerPoly::x(field) - xs;
  for (int i = 1; i <= kGens; ++i) {
    // a(g_i) = g_i + u_i  =>  a^-1(g_i) = g_i - a^-1(u_i), and u_i only needs lower levels.
    Endo partial(pres, x_img, imgs);
    imgs[static_cast<std::size_t>(i - 1)] = TowerPoly::gen(field, i) - partial.apply(a.shift(i));
  }
  return Endo(pres, std::move(x_img), std::move(imgs));
}

Endo commutator(const Endo &a, const Endo &b) {
  return compose(compose(compose(a, b), invert(a)), invert(b));
}

namespace {

void require_mixed(const PresentationPtr &p) {
  if (p->kind() != PresentationKind::mixed)
    throw UnsupportedError("sigma/tau are defined on the mixed presentation (y1, y2, v1', v2', w)");
}

} // namespace

Endo sigma(const PresentationPtr &mixed, Fq gamma) {
  require_mixed(mixed);
  const auto &field = mixed->field();
  const TowerPoly c = TowerPoly::constant(field, gamma);
  Endo id = Endo::identity(mixed);
  std::array<TowerPoly, kGens> imgs{TowerPoly::gen(field, 1) + c, TowerPoly::gen(field, 2),
                                    TowerPoly::gen(field, 3) + c, TowerPoly::gen(field, 4),
                                    TowerPoly::gen(field, 5) + c * TowerPoly::gen(field, 2)};
  return Endo(mixed, id.image(0), std::move(imgs));
}

Endo tau(const PresentationPtr &mixed, Fq gamma) {
  require_mixed(mixed);
  const auto &field = mixed->field();
  const TowerPoly c = TowerPoly::constant(field, gamma);
  Endo id = Endo::identity(mixed);
  std::array<TowerPoly, kGens> imgs{TowerPoly::gen(field, 1), TowerPoly::gen(field, 2) + c,
                                    TowerPoly::gen(field, 3) + c, TowerPoly::gen(field, 4),
                                    TowerPoly::gen(field, 5) - c * TowerPoly::gen(field, 1)};
  return Endo(mixed, id.image(0), std::move(imgs));
}

// --- wp_solve ------------------------------------------------------------

DegreeBound default_bound(const Presentation &pres, const TowerPoly &target) {
  const auto q = pres.q();
  DegreeBound b;
  b.x_max = (target.degree(0) + q - 1) / q + 1;
  for (int i = 1; i <= kGens; ++i)
    b.gen_max[static_cast<std::size_t>(i - 1)] = std::min(q - 1, target.degree(i) + 1);
  return b;
}

namespace {

using SparseVec = std::vector<std::pair<std::uint32_t, Fq>>; // sorted by index

SparseVec axpy(const ff::Field &f, const SparseVec &y, Fq a, const SparseVec &x) {
  // y + a*x
  SparseVec out;
  out.reserve(y.size() + x.size());
  auto i = y.begin();
  auto j = x.begin();
  while (i != y.end() || j != x.end()) {
    if (j == x.end() || (i != y.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == y.end() || j->first < i->first) {
      out.emplace_back(j->first, f.mul(a, j->second));
      ++j;
    } else {
      const Fq c = f.add(i->second, f.mul(a, j->second));
      if (!c.is_zero())
        out.emplace_back(i->first, c);
      ++i;
      ++j;
    }
  }
  return out;
}

struct Echelon {
  struct Row {
    SparseVec vec;   // leading entry at the pivot
    SparseVec combo; // over original columns
  };
  std::map<std::uint32_t, Row> pivots;

  // Reduces (vec, combo) in place; returns true when vec became zero.
  bool reduce(const ff::Field &f, SparseVec &vec, SparseVec &combo) const {
    while (!vec.empty()) {
      auto it = pivots.find(vec.front().first);
      if (it == pivots.end())
        return false;
      const Row &r = it->second;
      const Fq factor = f.neg(f.mul(vec.front().second, f.inv(r.vec.front().second)));
      vec = axpy(f, vec, factor, r.vec);
      combo = axpy(f, combo, factor, r.combo);
    }
    return true;
  }
};

} // namespace

WpSolveResult wp_solve(const Presentation &pres, const TowerPoly &target_in, std::optional<DegreeBound> bound_in) {
  const auto &field = pres.field();
  const auto &f = *field;
  const TowerPoly target = pres.normalize(target_in);
  const DegreeBound bound = bound_in ? *bound_in : default_bound(pres, target);

  // Candidate monomials in the monomial order; the constant comes first.
  std::vector<Monomial> cands;
  {
    Monomial m;
    for (;;) {
      cands.push_back(m);
      int v = 0;
      for (; v <= kGens; ++v) {
        const auto k = static_cast<std::size_t>(v);
        const auto lim = v == 0 ? bound.x_max : bound.gen_max[k - 1];
        if (m.e[k] < lim) {
          ++m.e[k];
          break;
        }
        m.e[k] = 0;
      }
      if (v > kGens)
        break;
    }
    std::sort(cands.begin(), cands.end());
  }

  std::unordered_map<Monomial, std::uint32_t, MonomialHash> row_of;
  auto to_vec = [&](const TowerPoly &p) {
    SparseVec v;
    v.reserve(p.size());
    for (const auto &t : p.terms()) {
      auto [it, ins] = row_of.try_emplace(t.mono, static_cast<std::uint32_t>(row_of.size()));
      v.emplace_back(it->second, t.coeff);
    }
    std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return v;
  };

  Echelon ech;
  for (std::uint32_t c = 0; c < cands.size(); ++c) {
    SparseVec vec = to_vec(pres.wp(TowerPoly::monomial(field, cands[c], f.one())));
    SparseVec combo{{c, f.one()}};
    if (!ech.reduce(f, vec, combo)) {
      const auto pivot = vec.front().first;
      ech.pivots.emplace(pivot, Echelon::Row{std::move(vec), std::move(combo)});
    }
  }

  WpSolveResult res;
  res.bound = bound;
  res.unknowns = cands.size();
  res.rank = ech.pivots.size();
  res.kernel_dim = res.unknowns - res.rank;

  SparseVec vec = to_vec(target);
  SparseVec combo;
  if (ech.reduce(f, vec, combo)) {
    // vec(target) + sum combo_j * col_j = 0  =>  u = -sum combo_j * m_j
    std::vector<TowerTerm> terms;
    for (const auto &[j, c] : combo)
      terms.push_back({cands[j], f.neg(c)});
    TowerPoly u(field, std::move(terms));
    if (!(pres.wp(u) == target))
      throw IntegrityError("wp_solve produced a witness that does not verify");
    res.witness = std::move(u);
  }
  return res;
}

// --- prolongations -------------------------------------------------------

Prolongation prolong_translation(const PresentationPtr &pres, Fq a) {
  const auto &field = pres->field();
  const TowerPoly x_img = TowerPoly::x(field) + TowerPoly::constant(field, a);
  Endo id = Endo::identity(pres);
  std::array<TowerPoly, kGens> imgs{id.image(1), id.image(2), id.image(3), id.image(4), id.image(5)};
  std::array<TowerPoly, kGens> shifts{TowerPoly(field), TowerPoly(field), TowerPoly(field), TowerPoly(field),
                                      TowerPoly(field)};
  std::array<std::size_t, kGens> kdims{};

  for (int i = 1; i <= kGens; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    Endo partial(pres, x_img, imgs);
    const TowerPoly target = partial.apply(pres->relation(i)) - pres->relation(i);
    DegreeBound b = default_bound(*pres, target);
    for (int j = i; j <= kGens; ++j)
      b.gen_max[static_cast<std::size_t>(j - 1)] = 0;
    WpSolveResult r = wp_solve(*pres, target, b);
    if (!r.witness) {
      // One widening step before giving up.
      b.x_max += 1;
      for (int j = 1; j < i; ++j)
        b.gen_max[static_cast<std::size_t>(j - 1)] =
            std::min(pres->q() - 1, b.gen_max[static_cast<std::size_t>(j - 1)] + 1);
      r = wp_solve(*pres, target, b);
    }
    if (!r.witness)
      throw IntegrityError("prolongation of x -> x + " + field->to_string(a) + " failed at level " +
                           std::to_string(i) + " (" + pres->name(i) + ")");
    shifts[k] = *r.witness;
    kdims[k] = r.kernel_dim;
    imgs[k] = TowerPoly::gen(field, i) + *r.witness;
  }

  Endo endo(pres, x_img, imgs);
  const auto chk = check_endo(endo);
  if (!chk.certified)
    throw IntegrityError("prolongation failed certification at level " + std::to_string(chk.violated_level));

  std::size_t total = 0;
  for (auto d : kdims)
    total += d;
  boost::multiprecision::cpp_int mult = 1;
  for (std::size_t i = 0; i < total; ++i)
    mult *= pres->q();
  return Prolongation{a, std::move(endo), std::move(shifts), kdims, mult};
}

std::vector<Prolongation> prolong_many(const PresentationPtr &pres, std::span<const Fq> values, Exec exec) {
  const auto n = static_cast<std::int64_t>(values.size());
  std::vector<std::optional<Prolongation>> slots(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  auto work = [&](std::int64_t i) {
    try {
      slots[static_cast<std::size_t>(i)] = prolong_translation(pres, values[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i)
      work(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      work(i);
  }
  std::vector<Prolongation> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (errors[i])
      std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

CocycleCheck cocycle_check(const Prolongation &pa, const Prolongation &pb, const Prolongation &pab) {
  Endo defect = compose(invert(pab.endo), compose(pa.endo, pb.endo));
  const bool fixes = defect.image(0) == TowerPoly::x(defect.presentation()->field());
  const bool cert = check_endo(defect).certified;
  return CocycleCheck{std::move(defect), fixes, cert};
}

std::vector<PresentationLink> presentation_equiv(const Params &params, const FieldPtr &field) {
  const auto unprimed = Presentation::make(params, field, PresentationKind::unprimed);
  const auto primed = Presentation::make(params, field, PresentationKind::primed);
  std::vector<PresentationLink> out;
  for (int i = 1; i <= kGens; ++i) {
    // Both right-hand sides live in F_q[x, y1, y2], where the two presentations agree.
    const TowerPoly diff = unprimed->normalize(primed->relation(i)) - unprimed->relation(i);
    if (!diff.below_level(3))
      throw IntegrityError("right-hand side difference leaves F_q[x, y1, y2]");
    DegreeBound b = default_bound(*unprimed, diff);
    for (int j = 3; j <= kGens; ++j)
      b.gen_max[static_cast<std::size_t>(j - 1)] = 0;
    const WpSolveResult r = wp_solve(*unprimed, diff, b);
    PresentationLink link{primed->name(i), unprimed->name(i), TowerPoly(field), false};
    if (r.witness) {
      link.witness = *r.witness;
      link.verified = unprimed->wp(link.witness) == diff;
    }
    out.push_back(std::move(link));
  }
  return out;
}

} // namespace bigact::tower
