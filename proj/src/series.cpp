#include "sparse/series.hpp"

#include <algorithm>
#include <set>

namespace sparse {

namespace {

constexpr std::int64_t kInfValuation = std::numeric_limits<std::int64_t>::max() / 4;
constexpr std::uint64_t kMaxPrecision = std::uint64_t(1) << 62;

std::int64_t saturate(std::int64_t d) { return std::clamp(d, -kExactDepth, kExactDepth); }

void require_same_field(const GaloisField* a, const GaloisField* b) {
    if (a != b) throw PreconditionError("series over different fields");
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kMaxPrecision / a) return kMaxPrecision;
    return std::min(a * b, kMaxPrecision);
}

std::uint64_t to_u64(const BigInt& x) {
    if (x < 0) return 0;
    if (x > BigInt(kMaxPrecision)) return kMaxPrecision;
    return x.convert_to<std::uint64_t>();
}

FieldElement nat_multiple(const GaloisField& f, std::uint64_t j) { return f.from_int(std::int64_t(j % f.characteristic())); }

}  // namespace

// ---------------------------------------------------------------------------
// TruncatedSeries

TruncatedSeries TruncatedSeries::zero(const GaloisField& f, std::uint64_t precision) {
    TruncatedSeries s;
    s.field = &f;
    s.precision = precision;
    return s;
}

TruncatedSeries TruncatedSeries::monomial(const FieldElement& c, std::uint64_t e, std::uint64_t precision) {
    TruncatedSeries s = zero(c.field(), precision);
    if (e < precision && !c.is_zero()) s.coeffs.emplace(e, c);
    return s;
}

TruncatedSeries TruncatedSeries::from_dense(const std::vector<FieldElement>& dense) {
    if (dense.empty()) throw PreconditionError("from_dense: no coefficients");
    TruncatedSeries s = zero(dense.front().field(), dense.size());
    for (std::size_t n = 0; n < dense.size(); ++n) s.set(n, dense[n]);
    return s;
}

FieldElement TruncatedSeries::coeff(std::uint64_t n) const {
    if (n >= precision) throw PreconditionError("coefficient beyond the precision");
    auto it = coeffs.find(n);
    return it == coeffs.end() ? field->zero() : it->second;
}

std::uint64_t TruncatedSeries::order() const { return coeffs.empty() ? precision : coeffs.begin()->first; }

void TruncatedSeries::set(std::uint64_t n, const FieldElement& c) {
    if (n >= precision) throw PreconditionError("coefficient beyond the precision");
    if (c.field() != *field) throw PreconditionError("coefficient from another field");
    if (c.is_zero()) {
        coeffs.erase(n);
    } else {
        coeffs.insert_or_assign(n, c);
    }
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
    return field == o.field && precision == o.precision && coeffs == o.coeffs;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_field(a.field, b.field);
    TruncatedSeries s = TruncatedSeries::zero(*a.field, std::min(a.precision, b.precision));
    for (const auto& [e, c] : a.coeffs) {
        if (e < s.precision) s.coeffs.emplace(e, c);
    }
    for (const auto& [e, c] : b.coeffs) {
        if (e < s.precision) s.set(e, s.coeff(e) + c);
    }
    return s;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + scale(b, -b.field->one()); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_field(a.field, b.field);
    const std::uint64_t n = std::min(a.precision, b.precision);
    TruncatedSeries s = TruncatedSeries::zero(*a.field, n);
    if (n <= (std::uint64_t(1) << 16)) {
        std::vector<FieldElement> acc(n, a.field->zero());
        std::vector<bool> touched(n, false);
        for (const auto& [ea, ca] : a.coeffs) {
            if (ea >= n) break;
            for (const auto& [eb, cb] : b.coeffs) {
                if (ea + eb >= n) break;
                acc[ea + eb] += ca * cb;
                touched[ea + eb] = true;
            }
        }
        for (std::uint64_t e = 0; e < n; ++e) {
            if (touched[e] && !acc[e].is_zero()) s.coeffs.emplace_hint(s.coeffs.end(), e, acc[e]);
        }
    } else {
        for (const auto& [ea, ca] : a.coeffs) {
            if (ea >= n) break;
            for (const auto& [eb, cb] : b.coeffs) {
                if (ea + eb >= n) break;
                s.set(ea + eb, s.coeff(ea + eb) + ca * cb);
            }
        }
    }
    return s;
}

TruncatedSeries scale(const TruncatedSeries& a, const FieldElement& c) {
    TruncatedSeries s = TruncatedSeries::zero(*a.field, a.precision);
    if (c.is_zero()) return s;
    for (const auto& [e, x] : a.coeffs) s.coeffs.emplace_hint(s.coeffs.end(), e, x * c);
    return s;
}

TruncatedSeries power(const TruncatedSeries& a, std::uint32_t k) {
    TruncatedSeries r = TruncatedSeries::monomial(a.field->one(), 0, a.precision);
    for (std::uint32_t i = 0; i < k; ++i) r = r * a;
    return r;
}

TruncatedSeries scale_var(const TruncatedSeries& f, const FieldElement& alpha) {
    TruncatedSeries s = TruncatedSeries::zero(*f.field, f.precision);
    for (const auto& [e, c] : f.coeffs) s.set(e, c * alpha.pow(e));
    return s;
}

TruncatedSeries subst_power(const TruncatedSeries& f, const Rational& c, const Rational& d) {
    if (c <= 0) throw PreconditionError("subst_power: c must be positive");
    const Rational reach = c * Rational(BigInt(f.precision)) + d;
    TruncatedSeries s = TruncatedSeries::zero(*f.field, reach <= 0 ? 0 : to_u64(ceil_of(reach)));
    for (const auto& [e, x] : f.coeffs) {
        const Rational image = c * Rational(BigInt(e)) + d;
        if (!is_integer(image) || image < 0) {
            throw PreconditionError("subst_power: exponent " + std::to_string(e) + " maps to " + to_string(image));
        }
        const std::uint64_t target = to_u64(num(image));
        if (target < s.precision) s.coeffs.emplace(target, x);
    }
    return s;
}

TruncatedSeries frobenius_power(const TruncatedSeries& f, std::uint32_t j) {
    const std::uint64_t scale_factor = to_u64(big_pow(f.field->characteristic(), j));
    TruncatedSeries s = TruncatedSeries::zero(*f.field, checked_mul(f.precision, scale_factor));
    for (const auto& [e, c] : f.coeffs) {
        const std::uint64_t target = checked_mul(e, scale_factor);
        if (target < s.precision) s.coeffs.emplace(target, frobenius(c, j));
    }
    return s;
}

namespace {

TruncatedSeries power_sum(const TruncatedSeries& f, std::uint32_t step, bool twist, const char* who) {
    if (f.precision > 0 && !f.coeff(0).is_zero()) throw PreconditionError(std::string(who) + ": nonzero constant term");
    const std::uint64_t ratio = to_u64(big_pow(f.field->characteristic(), step));
    TruncatedSeries s = TruncatedSeries::zero(*f.field, f.precision);
    for (const auto& [e, c] : f.coeffs) {
        std::uint64_t x = e;
        for (std::int64_t k = 0; x < f.precision; ++k) {
            const FieldElement term = twist ? frobenius(c, k * std::int64_t(step)) : c;
            s.set(x, s.coeff(x) + term);
            if (x > kMaxPrecision / ratio) break;
            x *= ratio;
        }
    }
    return s;
}

}  // namespace

TruncatedSeries as_power(const TruncatedSeries& f) { return power_sum(f, 1, true, "as_power"); }

TruncatedSeries as_subst(const TruncatedSeries& f) { return power_sum(f, 1, false, "as_subst"); }

TruncatedSeries gap_sum_direct(const TruncatedSeries& f, std::uint32_t d) {
    if (d == 0) throw PreconditionError("gap_sum: d must be positive");
    return power_sum(f, d, true, "gap_sum");
}

TruncatedSeries gap_sum_moore(const TruncatedSeries& f, std::uint32_t d) {
    if (d == 0) throw PreconditionError("gap_sum: d must be positive");
    const MooreData md = moore_basis(f.field->characteristic(), d);
    const GaloisField& big = common_field(*f.field, md.basis.front().field());
    const TruncatedSeries lifted = embed(f, big);
    TruncatedSeries total = TruncatedSeries::zero(big, f.precision);
    for (std::size_t i = 0; i < md.basis.size(); ++i) {
        const TruncatedSeries h = as_power(scale(lifted, embed(md.basis[i], big)));
        total = total + scale(h, embed(md.coefficients[i], big));
    }
    return total;
}

TruncatedSeries gap_sum(const TruncatedSeries& f, std::uint32_t d) {
    const TruncatedSeries direct = gap_sum_direct(f, d);
    const TruncatedSeries moore = gap_sum_moore(f, d);
    if (!(embed(direct, *moore.field) == moore)) throw VerificationFailure("gap_sum: direct and Moore routes disagree");
    return direct;
}

TruncatedSeries embed(const TruncatedSeries& f, const GaloisField& target) {
    if (f.field == &target) return f;
    TruncatedSeries s = TruncatedSeries::zero(target, f.precision);
    for (const auto& [e, c] : f.coeffs) s.coeffs.emplace_hint(s.coeffs.end(), e, embed(c, target));
    return s;
}

// ---------------------------------------------------------------------------
// algebraic equations

std::uint32_t AlgebraicEquation::degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms) {
        if (!t.coeff.is_zero()) d = std::max(d, t.j);
    }
    return d;
}

FieldElement AlgebraicEquation::constant_of(std::uint32_t j) const {
    FieldElement c = field->zero();
    for (const auto& t : terms) {
        if (t.i == 0 && t.j == j) c += t.coeff;
    }
    return c;
}

void AlgebraicEquation::validate() const {
    if (field == nullptr) throw PreconditionError("equation without a field");
    bool nonzero = false;
    for (const auto& t : terms) {
        if (t.coeff.field() != *field) throw PreconditionError("equation coefficient from another field");
        nonzero = nonzero || !t.coeff.is_zero();
    }
    if (!nonzero) throw PreconditionError("equation has no nonzero coefficient");
}

std::uint64_t verify_algebraic(const TruncatedSeries& f, const AlgebraicEquation& eq) {
    eq.validate();
    const GaloisField& big = common_field(*f.field, *eq.field);
    const TruncatedSeries x = embed(f, big);
    const std::uint64_t n = f.precision;
    std::vector<TruncatedSeries> b(eq.degree() + 1, TruncatedSeries::zero(big, n));
    for (const auto& t : eq.terms) {
        if (t.i < n) b[t.j].set(t.i, b[t.j].coeff(t.i) + embed(t.coeff, big));
    }
    TruncatedSeries residual = TruncatedSeries::zero(big, n);
    TruncatedSeries xj = TruncatedSeries::monomial(big.one(), 0, n);
    for (std::uint32_t j = 0; j <= eq.degree(); ++j) {
        if (j > 0) xj = xj * x;
        residual = residual + b[j] * xj;
    }
    return residual.order();
}

TruncatedSeries equation_to_coeffs(const AlgebraicEquation& eq, const std::vector<FieldElement>& seed, std::uint64_t n) {
    eq.validate();
    const GaloisField& field = *eq.field;
    const std::uint32_t s = eq.degree();
    for (const auto& c : seed) {
        if (c.field() != field) throw PreconditionError("seed coefficient from another field");
    }
    std::vector<FieldElement> f(n, field.zero());
    // pw[j][m] = coefficient of t^m in F^j
    std::vector<std::vector<FieldElement>> pw(s + 1, std::vector<FieldElement>(n, field.zero()));
    if (n > 0) pw[0][0] = field.one();

    auto refresh = [&](std::uint64_t m) {
        for (std::uint32_t j = 1; j <= s; ++j) {
            FieldElement acc = field.zero();
            for (std::uint64_t i = 0; i <= m; ++i) {
                if (!f[i].is_zero()) acc += f[i] * pw[j - 1][m - i];
            }
            pw[j][m] = acc;
        }
    };
    auto residual_at = [&](std::uint64_t m) {
        FieldElement r = field.zero();
        for (const auto& t : eq.terms) {
            if (t.i <= m) r += t.coeff * pw[t.j][m - t.i];
        }
        return r;
    };
    auto describe = [](const std::vector<FieldElement>& xs) {
        std::string out;
        for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x.to_string();
        return out;
    };

    for (std::uint64_t m = 0; m < n; ++m) {
        if (m < seed.size()) {
            f[m] = seed[m];
            refresh(m);
            if (!residual_at(m).is_zero()) {
                throw PreconditionError("seed is inconsistent with the equation at t^" + std::to_string(m));
            }
            continue;
        }
        if (m == 0) {
            if (field.order() > BigInt(1) << 16) throw PreconditionError("a seed for F(0) is required over large fields");
            std::vector<FieldElement> roots;
            for (const auto& v : field.elements()) {
                FieldElement r = field.zero();
                for (const auto& t : eq.terms) {
                    if (t.i == 0) r += t.coeff * v.pow(t.j);
                }
                if (r.is_zero()) roots.push_back(v);
            }
            if (roots.empty()) throw PreconditionError("no constant term solves the equation");
            if (roots.size() > 1) throw PreconditionError("ambiguous branch at t^0: candidates " + describe(roots));
            f[0] = roots.front();
            refresh(0);
            continue;
        }
        // coefficient m of sum B_j F^j is R_m(0) + lambda f(m)
        FieldElement lambda = field.zero();
        for (std::uint32_t j = 1; j <= s; ++j) lambda += eq.constant_of(j) * nat_multiple(field, j) * f[0].pow(j - 1);
        refresh(m);
        const FieldElement r0 = residual_at(m);
        if (lambda.is_zero()) {
            if (r0.is_zero()) throw PreconditionError("ambiguous branch at t^" + std::to_string(m) + ": every coefficient fits");
            throw PreconditionError("no coefficient of t^" + std::to_string(m) + " solves the equation");
        }
        f[m] = -(r0 / lambda);
        refresh(m);
    }
    TruncatedSeries out = TruncatedSeries::zero(field, n);
    for (std::uint64_t m = 0; m < n; ++m) out.set(m, f[m]);
    return out;
}

// ---------------------------------------------------------------------------
// windows and bounds

std::int64_t valuation(const Rational& x, std::uint32_t p) {
    if (x == 0) return kInfValuation;
    std::int64_t v = 0;
    BigInt a = abs(num(x)), b = den(x);
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    while (b % p == 0) {
        b /= p;
        --v;
    }
    return v;
}

bool Window::contains(const Rational& e, std::uint32_t p) const {
    if (hi && e >= *hi) return false;
    return depth >= kExactDepth || valuation(e, p) >= -depth;
}

bool Window::covers(const Window& o) const {
    if (hi && (!o.hi || *o.hi > *hi)) return false;
    return depth >= o.depth;
}

Window join(const Window& a, const Window& b) {
    Window w;
    if (a.hi && b.hi) w.hi = std::max(*a.hi, *b.hi);
    w.depth = std::max(a.depth, b.depth);
    return w;
}

namespace {

Window meet(const Window& a, const Window& b) {
    Window w;
    if (a.hi && b.hi) {
        w.hi = std::min(*a.hi, *b.hi);
    } else if (a.hi) {
        w.hi = a.hi;
    } else {
        w.hi = b.hi;
    }
    w.depth = std::min(a.depth, b.depth);
    return w;
}

void require_covers(const GenSeries& f, const Window& need, const char* who) {
    if (!f.window.covers(need)) {
        throw PreconditionError(std::string(who) + ": input is not known on the window this result needs");
    }
}

}  // namespace

bool SupportBounds::positive() const { return empty || (lo && *lo > 0); }

bool SupportBounds::negative() const { return empty || (up && (*up < 0 || (*up == 0 && up_strict))); }

Window needs_subst_power(const Window& w, const Rational& c, const Rational& d, std::uint32_t p) {
    if (c <= 0) throw PreconditionError("subst_power: c must be positive");
    Window need;
    if (w.hi) need.hi = (*w.hi - d) / c;
    if (w.depth >= kExactDepth) return need;
    const std::int64_t vd = d == 0 ? -kExactDepth : -valuation(d, p);
    need.depth = saturate(std::max(w.depth, vd) + valuation(c, p));
    return need;
}

Window needs_frobenius(const Window& w, std::int64_t j, std::uint32_t p) {
    Window need;
    if (w.hi) need.hi = *w.hi / rat_pow(Rational(p), j);
    need.depth = w.depth >= kExactDepth ? kExactDepth : saturate(w.depth + j);
    return need;
}

Window needs_power_sum_pos(const Window& w, std::uint32_t step, const SupportBounds& input, std::uint32_t p) {
    if (input.empty) return w;
    if (!input.positive()) throw PreconditionError("positive power sum: support is not known to be positive");
    if (!w.hi) throw PreconditionError("positive power sums need a bounded window");
    if (w.depth >= kExactDepth) return w;
    const Rational ratio = rat_pow(Rational(p), step);
    std::int64_t k = 0;
    for (Rational x = *input.lo * ratio; x < *w.hi; x *= ratio) ++k;
    return {w.hi, saturate(w.depth + k * std::int64_t(step))};
}

Window needs_power_sum_neg(const Window& w, std::uint32_t step, std::uint32_t p) {
    if (w.depth >= kExactDepth) throw PreconditionError("negative power sums need a finite depth");
    Window need;
    need.hi = (!w.hi || *w.hi >= 0) ? Rational(0) : *w.hi * rat_pow(Rational(p), step);
    need.depth = saturate(w.depth - std::int64_t(step));
    return need;
}

std::pair<Window, Window> needs_mul(const Window& w, const SupportBounds& a, const SupportBounds& b) {
    if (a.empty || b.empty) return {w, w};
    const bool a_floored = a.valuation_floor != kNoValuationFloor;
    const bool b_floored = b.valuation_floor != kNoValuationFloor;
    if (!a_floored && !b_floored) throw PreconditionError("product of two series with unbounded denominators");
    if (w.hi && (!a.lo || !b.lo)) throw PreconditionError("product of series without a lower support bound");
    // e = e1 + e2 with v(e1) >= floor forces v(e2) >= min(v(e), floor): the floored
    // factor is needed in full, the other one down to that depth
    const bool a_floor = a_floored && (!b_floored || a.valuation_floor >= b.valuation_floor);
    const std::int64_t floor = a_floor ? a.valuation_floor : b.valuation_floor;
    const std::int64_t full = floor >= kInfValuation ? -kExactDepth : saturate(-floor);
    Window wa, wb;
    if (w.hi) {
        wa.hi = *w.hi - *b.lo;
        wb.hi = *w.hi - *a.lo;
    }
    const std::int64_t other = w.depth >= kExactDepth ? kExactDepth : std::max(w.depth, full);
    wa.depth = a_floor ? full : other;
    wb.depth = a_floor ? other : full;
    return {wa, wb};
}

SupportBounds bounds_add(const SupportBounds& a, const SupportBounds& b) {
    if (a.empty) return b;
    if (b.empty) return a;
    SupportBounds r;
    if (a.lo && b.lo) r.lo = std::min(*a.lo, *b.lo);
    if (a.up && b.up) {
        if (*a.up == *b.up) {
            r.up = a.up;
            r.up_strict = a.up_strict && b.up_strict;
        } else {
            const bool a_larger = *a.up > *b.up;
            r.up = a_larger ? a.up : b.up;
            r.up_strict = a_larger ? a.up_strict : b.up_strict;
        }
    }
    r.valuation_floor = std::min(a.valuation_floor, b.valuation_floor);
    return r;
}

SupportBounds bounds_mul(const SupportBounds& a, const SupportBounds& b) {
    SupportBounds r;
    if (a.empty || b.empty) {
        r.empty = true;
        return r;
    }
    if (a.lo && b.lo) r.lo = *a.lo + *b.lo;
    if (a.up && b.up) {
        r.up = *a.up + *b.up;
        r.up_strict = a.up_strict || b.up_strict;
    }
    r.valuation_floor = std::min(a.valuation_floor, b.valuation_floor);
    return r;
}

SupportBounds bounds_subst_power(const SupportBounds& a, const Rational& c, const Rational& d, std::uint32_t p) {
    SupportBounds r = a;
    if (a.empty) return r;
    if (a.lo) r.lo = c * *a.lo + d;
    if (a.up) r.up = c * *a.up + d;
    if (a.valuation_floor != kNoValuationFloor) {
        const std::int64_t scaled = a.valuation_floor >= kInfValuation ? kInfValuation : a.valuation_floor + valuation(c, p);
        r.valuation_floor = std::min(scaled, valuation(d, p));
    }
    return r;
}

SupportBounds bounds_frobenius(const SupportBounds& a, std::int64_t j, std::uint32_t p) {
    SupportBounds r = a;
    if (a.empty) return r;
    const Rational factor = rat_pow(Rational(p), j);
    if (a.lo) r.lo = *a.lo * factor;
    if (a.up) r.up = *a.up * factor;
    if (a.valuation_floor != kNoValuationFloor && a.valuation_floor < kInfValuation) r.valuation_floor += j;
    return r;
}

SupportBounds bounds_power_sum(const SupportBounds& a, bool positive, std::uint32_t step, std::uint32_t p) {
    SupportBounds r = a;
    if (a.empty) return r;
    if (positive) {
        r.up.reset();
        r.up_strict = false;
    } else {
        if (a.lo) r.lo = *a.lo / rat_pow(Rational(p), step);
        r.up = Rational(0);
        r.up_strict = true;
        r.valuation_floor = kNoValuationFloor;
    }
    return r;
}

// ---------------------------------------------------------------------------
// GenSeries

GenSeries GenSeries::exact(const GaloisField& f, std::map<Rational, FieldElement> terms) {
    GenSeries g;
    g.field = &f;
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second.field() != f) throw PreconditionError("coefficient from another field");
        it = it->second.is_zero() ? terms.erase(it) : std::next(it);
    }
    g.terms = std::move(terms);
    g.window = Window::exact();
    if (g.terms.empty()) {
        g.bounds.empty = true;
        g.bounds.valuation_floor = kInfValuation;
    } else {
        g.bounds.lo = g.terms.begin()->first;
        g.bounds.up = g.terms.rbegin()->first;
        g.bounds.valuation_floor = kInfValuation;
        for (const auto& [e, c] : g.terms) g.bounds.valuation_floor = std::min(g.bounds.valuation_floor, valuation(e, f.characteristic()));
    }
    return g;
}

GenSeries GenSeries::monomial(const FieldElement& c, const Rational& e) { return exact(c.field(), {{e, c}}); }

FieldElement GenSeries::coeff(const Rational& e) const {
    if (!window.contains(e, p())) throw PreconditionError("coefficient outside the known window");
    auto it = terms.find(e);
    return it == terms.end() ? field->zero() : it->second;
}

GenSeries GenSeries::restricted(const Window& w) const {
    GenSeries g = *this;
    g.window = meet(window, w);
    for (auto it = g.terms.begin(); it != g.terms.end();) it = g.window.contains(it->first, p()) ? std::next(it) : g.terms.erase(it);
    return g;
}

GenSeries to_gen(const TruncatedSeries& f) {
    GenSeries g;
    g.field = f.field;
    for (const auto& [e, c] : f.coeffs) g.terms.emplace(Rational(BigInt(e)), c);
    g.window = Window::below(Rational(BigInt(f.precision)), kExactDepth);
    g.bounds.lo = g.terms.empty() ? Rational(BigInt(f.precision)) : g.terms.begin()->first;
    g.bounds.valuation_floor = 0;
    return g;
}

TruncatedSeries to_truncated(const GenSeries& g, std::uint64_t n) {
    if (!g.window.covers(Window::below(Rational(BigInt(n)), 0))) throw PreconditionError("series not known up to the requested precision");
    TruncatedSeries s = TruncatedSeries::zero(*g.field, n);
    for (const auto& [e, c] : g.terms) {
        if (e >= Rational(BigInt(n))) continue;
        if (!is_integer(e) || e < 0) throw PreconditionError("exponent " + to_string(e) + " is not a natural number");
        s.set(num(e).convert_to<std::uint64_t>(), c);
    }
    return s;
}

GenSeries embed(const GenSeries& g, const GaloisField& target) {
    if (g.field == &target) return g;
    GenSeries out = g;
    out.field = &target;
    for (auto& [e, c] : out.terms) c = embed(c, target);
    return out;
}

namespace {

void accumulate(std::map<Rational, FieldElement>& terms, const Rational& e, const FieldElement& c) {
    auto [it, inserted] = terms.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    } else if (c.is_zero()) {
        terms.erase(it);
    }
}

GenSeries blank(const GaloisField& f, const Window& w, const SupportBounds& b) {
    GenSeries g;
    g.field = &f;
    g.window = w;
    g.bounds = b;
    return g;
}

GenSeries power_sum(const GenSeries& f, std::uint32_t step, bool twist, bool positive, const Window& w) {
    const std::uint32_t p = f.p();
    GenSeries g = blank(*f.field, w, bounds_power_sum(f.bounds, positive, step, p));
    const Rational ratio = rat_pow(Rational(p), step);
    if (positive) {
        require_covers(f, needs_power_sum_pos(w, step, f.bounds, p), "positive power sum");
        for (const auto& [e, c] : f.terms) {
            if (e <= 0) throw PreconditionError("positive power sum: exponent " + to_string(e) + " is not positive");
            std::int64_t k = 0;
            for (Rational x = e; x < *w.hi; x *= ratio, ++k) {
                if (w.contains(x, p)) accumulate(g.terms, x, twist ? frobenius(c, k * std::int64_t(step)) : c);
            }
        }
    } else {
        if (!f.bounds.negative()) throw PreconditionError("negative power sum: support is not known to be negative");
        require_covers(f, needs_power_sum_neg(w, step, p), "negative power sum");
        for (const auto& [e, c] : f.terms) {
            if (e >= 0) throw PreconditionError("negative power sum: exponent " + to_string(e) + " is not negative");
            Rational x = e;
            for (std::int64_t j = 1;; ++j) {
                x /= ratio;
                if (valuation(x, p) < -w.depth) break;
                if (w.contains(x, p)) accumulate(g.terms, x, twist ? frobenius(c, -j * std::int64_t(step)) : c);
            }
        }
    }
    return g;
}

}  // namespace

GenSeries add(const GenSeries& a, const GenSeries& b, const Window& w) {
    require_same_field(a.field, b.field);
    require_covers(a, w, "add");
    require_covers(b, w, "add");
    GenSeries g = blank(*a.field, w, bounds_add(a.bounds, b.bounds));
    for (const auto* s : {&a, &b}) {
        for (const auto& [e, c] : s->terms) {
            if (w.contains(e, a.p())) accumulate(g.terms, e, c);
        }
    }
    return g;
}

GenSeries sub(const GenSeries& a, const GenSeries& b, const Window& w) { return add(a, scale(b, -b.field->one()), w); }

GenSeries mul(const GenSeries& a, const GenSeries& b, const Window& w) {
    require_same_field(a.field, b.field);
    const auto [wa, wb] = needs_mul(w, a.bounds, b.bounds);
    GenSeries g = blank(*a.field, w, bounds_mul(a.bounds, b.bounds));
    if (a.bounds.empty || b.bounds.empty) return g;
    require_covers(a, wa, "mul");
    require_covers(b, wb, "mul");
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            const Rational e = ea + eb;
            if (w.contains(e, a.p())) accumulate(g.terms, e, ca * cb);
        }
    }
    return g;
}

GenSeries scale(const GenSeries& a, const FieldElement& c) {
    GenSeries g = a;
    if (c.is_zero()) {
        g.terms.clear();
        g.bounds = SupportBounds{};
        g.bounds.empty = true;
        g.bounds.valuation_floor = kInfValuation;
        return g;
    }
    for (auto& [e, x] : g.terms) x = x * c;
    return g;
}

GenSeries scale_var(const GenSeries& a, const FieldElement& alpha, const Window& w) {
    require_covers(a, w, "scale_var");
    const std::uint32_t p = a.p();
    const BigInt group = a.field->order() - 1;
    GenSeries g = blank(*a.field, w, a.bounds);
    for (const auto& [e, c] : a.terms) {
        if (!w.contains(e, p)) continue;
        if (alpha.is_zero()) {
            if (e < 0) throw PreconditionError("scale_var: zero scale with a negative exponent");
            if (e == 0) accumulate(g.terms, e, c);
            continue;
        }
        // alpha^(n / (p^k m)) = (alpha^(n m^-1 mod q-1))^(p^-k)
        BigInt m = den(e);
        std::int64_t k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        BigInt inv, g0 = m, x0 = 1, g1 = group, x1 = 0;
        while (g1 != 0) {
            const BigInt q = g0 / g1;
            BigInt next = g0 - q * g1;
            g0 = g1;
            g1 = next;
            next = x0 - q * x1;
            x0 = x1;
            x1 = next;
        }
        if (g0 != 1) throw PreconditionError("scale_var: no root of the scale for exponent " + to_string(e));
        inv = ((x0 % group) + group) % group;
        BigInt exponent = (num(e) * inv) % group;
        if (exponent < 0) exponent += group;
        accumulate(g.terms, e, c * frobenius(alpha.pow(exponent), -k));
    }
    return g;
}

GenSeries subst_power(const GenSeries& a, const Rational& c, const Rational& d, const Window& w) {
    const std::uint32_t p = a.p();
    require_covers(a, needs_subst_power(w, c, d, p), "subst_power");
    GenSeries g = blank(*a.field, w, bounds_subst_power(a.bounds, c, d, p));
    for (const auto& [e, x] : a.terms) {
        const Rational image = c * e + d;
        if (w.contains(image, p)) accumulate(g.terms, image, x);
    }
    return g;
}

GenSeries frobenius_power(const GenSeries& a, std::int64_t j, const Window& w) {
    const std::uint32_t p = a.p();
    require_covers(a, needs_frobenius(w, j, p), "frobenius_power");
    GenSeries g = blank(*a.field, w, bounds_frobenius(a.bounds, j, p));
    const Rational factor = rat_pow(Rational(p), j);
    for (const auto& [e, x] : a.terms) {
        const Rational image = e * factor;
        if (w.contains(image, p)) accumulate(g.terms, image, frobenius(x, j));
    }
    return g;
}

GenSeries as_power(const GenSeries& f, const Window& w) {
    if (f.bounds.positive()) return power_sum(f, 1, true, true, w);
    if (f.bounds.negative()) return scale(power_sum(f, 1, true, false, w), -f.field->one());
    throw PreconditionError("as_power: support must be strictly positive or strictly negative");
}

GenSeries as_subst(const GenSeries& f, const Window& w) {
    if (!f.bounds.positive()) throw PreconditionError("as_subst: support must be strictly positive");
    return power_sum(f, 1, false, true, w);
}

GenSeries gap_sum_direct(const GenSeries& f, std::uint32_t d, const Window& w) {
    if (d == 0) throw PreconditionError("gap_sum: d must be positive");
    if (f.bounds.positive()) return power_sum(f, d, true, true, w);
    if (f.bounds.negative()) return power_sum(f, d, true, false, w);
    throw PreconditionError("gap_sum: support must be strictly positive or strictly negative");
}

GenSeries gap_sum_moore(const GenSeries& f, std::uint32_t d, const Window& w) {
    if (d == 0) throw PreconditionError("gap_sum: d must be positive");
    const bool positive = f.bounds.positive();
    if (!positive && !f.bounds.negative()) throw PreconditionError("gap_sum: support must be strictly positive or strictly negative");
    const MooreData md = moore_basis(f.p(), d);
    const GaloisField& big = common_field(*f.field, md.basis.front().field());
    const GenSeries lifted = embed(f, big);
    GenSeries total = blank(big, w, bounds_power_sum(f.bounds, positive, d, f.p()));
    for (std::size_t i = 0; i < md.basis.size(); ++i) {
        const GenSeries h = as_power(scale(lifted, embed(md.basis[i], big)), w);
        for (const auto& [e, c] : h.terms) accumulate(total.terms, e, c * embed(md.coefficients[i], big));
    }
    return positive ? total : scale(total, -big.one());
}

GenSeries gap_sum(const GenSeries& f, std::uint32_t d, const Window& w) {
    GenSeries direct = gap_sum_direct(f, d, w);
    const GenSeries moore = gap_sum_moore(f, d, w);
    if (first_difference(embed(direct, *moore.field), moore)) throw VerificationFailure("gap_sum: direct and Moore routes disagree");
    return direct;
}

std::vector<GenSeries> solve_artin_schreier(const GenSeries& f, const Window& w) {
    const std::uint32_t p = f.p();
    // G is needed one level deeper and, for negative hi, a factor p closer to 0
    Window wg;
    if (w.hi) wg.hi = *w.hi >= 0 ? *w.hi : *w.hi / Rational(p);
    wg.depth = w.depth >= kExactDepth ? kExactDepth : saturate(w.depth + 1);

    GenSeries neg = blank(*f.field, f.window, f.bounds), pos = neg;
    FieldElement constant = f.field->zero();
    for (const auto& [e, c] : f.terms) {
        if (e < 0) neg.terms.emplace(e, c);
        if (e > 0) pos.terms.emplace(e, c);
        if (e == 0) constant = c;
    }
    if (!f.window.contains(Rational(0), p)) constant = f.field->zero();

    // positive part: needs a positive lower bound
    pos.bounds.up.reset();
    if (f.bounds.negative() || (f.bounds.up && *f.bounds.up <= 0)) {
        pos.bounds.empty = true;
    } else if (f.window.depth >= kExactDepth && !pos.terms.empty()) {
        pos.bounds.lo = pos.terms.begin()->first;
    } else if (f.window.depth >= kExactDepth && !f.window.hi) {
        pos.bounds.empty = true;
    } else if (f.window.depth >= kExactDepth && *f.window.hi > 0) {
        pos.bounds.lo = *f.window.hi;
    } else if (f.bounds.lo && *f.bounds.lo > 0) {
        pos.bounds.lo = f.bounds.lo;
    } else {
        throw PreconditionError("solve_artin_schreier: cannot bound the positive part away from 0");
    }
    // negative part: support below 0 by construction
    if (f.bounds.lo && *f.bounds.lo >= 0) {
        neg.bounds.empty = true;
    } else {
        neg.bounds.up = Rational(0);
        neg.bounds.up_strict = true;
    }
    if (pos.bounds.empty) pos.terms.clear();
    if (neg.bounds.empty) neg.terms.clear();

    const GaloisField* field = f.field;
    std::optional<FieldElement> root = artin_schreier_root(-constant);
    if (!root) {
        field = &GaloisField::get(p, f.field->degree() * p);
        root = artin_schreier_root(embed(-constant, *field));
        if (!root) throw VerificationFailure("solve_artin_schreier: no root in the degree-p extension");
    }
    GenSeries g = blank(*f.field, wg, bounds_add(pos.bounds, neg.bounds));
    if (!pos.bounds.empty) g = add(g, as_power(pos, wg), wg);
    if (!neg.bounds.empty) g = add(g, as_power(neg, wg), wg);
    g = embed(g, *field);
    std::vector<GenSeries> out;
    for (std::uint32_t i = 0; i < p; ++i) {
        const FieldElement a = *root + field->from_int(i);
        out.push_back(add(g, GenSeries::monomial(a, 0).restricted(wg), wg));
    }
    return out;
}

GenSeries artin_schreier_residual(const GenSeries& g, const GenSeries& f) {
    const std::uint32_t p = g.p();
    const GaloisField& big = common_field(*g.field, *f.field);
    const GenSeries gg = embed(g, big), ff = embed(f, big);
    Window wr;
    if (g.window.hi) wr.hi = *g.window.hi >= 0 ? *g.window.hi : *g.window.hi * Rational(p);
    wr.depth = g.window.depth >= kExactDepth ? kExactDepth : saturate(g.window.depth - 1);
    wr = meet(wr, f.window);
    const GenSeries gp = frobenius_power(gg, 1, wr);
    return add(sub(gp, gg.restricted(wr), wr), ff.restricted(wr), wr);
}

std::optional<Rational> first_difference(const GenSeries& a, const GenSeries& b) {
    const GaloisField& big = common_field(*a.field, *b.field);
    const GenSeries x = embed(a, big), y = embed(b, big);
    const Window w = meet(a.window, b.window);
    std::set<Rational> exponents;
    for (const auto& [e, c] : x.terms) {
        if (w.contains(e, a.p())) exponents.insert(e);
    }
    for (const auto& [e, c] : y.terms) {
        if (w.contains(e, a.p())) exponents.insert(e);
    }
    for (const auto& e : exponents) {
        auto ix = x.terms.find(e);
        auto iy = y.terms.find(e);
        const FieldElement cx = ix == x.terms.end() ? big.zero() : ix->second;
        const FieldElement cy = iy == y.terms.end() ? big.zero() : iy->second;
        if (cx != cy) return e;
    }
    return std::nullopt;
}

}  // namespace sparse
