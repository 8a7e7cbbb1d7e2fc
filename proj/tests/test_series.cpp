#include "doctest.h"
#include "sparse/series.hpp"
#include "sparse/sp_sets.hpp"

#include <random>
#include <set>

using namespace sparse;

namespace {

const GaloisField& gf(std::uint32_t p, std::uint32_t m = 1) { return GaloisField::get(p, m); }

TruncatedSeries poly(const GaloisField& f, std::uint64_t n, std::initializer_list<std::pair<std::uint64_t, std::int64_t>> terms) {
    TruncatedSeries s = TruncatedSeries::zero(f, n);
    for (auto [e, c] : terms) s.set(e, s.coeff(e) + f.from_int(c));
    return s;
}

std::set<std::uint64_t> support(const TruncatedSeries& s) {
    std::set<std::uint64_t> out;
    for (const auto& [e, c] : s.coeffs) out.insert(e);
    return out;
}

std::set<std::uint64_t> powers_below(std::uint64_t base, std::uint64_t start, std::uint64_t n) {
    std::set<std::uint64_t> out;
    for (std::uint64_t x = start; x < n; x *= base) out.insert(x);
    return out;
}

GenSeries gen(const GaloisField& f, std::initializer_list<std::pair<const char*, std::int64_t>> terms) {
    std::map<Rational, FieldElement> m;
    for (auto [e, c] : terms) m.emplace(parse_rational(e), f.from_int(c));
    return GenSeries::exact(f, m);
}

AlgebraicEquation x2_x_t() {
    // X^2 + X + t
    const auto& f = gf(2);
    return {&f, {{0, 2, f.one()}, {0, 1, f.one()}, {1, 0, f.one()}}};
}

TruncatedSeries random_series(std::mt19937_64& rng, const GaloisField& f, std::uint64_t n, std::size_t terms, bool prime_coeffs) {
    TruncatedSeries s = TruncatedSeries::zero(f, n);
    for (std::size_t i = 0; i < terms; ++i) {
        const std::uint64_t e = 1 + rng() % (n - 1);
        const FieldElement c = prime_coeffs ? f.from_int(std::int64_t(rng() % f.characteristic()))
                                            : f.from_index(rng() % f.order().convert_to<std::uint64_t>());
        s.set(e, s.coeff(e) + c);
    }
    return s;
}

}  // namespace

TEST_CASE("truncated arithmetic and substitutions") {
    const auto& f = gf(2);
    const auto t = poly(f, 16, {{1, 1}});
    const auto t2 = t * t;
    CHECK(t2 == poly(f, 16, {{2, 1}}));
    CHECK((t + t).coeffs.empty());
    CHECK(scale_var(t2, f.one()) == t2);

    const auto& f4 = gf(2, 2);
    const auto w = f4.generator();
    const auto g = TruncatedSeries::monomial(f4.one(), 3, 8) + TruncatedSeries::monomial(f4.one(), 1, 8);
    const auto scaled = scale_var(g, w);
    CHECK(scaled.coeff(1) == w);
    CHECK(scaled.coeff(3) == w.pow(3));

    // sum t^(2^n) -> sum t^(2^(n+1) + 1)
    const auto powers = as_power(t.precision == 16 ? poly(f, 64, {{1, 1}}) : t);
    const auto image = subst_power(powers, 2, 1);
    CHECK(image.precision == 129);
    std::set<std::uint64_t> expected;
    for (std::uint64_t n = 0; (std::uint64_t(2) << n) + 1 < 129; ++n) expected.insert((std::uint64_t(2) << n) + 1);
    CHECK(support(image) == expected);
    CHECK_THROWS_AS(subst_power(t, parse_rational("1/2"), 0), PreconditionError);
    CHECK_THROWS_AS(subst_power(t, 1, -2), PreconditionError);
    CHECK_THROWS_AS(subst_power(t, 0, 1), PreconditionError);
}

TEST_CASE("subst_power round trip") {
    std::mt19937_64 rng(5);
    const auto& f = gf(3);
    for (int trial = 0; trial < 50; ++trial) {
        TruncatedSeries s = TruncatedSeries::zero(f, 60);
        for (int i = 0; i < 6; ++i) s.set(3 * (rng() % 20), f.from_int(1 + std::int64_t(rng() % 2)));
        const Rational c = trial % 2 ? Rational(2) : Rational(1, 3);
        const auto there = subst_power(s, c, 0);
        const auto back = subst_power(there, 1 / c, 0);
        CHECK(back.precision >= s.precision);
        for (std::uint64_t e = 0; e < s.precision; ++e) CHECK(back.coeff(e) == s.coeff(e));
    }
}

TEST_CASE("as_power and as_subst") {
    const auto& f = gf(2);
    const auto g = as_power(poly(f, 1024, {{1, 1}}));
    CHECK(support(g) == powers_below(2, 1, 1024));
    CHECK(as_subst(poly(f, 1024, {{1, 1}})) == g);
    CHECK(as_power(TruncatedSeries::zero(f, 64)).coeffs.empty());
    CHECK_THROWS_AS(as_power(poly(f, 8, {{0, 1}})), PreconditionError);
    CHECK_THROWS_AS(as_subst(poly(f, 8, {{0, 1}})), PreconditionError);

    // over F_4 the two operators differ at t^2
    const auto& f4 = gf(2, 2);
    const auto w = f4.generator();
    const auto wt = TruncatedSeries::monomial(w, 1, 32);
    const auto sub = as_subst(wt), pow = as_power(wt);
    CHECK(sub.coeff(1) == w);
    CHECK(sub.coeff(2) == w);
    CHECK(sub.coeff(4) == w);
    CHECK(pow.coeff(1) == w);
    CHECK(pow.coeff(2) == w * w);
    CHECK(pow.coeff(4) == w);
    CHECK_FALSE(sub == pow);
    // G^p - G = -F holds for the power form
    CHECK((frobenius_power(pow, 1) - pow + wt).order() >= 32);
}

TEST_CASE("as_subst equals as_power on prime-field coefficients") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        const auto& f = gf(trial % 2 ? 3 : 2);
        const auto s = random_series(rng, f, 64, 1 + rng() % 5, true);
        CHECK(as_subst(s) == as_power(s));
    }
}

TEST_CASE("as_power support is the union of p-power dilations") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t p = trial % 2 ? 3 : 2;
        const auto& f = gf(p);
        // exponents prime to p never collide under dilation
        std::vector<Rational> exps;
        TruncatedSeries s = TruncatedSeries::zero(f, 200);
        for (int i = 0; i < 3; ++i) {
            std::uint64_t e = 1 + rng() % 40;
            while (e % p == 0) ++e;
            s.set(e, f.one());
        }
        for (const auto& [e, c] : s.coeffs) exps.push_back(Rational(BigInt(e)));
        const auto spread = shift_up_union(SpSet::from_values(exps, p));
        std::set<std::uint64_t> expected;
        for (const auto& x : spread.window(199, 0)) expected.insert(num(x).convert_to<std::uint64_t>());
        CHECK(support(as_power(s)) == expected);
    }
}

TEST_CASE("gap sums") {
    const auto& f = gf(2);
    const auto t = poly(f, 1024, {{1, 1}});
    CHECK(gap_sum(t, 1) == as_power(t));
    CHECK(support(gap_sum(t, 2)) == powers_below(4, 1, 1024));
    CHECK(support(gap_sum(poly(f, 1024, {{3, 1}}), 2)) == powers_below(4, 3, 1024));
    CHECK_THROWS_AS(gap_sum(t, 0), PreconditionError);
}

TEST_CASE("gap sum routes agree") {
    std::mt19937_64 rng(31);
    for (std::uint32_t p : {2u, 3u}) {
        for (std::uint32_t d = 1; d <= 3; ++d) {
            for (int trial = 0; trial < 4; ++trial) {
                const auto& f = gf(p, trial % 2 ? 1 : 2);
                const auto s = random_series(rng, f, 256, 1 + rng() % 4, false);
                const auto direct = gap_sum_direct(s, d);
                const auto moore = gap_sum_moore(s, d);
                CHECK(embed(direct, *moore.field) == moore);
            }
        }
    }
}

TEST_CASE("verify_algebraic") {
    const auto& f = gf(2);
    TruncatedSeries s = TruncatedSeries::zero(f, 64);
    for (int n = 0; n < 6; ++n) s.set(std::uint64_t(1) << n, f.one());
    CHECK(verify_algebraic(s, x2_x_t()) >= 64);
    const AlgebraicEquation x2_x{&f, {{0, 2, f.one()}, {0, 1, f.one()}}};
    CHECK(verify_algebraic(TruncatedSeries::zero(f, 64), x2_x) == 64);
    CHECK(verify_algebraic(poly(f, 64, {{1, 1}}), x2_x_t()) == 2);
}

TEST_CASE("equation_to_coeffs") {
    const auto& f = gf(2);
    const auto a = equation_to_coeffs(x2_x_t(), {f.zero()}, 1024);
    CHECK(a.coeff(1) == f.one());
    CHECK(a.coeff(2) == f.one());
    CHECK(a.coeff(3) == f.zero());
    CHECK(a.coeff(4) == f.one());
    CHECK(support(a) == powers_below(2, 1, 1024));
    CHECK(verify_algebraic(a, x2_x_t()) >= 1024);

    const auto b = equation_to_coeffs(x2_x_t(), {f.one()}, 64);
    CHECK(b.coeff(0) == f.one());
    CHECK(support(b) == [] {
        auto s = powers_below(2, 1, 64);
        s.insert(0);
        return s;
    }());

    const AlgebraicEquation x_minus_t{&f, {{0, 1, f.one()}, {1, 0, -f.one()}}};
    CHECK(equation_to_coeffs(x_minus_t, {}, 16) == poly(f, 16, {{1, 1}}));

    // without a seed both constants fit
    CHECK_THROWS_AS(equation_to_coeffs(x2_x_t(), {}, 8), PreconditionError);
    // inconsistent seed
    CHECK_THROWS_AS(equation_to_coeffs(x2_x_t(), {f.zero(), f.zero()}, 8), PreconditionError);
    // X^2 + t: every step is ramified
    const AlgebraicEquation ramified{&f, {{0, 2, f.one()}, {1, 0, f.one()}}};
    CHECK_THROWS_AS(equation_to_coeffs(ramified, {f.zero()}, 8), PreconditionError);
}

TEST_CASE("generalized power sums") {
    const auto& f = gf(2);
    const Window w = Window::below(-Rational(1, 1024), 12);
    const auto g = as_power(gen(f, {{"-1", 1}}), w);
    std::set<Rational> expected;
    for (int n = 1; n <= 9; ++n) expected.insert(-Rational(1) / Rational(BigInt(1) << n));
    std::set<Rational> got;
    for (const auto& [e, c] : g.terms) got.insert(e);
    CHECK(got == expected);
    const auto r = artin_schreier_residual(g, gen(f, {{"-1", 1}}));
    CHECK(r.terms.empty());

    CHECK_THROWS_AS(as_power(gen(f, {{"-1", 1}, {"1", 1}}), w), PreconditionError);
    CHECK_THROWS_AS(as_power(gen(f, {{"1", 1}}), Window::exact()), PreconditionError);

    const auto pos = gap_sum(gen(f, {{"1/3", 1}}), 2, Window::below(100, 4));
    std::set<Rational> pos_expected = {Rational(1, 3), Rational(4, 3), Rational(16, 3), Rational(64, 3), Rational(256, 3)};
    std::set<Rational> pos_got;
    for (const auto& [e, c] : pos.terms) pos_got.insert(e);
    CHECK(pos_got == pos_expected);

    const auto neg = gap_sum(gen(f, {{"-1", 1}}), 2, Window::below(0, 8));
    std::set<Rational> neg_got;
    for (const auto& [e, c] : neg.terms) neg_got.insert(e);
    CHECK(neg_got == std::set<Rational>{Rational(-1, 4), Rational(-1, 16), Rational(-1, 64), Rational(-1, 256)});
}

TEST_CASE("scale_var on rational exponents") {
    const auto& f8 = gf(2, 3);
    const auto w = f8.generator();
    std::map<Rational, FieldElement> terms{{Rational(1, 3), f8.one()}, {Rational(1, 2), f8.one()}, {Rational(5), f8.one()}};
    const auto g = scale_var(GenSeries::exact(f8, terms), w, Window::below(10, 2));
    // the coefficient at e is a root x with x^den(e) = w^num(e)
    CHECK(g.coeff(Rational(1, 3)).pow(3) == w);
    CHECK(g.coeff(Rational(1, 2)).pow(2) == w);
    CHECK(g.coeff(5) == w.pow(5));
    // 3 divides q - 1 = 15 for F_16, so cube roots are not unique there
    const auto& f16 = gf(2, 4);
    CHECK_THROWS_AS(scale_var(GenSeries::exact(f16, {{Rational(1, 3), f16.one()}}), f16.generator(), Window::exact()), PreconditionError);
}

TEST_CASE("solve_artin_schreier examples") {
    const auto& f = gf(2);
    const Window w = Window::below(512, 4);
    const auto t = gen(f, {{"1", 1}});
    const auto sols = solve_artin_schreier(t, w);
    REQUIRE(sols.size() == 2);
    std::set<Rational> expected;
    for (int n = 0; n <= 8; ++n) expected.insert(Rational(BigInt(1) << n));
    for (std::size_t i = 0; i < 2; ++i) {
        std::set<Rational> got;
        for (const auto& [e, c] : sols[i].terms) got.insert(e);
        auto want = expected;
        if (i == 1) want.insert(Rational(0));
        CHECK(got == want);
        CHECK(artin_schreier_residual(sols[i], t).terms.empty());
    }

    const auto zero = solve_artin_schreier(GenSeries::zero(f), w);
    REQUIRE(zero.size() == 2);
    CHECK(zero[0].terms.empty());
    CHECK(zero[1].coeff(0) == f.one());

    const auto inv = solve_artin_schreier(gen(f, {{"-1", 1}}), Window::below(10, 10));
    for (const auto& g : inv) {
        CHECK(g.coeff(-Rational(1, 2)) == f.one());
        CHECK(g.coeff(-Rational(1, 512)) == f.one());
        CHECK(artin_schreier_residual(g, gen(f, {{"-1", 1}})).terms.empty());
    }

    // the constant 1 has no root in F_2: the solutions live in F_4
    const auto ext = solve_artin_schreier(gen(f, {{"0", 1}}), w);
    CHECK(ext.front().field->degree() == 2);
    CHECK(artin_schreier_residual(ext.front(), gen(f, {{"0", 1}})).terms.empty());
}

TEST_CASE("Artin-Schreier residuals on random inputs") {
    std::mt19937_64 rng(41);
    for (std::uint32_t p : {2u, 3u}) {
        const auto& f = gf(p);
        for (int kind = 0; kind < 3; ++kind) {
            for (int trial = 0; trial < 20; ++trial) {
                std::map<Rational, FieldElement> terms;
                const int count = 1 + int(rng() % 4);
                for (int i = 0; i < count; ++i) {
                    const Rational e(std::int64_t(1 + rng() % 30), std::int64_t(1) << (rng() % 3));
                    const bool negative = kind == 1 || (kind == 2 && i % 2 == 0);
                    terms[negative ? -e : e] = f.from_int(std::int64_t(1 + rng() % (p - 1)));
                }
                if (kind == 2) terms[Rational(0)] = f.from_int(std::int64_t(rng() % p));
                const auto input = GenSeries::exact(f, terms);
                const Window w = Window::below(200, 6);
                for (const auto& g : solve_artin_schreier(input, w)) {
                    const auto r = artin_schreier_residual(g, input);
                    CHECK(r.window.covers(w));
                    CHECK(r.terms.empty());
                }
            }
        }
    }
}
