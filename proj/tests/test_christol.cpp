#include "corpus.hpp"
#include "doctest.h"
#include "sparse/christol.hpp"
#include "sparse/sp_sets.hpp"

#include <random>
#include <set>

using namespace sparse;
using corpus::digits_of;
using corpus::form;

namespace {

const GaloisField& f2() { return GaloisField::get(2, 1); }

AlgebraicEquation x2_x_t() { return {&f2(), {{0, 2, f2().one()}, {0, 1, f2().one()}, {1, 0, f2().one()}}}; }

std::vector<StepKind> kinds(const Certificate& c) {
    std::vector<StepKind> out;
    for (const auto& s : c.steps) out.push_back(s.kind);
    return out;
}

TruncatedSeries indicator(const GaloisField& f, const std::vector<std::uint64_t>& support, std::uint64_t n) {
    TruncatedSeries s = TruncatedSeries::zero(f, n);
    for (auto e : support) {
        if (e < n) s.set(e, f.one());
    }
    return s;
}

std::vector<std::uint64_t> powers(std::uint64_t base, std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 1; x < n; x *= base) out.push_back(x);
    return out;
}

bool digit_sum_odd(std::uint64_t n) { return __builtin_popcountll(n) % 2 == 1; }

/// Brute-force check that distinct count tuples (each count <= limit) give distinct words.
bool parses_uniquely(const SimpleSparseForm& f, std::uint64_t limit) {
    std::set<Word> seen;
    std::vector<std::uint64_t> counts(f.num_cycles(), 0);
    bool unique = true;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == counts.size()) {
            unique = seen.insert(f.pump(counts)).second && unique;
            return;
        }
        for (std::uint64_t n = 0; n <= limit; ++n) {
            counts[i] = n;
            rec(i + 1);
        }
    };
    rec(0);
    return unique;
}

/// Replay of the certificate against the form's enumerated values on a window.
void check_replay(const SimpleSparseForm& f, const FieldElement& value) {
    const Certificate cert = certify_sparse(f, value);
    const bool radix = f.radix_position().has_value();
    const Rational bound = radix ? Rational(64) : Rational(1024);
    const std::size_t digits = radix ? 8 : 0;
    const Window w = Window::below(bound, std::int64_t(digits));
    std::map<Rational, FieldElement> expected;
    for (const auto& x : enumerate(f, bound, digits)) {
        if (x < bound) expected.emplace(x, value);
    }
    const auto check = verify_certificate(cert, GenSeries::exact(value.field(), expected), w);
    INFO("form with " << f.num_cycles() << " cycles, base " << f.base);
    CHECK(check.ok);
    for (const auto& s : cert.steps) {
        CHECK(s.kind != StepKind::ScaleVar);  // sparse indicators never need the variable scaling
    }
}

}  // namespace

TEST_CASE("dfao_to_series examples") {
    const auto tm = dfao_to_series(thue_morse(), f2(), 8);
    const std::vector<int> expected{0, 1, 1, 0, 1, 0, 0, 1};
    for (std::uint64_t n = 0; n < 8; ++n) CHECK(tm.coeff(n) == f2().from_int(expected[n]));
    CHECK(dfao_to_series(thue_morse(), f2(), 14).coeff(13) == f2().one());
    const auto long_tm = dfao_to_series(thue_morse(), f2(), 1025);
    for (std::uint64_t n = 0; n <= 1024; ++n) CHECK(long_tm.coeff(n).is_one() == digit_sum_odd(n));

    Dfao one = all_words_acceptor(digits_of(2));
    const auto ones = dfao_to_series(one, f2(), 16);
    CHECK(ones.coeffs.size() == 16);

    const auto pow2 = dfao_to_series(form_acceptor(form(2, {"1", ""}, {"0"}), digits_of(2)), f2(), 1024);
    CHECK(pow2 == indicator(f2(), powers(2, 1024), 1024));

    // codes name elements of F_4 by index
    const auto& f4 = GaloisField::get(2, 2);
    Dfao three = one;
    three.outputs.assign(three.num_states(), 3);
    CHECK(dfao_to_series(three, f4, 4).coeff(2) == f4.from_index(3));
    CHECK_THROWS_AS(dfao_to_series(three, f2(), 4), PreconditionError);
    CHECK_THROWS_AS(dfao_to_series(thue_morse(), GaloisField::get(3, 1), 4), PreconditionError);
}

TEST_CASE("kernel automata") {
    const auto a = equation_to_coeffs(x2_x_t(), {f2().zero()}, 4096);
    const Dfao k = kernel_automaton(a);
    CHECK(minimize(k).num_states() == 3);
    for (std::uint64_t n = 0; n < 4096; ++n) CHECK(k.run(encode_nat(BigInt(n), 2)) == a.coeff(n).index());

    EmpiricalOptions tight;
    tight.precision = 64;
    tight.min_agreement = 32;
    CHECK_THROWS_AS(kernel_automaton(a, tight), CapExceeded);
    EmpiricalOptions capped;
    capped.state_cap = 1;
    CHECK_THROWS_AS(kernel_automaton(a, capped), CapExceeded);
}

TEST_CASE("support_acceptor examples") {
    const Acceptor tm = support_acceptor(SeriesSource::from_dfao(thue_morse(), f2()));
    CHECK(tm.num_states() == 2);
    for (std::uint64_t n = 0; n < 512; ++n) CHECK(accepts(tm, encode_nat(BigInt(n), 2)) == digit_sum_odd(n));

    const Acceptor sol = support_acceptor(SeriesSource::from_equation(x2_x_t(), {f2().zero()}));
    CHECK(equivalent(canonical_language(sol), form_acceptor(form(2, {"1", ""}, {"0"}), digits_of(2))));

    Dfao zero = thue_morse();
    zero.outputs.assign(zero.num_states(), 0);
    CHECK(is_empty(support_acceptor(SeriesSource::from_dfao(zero, f2()))));
}

TEST_CASE("support round trip through the automaton route") {
    for (const auto& entry : corpus::acceptors()) {
        const std::uint32_t k = digit_base(entry.acceptor);
        if (has_radix_symbol(entry.acceptor) || !is_prime(k)) continue;
        INFO(entry.name);
        const Acceptor support = support_acceptor(SeriesSource::from_dfao(entry.acceptor, GaloisField::get(k, 1)));
        CHECK(equivalent(support, minimize(trim(support_of(entry.acceptor)))));
    }
}

TEST_CASE("empirical kernels reproduce the stream") {
    std::mt19937_64 rng(3);
    std::size_t stabilized = 0, reported = 0;
    for (const auto& entry : corpus::acceptors()) {
        const std::uint32_t k = digit_base(entry.acceptor);
        if (has_radix_symbol(entry.acceptor) || (k != 2 && k != 3)) continue;
        const auto& field = GaloisField::get(k, 1);
        EmpiricalOptions opts;
        opts.precision = k == 2 ? 1 << 14 : 19683;
        const auto stream = dfao_to_series(entry.acceptor, field, 4 * opts.precision);
        INFO(entry.name);
        Dfao kernel;
        try {
            kernel = kernel_automaton(stream, opts);
        } catch (const CapExceeded&) {
            ++reported;
            continue;
        }
        for (std::uint64_t n = 0; n < opts.precision; ++n) CHECK(kernel.run(encode_nat(BigInt(n), k)) == stream.coeff(n).index());
        for (int probe = 0; probe < 1000; ++probe) {
            const std::uint64_t n = opts.precision + rng() % (3 * opts.precision);
            CHECK(kernel.run(encode_nat(BigInt(n), k)) == stream.coeff(n).index());
        }
        ++stabilized;
    }
    CHECK(stabilized >= 20);
    MESSAGE("kernels: " << stabilized << " stabilized, " << reported << " reported as not stabilized");
}

TEST_CASE("certify_sparse examples") {
    const auto one = f2().one();
    const auto c1 = certify_sparse(form(2, {"1", ""}, {"0"}), one);
    CHECK(kinds(c1) == std::vector<StepKind>{StepKind::Seed, StepKind::GapSum});
    CHECK(c1.steps[0].exponent == 1);
    CHECK(c1.steps[1].gap == 1);
    CHECK(replay(c1, 1024) == indicator(f2(), powers(2, 1024), 1024));

    const auto c2 = certify_sparse(form(2, {"1", "1"}, {"0"}), one);
    CHECK(kinds(c2) == std::vector<StepKind>{StepKind::Seed, StepKind::GapSum, StepKind::SubstPower});
    CHECK(c2.steps[2].c == 2);
    CHECK(c2.steps[2].d == 1);
    std::vector<std::uint64_t> s2;
    for (std::uint64_t x = 2; x + 1 < 1024; x *= 2) s2.push_back(x + 1);
    CHECK(replay(c2, 1024) == indicator(f2(), s2, 1024));

    const auto c3 = certify_sparse(form(2, {"101"}, {}), one);
    CHECK(kinds(c3) == std::vector<StepKind>{StepKind::Seed});
    CHECK(c3.steps[0].exponent == 5);

    // period 2 uses a gap sum with d = 2
    // period 2: stretch by N = 3, gap sum with d = 2, unstretch
    const auto c4 = certify_sparse(form(2, {"1", ""}, {"00"}), one);
    CHECK(kinds(c4) == std::vector<StepKind>{StepKind::Seed, StepKind::SubstPower, StepKind::GapSum, StepKind::SubstPower});
    CHECK(c4.steps[1].c == 3);
    CHECK(c4.steps[2].gap == 2);
    CHECK(c4.steps[3].c == Rational(1, 3));
    CHECK(replay(c4, 1024) == indicator(f2(), powers(4, 1024), 1024));

    // coefficients other than 1
    const auto& f4 = GaloisField::get(2, 2);
    const auto w = f4.generator();
    const auto c5 = certify_sparse(form(2, {"1", "1"}, {"0"}), w);
    const auto r5 = replay(c5, 64);
    for (auto e : s2) {
        if (e < 64) CHECK(r5.coeff(e) == w);
    }
    CHECK(r5.coeffs.size() == 5);

    CHECK_THROWS_AS(certify_sparse(form(2, {".", "1"}, {"0"}), one), PreconditionError);  // .0^n 1 descends
    CHECK_THROWS_AS(certify_sparse(form(2, {"", "1"}, {"0"}), one), PreconditionError);   // leading zeros
    CHECK_THROWS_AS(certify_sparse(form(2, {"1", "", ""}, {"0", "0"}), one), PreconditionError);
    CHECK_THROWS_AS(certify_sparse(form(3, {"1", ""}, {"0"}), one), PreconditionError);  // base 3 over F_2
    CHECK(certify_sparse(form(2, {"1"}, {}), f2().zero()).steps.empty());
}

TEST_CASE("radix certificates") {
    const auto one = f2().one();
    // 1 - 2^-(n+1)
    const auto c = certify_sparse(form(2, {".1", ""}, {"1"}), one);
    CHECK(c.steps.back().kind == StepKind::SubstPower);
    const auto g = replay(c, Window::below(1, 6));
    std::set<Rational> got;
    for (const auto& [e, x] : g.terms) got.insert(e);
    std::set<Rational> expected;
    for (int n = 1; n <= 6; ++n) expected.insert(1 - Rational(1) / Rational(BigInt(1) << n));
    CHECK(got == expected);

    // integer and fraction cycles combine through a product
    const auto m = certify_sparse(form(2, {"1", "1.", "1"}, {"0", "1"}), one);
    CHECK(std::count_if(m.steps.begin(), m.steps.end(), [](const auto& s) { return s.kind == StepKind::Mul; }) == 1);
    check_replay(form(2, {"1", "1.", "1"}, {"0", "1"}), one);
    check_replay(form(3, {"2.", "1"}, {"12"}), GaloisField::get(3, 1).one());
    check_replay(form(2, {"11.1", "0", "1"}, {"11", "1"}), one);
}

TEST_CASE("verify_certificate examples") {
    const auto c = certify_sparse(form(2, {"1", ""}, {"0"}), f2().one());
    CHECK(verify_certificate(c, indicator(f2(), powers(2, 1024), 1024), 1024).ok);
    const auto bad = verify_certificate(c, indicator(f2(), powers(3, 1024), 1024), 1024);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.mismatch);
    CHECK(*bad.mismatch == 2);

    Certificate empty;
    empty.field = &f2();
    CHECK(verify_certificate(empty, TruncatedSeries::zero(f2(), 64), 64).ok);

    // a power sum on a series with a constant term is rejected with its step index
    Certificate broken;
    broken.field = &f2();
    broken.unary(StepKind::ASPower, broken.seed(f2().one(), 0));
    try {
        replay(broken, 16);
        FAIL("replay accepted a nonzero constant term");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("step 1") != std::string::npos);
    }
    CHECK_THROWS_AS(verify_certificate(c, TruncatedSeries::zero(f2(), 8), 16), PreconditionError);
}

TEST_CASE("replay of the remaining step kinds") {
    const auto& f4 = GaloisField::get(2, 2);
    const auto w = f4.generator();
    Certificate c;
    c.field = &f4;
    const auto t = c.seed(f4.one(), 1);
    const auto sv = c.unary(StepKind::ScaleVar, t);
    c.steps[sv].coeff = w;
    const auto asub = c.unary(StepKind::ASSubst, sv);
    const auto twist = c.unary(StepKind::FrobTwist, asub);
    c.steps[twist].twist = 1;
    const auto r = replay(c, 64);
    // (sum_n w t^(2^n))^2 = sum_n w^2 t^(2^(n+1))
    for (std::uint64_t e = 2; e < 64; e *= 2) CHECK(r.coeff(e) == w * w);
    CHECK(r.coeffs.size() == 5);
    CHECK(parse_step_kind("GapSum") == StepKind::GapSum);
    CHECK_FALSE(parse_step_kind("Frobenius"));

    Certificate bad;
    bad.field = &f4;
    bad.binary(StepKind::Add, 0, 0);
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("classify_series examples") {
    const auto sol = classify_series(SeriesSource::from_equation(x2_x_t(), {f2().zero()}));
    CHECK(sol.sparse);
    CHECK(sol.empirical);
    REQUIRE(sol.components.size() == 1);
    CHECK(sol.components[0].form == form(2, {"1", ""}, {"0"}));
    CHECK(sol.components[0].closed.pre == std::vector<Rational>{0, 1});
    CHECK(sol.components[0].closed.periods == std::vector<std::uint32_t>{1});
    CHECK(kinds(sol.certificate) == std::vector<StepKind>{StepKind::Seed, StepKind::GapSum});
    CHECK(sol.replay_check.ok);

    const auto tm = classify_series(SeriesSource::from_dfao(thue_morse(), f2()));
    CHECK_FALSE(tm.sparse);
    CHECK(tm.witness);
    CHECK(tm.beta > 0);

    const auto five = classify_series(SeriesSource::from_dfao(literal({parse_word("101", 2)}, digits_of(2)), f2()));
    CHECK(five.sparse);
    REQUIRE(five.components.size() == 1);
    CHECK(five.components[0].form.num_cycles() == 0);
    CHECK(kinds(five.certificate) == std::vector<StepKind>{StepKind::Seed});

    // two coefficient levels over F_4
    const auto& f4 = GaloisField::get(2, 2);
    Dfao levels = form_acceptor(form(2, {"1", ""}, {"0"}), digits_of(2));
    for (auto& o : levels.outputs) o = o ? 2 : 0;
    const auto lv = classify_series(SeriesSource::from_dfao(levels, f4));
    CHECK(lv.sparse);
    CHECK(lv.replay_check.ok);
}

TEST_CASE("certificate soundness on the corpus") {
    std::size_t certified = 0;
    for (const auto& entry : corpus::acceptors()) {
        const std::uint32_t k = digit_base(entry.acceptor);
        if (k != 2 && k != 3) continue;
        const Acceptor canon = canonical_language(entry.acceptor);
        if (!is_sparse(canon).sparse) continue;
        INFO(entry.name);
        for (const auto& f : decompose(canon)) {
            if (f.num_cycles() > 3) continue;
            if (f.radix_position() && !is_well_ordered(f).well_ordered) continue;
            check_replay(f, GaloisField::get(k, 1).one());
            ++certified;
        }
    }
    CHECK(certified >= 30);
}

TEST_CASE("certificates for random forms") {
    std::mt19937_64 rng(77);
    std::size_t certified = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const std::uint32_t p = trial % 2 ? 3 : 2;
        const bool radix = trial % 3 == 0;
        const auto f = corpus::random_form(rng, p, rng() % 4, radix);
        const auto& field = GaloisField::get(p, 2);
        const auto value = field.from_index(1 + rng() % (field.order().convert_to<std::uint64_t>() - 1));
        const bool ordered = !radix || is_well_ordered(f).well_ordered;
        if (!ordered || !parses_uniquely(f, 4)) {
            CHECK_THROWS_AS(certify_sparse(f, value), PreconditionError);
            continue;
        }
        check_replay(f, value);
        ++certified;
    }
    CHECK(certified >= 40);
}

TEST_CASE("classification replays on corpus machines") {
    for (const auto& entry : corpus::acceptors()) {
        const std::uint32_t k = digit_base(entry.acceptor);
        if (has_radix_symbol(entry.acceptor) || (k != 2 && k != 3)) continue;
        INFO(entry.name);
        const auto cl = classify_series(SeriesSource::from_dfao(entry.acceptor, GaloisField::get(k, 1)));
        CHECK(cl.sparse == is_sparse(canonical_language(entry.acceptor)).sparse);
        if (cl.sparse) CHECK(cl.replay_check.ok);
    }
}

TEST_CASE("quasi_eval") {
    // G = sum_{n>=1} t^(-2^-n), shifted by 1: words .1^n
    QuasiAutomatic q;
    q.a = 1;
    q.b = 1;
    q.field = &f2();
    q.machine = form_acceptor(form(2, {".1", ""}, {"1"}), digits_of(2, true));
    CHECK(quasi_eval(q, -Rational(1, 4)) == f2().one());
    CHECK(quasi_eval(q, -Rational(1, 2)) == f2().one());
    CHECK(quasi_eval(q, -Rational(3, 8)).is_zero());
    CHECK(quasi_eval(q, Rational(1, 3)).is_zero());
    CHECK(quasi_eval(q, Rational(-2)).is_zero());

    // agrees with the series built by the negative power sum
    Certificate c;
    c.field = &f2();
    c.unary(StepKind::ASPower, c.seed(f2().one(), -1));
    const auto g = replay(c, Window::below(0, 10));
    for (std::int64_t den = 1; den <= 1024; den *= 2) {
        for (std::int64_t num = -den; num < 0; ++num) {
            const Rational alpha(num, den);
            CHECK(quasi_eval(q, alpha) == g.coeff(alpha));
        }
    }
    q.a = 0;
    CHECK_THROWS_AS(quasi_eval(q, 0), PreconditionError);
}
