// Acceptance run: one PASS/FAIL line per criterion, each with its own time limit.
// Exits nonzero when any criterion fails.

#include "corpus.hpp"
#include "sparse/christol.hpp"
#include "sparse/sp_sets.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace sparse;
using corpus::form;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) note << "first failure: " << what;
        ok = ok && cond;
    }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    const std::clock_t cpu_start = std::clock();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.ok = false;
        out.note << "exception: " << e.what();
    }
    // limits apply to CPU time so a loaded machine does not fail the run
    const double cpu = double(std::clock() - cpu_start) / CLOCKS_PER_SEC;
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = cpu < limit_s;
    const bool pass = out.ok && in_time;
    if (!pass) ++failures;
    std::printf("criterion %d %-34s %s  cpu %.3f s, wall %.3f s (limit %.0f s)%s%s\n", id, title, pass ? "PASS" : "FAIL", cpu, wall,
                limit_s, out.note.str().empty() ? "" : "  ", out.note.str().c_str());
    if (!in_time) std::printf("    time limit exceeded\n");
    std::fflush(stdout);
}

void for_each_tuple(std::size_t s, std::uint64_t limit, const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
    std::vector<std::uint64_t> t(s, 0);
    for (;;) {
        fn(t);
        std::size_t i = 0;
        while (i < s && ++t[i] > limit) t[i++] = 0;
        if (i == s) break;
    }
}

std::vector<Rational> cut(const std::set<Rational>& xs, const Rational& bound, std::size_t fraction_digits, std::uint32_t p) {
    std::vector<Rational> out;
    for (const auto& x : xs) {
        if (x >= 0 && x <= bound && p_power_exponent_of_den(x, p) <= int(fraction_digits)) out.push_back(x);
    }
    return out;
}

SpSet well_ordered_set(std::mt19937_64& rng, std::uint32_t p, bool radix) {
    for (;;) {
        std::vector<SimpleSparseForm> forms;
        const int count = 1 + int(rng() % 2);
        for (int i = 0; i < count; ++i) forms.push_back(corpus::random_form(rng, p, rng() % 3, radix));
        auto s = SpSet::from_forms(forms, p);
        if (s.well_ordered == Flag::Yes && !s.empty()) return s;
    }
}

TruncatedSeries random_sparse_series(std::mt19937_64& rng, const GaloisField& f, std::uint64_t n) {
    TruncatedSeries s = TruncatedSeries::zero(f, n);
    const std::size_t terms = 1 + rng() % 4;
    for (std::size_t i = 0; i < terms; ++i) {
        const std::uint64_t e = 1 + rng() % (n - 1);
        s.set(e, s.coeff(e) + f.from_index(1 + rng() % (f.order().convert_to<std::uint64_t>() - 1)));
    }
    return s;
}

// ---------------------------------------------------------------------------

void thue_morse_fidelity(Outcome& out) {
    const Dfao tm = thue_morse();
    out.expect(tm.run(parse_word("1101", 2)) == 1, "run(1101) != 1");
    const auto s = dfao_to_series(tm, GaloisField::get(2, 1), 1025);
    for (std::uint64_t n = 0; n <= 1024; ++n) {
        out.expect(s.coeff(n).is_one() == (__builtin_popcountll(n) % 2 == 1), "f(" + std::to_string(n) + ") is not the digit-sum parity");
    }
    out.expect(!classify_series(SeriesSource::from_dfao(tm, GaloisField::get(2, 1))).sparse, "classified Sparse");
}

void christol_witness(Outcome& out) {
    const auto& f2 = GaloisField::get(2, 1);
    const AlgebraicEquation eq{&f2, {{0, 2, f2.one()}, {0, 1, f2.one()}, {1, 0, f2.one()}}};
    const auto s = equation_to_coeffs(eq, {f2.zero()}, 1024);
    std::set<std::uint64_t> support, powers;
    for (const auto& [e, c] : s.coeffs) support.insert(e);
    for (std::uint64_t x = 1; x < 1024; x *= 2) powers.insert(x);
    out.expect(support == powers, "support is not {2^n}");
    out.expect(verify_algebraic(s, eq) >= 1024, "residual order below 1024");
    const auto c = classify_series(SeriesSource::from_equation(eq, {f2.zero()}));
    out.expect(c.sparse, "classified NonSparse");
    out.expect(c.components.size() == 1, "component count != 1");
    if (c.components.size() == 1) {
        out.expect(c.components[0].form == form(2, {"1", ""}, {"0"}), "component is not 1 0*");
        const auto cf = closed_form(c.components[0].form);
        out.expect(cf.pre == std::vector<Rational>{0, 1} && cf.periods == std::vector<std::uint32_t>{1}, "closed form != (0, 1, 1)");
    }
    out.expect(c.replay_check.ok, "certificate replay mismatch");
}

void closed_form_oracle(Outcome& out) {
    std::mt19937_64 rng(20240101);
    int radix_forms = 0;
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t k = std::vector<std::uint32_t>{2, 3, 5}[i % 3];
        const bool radix = i % 4 == 0;
        radix_forms += radix;
        const auto f = corpus::random_form(rng, k, rng() % 4, radix);
        const auto cf = closed_form(f);
        for_each_tuple(f.num_cycles(), 6, [&](const auto& t) { out.expect(cf.value(t) == word_value(f.pump(t), k), "formula != decode"); });
    }
    out.expect(radix_forms == 50, "radix form count != 50");
}

void moore_gap_sum(Outcome& out) {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::uint32_t d = 1; d <= 4; ++d) {
            const auto data = moore_basis(p, d);
            for (std::uint32_t j = 0; j < 2 * d; ++j) {
                auto sum = GaloisField::get(p, d).zero();
                for (std::uint32_t i = 0; i < d; ++i) sum += data.coefficients[i] * frobenius(data.basis[i], j);
                out.expect(sum == (j % d == 0 ? sum.field().one() : sum.field().zero()), "Moore identity");
            }
        }
    }
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[trial % 3];
        const std::uint32_t d = 1 + std::uint32_t(trial % 4);
        const auto& f = GaloisField::get(p, 1 + std::uint32_t(rng() % 2));
        const auto s = random_sparse_series(rng, f, 256);
        const auto moore = gap_sum_moore(s, d);
        out.expect(embed(gap_sum_direct(s, d), *moore.field) == moore, "direct route != Moore route");
    }
}

void artin_schreier(Outcome& out) {
    std::mt19937_64 rng(5150);
    const Window w = Window::below(200, 6);
    for (std::uint32_t p : {2u, 3u}) {
        const auto& f = GaloisField::get(p, 1);
        for (int kind = 0; kind < 3; ++kind) {
            for (int trial = 0; trial < 100; ++trial) {
                std::map<Rational, FieldElement> terms;
                const int count = 1 + int(rng() % 4);
                for (int i = 0; i < count; ++i) {
                    const Rational e(std::int64_t(1 + rng() % 30), std::int64_t(1) << (rng() % 3));
                    const bool negative = kind == 1 || (kind == 2 && i % 2 == 0);
                    terms[negative ? -e : e] = f.from_int(std::int64_t(1 + rng() % (p - 1)));
                }
                if (kind == 2) terms[Rational(0)] = f.from_int(std::int64_t(rng() % p));
                const auto input = GenSeries::exact(f, terms);
                const auto sols = solve_artin_schreier(input, w);
                out.expect(!sols.empty(), "no solution");
                for (const auto& g : sols) {
                    const auto r = artin_schreier_residual(g, input);
                    out.expect(r.window.covers(w) && r.restricted(w).terms.empty(), "residual inside the window");
                }
            }
        }
    }
}

void ring_closure(Outcome& out) {
    std::mt19937_64 rng(606);
    const Rational bound = 1024;
    const std::size_t frac = 6;
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t p = trial % 3 == 2 ? 3 : 2;
        const auto s = well_ordered_set(rng, p, trial % 2 == 1);
        const auto t = well_ordered_set(rng, p, trial % 4 == 0);
        const auto u = sp_union(s, t);
        const auto sum = minkowski_sum(s, t);
        out.expect(u.sparse == Flag::Yes && sum.sparse == Flag::Yes, "not Sparse");
        out.expect(sum.well_ordered == Flag::Yes, "sum not well-ordered");
        std::set<Rational> both, sums;
        for (const auto& x : s.window(bound, frac)) both.insert(x);
        for (const auto& x : t.window(bound, frac)) both.insert(x);
        out.expect(u.window(bound, frac) == cut(both, bound, frac, p), "union window");
        const auto xs = s.window(bound, frac + 4), ys = t.window(bound, frac + 4);
        for (const auto& x : xs) {
            for (const auto& y : ys) sums.insert(x + y);
        }
        out.expect(sum.window(bound, frac) == cut(sums, bound, frac, p), "sum window");
    }
}

void spreads(Outcome& out) {
    std::mt19937_64 rng(707);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t p = trial % 2 == 0 ? 2 : 3;
        const Rational b = 1 + int(rng() % 3);
        const auto t = translate_up(well_ordered_set(rng, p, trial % 4 == 1), b + 1);
        const auto up = spread_up(t, b);
        out.expect(up.sparse == Flag::Yes && up.well_ordered == Flag::Yes, "spread_up flags");
        // images with n > 8 lie above p^9 + b, past the check bound
        const Rational bound = p == 2 ? 256 : 2000;
        const std::size_t frac = 6;
        std::set<Rational> direct;
        for (const auto& x : t.window(bound, frac + 9)) {
            for (int n = 0; n <= 8; ++n) direct.insert((x - b) * Rational(big_pow(p, std::uint64_t(n))) + b);
        }
        out.expect(up.window(bound, frac) == cut(direct, bound, frac, p), "spread_up window");

        const auto below = split(well_ordered_set(rng, p, true), b).first;
        const auto down = spread_down(below, b);
        out.expect(down.sparse == Flag::Yes && down.well_ordered == Flag::Yes, "spread_down flags");
        std::set<Rational> direct_down;
        for (const auto& x : below.window(b, 10)) {
            for (int n = 1; n <= 8; ++n) direct_down.insert((x - b) / Rational(big_pow(p, std::uint64_t(n))) + b);
        }
        // with 4 fraction digits shown, every member comes from some n <= 8
        out.expect(down.window(b, 4) == cut(direct_down, b, 4, p), "spread_down window");
    }
}

void certificates(Outcome& out) {
    std::size_t certified = 0;
    auto allowed = [](StepKind k) {
        switch (k) {
            case StepKind::Seed:
            case StepKind::ScaleVar:
            case StepKind::SubstPower:
            case StepKind::ASPower:
            case StepKind::ASSubst:
            case StepKind::GapSum:
            case StepKind::Add:
            case StepKind::Mul:
            case StepKind::FrobTwist:
                return true;
        }
        return false;
    };
    for (const auto& entry : corpus::acceptors()) {
        const std::uint32_t k = digit_base(entry.acceptor);
        const auto& field = GaloisField::get(k, 1);
        const Acceptor canon = canonical_language(entry.acceptor);
        if (!is_sparse(canon).sparse) continue;
        for (const auto& f : decompose(canon)) {
            if (f.num_cycles() > 3) continue;
            if (f.radix_position() && !is_well_ordered(f).well_ordered) continue;
            const Certificate cert = certify_sparse(f, field.one());
            for (const auto& s : cert.steps) out.expect(allowed(s.kind), entry.name + ": step outside the closure operations");
            const bool radix = f.radix_position().has_value();
            const Rational bound = radix ? Rational(64) : Rational(1024);
            const std::size_t digits = radix ? 8 : 0;
            std::map<Rational, FieldElement> expected;
            for (const auto& x : enumerate(f, bound, digits)) {
                if (x < bound) expected.emplace(x, field.one());
            }
            const auto check = verify_certificate(cert, GenSeries::exact(field, expected), Window::below(bound, std::int64_t(digits)));
            out.expect(check.ok, entry.name + ": replay mismatch");
            ++certified;
        }
        if (!has_radix_symbol(entry.acceptor)) {
            // the whole series, all components at once
            const auto c = classify_series(SeriesSource::from_dfao(entry.acceptor, field), {.replay_precision = 1024});
            out.expect(c.sparse && c.replay_check.ok, entry.name + ": series replay at 1024");
        }
    }
    out.expect(certified >= 30, "fewer than 30 certified components");
    out.note << (out.ok ? "" : "; ") << certified << " components certified";
}

void dichotomy(Outcome& out) {
    std::size_t sparse_count = 0, dense_count = 0;
    for (const auto& entry : corpus::acceptors()) {
        const auto g = classify_growth(entry.acceptor);
        const Acceptor canon = canonical_language(entry.acceptor);
        const bool sparse_verdict = is_sparse(canon).sparse;
        out.expect(g.sparse == sparse_verdict, entry.name + ": verdicts disagree");
        for (std::size_t n = 0; n <= 20; ++n) out.expect(g.census[n] == census(canon, n), entry.name + ": census");
        if (g.sparse) {
            ++sparse_count;
            out.expect(!g.witness, entry.name + ": sparse with a pump witness");
            for (std::size_t n = 1; n <= 20; ++n) {
                const double bound = g.fitted_constant * std::pow(double(n), double(g.degree));
                out.expect(g.census[n].convert_to<double>() <= bound * (1 + 1e-12), entry.name + ": census above C n^d");
            }
        } else {
            ++dense_count;
            out.expect(g.witness.has_value() && g.beta > 0, entry.name + ": no pump witness");
            if (!g.witness) continue;
            const auto& w = *g.witness;
            out.expect(w.first.size() == w.second.size() && w.first != w.second, entry.name + ": witness loops");
            // every product of up to 4 loops stays in the language
            for (int len = 0; len <= 4; ++len) {
                for (int mask = 0; mask < (1 << len); ++mask) {
                    Word word = w.prefix;
                    for (int i = 0; i < len; ++i) {
                        const Word& loop = (mask >> i) & 1 ? w.second : w.first;
                        word.insert(word.end(), loop.begin(), loop.end());
                    }
                    word.insert(word.end(), w.suffix.begin(), w.suffix.end());
                    out.expect(accepts(canon, word), entry.name + ": pumped word rejected");
                }
            }
            for (std::size_t n = 1; n <= 20; ++n) {
                const std::size_t fixed = w.prefix.size() + w.suffix.size();
                if (n < fixed) continue;
                const double lower = std::pow(2.0, double((n - fixed) / w.first.size()));
                out.expect(g.census[n].convert_to<double>() >= lower, entry.name + ": census below the pump bound");
            }
            out.expect(g.exponential_bound_holds, entry.name + ": census(n) < 2^(beta n)");
        }
    }
    out.note << (out.ok ? "" : "; ") << sparse_count << " sparse, " << dense_count << " non-sparse";
}

}  // namespace

int main() {
    criterion(1, "Thue-Morse fidelity", 1, thue_morse_fidelity);
    criterion(2, "Christol witness X^2+X+t", 1, christol_witness);
    criterion(3, "closed-form oracle", 10, closed_form_oracle);
    criterion(4, "Moore identity and gap sums", 10, moore_gap_sum);
    criterion(5, "Artin-Schreier solver", 10, artin_schreier);
    criterion(6, "union and Minkowski sum", 30, ring_closure);
    criterion(7, "spread operations", 30, spreads);
    criterion(8, "certificate replay", 60, certificates);
    criterion(9, "sparse/exponential dichotomy", 60, dichotomy);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
