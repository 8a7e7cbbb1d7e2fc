#include "sparse/christol.hpp"

#include "sparse/sp_sets.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace sparse {

namespace {

std::vector<Symbol> digit_alphabet(std::uint32_t p) {
    std::vector<Symbol> out;
    for (std::uint32_t d = 0; d < p; ++d) out.push_back(Symbol(d));
    return out;
}

FieldElement output_value(const GaloisField& field, std::uint32_t code) {
    if (BigInt(code) >= field.order()) {
        throw PreconditionError("output code " + std::to_string(code) + " does not name an element of F_" + field.order().str());
    }
    return field.from_index(code);
}

void require_digit_machine(const Dfao& m, std::uint32_t p) {
    m.validate();
    for (std::uint32_t d = 0; d < p; ++d) {
        if (m.symbol_index(Symbol(d)) < 0) throw PreconditionError("machine alphabet lacks the digit " + std::to_string(d));
    }
}

}  // namespace

TruncatedSeries dfao_to_series(const Dfao& m, const GaloisField& field, std::uint64_t n) {
    const std::uint32_t p = field.characteristic();
    require_digit_machine(m, p);
    TruncatedSeries s = TruncatedSeries::zero(field, n);
    std::vector<FieldElement> values(m.num_states());
    for (StateId q = 0; q < m.num_states(); ++q) values[q] = output_value(field, m.outputs[q]);
    for (std::uint64_t i = 0; i < n; ++i) s.set(i, values[m.state_after(encode_nat(BigInt(i), p))]);
    return s;
}

SeriesSource SeriesSource::from_dfao(Dfao m, const GaloisField& field) {
    SeriesSource s;
    s.field = &field;
    s.machine = std::move(m);
    return s;
}

SeriesSource SeriesSource::from_equation(AlgebraicEquation eq, std::vector<FieldElement> seed) {
    SeriesSource s;
    s.field = eq.field;
    s.equation = std::move(eq);
    s.seed = std::move(seed);
    return s;
}

// ---------------------------------------------------------------------------
// p-kernel

Dfao kernel_automaton(const TruncatedSeries& f, const EmpiricalOptions& opts) {
    const std::uint32_t p = f.field->characteristic();
    const std::uint64_t n = std::min(opts.precision, f.precision);
    if (n == 0) throw PreconditionError("kernel_automaton: no coefficients");
    if (f.field->order() > BigInt(std::numeric_limits<std::uint32_t>::max())) throw PreconditionError("kernel_automaton: field too large for output codes");

    std::vector<std::uint32_t> dense(n, 0);
    for (const auto& [e, c] : f.coeffs) {
        if (e < n) dense[e] = std::uint32_t(c.index());
    }
    // subsequence n -> f(p^k n + r), stored as (p^k, r)
    struct Sub {
        std::uint64_t scale, offset;
        std::uint64_t known() const { return offset >= bound ? 0 : (bound - offset + scale - 1) / scale; }
        std::uint64_t bound;
    };
    auto at = [&](const Sub& s, std::uint64_t i) { return dense[s.scale * i + s.offset]; };
    auto same = [&](const Sub& a, const Sub& b) -> std::optional<bool> {
        const std::uint64_t len = std::min(a.known(), b.known());
        if (len < opts.min_agreement) return std::nullopt;
        for (std::uint64_t i = 0; i < len; ++i) {
            if (at(a, i) != at(b, i)) return false;
        }
        return true;
    };

    Dfao m;
    m.alphabet = digit_alphabet(p);
    m.direction = Direction::Lsd;
    std::vector<Sub> states{{1, 0, n}};
    m.transitions.emplace_back(p, 0);
    m.outputs.push_back(dense[0]);
    if (states[0].known() < opts.min_agreement) throw CapExceeded("kernel_automaton: precision below the agreement length");
    for (std::size_t q = 0; q < states.size(); ++q) {
        const Sub parent = states[q];
        for (std::uint32_t d = 0; d < p; ++d) {
            const Sub child{parent.scale * p, parent.offset + d * parent.scale, n};
            std::optional<StateId> target;
            bool comparable = false;
            for (StateId t = 0; t < states.size() && !target; ++t) {
                const auto eq = same(child, states[t]);
                if (eq) comparable = true;
                if (eq && *eq) target = t;
            }
            if (!target) {
                if (!comparable || child.known() < opts.min_agreement) {
                    throw CapExceeded("kernel_automaton: kernel did not stabilize within " + std::to_string(n) + " coefficients");
                }
                if (states.size() >= opts.state_cap) throw CapExceeded("kernel_automaton: more than " + std::to_string(opts.state_cap) + " kernel states");
                target = StateId(states.size());
                states.push_back(child);
                m.transitions.emplace_back(p, 0);
                m.outputs.push_back(dense[child.offset]);
            }
            m.transitions[q][d] = *target;
        }
    }
    for (std::uint64_t i = 0; i < n; ++i) {
        if (m.run(encode_nat(BigInt(i), p)) != dense[i]) {
            throw VerificationFailure("kernel_automaton: automaton disagrees with the stream at n = " + std::to_string(i));
        }
    }
    return m;
}

CoefficientAutomaton coefficient_automaton(const SeriesSource& src, const EmpiricalOptions& opts) {
    if (!src.field) throw PreconditionError("series source without a field");
    CoefficientAutomaton out;
    if (src.machine) {
        require_digit_machine(*src.machine, src.field->characteristic());
        for (auto code : src.machine->outputs) output_value(*src.field, code);
        out.machine = *src.machine;
        return out;
    }
    if (!src.equation) throw PreconditionError("series source needs a machine or an equation");
    const TruncatedSeries f = equation_to_coeffs(*src.equation, src.seed, opts.precision);
    out.machine = kernel_automaton(f, opts);
    out.empirical = true;
    out.precision = opts.precision;
    out.min_agreement = opts.min_agreement;
    return out;
}

Acceptor support_acceptor(const SeriesSource& src, const EmpiricalOptions& opts) {
    return minimize(support_of(coefficient_automaton(src, opts).machine));
}

// ---------------------------------------------------------------------------
// certificates

const char* step_name(StepKind k) {
    switch (k) {
        case StepKind::Seed: return "Seed";
        case StepKind::ScaleVar: return "ScaleVar";
        case StepKind::SubstPower: return "SubstPower";
        case StepKind::ASPower: return "ASPower";
        case StepKind::ASSubst: return "ASSubst";
        case StepKind::GapSum: return "GapSum";
        case StepKind::Add: return "Add";
        case StepKind::Mul: return "Mul";
        case StepKind::FrobTwist: return "FrobTwist";
    }
    return "?";
}

std::optional<StepKind> parse_step_kind(const std::string& name) {
    for (auto k : {StepKind::Seed, StepKind::ScaleVar, StepKind::SubstPower, StepKind::ASPower, StepKind::ASSubst, StepKind::GapSum,
                   StepKind::Add, StepKind::Mul, StepKind::FrobTwist}) {
        if (name == step_name(k)) return k;
    }
    return std::nullopt;
}

namespace {

std::size_t arity(StepKind k) {
    switch (k) {
        case StepKind::Seed: return 0;
        case StepKind::Add:
        case StepKind::Mul: return 2;
        default: return 1;
    }
}

bool needs_coeff(StepKind k) { return k == StepKind::Seed || k == StepKind::ScaleVar; }

}  // namespace

std::size_t Certificate::seed(const FieldElement& c, const Rational& e) {
    CertificateStep s;
    s.kind = StepKind::Seed;
    s.coeff = c;
    s.exponent = e;
    steps.push_back(s);
    return steps.size() - 1;
}

std::size_t Certificate::unary(StepKind kind, std::size_t arg) {
    CertificateStep s;
    s.kind = kind;
    s.args = {arg};
    steps.push_back(s);
    return steps.size() - 1;
}

std::size_t Certificate::subst_power(std::size_t arg, const Rational& c, const Rational& d) {
    const std::size_t i = unary(StepKind::SubstPower, arg);
    steps[i].c = c;
    steps[i].d = d;
    return i;
}

std::size_t Certificate::gap_sum(std::size_t arg, std::uint32_t d) {
    const std::size_t i = unary(StepKind::GapSum, arg);
    steps[i].gap = d;
    return i;
}

std::size_t Certificate::binary(StepKind kind, std::size_t a, std::size_t b) {
    CertificateStep s;
    s.kind = kind;
    s.args = {a, b};
    steps.push_back(s);
    return steps.size() - 1;
}

std::size_t Certificate::append(const Certificate& other) {
    if (other.steps.empty()) throw PreconditionError("append: empty certificate");
    const std::size_t offset = steps.size();
    for (CertificateStep s : other.steps) {
        for (auto& a : s.args) a += offset;
        steps.push_back(std::move(s));
    }
    return steps.size() - 1;
}

void Certificate::validate() const {
    if (!field) throw PreconditionError("certificate without a coefficient field");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        const std::string where = "certificate step " + std::to_string(i) + " (" + step_name(s.kind) + "): ";
        if (s.args.size() != arity(s.kind)) throw PreconditionError(where + "wrong number of arguments");
        for (auto a : s.args) {
            if (a >= i) throw PreconditionError(where + "argument must name an earlier step");
        }
        if (needs_coeff(s.kind) && (!s.coeff.attached() || s.coeff.characteristic() != field->characteristic())) {
            throw PreconditionError(where + "coefficient missing or in the wrong characteristic");
        }
        if (s.kind == StepKind::SubstPower && s.c <= 0) throw PreconditionError(where + "c must be positive");
        if (s.kind == StepKind::GapSum && s.gap == 0) throw PreconditionError(where + "gap must be positive");
    }
}

namespace {

std::pair<GenSeries, GenSeries> common(const GenSeries& a, const GenSeries& b) {
    const GaloisField& f = common_field(*a.field, *b.field);
    return {embed(a, f), embed(b, f)};
}

std::string step_label(const Certificate& c, std::size_t i) {
    return "certificate step " + std::to_string(i) + " (" + step_name(c.steps[i].kind) + ")";
}

bool branch_positive(const SupportBounds& b, const char* who) {
    if (b.positive()) return true;
    if (b.negative()) return false;
    throw PreconditionError(std::string(who) + ": support must be strictly positive or strictly negative");
}

}  // namespace

GenSeries replay(const Certificate& c, const Window& w) {
    c.validate();
    const std::size_t n = c.steps.size();
    if (n == 0) return GenSeries::zero(*c.field).restricted(w);
    const std::uint32_t p = c.field->characteristic();

    std::vector<SupportBounds> bounds(n);
    std::vector<std::optional<Window>> windows(n);
    std::vector<std::optional<GenSeries>> values(n);
    auto guarded = [&](std::size_t i, auto&& body) {
        try {
            body();
        } catch (const PreconditionError& e) {
            throw PreconditionError(step_label(c, i) + ": " + e.what());
        }
    };

    for (std::size_t i = 0; i < n; ++i) {
        guarded(i, [&] {
            const auto& s = c.steps[i];
            const SupportBounds* a = s.args.empty() ? nullptr : &bounds[s.args[0]];
            switch (s.kind) {
                case StepKind::Seed: bounds[i] = GenSeries::monomial(s.coeff, s.exponent).bounds; break;
                case StepKind::ScaleVar: bounds[i] = *a; break;
                case StepKind::SubstPower: bounds[i] = bounds_subst_power(*a, s.c, s.d, p); break;
                case StepKind::ASPower: bounds[i] = bounds_power_sum(*a, branch_positive(*a, "ASPower"), 1, p); break;
                case StepKind::ASSubst:
                    if (!a->positive()) throw PreconditionError("support must be strictly positive");
                    bounds[i] = bounds_power_sum(*a, true, 1, p);
                    break;
                case StepKind::GapSum: bounds[i] = bounds_power_sum(*a, branch_positive(*a, "GapSum"), s.gap, p); break;
                case StepKind::Add: bounds[i] = bounds_add(*a, bounds[s.args[1]]); break;
                case StepKind::Mul: bounds[i] = bounds_mul(*a, bounds[s.args[1]]); break;
                case StepKind::FrobTwist: bounds[i] = bounds_frobenius(*a, s.twist, p); break;
            }
        });
    }

    windows[n - 1] = w;
    auto need = [&](std::size_t arg, const Window& x) { windows[arg] = windows[arg] ? join(*windows[arg], x) : x; };
    for (std::size_t i = n; i-- > 0;) {
        if (!windows[i]) continue;
        guarded(i, [&] {
            const auto& s = c.steps[i];
            const Window& wi = *windows[i];
            if (s.args.empty()) return;
            const SupportBounds& a = bounds[s.args[0]];
            switch (s.kind) {
                case StepKind::Seed: break;
                case StepKind::ScaleVar: need(s.args[0], wi); break;
                case StepKind::SubstPower: need(s.args[0], needs_subst_power(wi, s.c, s.d, p)); break;
                case StepKind::ASPower:
                case StepKind::ASSubst:
                case StepKind::GapSum: {
                    const bool positive = a.positive();
                    // the gap sum is checked against a route made of single-step power sums
                    const std::uint32_t step = s.kind == StepKind::GapSum ? s.gap : 1;
                    Window x = positive ? needs_power_sum_pos(wi, 1, a, p) : needs_power_sum_neg(wi, 1, p);
                    if (step > 1) x = join(x, positive ? needs_power_sum_pos(wi, step, a, p) : needs_power_sum_neg(wi, step, p));
                    need(s.args[0], x);
                    break;
                }
                case StepKind::Add:
                    need(s.args[0], wi);
                    need(s.args[1], wi);
                    break;
                case StepKind::Mul: {
                    const auto [wa, wb] = needs_mul(wi, a, bounds[s.args[1]]);
                    need(s.args[0], wa);
                    need(s.args[1], wb);
                    break;
                }
                case StepKind::FrobTwist: need(s.args[0], needs_frobenius(wi, s.twist, p)); break;
            }
        });
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!windows[i]) continue;
        guarded(i, [&] {
            const auto& s = c.steps[i];
            const Window& wi = *windows[i];
            auto arg = [&](std::size_t k) -> GenSeries {
                GenSeries g = *values[s.args[k]];
                g.bounds = bounds[s.args[k]];
                return g;
            };
            switch (s.kind) {
                case StepKind::Seed: values[i] = GenSeries::monomial(s.coeff, s.exponent); break;
                case StepKind::ScaleVar: {
                    const auto [f, alpha] = [&] {
                        GenSeries f = arg(0);
                        const GaloisField& big = common_field(*f.field, s.coeff.field());
                        return std::pair{embed(f, big), embed(s.coeff, big)};
                    }();
                    values[i] = scale_var(f, alpha, wi);
                    break;
                }
                case StepKind::SubstPower: values[i] = subst_power(arg(0), s.c, s.d, wi); break;
                case StepKind::ASPower: values[i] = as_power(arg(0), wi); break;
                case StepKind::ASSubst: values[i] = as_subst(arg(0), wi); break;
                case StepKind::GapSum: values[i] = gap_sum(arg(0), s.gap, wi); break;
                case StepKind::Add: {
                    const auto [a, b] = common(arg(0), arg(1));
                    values[i] = add(a, b, wi);
                    break;
                }
                case StepKind::Mul: {
                    const auto [a, b] = common(arg(0), arg(1));
                    values[i] = mul(a, b, wi);
                    break;
                }
                case StepKind::FrobTwist: values[i] = frobenius_power(arg(0), s.twist, wi); break;
            }
        });
    }
    return values[n - 1]->restricted(w);
}

TruncatedSeries replay(const Certificate& c, std::uint64_t n) {
    const GenSeries g = replay(c, Window::below(Rational(BigInt(n)), 0));
    TruncatedSeries out = to_truncated(g, n);
    if (c.steps.empty()) out.field = c.field;
    return out;
}

namespace {

Rational integer_value(const Word& w, std::uint32_t p) { return word_value(w, p); }

Rational fraction_value(const Word& w, std::uint32_t p) { return word_value(w, p) / Rational(big_pow(p, w.size())); }

std::size_t maybe_subst(Certificate& c, std::size_t arg, const Rational& scale, const Rational& shift) {
    if (scale == 1 && shift == 0) return arg;
    return c.subst_power(arg, scale, shift);
}

// v1 w1* ... ws* v(s+1) read as an integer, peeled from the right:
// [x w^n v] = p^|v|/N * p^(n delta) (N[x] + [w]) + [v] - p^|v| [w] / N,  N = p^delta - 1.
std::size_t build_integer(Certificate& c, std::span<const Word> fixed, std::span<const Word> cycles, std::uint32_t p) {
    if (cycles.empty()) return c.seed(c.field->one(), integer_value(fixed[0], p));
    const std::size_t inner = build_integer(c, fixed.first(fixed.size() - 1), cycles.first(cycles.size() - 1), p);
    const Word& w = cycles.back();
    const Word& v = fixed.back();
    const auto delta = std::uint32_t(w.size());
    const Rational stretch(big_pow(p, delta) - 1);
    const Rational wv = integer_value(w, p);
    const Rational pv(big_pow(p, v.size()));
    const std::size_t h = maybe_subst(c, inner, stretch, wv);
    const std::size_t g = c.gap_sum(h, delta);
    return maybe_subst(c, g, pv / stretch, integer_value(v, p) - pv * wv / stretch);
}

// u0 y* rest after the radix, peeled from the left:
// [.u0 y^n z] = C + p^(-n delta) K([.z] - g),  g = [y]/(p^delta - 1), K = p^-|u0|, C = K([u0] + g).
std::size_t build_fraction(Certificate& c, std::span<const Word> fixed, std::span<const Word> cycles, std::uint32_t p) {
    if (cycles.empty()) return c.seed(c.field->one(), fraction_value(fixed[0], p));
    const std::size_t rest = build_fraction(c, fixed.subspan(1), cycles.subspan(1), p);
    const Word& u0 = fixed[0];
    const Word& y = cycles[0];
    const auto delta = std::uint32_t(y.size());
    const Rational g = integer_value(y, p) / Rational(big_pow(p, delta) - 1);
    const Rational k = Rational(1) / Rational(big_pow(p, u0.size()));
    const std::size_t z = maybe_subst(c, rest, k, -k * g);
    const std::size_t tail = c.gap_sum(z, delta);
    const std::size_t both = c.binary(StepKind::Add, z, tail);
    return maybe_subst(c, both, 1, k * (integer_value(u0, p) + g));
}

bool is_monomial_step(const Certificate& c, std::size_t i) { return c.steps[i].kind == StepKind::Seed; }

/// Number of count tuples giving a word of each length, up to max_len.
std::vector<BigInt> tuple_counts(const SimpleSparseForm& f, std::size_t max_len) {
    std::size_t base = 0;
    for (const auto& v : f.fixed) base += v.size();
    std::vector<BigInt> counts(max_len + 1, 0);
    if (base > max_len) return counts;
    counts[base] = 1;
    for (const auto& w : f.cycles) {
        for (std::size_t len = w.size(); len <= max_len; ++len) counts[len] += counts[len - w.size()];
    }
    return counts;
}

}  // namespace

Certificate certify_sparse(const SimpleSparseForm& f, const FieldElement& value) {
    f.validate();
    const std::uint32_t p = value.characteristic();
    if (f.base != p) throw PreconditionError("certify_sparse: form base differs from the field characteristic");
    Certificate cert;
    cert.field = &value.field();
    if (value.is_zero()) return cert;

    const bool radix = f.radix_position().has_value();
    const Acceptor words = form_acceptor(f, radix ? sp_alphabet(p) : digit_alphabet(p));
    if (is_empty(words)) return cert;
    if (!equivalent(words, canonical_language(words))) throw PreconditionError("certify_sparse: the form has non-canonical words");
    std::size_t cycle_total = 0, fixed_total = 0;
    for (const auto& w : f.cycles) cycle_total += w.size();
    for (const auto& v : f.fixed) fixed_total += v.size();
    const std::size_t horizon = fixed_total + 2 * (cycle_total + words.num_states()) + 2;
    if (tuple_counts(f, horizon) != census_by_length(words, horizon)) {
        throw PreconditionError("certify_sparse: some word has more than one parse");
    }
    if (radix && !is_well_ordered(f).well_ordered) throw PreconditionError("certify_sparse: the form is not well-ordered");

    std::size_t result;
    if (!radix) {
        result = build_integer(cert, f.fixed, f.cycles, p);
    } else {
        const std::size_t j = *f.radix_position();
        const Word& v = f.fixed[j];
        const auto dot = std::find(v.begin(), v.end(), kRadix);
        std::vector<Word> int_fixed(f.fixed.begin(), f.fixed.begin() + std::ptrdiff_t(j));
        int_fixed.emplace_back(v.begin(), dot);
        const std::vector<Word> int_cycles(f.cycles.begin(), f.cycles.begin() + std::ptrdiff_t(j));
        std::vector<Word> frac_fixed{Word(dot + 1, v.end())};
        frac_fixed.insert(frac_fixed.end(), f.fixed.begin() + std::ptrdiff_t(j) + 1, f.fixed.end());
        const std::vector<Word> frac_cycles(f.cycles.begin() + std::ptrdiff_t(j), f.cycles.end());

        if (int_cycles.empty()) {
            const std::size_t fr = build_fraction(cert, frac_fixed, frac_cycles, p);
            if (is_monomial_step(cert, fr)) {
                cert.steps[fr].exponent += integer_value(int_fixed[0], p);
                result = fr;
            } else {
                result = maybe_subst(cert, fr, 1, integer_value(int_fixed[0], p));
            }
        } else if (frac_cycles.empty()) {
            const std::size_t in = build_integer(cert, int_fixed, int_cycles, p);
            result = maybe_subst(cert, in, 1, fraction_value(frac_fixed[0], p));
        } else {
            const std::size_t in = build_integer(cert, int_fixed, int_cycles, p);
            const std::size_t fr = build_fraction(cert, frac_fixed, frac_cycles, p);
            result = cert.binary(StepKind::Mul, in, fr);
        }
    }
    if (!value.is_one()) {
        if (cert.steps.size() == 1) {
            cert.steps[result].coeff = value;
        } else {
            const std::size_t k = cert.seed(value, 0);
            cert.binary(StepKind::Mul, result, k);
        }
    }
    return cert;
}

CertificateCheck verify_certificate(const Certificate& c, const GenSeries& target, const Window& w) {
    const GenSeries got = replay(c, w);
    const auto [a, b] = common(got, target.restricted(w));
    CertificateCheck out;
    out.mismatch = first_difference(a, b);
    out.ok = !out.mismatch;
    return out;
}

CertificateCheck verify_certificate(const Certificate& c, const TruncatedSeries& target, std::uint64_t n) {
    if (target.precision < n) throw PreconditionError("verify_certificate: target known only below " + std::to_string(target.precision));
    return verify_certificate(c, to_gen(target), Window::below(Rational(BigInt(n)), 0));
}

// ---------------------------------------------------------------------------
// classification

SeriesClassification classify_series(const SeriesSource& src, const ClassifyOptions& opts) {
    const CoefficientAutomaton ca = coefficient_automaton(src, opts.empirical);
    const GaloisField& field = *src.field;
    SeriesClassification out;
    out.empirical = ca.empirical;
    out.precision = ca.precision;
    out.min_agreement = ca.min_agreement;
    out.support = minimize(support_of(ca.machine));

    const GrowthReport growth = classify_growth(out.support, 20, opts.analysis);
    out.alpha = growth.alpha;
    out.beta = growth.beta;
    out.sparse = growth.sparse;
    if (!growth.sparse) {
        out.witness = growth.witness;
        return out;
    }

    out.certificate.field = &field;
    std::optional<std::size_t> total;
    const std::set<std::uint32_t> codes(ca.machine.outputs.begin(), ca.machine.outputs.end());
    for (std::uint32_t code : codes) {
        if (code == 0) continue;
        const FieldElement value = output_value(field, code);
        Dfao level = ca.machine;
        for (auto& o : level.outputs) o = o == code ? 1 : 0;
        for (const auto& form : decompose(canonical_language(level, opts.analysis.state_cap), opts.analysis)) {
            out.components.push_back({form, closed_form(form), value});
            const Certificate part = certify_sparse(form, value);
            if (part.steps.empty()) continue;
            const std::size_t at = out.certificate.append(part);
            total = total ? out.certificate.binary(StepKind::Add, *total, at) : at;
        }
    }
    out.replay_precision = opts.replay_precision;
    out.replay_check = verify_certificate(out.certificate, dfao_to_series(ca.machine, field, opts.replay_precision), opts.replay_precision);
    return out;
}

// ---------------------------------------------------------------------------

FieldElement quasi_eval(const QuasiAutomatic& q, const Rational& alpha) {
    if (!q.field) throw PreconditionError("quasi_eval: no coefficient field");
    if (q.a <= 0) throw PreconditionError("quasi_eval: a must be positive");
    const std::uint32_t p = q.field->characteristic();
    q.machine.validate();
    const Rational x = q.a * alpha + q.b;
    if (x < 0 || !in_sp(x, p)) return q.field->zero();
    const Word w = encode_sp(x, p);
    for (auto s : w) {
        if (q.machine.symbol_index(s) < 0) throw PreconditionError("quasi_eval: machine alphabet lacks " + symbol_text(s));
    }
    return output_value(*q.field, q.machine.run(w));
}

}  // namespace sparse
