#pragma once

// Truncated power series over F_q, generalized series with rational
// exponents, and the Artin-Schreier operators built on them.

#include "sparse/galois_field.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace sparse {

// ---------------------------------------------------------------------------
// power series in t, known below a precision

struct TruncatedSeries {
    const GaloisField* field = nullptr;
    std::uint64_t precision = 0;                       // coefficients of t^n known for n < precision
    std::map<std::uint64_t, FieldElement> coeffs;      // nonzero entries only

    static TruncatedSeries zero(const GaloisField& f, std::uint64_t precision);
    static TruncatedSeries monomial(const FieldElement& c, std::uint64_t e, std::uint64_t precision);
    static TruncatedSeries from_dense(const std::vector<FieldElement>& dense);

    FieldElement coeff(std::uint64_t n) const;  // throws PreconditionError at n >= precision
    /// Lowest exponent with a nonzero coefficient, or the precision when none is known.
    std::uint64_t order() const;
    void set(std::uint64_t n, const FieldElement& c);
    bool operator==(const TruncatedSeries& o) const;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
/// Convolution; the result precision is the smaller operand precision.
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(const TruncatedSeries& a, const FieldElement& c);
TruncatedSeries power(const TruncatedSeries& a, std::uint32_t k);

/// F(alpha t)
TruncatedSeries scale_var(const TruncatedSeries& f, const FieldElement& alpha);
/// t^d F(t^c). Throws PreconditionError when an image exponent is negative or fractional.
TruncatedSeries subst_power(const TruncatedSeries& f, const Rational& c, const Rational& d);
/// F^(p^j)
TruncatedSeries frobenius_power(const TruncatedSeries& f, std::uint32_t j);

/// F + F^p + F^(p^2) + ...; requires F(0) = 0.
TruncatedSeries as_power(const TruncatedSeries& f);
/// F(t) + F(t^p) + F(t^(p^2)) + ...; requires F(0) = 0.
TruncatedSeries as_subst(const TruncatedSeries& f);
/// F + F^(p^d) + F^(p^2d) + ... summed directly.
TruncatedSeries gap_sum_direct(const TruncatedSeries& f, std::uint32_t d);
/// The same sum as sum_i c_i * as_power(a_i F) over F_(p^d); coefficients land in the common field.
TruncatedSeries gap_sum_moore(const TruncatedSeries& f, std::uint32_t d);
/// Both routes; throws VerificationFailure when they disagree.
TruncatedSeries gap_sum(const TruncatedSeries& f, std::uint32_t d);

/// Image of every coefficient in a larger field.
TruncatedSeries embed(const TruncatedSeries& f, const GaloisField& target);

/// sum_j B_j(t) X^j with B_j = sum of coeff t^i over the (i, j, coeff) terms.
struct AlgebraicEquation {
    struct Term {
        std::uint64_t i = 0;
        std::uint32_t j = 0;
        FieldElement coeff;
    };
    const GaloisField* field = nullptr;
    std::vector<Term> terms;

    std::uint32_t degree() const;
    /// Constant-in-t part of B_j.
    FieldElement constant_of(std::uint32_t j) const;
    void validate() const;
};

/// t-adic order of sum_j B_j F^j at F's precision (the precision itself when it vanishes).
std::uint64_t verify_algebraic(const TruncatedSeries& f, const AlgebraicEquation& eq);

/// Undetermined coefficients from the seed f(0..k-1) up to precision n. Throws
/// PreconditionError when the seed is inconsistent, no coefficient fits, or
/// several do (the message lists them).
TruncatedSeries equation_to_coeffs(const AlgebraicEquation& eq, const std::vector<FieldElement>& seed, std::uint64_t n);

// ---------------------------------------------------------------------------
// generalized series sum f(e) t^e over rational exponents

inline constexpr std::int64_t kExactDepth = std::int64_t(1) << 40;
inline constexpr std::int64_t kNoValuationFloor = std::numeric_limits<std::int64_t>::min();

/// p-adic valuation of a nonzero rational; a huge value for 0.
std::int64_t valuation(const Rational& x, std::uint32_t p);

/// Exponents e < hi whose denominator has p-part at most p^depth.
struct Window {
    std::optional<Rational> hi;  // none: unbounded
    std::int64_t depth = kExactDepth;

    bool contains(const Rational& e, std::uint32_t p) const;
    bool covers(const Window& o) const;
    static Window exact() { return {}; }
    static Window below(const Rational& hi, std::int64_t depth) { return {hi, depth}; }
};

/// Smallest window covering both.
Window join(const Window& a, const Window& b);

/// Facts about the whole (possibly infinite) support, tracked structurally.
struct SupportBounds {
    bool empty = false;
    std::optional<Rational> lo;       // support >= lo (none: unknown)
    std::optional<Rational> up;       // support <= up, or < up when up_strict (none: unknown)
    bool up_strict = false;
    std::int64_t valuation_floor = kNoValuationFloor;  // every exponent has valuation >= this

    bool positive() const;  // support inside (0, inf)
    bool negative() const;  // support inside (-inf, 0)
};

struct GenSeries {
    const GaloisField* field = nullptr;
    std::map<Rational, FieldElement> terms;  // nonzero, all inside the window
    Window window;                           // terms are complete on it
    SupportBounds bounds;

    std::uint32_t p() const { return field->characteristic(); }
    /// A finite series known exactly.
    static GenSeries exact(const GaloisField& f, std::map<Rational, FieldElement> terms);
    static GenSeries monomial(const FieldElement& c, const Rational& e);
    static GenSeries zero(const GaloisField& f) { return exact(f, {}); }

    FieldElement coeff(const Rational& e) const;  // throws PreconditionError outside the window
    /// Same series known on a smaller window.
    GenSeries restricted(const Window& w) const;
};

GenSeries to_gen(const TruncatedSeries& f);
/// Requires integral exponents and a window reaching precision n at depth 0.
TruncatedSeries to_truncated(const GenSeries& g, std::uint64_t n);
GenSeries embed(const GenSeries& g, const GaloisField& target);

// Every operation below computes its result on the requested window `w` and
// throws PreconditionError when an input is not known on the window that
// requires. The needs_* functions report those input windows.

Window needs_subst_power(const Window& w, const Rational& c, const Rational& d, std::uint32_t p);
Window needs_frobenius(const Window& w, std::int64_t j, std::uint32_t p);
/// For sum_{k>=0} F^(p^(step k)) (positive input with support >= lo).
Window needs_power_sum_pos(const Window& w, std::uint32_t step, const SupportBounds& input, std::uint32_t p);
/// For sum_{j>=1} F^(p^(-step j)) (negative input).
Window needs_power_sum_neg(const Window& w, std::uint32_t step, std::uint32_t p);
/// Windows for the two factors of a product.
std::pair<Window, Window> needs_mul(const Window& w, const SupportBounds& a, const SupportBounds& b);

SupportBounds bounds_add(const SupportBounds& a, const SupportBounds& b);
SupportBounds bounds_mul(const SupportBounds& a, const SupportBounds& b);
SupportBounds bounds_subst_power(const SupportBounds& a, const Rational& c, const Rational& d, std::uint32_t p);
SupportBounds bounds_frobenius(const SupportBounds& a, std::int64_t j, std::uint32_t p);
SupportBounds bounds_power_sum(const SupportBounds& a, bool positive, std::uint32_t step, std::uint32_t p);

GenSeries add(const GenSeries& a, const GenSeries& b, const Window& w);
GenSeries sub(const GenSeries& a, const GenSeries& b, const Window& w);
GenSeries mul(const GenSeries& a, const GenSeries& b, const Window& w);
GenSeries scale(const GenSeries& a, const FieldElement& c);
/// F(alpha t); needs alpha^e for every exponent, so denominators must be prime to q - 1 after removing p.
GenSeries scale_var(const GenSeries& a, const FieldElement& alpha, const Window& w);
GenSeries subst_power(const GenSeries& a, const Rational& c, const Rational& d, const Window& w);
/// F^(p^j), j of either sign.
GenSeries frobenius_power(const GenSeries& a, std::int64_t j, const Window& w);

enum class Branch { Positive, Negative };

/// Positive input: F + F^p + ... . Negative input: -(F^(1/p) + F^(1/p^2) + ...).
/// Either way G^p - G = -F.
GenSeries as_power(const GenSeries& f, const Window& w);
/// F(t) + F(t^p) + ... for positive input.
GenSeries as_subst(const GenSeries& f, const Window& w);
/// Positive input: F + F^(p^d) + F^(p^2d) + ... . Negative input: F^(p^-d) + F^(p^-2d) + ... .
GenSeries gap_sum_direct(const GenSeries& f, std::uint32_t d, const Window& w);
/// Moore route for either sign, in the common field of F and F_(p^d).
GenSeries gap_sum_moore(const GenSeries& f, std::uint32_t d, const Window& w);
/// Direct route checked against the Moore route.
GenSeries gap_sum(const GenSeries& f, std::uint32_t d, const Window& w);

/// The p solutions G of G^p - G + F = 0, computed on a window large enough
/// for the residual to be checked on `w`. The constant part may force a
/// degree-p extension of the coefficient field.
std::vector<GenSeries> solve_artin_schreier(const GenSeries& f, const Window& w);
/// G^p - G + F on the largest window where all three are known.
GenSeries artin_schreier_residual(const GenSeries& g, const GenSeries& f);

/// Lowest exponent where the two series differ on the window both know, if any.
std::optional<Rational> first_difference(const GenSeries& a, const GenSeries& b);

}  // namespace sparse
