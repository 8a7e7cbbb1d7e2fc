#pragma once

// Sparseness of regular languages over digit alphabets, decomposition into
// simple sparse components v1 w1* v2 ... ws* v(s+1), and the closed forms of
// the values those components denote.

#include "sparse/automaton.hpp"

#include <optional>
#include <span>
#include <vector>

namespace sparse {

inline constexpr std::size_t kDefaultComponentCap = 10000;

/// v[0] w[0]^n0 v[1] ... w[s-1]^n(s-1) v[s]. At most one radix symbol, and only inside a fixed word.
struct SimpleSparseForm {
    std::uint32_t base = 2;
    std::vector<Word> fixed;   // v_1 .. v_{s+1}
    std::vector<Word> cycles;  // w_1 .. w_s

    std::size_t num_cycles() const { return cycles.size(); }
    /// Index of the fixed word holding the radix, if any.
    std::optional<std::size_t> radix_position() const;
    /// Number of cycles left of the radix (all of them for integer forms).
    std::size_t pre_radix_cycles() const;
    void validate() const;
    Word pump(std::span<const std::uint64_t> counts) const;

    bool operator==(const SimpleSparseForm&) const = default;
};

/// value(n) = sum_i pre[i] * X_i + sum_i post[i] * Y_i where, with J pre-radix cycles,
///   X_i = k^(delta_J n_J + ... + delta_(J-i+1) n_(J-i+1))    (i = 0..J)
///   Y_i = k^-(delta_(J+1) n_(J+1) + ... + delta_(J+i) n_(J+i)) (i = 0..r)
/// Integer forms have an empty post list.
struct ClosedForm {
    std::uint32_t base = 2;
    std::vector<Rational> pre;            // c_0 .. c_J
    std::vector<Rational> post;           // d_J .. d_s (empty for integer sets)
    std::vector<std::uint32_t> periods;   // delta_1 .. delta_s, word order

    bool has_radix() const { return !post.empty(); }
    std::size_t pre_cycles() const { return pre.empty() ? 0 : pre.size() - 1; }
    std::size_t num_cycles() const { return periods.size(); }
    Rational value(std::span<const std::uint64_t> counts) const;
    /// Integer-part and fractional-part contributions separately.
    Rational pre_value(std::span<const std::uint64_t> counts) const;
    Rational post_value(std::span<const std::uint64_t> counts) const;

    bool operator==(const ClosedForm&) const = default;
};

ClosedForm closed_form(const SimpleSparseForm& f);

/// Member values <= bound, ascending and without repeats, found by pumping
/// and decoding. Radix forms only contribute words with at most
/// `max_fraction_digits` digits after the radix.
std::vector<Rational> enumerate(const SimpleSparseForm& f, const Rational& bound, std::size_t max_fraction_digits = 0);

/// Acceptor (most significant first) for the words of a form.
Acceptor form_acceptor(const SimpleSparseForm& f, const std::vector<Symbol>& alphabet);

struct PumpWitness {
    Word prefix, first, second, suffix;  // prefix {first, second}* suffix is inside the language
};

struct SparsenessVerdict {
    bool sparse = true;
    std::size_t degree = 0;                      // max cycles on an accepting path
    std::vector<SimpleSparseForm> components;    // sparse case
    std::optional<PumpWitness> witness;          // non-sparse case
    double alpha = 0.0;                          // least-squares growth exponent estimate
};

struct AnalysisOptions {
    std::size_t component_cap = kDefaultComponentCap;
    std::size_t state_cap = kDefaultStateCap;
    bool with_components = true;
};

/// Base of a digit alphabet {0..k-1}, optionally with the radix symbol.
std::uint32_t digit_base(const Acceptor& a);
bool has_radix_symbol(const Acceptor& a);

/// Restricts to canonical encodings: no leading zero for digit alphabets,
/// membership in E_k for radix alphabets. Result reads most significant first.
Acceptor canonical_language(const Acceptor& a, std::size_t state_cap = kDefaultStateCap);

/// Sparseness of the accepted language (taken as given, not canonicalized).
SparsenessVerdict is_sparse(const Acceptor& a, const AnalysisOptions& opts = {});

/// Disjoint simple sparse components covering the language. Throws
/// PreconditionError on non-sparse input and CapExceeded past the cap.
std::vector<SimpleSparseForm> decompose(const Acceptor& a, const AnalysisOptions& opts = {});

struct GrowthReport {
    bool sparse = true;
    std::size_t degree = 0;
    double alpha = 0.0;              // slope of log census(n) against log(k^n - 1)
    double beta = 0.0;               // exponential rate from the pump witness
    double fitted_constant = 0.0;    // max census(n) / n^degree for 1 <= n <= horizon
    std::size_t components = 0;
    std::vector<BigInt> census;      // census(0..horizon)
    bool polynomial_bound_holds = false;
    bool exponential_bound_holds = false;
    std::optional<PumpWitness> witness;
};

/// Growth classification of the set encoded by a (canonicalized first).
GrowthReport classify_growth(const Acceptor& a, std::size_t horizon = 20, const AnalysisOptions& opts = {});

struct WellOrderReport {
    bool well_ordered = true;
    bool inequalities_hold = true;   // pre part >= 0 and post part <= 0 for counts <= 3
    bool descent_found = false;      // raising one post-radix count within counts <= 3 lowered the value
};

/// Exact decision: a radix form is well-ordered iff, for each post-radix cycle w,
/// every tail T that can follow w^n satisfies T0... <= w w w ... lexicographically.
WellOrderReport is_well_ordered(const SimpleSparseForm& f);

}  // namespace sparse
