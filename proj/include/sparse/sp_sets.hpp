#pragma once

// p-automatic subsets of S_p = { m / p^n } held as acceptors of canonical
// base-p expansions (most significant first, exactly one radix point).

#include "sparse/sparse_analysis.hpp"

#include <utility>
#include <vector>

namespace sparse {

enum class Flag { Unknown, Yes, No };

const char* flag_name(Flag f);

/// {0..p-1, radix}
std::vector<Symbol> sp_alphabet(std::uint32_t p);

struct SpSet {
    std::uint32_t p = 2;
    Acceptor acceptor;             // minimal, Msd, language inside E_p
    Flag sparse = Flag::Unknown;
    Flag well_ordered = Flag::Unknown;

    /// Restricts `a` to E_p and fills the flags by exact analysis.
    static SpSet from_acceptor(const Acceptor& a, std::uint32_t p, std::size_t state_cap = kDefaultStateCap);
    /// Embeds a set of naturals given over the digit alphabet {0..p-1}.
    static SpSet from_naturals(const Acceptor& a, std::uint32_t p, std::size_t state_cap = kDefaultStateCap);
    static SpSet from_values(const std::vector<Rational>& values, std::uint32_t p);
    /// Union of the forms' words (a radix is appended to integer forms), restricted to E_p.
    static SpSet from_forms(const std::vector<SimpleSparseForm>& forms, std::uint32_t p);

    bool contains(const Rational& x) const;
    bool empty() const { return is_empty(acceptor); }
    /// Members <= bound with at most `fraction_digits` digits after the radix, ascending.
    std::vector<Rational> window(const Rational& bound, std::size_t fraction_digits) const;
    std::vector<SimpleSparseForm> components(std::size_t cap = kDefaultComponentCap) const;
};

SpSet sp_union(const SpSet& s, const SpSet& t);
/// Requires both operands to be well-ordered (flag Yes).
SpSet minkowski_sum(const SpSet& s, const SpSet& t, std::size_t state_cap = kDefaultStateCap);
/// Same carry construction without the well-ordering precondition.
SpSet raw_sum(const SpSet& s, const SpSet& t, std::size_t state_cap = kDefaultStateCap);
/// {x - c : x in s, x >= c} for c in S_p.
SpSet translate_down(const SpSet& s, const Rational& c, std::size_t state_cap = kDefaultStateCap);
SpSet translate_up(const SpSet& s, const Rational& c, std::size_t state_cap = kDefaultStateCap);
/// {c - x : x in s, x <= c}.
SpSet reflect(const SpSet& s, const Rational& c, std::size_t state_cap = kDefaultStateCap);
SpSet scale_by_integer(const SpSet& s, std::uint32_t m, std::size_t state_cap = kDefaultStateCap);
/// union over n >= 0 of p^n s
SpSet shift_up_union(const SpSet& s, std::size_t state_cap = kDefaultStateCap);
/// union over n >= 1 of p^-n s
SpSet shift_down_union(const SpSet& s, std::size_t state_cap = kDefaultStateCap);

/// (s cap [0, b), s cap (b, inf)); b itself is in neither part.
std::pair<SpSet, SpSet> split(const SpSet& s, const Rational& b);

/// union over n >= 0 of ((t - b) p^n + b). Requires t inside (b, inf), sparse and well-ordered.
SpSet spread_up(const SpSet& t, const Rational& b, std::size_t state_cap = kDefaultStateCap);
/// union over n >= 1 of ((u - b) p^-n + b). Requires u inside [0, b), sparse and well-ordered.
SpSet spread_down(const SpSet& u, const Rational& b, std::size_t state_cap = kDefaultStateCap);

/// #{x in s : x < p^n and p^n x integral}
BigInt weak_sparse_census(const SpSet& s, std::size_t n);

/// Closed forms of a S + b. Throws PreconditionError unless the image stays in S_p.
std::vector<ClosedForm> affine(const std::vector<ClosedForm>& forms, const Rational& a, const Rational& b);

enum class Comparison { Less, Equal, Greater };
/// Canonical words x of E_p (radix alphabet) with x < b, x == b or x > b.
Acceptor comparison_acceptor(const Rational& b, std::uint32_t p, Comparison which);

}  // namespace sparse
