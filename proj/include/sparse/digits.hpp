#pragma once

// Base-k words for natural numbers and for k-adic rationals with a radix point.
// Words are stored most significant symbol first.

#include "sparse/numbers.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sparse {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

/// The radix point symbol. Digits are 0..k-1 with k <= 36 for text I/O.
inline constexpr Symbol kRadix = 255;
inline constexpr std::uint32_t kMaxBase = 64;

/// A k-adic rational numerator / base^exponent with the exponent minimal.
struct SpRational {
    BigInt numerator = 0;
    std::uint32_t exponent = 0;
    std::uint32_t base = 2;

    static SpRational from_rational(const Rational& x, std::uint32_t base);
    Rational value() const;
};

Word encode_nat(const BigInt& n, std::uint32_t k);
/// Strict inverse of encode_nat: rejects leading zeros and out-of-range symbols.
BigInt decode_nat(const Word& w, std::uint32_t k);

/// Minimal expansion of x in S_k: integer digits, the radix, then fraction digits.
Word encode_sp(const Rational& x, std::uint32_t k);
/// Value of a valid radix word; throws PreconditionError when w is not in E_k.
Rational decode_sp(const Word& w, std::uint32_t k);

/// Membership in E_k: nonempty, exactly one radix, first and last symbols nonzero.
bool is_valid_radix_word(const Word& w, std::uint32_t k);

/// Positional value with no validity requirements; leading and trailing zeros
/// are allowed and a missing radix means an integer.
Rational word_value(const Word& w, std::uint32_t k);

/// Text form: digits 0-9 then a-z, "." for the radix.
std::string to_text(const Word& w);
Word parse_word(std::string_view text, std::uint32_t k);

std::string symbol_text(Symbol s);

}  // namespace sparse
