#pragma once

// Arithmetic in F_{p^m}: elements are coordinate vectors over a fixed monic
// irreducible modulus. Fields are interned, so a FieldElement only carries a
// pointer to its field plus its digits.

#include "sparse/numbers.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sparse {

inline constexpr std::uint32_t kMaxPrime = 64;
inline constexpr std::uint32_t kMaxDegree = 12;

class FieldElement;

class GaloisField {
public:
    /// Interned field F_{p^m}. Throws PreconditionError for p not prime,
    /// p > 64, m == 0 or m > 12.
    static const GaloisField& get(std::uint32_t p, std::uint32_t m);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return m_; }
    BigInt order() const { return big_pow(p_, m_); }

    /// Monic modulus, coefficients low degree first (size m + 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    /// True when the modulus came from the built-in Conway table.
    bool conway() const { return conway_; }

    FieldElement zero() const;
    FieldElement one() const;
    /// The class of x modulo the modulus (the polynomial generator).
    FieldElement generator() const;
    FieldElement from_int(std::int64_t v) const;  // image of an integer in the prime subfield
    FieldElement from_digits(std::span<const std::uint32_t> digits) const;
    /// Digits are the base-p expansion of index, low digit first.
    FieldElement from_index(std::uint64_t index) const;

    /// Every element, in index order. Only for fields with at most 2^20 elements.
    std::vector<FieldElement> elements() const;

    bool operator==(const GaloisField& o) const { return this == &o; }

private:
    friend class FieldElement;
    GaloisField(std::uint32_t p, std::uint32_t m);

    void mul_digits(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const;
    bool has_tables() const { return !exp_table_.empty(); }
    std::uint64_t index_of(const std::uint8_t* d) const;

    std::uint32_t p_;
    std::uint32_t m_;
    std::vector<std::uint32_t> modulus_;
    bool conway_ = false;
    // log/exp tables for fields with q <= 2^16
    std::vector<std::uint32_t> exp_table_;
    std::vector<std::uint32_t> log_table_;

    // images of this field's generator in larger fields, keyed by target degree
    mutable std::mutex embed_mutex_;
    mutable std::map<std::uint32_t, std::vector<std::uint32_t>> generator_images_;
    friend FieldElement embed(const FieldElement&, const GaloisField&);
};

class FieldElement {
public:
    FieldElement() = default;  // detached; any arithmetic on it throws

    const GaloisField& field() const;
    bool attached() const { return field_ != nullptr; }
    std::uint32_t characteristic() const { return field().characteristic(); }

    std::uint32_t digit(std::size_t i) const { return i < kMaxDegree ? digits_[i] : 0; }
    std::vector<std::uint32_t> digits() const;
    std::uint64_t index() const;  // requires q < 2^64
    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement inverse() const;
    FieldElement pow(const BigInt& e) const;
    FieldElement pow(std::uint64_t e) const { return pow(BigInt(e)); }

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool operator<(const FieldElement& o) const;  // index order, for canonical sorting

    std::string to_string() const;

private:
    friend class GaloisField;
    const GaloisField* field_ = nullptr;
    std::array<std::uint8_t, kMaxDegree> digits_{};

    void check_same(const FieldElement& o) const;
};

/// x^{p^e}; negative e gives iterated p-th roots.
FieldElement frobenius(const FieldElement& x, std::int64_t e);
inline FieldElement pth_root(const FieldElement& x) { return frobenius(x, -1); }

/// Image of x under the embedding F_{p^m} -> F_{p^M}; requires m | M.
FieldElement embed(const FieldElement& x, const GaloisField& target);
/// Preimage of y in the subfield `sub`, or nullopt when y does not lie in it.
std::optional<FieldElement> restrict_to(const FieldElement& y, const GaloisField& sub);
/// The field F_{p^lcm(a,b)} containing both.
const GaloisField& common_field(const GaloisField& a, const GaloisField& b);

/// A root a of a^p - a = c in c's field, or nullopt when none exists there.
std::optional<FieldElement> artin_schreier_root(const FieldElement& c);

/// Basis a_1..a_d of F_{p^d} over F_p with coefficients c_1..c_d such that
/// sum_i c_i a_i^{p^j} is 1 for j = 0 (mod d) and 0 otherwise.
struct MooreData {
    std::uint32_t degree = 1;
    std::vector<FieldElement> basis;
    std::vector<FieldElement> coefficients;
};

MooreData moore_basis(std::uint32_t p, std::uint32_t d);

/// Determinant of the Moore matrix with (i, j) entry a_i^{p^j}.
FieldElement moore_determinant(std::span<const FieldElement> a);

/// Rank over F_p of the coordinate vectors of the given elements.
std::size_t prime_field_rank(std::span<const FieldElement> a);

bool is_prime(std::uint64_t n);

}  // namespace sparse
