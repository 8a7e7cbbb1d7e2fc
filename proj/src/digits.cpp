#include "sparse/digits.hpp"

#include <algorithm>

namespace sparse {

namespace {

void check_base(std::uint32_t k) {
    if (k < 2 || k > kMaxBase) throw PreconditionError("base must be in [2, 64], got " + std::to_string(k));
}

}  // namespace

SpRational SpRational::from_rational(const Rational& x, std::uint32_t base) {
    check_base(base);
    if (!in_sp(x, base)) throw PreconditionError("value " + to_string(x) + " is not in S_" + std::to_string(base));
    SpRational r;
    r.base = base;
    r.exponent = std::uint32_t(p_power_exponent_of_den(x, base));
    r.numerator = num(x);
    return r;
}

Rational SpRational::value() const { return Rational(numerator, big_pow(base, exponent)); }

Word encode_nat(const BigInt& n, std::uint32_t k) {
    check_base(k);
    if (n < 0) throw PreconditionError("encode_nat: negative input");
    Word w;
    BigInt x = n;
    while (x > 0) {
        w.push_back(Symbol((x % k).convert_to<unsigned>()));
        x /= k;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

BigInt decode_nat(const Word& w, std::uint32_t k) {
    check_base(k);
    if (!w.empty() && w.front() == 0) throw PreconditionError("decode_nat: leading zero");
    BigInt n = 0;
    for (Symbol s : w) {
        if (s >= k) throw PreconditionError("decode_nat: symbol out of range for base " + std::to_string(k));
        n = n * k + s;
    }
    return n;
}

Word encode_sp(const Rational& x, std::uint32_t k) {
    const SpRational r = SpRational::from_rational(x, k);
    const BigInt scale = big_pow(k, r.exponent);
    Word w = encode_nat(r.numerator / scale, k);
    w.push_back(kRadix);
    Word frac = encode_nat(r.numerator % scale, k);
    w.insert(w.end(), r.exponent - frac.size(), 0);
    w.insert(w.end(), frac.begin(), frac.end());
    return w;
}

bool is_valid_radix_word(const Word& w, std::uint32_t k) {
    if (w.empty() || w.front() == 0 || w.back() == 0) return false;
    std::size_t radices = 0;
    for (Symbol s : w) {
        if (s == kRadix) {
            ++radices;
        } else if (s >= k) {
            return false;
        }
    }
    return radices == 1;
}

Rational decode_sp(const Word& w, std::uint32_t k) {
    check_base(k);
    if (!is_valid_radix_word(w, k)) throw PreconditionError("decode_sp: '" + to_text(w) + "' is not a valid base-" + std::to_string(k) + " expansion");
    return word_value(w, k);
}

Rational word_value(const Word& w, std::uint32_t k) {
    check_base(k);
    BigInt n = 0;
    std::uint32_t frac_digits = 0;
    bool after = false;
    for (Symbol s : w) {
        if (s == kRadix) {
            if (after) throw PreconditionError("word_value: more than one radix point");
            after = true;
            continue;
        }
        if (s >= k) throw PreconditionError("word_value: symbol out of range for base " + std::to_string(k));
        n = n * k + s;
        if (after) ++frac_digits;
    }
    return Rational(n, big_pow(k, frac_digits));
}

std::string symbol_text(Symbol s) {
    if (s == kRadix) return ".";
    if (s < 10) return std::string(1, char('0' + s));
    if (s < 36) return std::string(1, char('a' + s - 10));
    return "<" + std::to_string(s) + ">";
}

std::string to_text(const Word& w) {
    std::string out;
    for (Symbol s : w) out += symbol_text(s);
    return out;
}

Word parse_word(std::string_view text, std::uint32_t k) {
    check_base(k);
    Word w;
    for (char c : text) {
        unsigned v;
        if (c == '.') {
            w.push_back(kRadix);
            continue;
        } else if (c >= '0' && c <= '9') {
            v = unsigned(c - '0');
        } else if (c >= 'a' && c <= 'z') {
            v = unsigned(c - 'a' + 10);
        } else {
            throw PreconditionError(std::string("parse_word: unexpected character '") + c + "'");
        }
        if (v >= k) throw PreconditionError(std::string("parse_word: digit '") + c + "' out of range for base " + std::to_string(k));
        w.push_back(Symbol(v));
    }
    return w;
}

}  // namespace sparse
