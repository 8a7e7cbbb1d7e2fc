#include "sparse/galois_field.hpp"
#include "sparse/linear_solve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sparse {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients mod p, low degree first

// Conway polynomials for p in {2, 3, 5}, m <= 6, low degree first.
const std::map<std::pair<std::uint32_t, std::uint32_t>, Poly>& conway_table() {
    static const std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> table = {
        {{2, 1}, {1, 1}},
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{3, 1}, {1, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{3, 5}, {1, 2, 0, 0, 0, 1}},
        {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
        {{5, 1}, {3, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{5, 4}, {2, 4, 4, 0, 1}},
        {{5, 5}, {3, 4, 0, 0, 0, 1}},
        {{5, 6}, {2, 0, 1, 4, 1, 0, 1}},
    };
    return table;
}

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::uint32_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = std::uint32_t(std::uint64_t(r) * b % p);
        b = std::uint32_t(std::uint64_t(b) * b % p);
        e >>= 1;
    }
    return r;
}

Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
    trim(a);
    const std::size_t m = f.size() - 1;
    const std::uint32_t lead_inv = inv_mod(f.back(), p);
    while (a.size() > m) {
        std::uint32_t c = std::uint32_t(std::uint64_t(a.back()) * lead_inv % p);
        std::size_t shift = a.size() - 1 - m;
        for (std::size_t i = 0; i <= m; ++i) {
            a[shift + i] = std::uint32_t((a[shift + i] + std::uint64_t(p - c) * f[i]) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = std::uint32_t((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
        }
    }
    return poly_mod(std::move(r), f, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Ben-Or irreducibility test.
bool irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t m = f.size() - 1;
    Poly x = poly_mod({0, 1}, f, p);
    Poly xp = x;
    for (std::size_t i = 1; i <= m / 2; ++i) {
        // xp <- xp^p mod f
        Poly acc = {1};
        for (std::uint32_t k = 0; k < p; ++k) acc = poly_mulmod(acc, xp, f, p);
        xp = acc;
        Poly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        Poly g = poly_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

Poly first_irreducible(std::uint32_t p, std::uint32_t m) {
    // enumerate monic polynomials of degree m by their lower coefficients
    Poly f(m + 1, 0);
    f[m] = 1;
    for (;;) {
        if (f[0] != 0 && irreducible(f, p)) return f;
        std::size_t i = 0;
        while (i < m && ++f[i] == p) f[i++] = 0;
        if (i == m) break;
    }
    throw PreconditionError("no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// GaloisField

const GaloisField& GaloisField::get(std::uint32_t p, std::uint32_t m) {
    if (!is_prime(p) || p > kMaxPrime) {
        throw PreconditionError("GaloisField: characteristic must be a prime <= 64, got " + std::to_string(p));
    }
    if (m == 0 || m > kMaxDegree) {
        throw PreconditionError("GaloisField: degree must be in [1, 12], got " + std::to_string(m));
    }
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<GaloisField>> fields;
    std::lock_guard lock(mutex);
    auto& slot = fields[{p, m}];
    if (!slot) slot.reset(new GaloisField(p, m));
    return *slot;
}

GaloisField::GaloisField(std::uint32_t p, std::uint32_t m) : p_(p), m_(m) {
    auto it = conway_table().find({p, m});
    if (it != conway_table().end()) {
        modulus_ = it->second;
        conway_ = true;
    } else {
        modulus_ = first_irreducible(p, m);
    }

    const BigInt q = order();
    if (q > 65536) return;
    const std::uint64_t qq = q.convert_to<std::uint64_t>();
    // find a primitive element, then fill log/exp tables
    const auto factors = prime_factors(qq - 1);
    for (std::uint64_t cand = 1; cand < qq; ++cand) {
        FieldElement g = from_index(cand);
        bool primitive = true;
        for (auto r : factors) {
            if (g.pow((qq - 1) / r).is_one()) {
                primitive = false;
                break;
            }
        }
        if (!primitive) continue;
        // fill local tables first: multiplication switches to table lookup once exp_table_ is non-empty
        std::vector<std::uint32_t> exps(qq - 1, 0), logs(qq, 0);
        FieldElement x = one();
        for (std::uint64_t i = 0; i + 1 < qq; ++i) {
            auto idx = std::uint32_t(x.index());
            exps[i] = idx;
            logs[idx] = std::uint32_t(i);
            x = x * g;
        }
        exp_table_ = std::move(exps);
        log_table_ = std::move(logs);
        return;
    }
}

FieldElement GaloisField::zero() const {
    FieldElement e;
    e.field_ = this;
    return e;
}

FieldElement GaloisField::one() const { return from_int(1); }

FieldElement GaloisField::generator() const {
    if (m_ == 1) return from_int(-std::int64_t(modulus_[0]));
    FieldElement e = zero();
    e.digits_[1] = 1;
    return e;
}

FieldElement GaloisField::from_int(std::int64_t v) const {
    FieldElement e = zero();
    std::int64_t r = v % std::int64_t(p_);
    if (r < 0) r += p_;
    e.digits_[0] = std::uint8_t(r);
    return e;
}

FieldElement GaloisField::from_digits(std::span<const std::uint32_t> digits) const {
    if (digits.size() > m_) throw PreconditionError("FieldElement: too many digits for F_" + std::to_string(p_) + "^" + std::to_string(m_));
    FieldElement e = zero();
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] >= p_) throw PreconditionError("FieldElement: digit out of range");
        e.digits_[i] = std::uint8_t(digits[i]);
    }
    return e;
}

FieldElement GaloisField::from_index(std::uint64_t index) const {
    FieldElement e = zero();
    for (std::uint32_t i = 0; i < m_; ++i) {
        e.digits_[i] = std::uint8_t(index % p_);
        index /= p_;
    }
    if (index != 0) throw PreconditionError("FieldElement: index out of range");
    return e;
}

std::vector<FieldElement> GaloisField::elements() const {
    const BigInt q = order();
    if (q > (1u << 20)) throw PreconditionError("GaloisField::elements: field too large to enumerate");
    std::vector<FieldElement> out;
    const auto qq = q.convert_to<std::uint64_t>();
    out.reserve(qq);
    for (std::uint64_t i = 0; i < qq; ++i) out.push_back(from_index(i));
    return out;
}

std::uint64_t GaloisField::index_of(const std::uint8_t* d) const {
    std::uint64_t idx = 0;
    for (std::uint32_t i = m_; i-- > 0;) idx = idx * p_ + d[i];
    return idx;
}

void GaloisField::mul_digits(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const {
    if (has_tables()) {
        const std::uint64_t ia = index_of(a), ib = index_of(b);
        std::fill(out, out + kMaxDegree, 0);
        if (ia == 0 || ib == 0) return;
        const std::uint64_t n = exp_table_.size();
        std::uint64_t idx = exp_table_[(std::uint64_t(log_table_[ia]) + log_table_[ib]) % n];
        for (std::uint32_t i = 0; i < m_; ++i) {
            out[i] = std::uint8_t(idx % p_);
            idx /= p_;
        }
        return;
    }
    std::array<std::uint32_t, 2 * kMaxDegree> prod{};
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (!a[i]) continue;
        for (std::uint32_t j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + std::uint32_t(a[i]) * b[j]) % p_;
    }
    // modulus is monic: x^m = -sum_{i<m} f_i x^i
    for (std::uint32_t k = 2 * m_ - 1; k-- > m_;) {
        const std::uint32_t c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        const std::uint32_t shift = k - m_;
        for (std::uint32_t i = 0; i < m_; ++i) {
            prod[shift + i] = (prod[shift + i] + (p_ - c) * modulus_[i]) % p_;
        }
    }
    for (std::uint32_t i = 0; i < kMaxDegree; ++i) out[i] = i < m_ ? std::uint8_t(prod[i]) : 0;
}

// ---------------------------------------------------------------------------
// FieldElement

const GaloisField& FieldElement::field() const {
    if (!field_) throw PreconditionError("FieldElement: detached element");
    return *field_;
}

void FieldElement::check_same(const FieldElement& o) const {
    if (field_ != o.field_ || !field_) {
        throw PreconditionError("FieldElement: mismatched fields (use embed for explicit coercion)");
    }
}

std::vector<std::uint32_t> FieldElement::digits() const {
    const auto m = field().degree();
    return std::vector<std::uint32_t>(digits_.begin(), digits_.begin() + m);
}

std::uint64_t FieldElement::index() const {
    if (field().order() >= BigInt(1) << 63) throw PreconditionError("FieldElement::index: field too large");
    return field_->index_of(digits_.data());
}

bool FieldElement::is_zero() const {
    return std::all_of(digits_.begin(), digits_.end(), [](auto d) { return d == 0; });
}

bool FieldElement::is_one() const {
    if (digits_[0] != 1) return false;
    return std::all_of(digits_.begin() + 1, digits_.end(), [](auto d) { return d == 0; });
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    FieldElement r = *this;
    const auto p = field_->p_;
    for (std::uint32_t i = 0; i < field_->m_; ++i) r.digits_[i] = std::uint8_t((digits_[i] + o.digits_[i]) % p);
    return r;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = field().zero();
    const auto p = field_->p_;
    for (std::uint32_t i = 0; i < field_->m_; ++i) r.digits_[i] = std::uint8_t((p - digits_[i]) % p);
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    FieldElement r = field_->zero();
    field_->mul_digits(digits_.data(), o.digits_.data(), r.digits_.data());
    return r;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw PreconditionError("FieldElement: division by zero");
    return pow(field().order() - 2);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    check_same(o);
    return *this * o.inverse();
}

FieldElement FieldElement::pow(const BigInt& e_in) const {
    const GaloisField& f = field();
    if (e_in < 0) return inverse().pow(BigInt(-e_in));
    if (e_in == 0) return f.one();
    if (is_zero()) return *this;
    BigInt e = e_in % (f.order() - 1);
    if (e == 0) return f.one();
    if (f.has_tables()) {
        const std::uint64_t n = f.exp_table_.size();
        const std::uint64_t l = f.log_table_[f.index_of(digits_.data())];
        const std::uint64_t k = ((BigInt(l) * e) % n).convert_to<std::uint64_t>();
        return f.from_index(f.exp_table_[k]);
    }
    FieldElement result = f.one(), base = *this;
    while (e > 0) {
        if (bit_test(e, 0)) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_ == o.field_ && digits_ == o.digits_;
}

bool FieldElement::operator<(const FieldElement& o) const {
    check_same(o);
    for (std::uint32_t i = field_->m_; i-- > 0;) {
        if (digits_[i] != o.digits_[i]) return digits_[i] < o.digits_[i];
    }
    return false;
}

std::string FieldElement::to_string() const {
    const GaloisField& f = field();
    if (f.degree() == 1) return std::to_string(digits_[0]);
    std::ostringstream os;
    os << "[";
    for (std::uint32_t i = 0; i < f.degree(); ++i) os << (i ? "," : "") << unsigned(digits_[i]);
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------

FieldElement frobenius(const FieldElement& x, std::int64_t e) {
    const auto m = std::int64_t(x.field().degree());
    const std::int64_t k = ((e % m) + m) % m;
    FieldElement r = x;
    for (std::int64_t i = 0; i < k; ++i) r = r.pow(x.characteristic());
    return r;
}

const GaloisField& common_field(const GaloisField& a, const GaloisField& b) {
    if (a.characteristic() != b.characteristic()) throw PreconditionError("common_field: different characteristics");
    const std::uint32_t l = std::lcm(a.degree(), b.degree());
    if (l > kMaxDegree) throw PreconditionError("common_field: compositum degree " + std::to_string(l) + " exceeds 12");
    return GaloisField::get(a.characteristic(), l);
}

namespace {

FieldElement eval_modulus(const std::vector<std::uint32_t>& f, const FieldElement& x) {
    FieldElement acc = x.field().zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + x.field().from_int(f[i]);
    return acc;
}

}  // namespace

FieldElement embed(const FieldElement& x, const GaloisField& target) {
    const GaloisField& src = x.field();
    if (&src == &target) return x;
    if (src.characteristic() != target.characteristic() || target.degree() % src.degree() != 0) {
        throw PreconditionError("embed: F_" + std::to_string(src.characteristic()) + "^" + std::to_string(src.degree()) +
                                " is not a subfield of the target");
    }
    if (src.degree() == 1) return target.from_int(x.digit(0));

    std::vector<std::uint32_t> image;
    {
        std::lock_guard lock(src.embed_mutex_);
        auto it = src.generator_images_.find(target.degree());
        if (it != src.generator_images_.end()) image = it->second;
    }
    if (image.empty()) {
        std::optional<FieldElement> root;
        // Conway compatibility: g^{(Q-1)/(q-1)} is a root when both moduli are Conway polynomials
        const BigInt e = (target.order() - 1) / (src.order() - 1);
        FieldElement cand = target.generator().pow(e);
        if (eval_modulus(src.modulus(), cand).is_zero()) {
            root = cand;
        } else if (target.order() <= (1u << 22)) {
            for (const auto& y : target.elements()) {
                if (eval_modulus(src.modulus(), y).is_zero()) {
                    root = y;
                    break;
                }
            }
        }
        if (!root) throw PreconditionError("embed: could not locate the subfield generator");
        image = root->digits();
        std::lock_guard lock(src.embed_mutex_);
        src.generator_images_[target.degree()] = image;
    }
    const FieldElement beta = target.from_digits(image);
    FieldElement acc = target.zero(), pw = target.one();
    for (std::uint32_t i = 0; i < src.degree(); ++i) {
        acc = acc + target.from_int(x.digit(i)) * pw;
        pw = pw * beta;
    }
    return acc;
}

std::optional<FieldElement> restrict_to(const FieldElement& y, const GaloisField& sub) {
    const GaloisField& big = y.field();
    if (&big == &sub) return y;
    if (big.degree() % sub.degree() != 0) throw PreconditionError("restrict_to: not a subfield");
    if (frobenius(y, sub.degree()) != y) return std::nullopt;
    const GaloisField& fp = GaloisField::get(big.characteristic(), 1);
    // columns: coordinates of embed(x_sub^i)
    std::vector<std::vector<FieldElement>> a(big.degree(), std::vector<FieldElement>(sub.degree()));
    std::vector<FieldElement> rhs(big.degree());
    FieldElement pw = sub.one();
    for (std::uint32_t j = 0; j < sub.degree(); ++j) {
        const FieldElement img = embed(pw, big);
        for (std::uint32_t i = 0; i < big.degree(); ++i) a[i][j] = fp.from_int(img.digit(i));
        pw = pw * sub.generator();
    }
    for (std::uint32_t i = 0; i < big.degree(); ++i) rhs[i] = fp.from_int(y.digit(i));
    auto sol = solve_linear(std::move(a), std::move(rhs));
    if (!sol) return std::nullopt;
    std::vector<std::uint32_t> d;
    for (const auto& s : *sol) d.push_back(s.digit(0));
    return sub.from_digits(d);
}

std::optional<FieldElement> artin_schreier_root(const FieldElement& c) {
    const GaloisField& f = c.field();
    const GaloisField& fp = GaloisField::get(f.characteristic(), 1);
    const auto m = f.degree();
    // X -> X^p - X is F_p-linear; solve it on coordinates
    std::vector<std::vector<FieldElement>> a(m, std::vector<FieldElement>(m));
    for (std::uint32_t j = 0; j < m; ++j) {
        std::vector<std::uint32_t> unit(m, 0);
        unit[j] = 1;
        const FieldElement e = f.from_digits(unit);
        const FieldElement img = e.pow(f.characteristic()) - e;
        for (std::uint32_t i = 0; i < m; ++i) a[i][j] = fp.from_int(img.digit(i));
    }
    std::vector<FieldElement> rhs(m);
    for (std::uint32_t i = 0; i < m; ++i) rhs[i] = fp.from_int(c.digit(i));
    auto sol = solve_linear(std::move(a), std::move(rhs));
    if (!sol) return std::nullopt;
    std::vector<std::uint32_t> d;
    for (const auto& s : *sol) d.push_back(s.digit(0));
    return f.from_digits(d);
}

MooreData moore_basis(std::uint32_t p, std::uint32_t d) {
    if (d == 0) throw PreconditionError("moore_basis: d must be >= 1");
    const GaloisField& f = GaloisField::get(p, d);
    MooreData out;
    out.degree = d;
    // polynomial basis 1, x, ..., x^{d-1}: linearly independent over F_p,
    // so the Moore matrix is nonsingular
    FieldElement pw = f.one();
    for (std::uint32_t i = 0; i < d; ++i) {
        out.basis.push_back(pw);
        pw = pw * f.generator();
    }
    // solve sum_i c_i a_i^{p^j} = [j == 0] for j < d
    std::vector<std::vector<FieldElement>> a(d, std::vector<FieldElement>(d));
    std::vector<FieldElement> rhs(d, f.zero());
    rhs[0] = f.one();
    for (std::uint32_t i = 0; i < d; ++i) {
        FieldElement x = out.basis[i];
        for (std::uint32_t j = 0; j < d; ++j) {
            a[j][i] = x;
            x = x.pow(p);
        }
    }
    auto sol = solve_linear(std::move(a), std::move(rhs));
    if (!sol) throw VerificationFailure("moore_basis: singular Moore matrix");
    out.coefficients = std::move(*sol);
    return out;
}

FieldElement moore_determinant(std::span<const FieldElement> a) {
    if (a.empty()) throw PreconditionError("moore_determinant: empty input");
    const GaloisField& f = a[0].field();
    const std::size_t d = a.size();
    std::vector<std::vector<FieldElement>> m(d, std::vector<FieldElement>(d));
    for (std::size_t i = 0; i < d; ++i) {
        FieldElement x = a[i];
        for (std::size_t j = 0; j < d; ++j) {
            m[i][j] = x;
            x = x.pow(f.characteristic());
        }
    }
    return determinant(std::move(m));
}

std::size_t prime_field_rank(std::span<const FieldElement> a) {
    if (a.empty()) return 0;
    const GaloisField& f = a[0].field();
    const GaloisField& fp = GaloisField::get(f.characteristic(), 1);
    std::vector<std::vector<FieldElement>> m(a.size(), std::vector<FieldElement>(f.degree()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::uint32_t j = 0; j < f.degree(); ++j) m[i][j] = fp.from_int(a[i].digit(j));
    }
    return rank(std::move(m));
}

}  // namespace sparse
