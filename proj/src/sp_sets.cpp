#include "sparse/sp_sets.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace sparse {

const char* flag_name(Flag f) {
    switch (f) {
        case Flag::Yes: return "yes";
        case Flag::No: return "no";
        default: return "unknown";
    }
}

std::vector<Symbol> sp_alphabet(std::uint32_t p) {
    if (p < 2 || p > kMaxBase) throw PreconditionError("base out of range");
    std::vector<Symbol> out;
    for (std::uint32_t d = 0; d < p; ++d) out.push_back(Symbol(d));
    out.push_back(kRadix);
    return out;
}

namespace {

constexpr std::size_t kRadixIndex(std::uint32_t p) { return p; }

// Reorders the columns of a so that its alphabet is exactly `alphabet`.
Acceptor with_alphabet(const Acceptor& a, const std::vector<Symbol>& alphabet) {
    if (a.alphabet == alphabet) return a;
    std::vector<Symbol> x = a.alphabet, y = alphabet;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) throw PreconditionError("acceptor alphabet does not match {0..p-1, radix}");
    Acceptor out = a;
    out.alphabet = alphabet;
    for (std::size_t q = 0; q < a.num_states(); ++q) {
        for (std::size_t i = 0; i < alphabet.size(); ++i) out.transitions[q][i] = a.transitions[q][std::size_t(a.symbol_index(alphabet[i]))];
    }
    return out;
}

std::vector<bool> coaccessible(const Acceptor& a) {
    std::vector<std::vector<StateId>> rev(a.num_states());
    std::vector<bool> live(a.num_states(), false);
    std::vector<StateId> stack;
    for (std::size_t q = 0; q < a.num_states(); ++q) {
        for (StateId t : a.transitions[q]) rev[t].push_back(StateId(q));
        if (a.outputs[q]) {
            live[q] = true;
            stack.push_back(StateId(q));
        }
    }
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId t : rev[q]) {
            if (!live[t]) {
                live[t] = true;
                stack.push_back(t);
            }
        }
    }
    return live;
}

// 0* L 0*: every padding of every word, as a minimal Msd acceptor.
Acceptor padded(const SpSet& s) {
    const auto alpha = sp_alphabet(s.p);
    const Nfa zeros = nfa_star(Nfa::word({0}, alpha));
    return minimize(determinize(nfa_concat(nfa_concat(zeros, to_nfa(s.acceptor)), zeros)));
}

// Removes padding from a language of padded words and restricts to E_p.
SpSet strip(const Acceptor& d_in, std::uint32_t p, std::size_t state_cap) {
    const Acceptor d = minimize(d_in);
    const std::size_t zero = std::size_t(d.symbol_index(0));
    Nfa n(d.alphabet);
    for (std::size_t q = 0; q < d.num_states(); ++q) n.add_state(false);
    for (std::size_t q = 0; q < d.num_states(); ++q) {
        for (std::size_t s = 0; s < d.alphabet.size(); ++s) n.transitions[q][s].push_back(d.transitions[q][s]);
    }
    std::set<StateId> starts;
    for (StateId q = d.initial; starts.insert(q).second;) q = d.transitions[q][zero];
    n.initial.assign(starts.begin(), starts.end());
    for (std::size_t q = 0; q < d.num_states(); ++q) {
        std::set<StateId> seen;
        for (StateId x = StateId(q); seen.insert(x).second; x = d.transitions[x][zero]) {
            if (d.outputs[x]) {
                n.accepting[q] = true;
                break;
            }
        }
    }
    return SpSet::from_acceptor(determinize(n, Direction::Msd, state_cap), p, state_cap);
}

enum class Relation { Sum, Difference };

// Language of padded z with z = x + y (Sum) or z = x - y (Difference), x from
// `first` and y from `second`, read most significant digit first. A state is
// (first state, second state, carry owed to the position on the left).
Acceptor carry_relation(const SpSet& first, const SpSet& second, Relation rel, std::size_t state_cap) {
    if (first.p != second.p) throw PreconditionError("sets over different bases");
    const std::uint32_t p = first.p;
    const Acceptor a = padded(first), b = padded(second);
    const auto live_a = coaccessible(a), live_b = coaccessible(b);
    const auto alpha = sp_alphabet(p);
    Nfa n(alpha);
    std::map<std::tuple<StateId, StateId, int>, StateId> ids;
    std::deque<std::tuple<StateId, StateId, int>> queue;
    auto id_of = [&](StateId x, StateId y, int c) {
        auto key = std::make_tuple(x, y, c);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        if (ids.size() >= state_cap) throw CapExceeded("carry automaton exceeds the state cap");
        StateId id = n.add_state(a.outputs[x] && b.outputs[y] && c == 0);
        ids.emplace(key, id);
        queue.push_back(key);
        return id;
    };
    n.initial = {id_of(a.initial, b.initial, 0)};
    while (!queue.empty()) {
        auto [x, y, carry] = queue.front();
        queue.pop_front();
        const StateId from = ids[{x, y, carry}];
        {
            const StateId nx = a.transitions[x][kRadixIndex(p)], ny = b.transitions[y][kRadixIndex(p)];
            if (live_a[nx] && live_b[ny]) n.transitions[from][kRadixIndex(p)].push_back(id_of(nx, ny, carry));
        }
        for (std::uint32_t r = 0; r < p; ++r) {
            for (std::uint32_t g1 = 0; g1 < p; ++g1) {
                const StateId nx = a.transitions[x][g1];
                if (!live_a[nx]) continue;
                for (std::uint32_t g2 = 0; g2 < p; ++g2) {
                    const StateId ny = b.transitions[y][g2];
                    if (!live_b[ny]) continue;
                    // addends u, v and total w with u + v + carry_in = w + p * carry
                    const int u = rel == Relation::Sum ? int(g1) : int(r);
                    const int v = int(g2);
                    const int w = rel == Relation::Sum ? int(r) : int(g1);
                    const int carry_in = w + int(p) * carry - u - v;
                    if (carry_in != 0 && carry_in != 1) continue;
                    n.transitions[from][r].push_back(id_of(nx, ny, carry_in));
                }
            }
        }
    }
    return determinize(n, Direction::Msd, state_cap);
}

// Language of padded z = m x.
Acceptor scale_relation(const SpSet& s, std::uint32_t m, std::size_t state_cap) {
    const std::uint32_t p = s.p;
    const Acceptor a = padded(s);
    const auto live = coaccessible(a);
    Nfa n(sp_alphabet(p));
    std::map<std::pair<StateId, std::uint32_t>, StateId> ids;
    std::deque<std::pair<StateId, std::uint32_t>> queue;
    auto id_of = [&](StateId x, std::uint32_t c) {
        auto it = ids.find({x, c});
        if (it != ids.end()) return it->second;
        StateId id = n.add_state(a.outputs[x] && c == 0);
        ids.emplace(std::make_pair(x, c), id);
        queue.emplace_back(x, c);
        return id;
    };
    n.initial = {id_of(a.initial, 0)};
    while (!queue.empty()) {
        auto [x, carry] = queue.front();
        queue.pop_front();
        const StateId from = ids[{x, carry}];
        const StateId nr = a.transitions[x][kRadixIndex(p)];
        if (live[nr]) n.transitions[from][kRadixIndex(p)].push_back(id_of(nr, carry));
        for (std::uint32_t z = 0; z < p; ++z) {
            for (std::uint32_t d = 0; d < p; ++d) {
                const StateId nx = a.transitions[x][d];
                if (!live[nx]) continue;
                const long carry_in = long(z) + long(p) * long(carry) - long(m) * long(d);
                if (carry_in < 0 || carry_in >= long(m)) continue;
                n.transitions[from][z].push_back(id_of(nx, std::uint32_t(carry_in)));
            }
        }
    }
    return determinize(n, Direction::Msd, state_cap);
}

// Padded words of p^n x (up = true, n >= 0) or p^-n x (up = false, n >= 1):
// the radix of z sits n places right (left) of the radix of x.
Acceptor shift_relation(const SpSet& s, bool up, std::size_t state_cap) {
    const std::uint32_t p = s.p;
    const Acceptor a = padded(s);
    const auto live = coaccessible(a);
    const std::size_t radix = kRadixIndex(p);
    Nfa n(sp_alphabet(p));
    // phases: 0 before either radix, 1 between the radices (1 = nothing read yet,
    // 2 = at least one digit), 3 after both
    std::map<std::pair<StateId, int>, StateId> ids;
    std::deque<std::pair<StateId, int>> queue;
    auto id_of = [&](StateId x, int phase) {
        auto it = ids.find({x, phase});
        if (it != ids.end()) return it->second;
        StateId id = n.add_state(phase == 3 && a.outputs[x]);
        ids.emplace(std::make_pair(x, phase), id);
        queue.emplace_back(x, phase);
        return id;
    };
    n.initial = {id_of(a.initial, 0)};
    while (!queue.empty()) {
        auto [x, phase] = queue.front();
        queue.pop_front();
        const StateId from = ids[{x, phase}];
        auto digits_to = [&](int next_phase) {
            for (std::uint32_t d = 0; d < p; ++d) {
                const StateId nx = a.transitions[x][d];
                if (live[nx]) n.transitions[from][d].push_back(id_of(nx, next_phase));
            }
        };
        const StateId after_radix = a.transitions[x][radix];
        if (phase == 0) {
            digits_to(0);
            if (up) {
                // x passes its radix first; z keeps reading digits
                if (live[after_radix]) {
                    n.add_epsilon(from, id_of(after_radix, 1));
                    n.transitions[from][radix].push_back(id_of(after_radix, 3));
                }
            } else {
                n.transitions[from][radix].push_back(id_of(x, 1));
            }
        } else if (phase == 1 || phase == 2) {
            digits_to(2);
            if (up) {
                n.transitions[from][radix].push_back(id_of(x, 3));
            } else if (phase == 2 && live[after_radix]) {
                n.add_epsilon(from, id_of(after_radix, 3));
            }
        } else {
            digits_to(3);
        }
    }
    return determinize(n, Direction::Msd, state_cap);
}

Acceptor shape_acceptor(std::uint32_t p, std::size_t int_digits, std::size_t frac_digits) {
    // states 0..int_digits: integer digits read; then int_digits+1+j: j fraction digits; last: dead
    const std::size_t n = int_digits + 1 + frac_digits + 1 + 1;
    const StateId dead = StateId(n - 1);
    Acceptor a;
    a.alphabet = sp_alphabet(p);
    a.direction = Direction::Msd;
    a.transitions.assign(n, std::vector<StateId>(p + 1, dead));
    a.outputs.assign(n, 0);
    for (std::size_t i = 0; i <= int_digits; ++i) {
        for (std::uint32_t d = 0; d < p; ++d) a.transitions[i][d] = i < int_digits ? StateId(i + 1) : dead;
        a.transitions[i][p] = StateId(int_digits + 1);
    }
    for (std::size_t j = 0; j <= frac_digits; ++j) {
        const StateId q = StateId(int_digits + 1 + j);
        a.outputs[q] = 1;
        for (std::uint32_t d = 0; d < p; ++d) a.transitions[q][d] = j < frac_digits ? q + 1 : dead;
    }
    return a;
}

void require_same_base(const SpSet& s, const SpSet& t) {
    if (s.p != t.p) throw PreconditionError("sets over different bases");
}

}  // namespace

// ---------------------------------------------------------------------------
// SpSet

SpSet SpSet::from_acceptor(const Acceptor& a, std::uint32_t p, std::size_t state_cap) {
    SpSet s;
    s.p = p;
    const Acceptor aligned = with_alphabet(with_direction(a, Direction::Msd, state_cap), sp_alphabet(p));
    s.acceptor = canonical_language(aligned, state_cap);
    const auto v = is_sparse(s.acceptor);
    s.sparse = v.sparse ? Flag::Yes : Flag::No;
    if (v.sparse) {
        s.well_ordered = Flag::Yes;
        for (const auto& f : v.components) {
            if (!is_well_ordered(f).well_ordered) {
                s.well_ordered = Flag::No;
                break;
            }
        }
    }
    return s;
}

SpSet SpSet::from_naturals(const Acceptor& a, std::uint32_t p, std::size_t state_cap) {
    if (digit_base(a) != p || has_radix_symbol(a)) throw PreconditionError("from_naturals: expected the digit alphabet {0..p-1}");
    std::vector<Symbol> digits;
    for (std::uint32_t d = 0; d < p; ++d) digits.push_back(Symbol(d));
    const Acceptor canon = with_alphabet(canonical_language(a, state_cap), digits);
    // append the radix: accepting states move to a final state on the radix
    Acceptor out;
    out.alphabet = sp_alphabet(p);
    out.direction = Direction::Msd;
    const StateId final_state = StateId(canon.num_states()), sink = final_state + 1;
    for (std::size_t q = 0; q < canon.num_states(); ++q) {
        auto row = canon.transitions[q];
        row.push_back(canon.outputs[q] ? final_state : sink);
        out.transitions.push_back(row);
        out.outputs.push_back(0);
    }
    out.transitions.emplace_back(p + 1, sink);
    out.outputs.push_back(1);
    out.transitions.emplace_back(p + 1, sink);
    out.outputs.push_back(0);
    out.initial = canon.initial;
    return from_acceptor(out, p, state_cap);
}

SpSet SpSet::from_values(const std::vector<Rational>& values, std::uint32_t p) {
    std::vector<Word> words;
    for (const auto& v : values) words.push_back(encode_sp(v, p));
    return from_acceptor(literal(words, sp_alphabet(p)), p);
}

SpSet SpSet::from_forms(const std::vector<SimpleSparseForm>& forms, std::uint32_t p) {
    const auto alpha = sp_alphabet(p);
    Acceptor a = literal({}, alpha);
    for (auto f : forms) {
        if (f.base != p) throw PreconditionError("form base differs from the set base");
        if (!f.radix_position()) f.fixed.back().push_back(kRadix);
        a = unite(a, form_acceptor(f, alpha));
    }
    return from_acceptor(a, p);
}

bool SpSet::contains(const Rational& x) const {
    if (!in_sp(x, p)) return false;
    return accepts(acceptor, encode_sp(x, p));
}

std::vector<Rational> SpSet::window(const Rational& bound, std::size_t fraction_digits) const {
    if (bound < 0) return {};
    const std::size_t int_digits = encode_nat(floor_of(bound), p).size();
    const Acceptor limited = intersect(acceptor, shape_acceptor(p, int_digits, fraction_digits));
    std::set<Rational> values;
    for (const auto& w : accepted_words(limited, int_digits + 1 + fraction_digits)) {
        const Rational v = decode_sp(w, p);
        if (v <= bound) values.insert(v);
    }
    return {values.begin(), values.end()};
}

std::vector<SimpleSparseForm> SpSet::components(std::size_t cap) const {
    AnalysisOptions opts;
    opts.component_cap = cap;
    return decompose(acceptor, opts);
}

// ---------------------------------------------------------------------------
// operations

SpSet sp_union(const SpSet& s, const SpSet& t) {
    require_same_base(s, t);
    return SpSet::from_acceptor(unite(s.acceptor, t.acceptor), s.p);
}

SpSet raw_sum(const SpSet& s, const SpSet& t, std::size_t state_cap) {
    require_same_base(s, t);
    return strip(carry_relation(s, t, Relation::Sum, state_cap), s.p, state_cap);
}

SpSet minkowski_sum(const SpSet& s, const SpSet& t, std::size_t state_cap) {
    if (s.well_ordered != Flag::Yes || t.well_ordered != Flag::Yes) {
        throw PreconditionError("minkowski_sum: both operands must be well-ordered");
    }
    return raw_sum(s, t, state_cap);
}

SpSet translate_up(const SpSet& s, const Rational& c, std::size_t state_cap) {
    return raw_sum(s, SpSet::from_values({c}, s.p), state_cap);
}

SpSet translate_down(const SpSet& s, const Rational& c, std::size_t state_cap) {
    return strip(carry_relation(s, SpSet::from_values({c}, s.p), Relation::Difference, state_cap), s.p, state_cap);
}

SpSet reflect(const SpSet& s, const Rational& c, std::size_t state_cap) {
    return strip(carry_relation(SpSet::from_values({c}, s.p), s, Relation::Difference, state_cap), s.p, state_cap);
}

SpSet scale_by_integer(const SpSet& s, std::uint32_t m, std::size_t state_cap) {
    if (m == 0) return SpSet::from_values(s.empty() ? std::vector<Rational>{} : std::vector<Rational>{0}, s.p);
    return strip(scale_relation(s, m, state_cap), s.p, state_cap);
}

SpSet shift_up_union(const SpSet& s, std::size_t state_cap) { return strip(shift_relation(s, true, state_cap), s.p, state_cap); }

SpSet shift_down_union(const SpSet& s, std::size_t state_cap) {
    return strip(shift_relation(s, false, state_cap), s.p, state_cap);
}

std::pair<SpSet, SpSet> split(const SpSet& s, const Rational& b) {
    if (!in_sp(b, s.p)) throw PreconditionError("split: bound must lie in S_p");
    return {SpSet::from_acceptor(intersect(s.acceptor, comparison_acceptor(b, s.p, Comparison::Less)), s.p),
            SpSet::from_acceptor(intersect(s.acceptor, comparison_acceptor(b, s.p, Comparison::Greater)), s.p)};
}

SpSet spread_up(const SpSet& t, const Rational& b, std::size_t state_cap) {
    if (!in_sp(b, t.p)) throw PreconditionError("spread_up: b must lie in S_p");
    if (t.sparse != Flag::Yes || t.well_ordered != Flag::Yes) throw PreconditionError("spread_up: input must be sparse and well-ordered");
    const Acceptor at_most_b = unite(comparison_acceptor(b, t.p, Comparison::Less), comparison_acceptor(b, t.p, Comparison::Equal));
    if (!is_empty(intersect(t.acceptor, at_most_b))) throw PreconditionError("spread_up: input must lie above b");
    return translate_up(shift_up_union(translate_down(t, b, state_cap), state_cap), b, state_cap);
}

SpSet spread_down(const SpSet& u, const Rational& b, std::size_t state_cap) {
    if (!in_sp(b, u.p)) throw PreconditionError("spread_down: b must lie in S_p");
    if (u.sparse != Flag::Yes || u.well_ordered != Flag::Yes) throw PreconditionError("spread_down: input must be sparse and well-ordered");
    const Acceptor at_least_b = unite(comparison_acceptor(b, u.p, Comparison::Greater), comparison_acceptor(b, u.p, Comparison::Equal));
    if (!is_empty(intersect(u.acceptor, at_least_b))) throw PreconditionError("spread_down: input must lie below b");
    // b - union_n p^-n (b - U)
    return reflect(shift_down_union(reflect(u, b, state_cap), state_cap), b, state_cap);
}

BigInt weak_sparse_census(const SpSet& s, std::size_t n) {
    const Acceptor& a = s.acceptor;
    const std::size_t states = a.num_states(), radix = kRadixIndex(s.p);
    auto digit_sums = [&](std::vector<BigInt> cur) {
        std::vector<BigInt> total = cur;
        for (std::size_t len = 1; len <= n; ++len) {
            std::vector<BigInt> next(states, 0);
            for (std::size_t q = 0; q < states; ++q) {
                if (cur[q] == 0) continue;
                for (std::uint32_t d = 0; d < s.p; ++d) next[a.transitions[q][d]] += cur[q];
            }
            cur = std::move(next);
            for (std::size_t q = 0; q < states; ++q) total[q] += cur[q];
        }
        return total;
    };
    std::vector<BigInt> start(states, 0);
    start[a.initial] = 1;
    const auto before = digit_sums(start);
    std::vector<BigInt> mid(states, 0);
    for (std::size_t q = 0; q < states; ++q) mid[a.transitions[q][radix]] += before[q];
    const auto after = digit_sums(mid);
    BigInt count = 0;
    for (std::size_t q = 0; q < states; ++q) {
        if (a.outputs[q]) count += after[q];
    }
    return count;
}

std::vector<ClosedForm> affine(const std::vector<ClosedForm>& forms, const Rational& a, const Rational& b) {
    if (a <= 0) throw PreconditionError("affine: the scale must be positive");
    std::vector<ClosedForm> out;
    for (const auto& f : forms) {
        const std::uint32_t p = f.base;
        ClosedForm g = f;
        for (auto& c : g.pre) c *= a;
        for (auto& d : g.post) d *= a;
        if (g.pre.empty()) g.pre.push_back(0);
        g.pre[0] += b;
        // non-p part of the common denominator decides membership in Z[1/p]
        BigInt modulus = 1;
        auto absorb = [&](const Rational& r) {
            BigInt d = den(r);
            while (d % p == 0) d /= p;
            modulus = boost::multiprecision::lcm(modulus, d);
        };
        for (const auto& c : g.pre) absorb(c);
        for (const auto& d : g.post) absorb(d);
        std::uint64_t order = 1;
        if (modulus > 1) {
            BigInt x = p % modulus;
            while (x != 1) {
                x = (x * p) % modulus;
                if (++order > 100000) throw PreconditionError("affine: cannot verify the image stays in S_p");
            }
        }
        // values mod Z[1/p] repeat with period `order` in every count
        const std::size_t s = f.num_cycles();
        double tuples = std::pow(double(order), double(s));
        if (tuples > 2e5) throw PreconditionError("affine: cannot verify the image stays in S_p");
        std::vector<std::uint64_t> t(s, 0);
        for (;;) {
            const Rational v = g.value(t);
            if (!in_sp(v, p)) throw PreconditionError("affine: image " + to_string(v) + " leaves S_" + std::to_string(p));
            if (v < 0) throw PreconditionError("affine: image " + to_string(v) + " is negative");
            std::size_t i = 0;
            while (i < s && ++t[i] >= order) t[i++] = 0;
            if (i == s) break;
        }
        out.push_back(std::move(g));
    }
    return out;
}

Acceptor comparison_acceptor(const Rational& b, std::uint32_t p, Comparison which) {
    const Word w = encode_sp(b, p);
    const auto radix_at = std::size_t(std::find(w.begin(), w.end(), kRadix) - w.begin());
    const Word int_part(w.begin(), w.begin() + std::ptrdiff_t(radix_at));
    const Word frac_part(w.begin() + std::ptrdiff_t(radix_at) + 1, w.end());
    const std::size_t I = int_part.size(), F = frac_part.size();
    // layout: eq[0..I], lt[1..I], gt[1..I], frac[0..F] (frac[F] = equal so far, b digits now 0),
    // LT, GT, dead
    const StateId eq0 = 0, lt0 = StateId(I + 1), gt0 = StateId(2 * I + 1), fr0 = StateId(3 * I + 1);
    const StateId LT = fr0 + StateId(F + 1), GT = LT + 1, dead = GT + 1;
    const std::size_t n = dead + 1;
    Acceptor a;
    a.alphabet = sp_alphabet(p);
    a.direction = Direction::Msd;
    a.transitions.assign(n, std::vector<StateId>(p + 1, dead));
    a.outputs.assign(n, 0);
    auto eq = [&](std::size_t i) { return StateId(eq0 + i); };
    auto lt = [&](std::size_t i) { return StateId(lt0 + i - 1); };
    auto gt = [&](std::size_t i) { return StateId(gt0 + i - 1); };
    auto fr = [&](std::size_t j) { return StateId(fr0 + j); };
    for (std::size_t i = 0; i <= I; ++i) {
        for (std::uint32_t d = 0; d < p; ++d) {
            if (i == I) {
                a.transitions[eq(i)][d] = GT;
            } else {
                a.transitions[eq(i)][d] = d < int_part[i] ? lt(i + 1) : d > int_part[i] ? gt(i + 1) : eq(i + 1);
            }
        }
        a.transitions[eq(i)][p] = i < I ? LT : fr(0);
        if (i >= 1) {
            for (std::uint32_t d = 0; d < p; ++d) {
                a.transitions[lt(i)][d] = i == I ? GT : lt(i + 1);
                a.transitions[gt(i)][d] = i == I ? GT : gt(i + 1);
            }
            a.transitions[lt(i)][p] = LT;
            a.transitions[gt(i)][p] = i < I ? LT : GT;
        }
    }
    for (std::size_t j = 0; j <= F; ++j) {
        for (std::uint32_t d = 0; d < p; ++d) {
            if (j == F) {
                a.transitions[fr(j)][d] = d == 0 ? fr(j) : GT;
            } else {
                a.transitions[fr(j)][d] = d < frac_part[j] ? LT : d > frac_part[j] ? GT : fr(j + 1);
            }
        }
    }
    for (StateId x : {LT, GT}) {
        for (std::uint32_t d = 0; d < p; ++d) a.transitions[x][d] = x;
        a.transitions[x][p] = x;
    }
    switch (which) {
        case Comparison::Less:
            a.outputs[LT] = 1;
            for (std::size_t j = 0; j < F; ++j) a.outputs[fr(j)] = 1;
            break;
        case Comparison::Equal: a.outputs[fr(F)] = 1; break;
        case Comparison::Greater: a.outputs[GT] = 1; break;
    }
    return minimize(a);
}

}  // namespace sparse
