#include "sparse/sparse_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <set>

namespace sparse {

// ---------------------------------------------------------------------------
// SimpleSparseForm

std::optional<std::size_t> SimpleSparseForm::radix_position() const {
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        if (std::find(fixed[i].begin(), fixed[i].end(), kRadix) != fixed[i].end()) return i;
    }
    return std::nullopt;
}

std::size_t SimpleSparseForm::pre_radix_cycles() const {
    auto j = radix_position();
    return j ? *j : cycles.size();
}

void SimpleSparseForm::validate() const {
    if (base < 2 || base > kMaxBase) throw PreconditionError("form: base out of range");
    if (fixed.size() != cycles.size() + 1) throw PreconditionError("form: need exactly one more fixed word than cycles");
    std::size_t radices = 0;
    for (const auto& w : fixed) {
        for (Symbol s : w) {
            if (s == kRadix) {
                ++radices;
            } else if (s >= base) {
                throw PreconditionError("form: digit out of range");
            }
        }
    }
    if (radices > 1) throw PreconditionError("form: more than one radix point");
    for (const auto& w : cycles) {
        if (w.empty()) throw PreconditionError("form: empty cycle word");
        for (Symbol s : w) {
            if (s == kRadix) throw PreconditionError("form: radix point inside a cycle");
            if (s >= base) throw PreconditionError("form: digit out of range");
        }
    }
}

Word SimpleSparseForm::pump(std::span<const std::uint64_t> counts) const {
    if (counts.size() != cycles.size()) throw PreconditionError("form: wrong number of pump counts");
    Word out = fixed[0];
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        for (std::uint64_t n = 0; n < counts[i]; ++n) out.insert(out.end(), cycles[i].begin(), cycles[i].end());
        out.insert(out.end(), fixed[i + 1].begin(), fixed[i + 1].end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// closed forms

namespace {

// Splits the radix-bearing fixed word into the parts before and after the radix.
std::pair<Word, Word> split_at_radix(const Word& w) {
    auto it = std::find(w.begin(), w.end(), kRadix);
    if (it == w.end()) return {w, {}};
    return {Word(w.begin(), it), Word(it + 1, w.end())};
}

Rational int_value(const Word& w, std::uint32_t k) { return word_value(w, k); }

Rational frac_value(const Word& w, std::uint32_t k) {
    return word_value(w, k) / Rational(big_pow(k, w.size()));
}

}  // namespace

ClosedForm closed_form(const SimpleSparseForm& f) {
    f.validate();
    const std::uint32_t k = f.base;
    const std::size_t s = f.num_cycles();
    const std::size_t J = f.pre_radix_cycles();
    const bool radix = f.radix_position().has_value();
    ClosedForm out;
    out.base = k;
    for (const auto& w : f.cycles) out.periods.push_back(std::uint32_t(w.size()));

    // integer part, read from the right: x_0 = last fixed piece, y_1 = cycle J-1, x_1 = fixed J-1, ...
    {
        std::vector<Word> xs;
        std::vector<Word> ys;  // ys[i-1] is y_i
        xs.push_back(radix ? split_at_radix(f.fixed[J]).first : f.fixed[J]);
        for (std::size_t i = 1; i <= J; ++i) {
            ys.push_back(f.cycles[J - i]);
            xs.push_back(f.fixed[J - i]);
        }
        std::vector<Rational> g(J + 2, 0);  // g[i] for i = 1..J
        std::size_t lambda = 0;
        std::vector<std::size_t> lambdas;
        for (std::size_t i = 0; i <= J; ++i) {
            lambdas.push_back(lambda);
            lambda += xs[i].size();
        }
        for (std::size_t i = 1; i <= J; ++i) {
            const Rational scale(big_pow(k, lambdas[i]));
            g[i] = int_value(ys[i - 1], k) * scale / Rational(big_pow(k, ys[i - 1].size()) - 1);
        }
        for (std::size_t i = 0; i <= J; ++i) {
            Rational c = int_value(xs[i], k) * Rational(big_pow(k, lambdas[i]));
            if (i >= 1) c += g[i];
            if (i < J) c -= g[i + 1];
            out.pre.push_back(c);
        }
    }

    if (radix) {
        // fractional part, read from the left: x_0 = after radix, y_1 = cycle J, x_1 = fixed J+1, ...
        const std::size_t r = s - J;
        std::vector<Word> xs{split_at_radix(f.fixed[J]).second};
        std::vector<Word> ys;
        for (std::size_t i = 1; i <= r; ++i) {
            ys.push_back(f.cycles[J + i - 1]);
            xs.push_back(f.fixed[J + i]);
        }
        std::vector<std::size_t> lambdas;
        std::size_t lambda = 0;
        for (std::size_t i = 0; i <= r; ++i) {
            lambdas.push_back(lambda);
            lambda += xs[i].size();
        }
        std::vector<Rational> h(r + 2, 0);
        for (std::size_t i = 1; i <= r; ++i) {
            const Rational shrink = Rational(1) / Rational(big_pow(k, lambdas[i]));
            const Rational tail = Rational(1) - Rational(1) / Rational(big_pow(k, ys[i - 1].size()));
            h[i] = frac_value(ys[i - 1], k) * shrink / tail;
        }
        for (std::size_t i = 0; i <= r; ++i) {
            Rational d = frac_value(xs[i], k) / Rational(big_pow(k, lambdas[i]));
            if (i < r) d += h[i + 1];
            if (i >= 1) d -= h[i];
            out.post.push_back(d);
        }
    }
    return out;
}

Rational ClosedForm::pre_value(std::span<const std::uint64_t> counts) const {
    if (counts.size() != periods.size()) throw PreconditionError("closed form: wrong number of counts");
    const std::size_t J = pre_cycles();
    Rational total = 0;
    std::uint64_t exponent = 0;
    for (std::size_t i = 0; i <= J; ++i) {
        if (i >= 1) exponent += std::uint64_t(periods[J - i]) * counts[J - i];
        total += pre[i] * Rational(big_pow(base, exponent));
    }
    return total;
}

Rational ClosedForm::post_value(std::span<const std::uint64_t> counts) const {
    if (counts.size() != periods.size()) throw PreconditionError("closed form: wrong number of counts");
    if (post.empty()) return 0;
    const std::size_t J = pre_cycles();
    Rational total = 0;
    std::uint64_t exponent = 0;
    for (std::size_t i = 0; i < post.size(); ++i) {
        if (i >= 1) exponent += std::uint64_t(periods[J + i - 1]) * counts[J + i - 1];
        total += post[i] / Rational(big_pow(base, exponent));
    }
    return total;
}

Rational ClosedForm::value(std::span<const std::uint64_t> counts) const {
    return pre_value(counts) + post_value(counts);
}

// ---------------------------------------------------------------------------
// enumeration

std::vector<Rational> enumerate(const SimpleSparseForm& f, const Rational& bound, std::size_t max_fraction_digits) {
    f.validate();
    if (bound < 0) return {};
    const std::size_t s = f.num_cycles();
    const std::size_t J = f.pre_radix_cycles();
    const auto radix = f.radix_position();

    // the integer part must not start with 0, otherwise its length says nothing about its size
    for (std::size_t i = 0; i <= J; ++i) {
        const Word piece = (radix && i == J) ? split_at_radix(f.fixed[i]).first : f.fixed[i];
        if (!piece.empty()) {
            if (piece.front() == 0) throw PreconditionError("enumerate: form admits a leading zero");
            break;
        }
        if (i < J && f.cycles[i].front() == 0) throw PreconditionError("enumerate: form admits a leading zero");
    }

    const std::size_t int_budget = encode_nat(floor_of(bound), f.base).size();
    std::size_t int_fixed = 0, frac_fixed = 0;
    for (std::size_t i = 0; i <= s; ++i) {
        if (radix && i == *radix) {
            auto [a, b] = split_at_radix(f.fixed[i]);
            int_fixed += a.size();
            frac_fixed += b.size();
        } else if (i <= J) {
            int_fixed += f.fixed[i].size();
        } else {
            frac_fixed += f.fixed[i].size();
        }
    }
    std::set<Rational> values;
    if (int_fixed > int_budget || (radix && frac_fixed > max_fraction_digits)) return {};
    std::vector<std::uint64_t> counts(s, 0);
    std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t int_left,
                                                                         std::size_t frac_left) {
        if (i == s) {
            const Rational v = word_value(f.pump(counts), f.base);
            if (v <= bound) values.insert(v);
            return;
        }
        const std::size_t len = f.cycles[i].size();
        const bool pre = i < J;
        std::size_t left = pre ? int_left : frac_left;
        for (std::uint64_t n = 0;; ++n) {
            counts[i] = n;
            if (pre) {
                rec(i + 1, left, frac_left);
            } else {
                rec(i + 1, int_left, left);
            }
            if (left < len) break;
            left -= len;
        }
        counts[i] = 0;
    };
    rec(0, int_budget - int_fixed, radix ? max_fraction_digits - frac_fixed : 0);
    return {values.begin(), values.end()};
}

Acceptor form_acceptor(const SimpleSparseForm& f, const std::vector<Symbol>& alphabet) {
    f.validate();
    Nfa n = Nfa::word(f.fixed[0], alphabet);
    for (std::size_t i = 0; i < f.num_cycles(); ++i) {
        n = nfa_concat(n, nfa_star(Nfa::word(f.cycles[i], alphabet)));
        n = nfa_concat(n, Nfa::word(f.fixed[i + 1], alphabet));
    }
    return minimize(determinize(n, Direction::Msd));
}

// ---------------------------------------------------------------------------
// alphabets and canonical languages

std::uint32_t digit_base(const Acceptor& a) {
    std::vector<Symbol> digits;
    for (Symbol s : a.alphabet) {
        if (s != kRadix) digits.push_back(s);
    }
    std::sort(digits.begin(), digits.end());
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] != i) throw PreconditionError("alphabet is not a digit alphabet {0..k-1}");
    }
    if (digits.size() < 2) throw PreconditionError("digit alphabet needs at least two digits");
    return std::uint32_t(digits.size());
}

bool has_radix_symbol(const Acceptor& a) {
    return std::find(a.alphabet.begin(), a.alphabet.end(), kRadix) != a.alphabet.end();
}

Acceptor canonical_language(const Acceptor& a, std::size_t state_cap) {
    digit_base(a);
    const Dfao msd = with_direction(a, Direction::Msd, state_cap);
    Acceptor canon;
    canon.alphabet = a.alphabet;
    canon.direction = Direction::Msd;
    const std::size_t k = a.alphabet.size();
    if (has_radix_symbol(a)) {
        // 0 start, 1 integer digits, 2 radix just read, 3 fraction ending nonzero, 4 fraction ending 0, 5 dead
        canon.outputs = {0, 0, 1, 1, 0, 0};
        canon.transitions.assign(6, std::vector<StateId>(k, 5));
        for (std::size_t i = 0; i < k; ++i) {
            const Symbol s = a.alphabet[i];
            if (s == kRadix) {
                canon.transitions[0][i] = 2;
                canon.transitions[1][i] = 2;
            } else {
                canon.transitions[0][i] = s == 0 ? 5 : 1;
                canon.transitions[1][i] = 1;
                for (StateId q : {2u, 3u, 4u}) canon.transitions[q][i] = s == 0 ? 4 : 3;
            }
        }
    } else {
        // 0 start, 1 after a nonzero leading digit, 2 dead
        canon.outputs = {1, 1, 0};
        canon.transitions.assign(3, std::vector<StateId>(k, 2));
        for (std::size_t i = 0; i < k; ++i) {
            canon.transitions[0][i] = a.alphabet[i] == 0 ? 2 : 1;
            canon.transitions[1][i] = 1;
        }
    }
    return intersect(msd, canon);
}

// ---------------------------------------------------------------------------
// structure of the live graph

namespace {

struct LiveGraph {
    Dfao m;                                   // minimal, most significant first
    std::vector<bool> live;
    std::vector<int> scc;                     // -1 for dead states
    std::vector<std::vector<StateId>> members;
    std::vector<std::size_t> internal_edges;
    std::vector<std::size_t> symbol_order;    // alphabet indices sorted by symbol

    bool cyclic(int c) const { return internal_edges[c] > 0; }
    bool simple(int c) const { return internal_edges[c] == 0 || internal_edges[c] == members[c].size(); }

    // The unique in-component successor of q (simple cyclic components only).
    std::pair<Symbol, StateId> next_on_cycle(StateId q) const {
        for (std::size_t i : symbol_order) {
            StateId t = m.transitions[q][i];
            if (live[t] && scc[t] == scc[q]) return {m.alphabet[i], t};
        }
        throw VerificationFailure("state has no successor on its cycle");
    }
    Word cycle_word(StateId q) const {
        Word w;
        StateId x = q;
        do {
            auto [s, t] = next_on_cycle(x);
            w.push_back(s);
            x = t;
        } while (x != q);
        return w;
    }
};

LiveGraph analyse(const Acceptor& a, std::size_t state_cap) {
    LiveGraph g;
    g.m = minimize(with_direction(a, Direction::Msd, state_cap));
    const std::size_t n = g.m.num_states();
    g.symbol_order.resize(g.m.alphabet.size());
    for (std::size_t i = 0; i < g.symbol_order.size(); ++i) g.symbol_order[i] = i;
    std::sort(g.symbol_order.begin(), g.symbol_order.end(),
              [&](auto x, auto y) { return g.m.alphabet[x] < g.m.alphabet[y]; });

    // co-accessible states (every state of a minimal DFA is accessible)
    std::vector<std::vector<StateId>> rev(n);
    std::vector<StateId> stack;
    g.live.assign(n, false);
    for (std::size_t q = 0; q < n; ++q) {
        for (StateId t : g.m.transitions[q]) rev[t].push_back(StateId(q));
        if (g.m.outputs[q]) {
            g.live[q] = true;
            stack.push_back(StateId(q));
        }
    }
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId t : rev[q]) {
            if (!g.live[t]) {
                g.live[t] = true;
                stack.push_back(t);
            }
        }
    }

    // Tarjan, iterative
    g.scc.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<StateId> tstack;
    int counter = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (!g.live[root] || index[root] >= 0) continue;
        std::vector<std::pair<StateId, std::size_t>> call{{StateId(root), 0}};
        index[root] = low[root] = counter++;
        tstack.push_back(StateId(root));
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [q, edge] = call.back();
            if (edge < g.m.alphabet.size()) {
                StateId t = g.m.transitions[q][edge++];
                if (!g.live[t]) continue;
                if (index[t] < 0) {
                    index[t] = low[t] = counter++;
                    tstack.push_back(t);
                    on_stack[t] = true;
                    call.emplace_back(t, 0);
                } else if (on_stack[t]) {
                    low[q] = std::min(low[q], index[t]);
                }
                continue;
            }
            const StateId done = q;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                const int id = int(g.members.size());
                g.members.emplace_back();
                StateId x;
                do {
                    x = tstack.back();
                    tstack.pop_back();
                    on_stack[x] = false;
                    g.scc[x] = id;
                    g.members.back().push_back(x);
                } while (x != done);
                std::sort(g.members.back().begin(), g.members.back().end());
            }
        }
    }
    g.internal_edges.assign(g.members.size(), 0);
    for (std::size_t q = 0; q < n; ++q) {
        if (!g.live[q]) continue;
        for (StateId t : g.m.transitions[q]) {
            if (g.live[t] && g.scc[t] == g.scc[q]) ++g.internal_edges[g.scc[q]];
        }
    }
    return g;
}

// Shortest word from `from` to a state satisfying `target`, moving only through allowed states.
std::optional<Word> bfs_word(const LiveGraph& g, StateId from, const std::function<bool(StateId)>& target,
                             const std::function<bool(StateId)>& allowed, bool nonempty = false) {
    const std::size_t n = g.m.num_states();
    std::vector<StateId> parent(n, StateId(-1));
    std::vector<Symbol> via(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<StateId> queue;
    auto path_to = [&](StateId x, StateId start, Word prefix) {
        Word w;
        for (StateId y = x; y != start; y = parent[y]) w.push_back(via[y]);
        std::reverse(w.begin(), w.end());
        prefix.insert(prefix.end(), w.begin(), w.end());
        return prefix;
    };
    if (!nonempty) {
        if (target(from)) return Word{};
        seen[from] = true;
        queue.push_back(from);
        while (!queue.empty()) {
            StateId q = queue.front();
            queue.pop_front();
            for (std::size_t i : g.symbol_order) {
                StateId t = g.m.transitions[q][i];
                if (seen[t] || !allowed(t)) continue;
                seen[t] = true;
                parent[t] = q;
                via[t] = g.m.alphabet[i];
                if (target(t)) return path_to(t, from, {});
                queue.push_back(t);
            }
        }
        return std::nullopt;
    }
    // nonempty: take each first edge, then search without revisiting
    std::optional<Word> best;
    for (std::size_t i : g.symbol_order) {
        StateId t = g.m.transitions[from][i];
        if (!allowed(t)) continue;
        auto rest = bfs_word(g, t, target, allowed, false);
        if (rest && (!best || rest->size() + 1 < best->size())) {
            Word w{g.m.alphabet[i]};
            w.insert(w.end(), rest->begin(), rest->end());
            best = w;
        }
    }
    return best;
}

PumpWitness make_witness(const LiveGraph& g, int c) {
    const auto in_c = [&](StateId t) { return g.live[t] && g.scc[t] == c; };
    for (StateId q : g.members[c]) {
        std::vector<std::size_t> edges;
        for (std::size_t i : g.symbol_order) {
            if (in_c(g.m.transitions[q][i])) edges.push_back(i);
        }
        if (edges.size() < 2) continue;
        auto loop_via = [&](std::size_t i) {
            Word w{g.m.alphabet[i]};
            auto rest = bfs_word(g, g.m.transitions[q][i], [&](StateId x) { return x == q; }, in_c);
            w.insert(w.end(), rest->begin(), rest->end());
            return w;
        };
        const Word c1 = loop_via(edges[0]), c2 = loop_via(edges[1]);
        PumpWitness wit;
        for (std::size_t r = 0; r < c2.size(); ++r) wit.first.insert(wit.first.end(), c1.begin(), c1.end());
        for (std::size_t r = 0; r < c1.size(); ++r) wit.second.insert(wit.second.end(), c2.begin(), c2.end());
        const auto is_live = [&](StateId t) { return bool(g.live[t]); };
        wit.prefix = *bfs_word(g, g.m.initial, [&](StateId x) { return x == q; }, is_live);
        wit.suffix = *bfs_word(g, q, [&](StateId x) { return g.m.outputs[x] != 0; }, is_live);
        return wit;
    }
    throw VerificationFailure("non-simple component without a branching state");
}

std::size_t max_cycle_degree(const LiveGraph& g) {
    if (!g.live[g.m.initial]) return 0;
    const std::size_t nc = g.members.size();
    std::vector<long> best(nc, -2);  // -2 unknown, -1 no accepting continuation
    std::function<long(int)> solve = [&](int c) -> long {
        if (best[c] != -2) return best[c];
        long b = -1;
        for (StateId q : g.members[c]) {
            if (g.m.outputs[q]) b = std::max(b, 0L);
            for (StateId t : g.m.transitions[q]) {
                if (!g.live[t] || g.scc[t] == c) continue;
                b = std::max(b, solve(g.scc[t]));
            }
        }
        if (b >= 0 && g.cyclic(c)) b += 1;
        return best[c] = b;
    };
    return std::size_t(std::max(0L, solve(g.scc[g.m.initial])));
}

double fit_alpha(const Acceptor& m, std::size_t horizon) {
    std::uint32_t k = 0;
    for (Symbol s : m.alphabet) k += s != kRadix ? 1 : 0;
    k = std::max<std::uint32_t>(k, 2);
    const auto by_len = census_by_length(m, horizon);
    std::vector<double> xs, ys;
    BigInt running = 0;
    for (std::size_t n = 0; n <= horizon; ++n) {
        running += by_len[n];
        if (n < 2 || running == 0) continue;
        xs.push_back(std::log(std::pow(double(k), double(n)) - 1.0));
        ys.push_back(std::log(running.convert_to<double>()));
    }
    if (xs.size() < 2) return 0.0;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(xs.size());
    my /= double(xs.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxx > 0 ? sxy / sxx : 0.0;
}

std::string form_key(const SimpleSparseForm& f) {
    std::string key;
    for (std::size_t i = 0; i < f.fixed.size(); ++i) {
        key += to_text(f.fixed[i]);
        key += '|';
        if (i < f.cycles.size()) key += "(" + to_text(f.cycles[i]) + ")|";
    }
    return key;
}

// The form with cycle i and an adjacent copy of it removed: x w w* y -> x y.
std::optional<SimpleSparseForm> drop_cycle(const SimpleSparseForm& f, std::size_t i, bool copy_before) {
    const Word& w = f.cycles[i];
    const Word& left = f.fixed[i];
    const Word& right = f.fixed[i + 1];
    Word joined;
    if (copy_before) {
        if (left.size() < w.size() || !std::equal(w.begin(), w.end(), left.end() - std::ptrdiff_t(w.size()))) return std::nullopt;
        joined.assign(left.begin(), left.end() - std::ptrdiff_t(w.size()));
        joined.insert(joined.end(), right.begin(), right.end());
    } else {
        if (right.size() < w.size() || !std::equal(w.begin(), w.end(), right.begin())) return std::nullopt;
        joined = left;
        joined.insert(joined.end(), right.begin() + std::ptrdiff_t(w.size()), right.end());
    }
    SimpleSparseForm g = f;
    g.cycles.erase(g.cycles.begin() + std::ptrdiff_t(i));
    g.fixed.erase(g.fixed.begin() + std::ptrdiff_t(i), g.fixed.begin() + std::ptrdiff_t(i) + 2);
    g.fixed.insert(g.fixed.begin() + std::ptrdiff_t(i), joined);
    return g;
}

// Merges pairs x y and x w w* y (or x w* w y) into x w* y. Both parts are
// components of a disjoint cover, so the result is still one.
std::vector<SimpleSparseForm> merge_components(std::vector<SimpleSparseForm> comps) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < comps.size(); ++i) index.emplace(form_key(comps[i]), i);
        std::vector<bool> removed(comps.size(), false);
        for (std::size_t gi = 0; gi < comps.size() && !changed; ++gi) {
            for (std::size_t c = 0; c < comps[gi].num_cycles() && !changed; ++c) {
                for (bool before : {true, false}) {
                    auto smaller = drop_cycle(comps[gi], c, before);
                    if (!smaller) continue;
                    auto it = index.find(form_key(*smaller));
                    if (it == index.end() || it->second == gi) continue;
                    SimpleSparseForm merged = comps[gi];
                    Word& side = before ? merged.fixed[c] : merged.fixed[c + 1];
                    const std::size_t len = merged.cycles[c].size();
                    if (before) {
                        side.resize(side.size() - len);
                    } else {
                        side.erase(side.begin(), side.begin() + std::ptrdiff_t(len));
                    }
                    comps[gi] = merged;
                    removed[it->second] = true;
                    changed = true;
                    break;
                }
            }
        }
        if (changed) {
            std::vector<SimpleSparseForm> kept;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                if (!removed[i]) kept.push_back(std::move(comps[i]));
            }
            comps = std::move(kept);
        }
    }
    return comps;
}

std::vector<SimpleSparseForm> components_of(const LiveGraph& g, std::size_t cap) {
    std::vector<SimpleSparseForm> out;
    if (!g.live[g.m.initial]) return out;
    std::uint32_t base = 0;
    for (Symbol s : g.m.alphabet) base += s != kRadix ? 1 : 0;
    std::vector<Word> fixed, cycles;

    std::function<void(StateId, Word)> walk;
    std::function<void(StateId, const Word&)> leave = [&](StateId x, const Word& buf) {
        if (g.m.outputs[x]) {
            SimpleSparseForm f;
            f.base = base;
            f.fixed = fixed;
            f.fixed.push_back(buf);
            f.cycles = cycles;
            out.push_back(std::move(f));
            if (out.size() > cap) throw CapExceeded("decomposition exceeds the component cap of " + std::to_string(cap));
        }
        for (std::size_t i : g.symbol_order) {
            StateId t = g.m.transitions[x][i];
            if (!g.live[t] || g.scc[t] == g.scc[x]) continue;
            Word next = buf;
            next.push_back(g.m.alphabet[i]);
            walk(t, std::move(next));
        }
    };
    walk = [&](StateId entry, Word buf) {
        const int c = g.scc[entry];
        if (!g.cyclic(c)) {
            leave(entry, buf);
            return;
        }
        fixed.push_back(buf);
        cycles.push_back(g.cycle_word(entry));
        Word path;
        StateId x = entry;
        do {
            leave(x, path);
            auto [s, t] = g.next_on_cycle(x);
            path.push_back(s);
            x = t;
        } while (x != entry);
        fixed.pop_back();
        cycles.pop_back();
    };
    walk(g.m.initial, {});
    return merge_components(std::move(out));
}

}  // namespace

SparsenessVerdict is_sparse(const Acceptor& a, const AnalysisOptions& opts) {
    const LiveGraph g = analyse(a, opts.state_cap);
    SparsenessVerdict v;
    v.alpha = fit_alpha(g.m, 20);
    for (std::size_t c = 0; c < g.members.size(); ++c) {
        if (!g.simple(int(c))) {
            v.sparse = false;
            v.witness = make_witness(g, int(c));
            return v;
        }
    }
    v.degree = max_cycle_degree(g);
    if (opts.with_components) v.components = components_of(g, opts.component_cap);
    return v;
}

std::vector<SimpleSparseForm> decompose(const Acceptor& a, const AnalysisOptions& opts) {
    const LiveGraph g = analyse(a, opts.state_cap);
    for (std::size_t c = 0; c < g.members.size(); ++c) {
        if (!g.simple(int(c))) throw PreconditionError("decompose: language is not sparse");
    }
    return components_of(g, opts.component_cap);
}

GrowthReport classify_growth(const Acceptor& a, std::size_t horizon, const AnalysisOptions& opts) {
    const Acceptor canon = canonical_language(a, opts.state_cap);
    const SparsenessVerdict v = is_sparse(canon, opts);
    GrowthReport r;
    r.sparse = v.sparse;
    r.degree = v.degree;
    r.components = v.components.size();
    r.witness = v.witness;
    r.alpha = fit_alpha(canon, horizon);
    const auto by_len = census_by_length(canon, horizon);
    BigInt running = 0;
    for (const auto& c : by_len) {
        running += c;
        r.census.push_back(running);
    }
    if (v.sparse) {
        double fitted = 0.0;
        for (std::size_t n = 1; n <= horizon; ++n) {
            fitted = std::max(fitted, r.census[n].convert_to<double>() / std::pow(double(n), double(v.degree)));
        }
        r.fitted_constant = fitted;
        // each component with at most d cycles has at most (n+1)^d <= 2^d n^d words of length <= n
        r.polynomial_bound_holds = fitted <= double(r.components) * std::pow(2.0, double(v.degree)) + 1e-9;
    } else {
        const auto& w = *v.witness;
        r.beta = 1.0 / double(w.first.size());
        const std::size_t fixed_len = w.prefix.size() + w.suffix.size();
        bool holds = true;
        for (std::size_t n = fixed_len; n <= horizon; ++n) {
            const std::size_t reps = (n - fixed_len) / w.first.size();
            holds = holds && r.census[n] >= big_pow(2, reps);
        }
        r.exponential_bound_holds = holds;
    }
    return r;
}

WellOrderReport is_well_ordered(const SimpleSparseForm& f) {
    f.validate();
    WellOrderReport rep;
    const ClosedForm cf = closed_form(f);
    const std::size_t s = f.num_cycles();
    const std::size_t J = f.pre_radix_cycles();

    // bounded cross-checks over counts in [0, limit]
    const std::uint64_t limit = s <= 6 ? 3 : 1;
    std::vector<std::uint64_t> counts(s, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == s) {
            if (cf.pre_value(counts) < cf.pre[0]) rep.inequalities_hold = false;
            if (cf.has_radix() && cf.post_value(counts) > cf.post[0]) rep.inequalities_hold = false;
            const Rational here = cf.value(counts);
            for (std::size_t l = J; l < s; ++l) {
                counts[l] += 1;
                if (cf.value(counts) < here) rep.descent_found = true;
                counts[l] -= 1;
            }
            return;
        }
        for (std::uint64_t n = 0; n <= limit; ++n) {
            counts[i] = n;
            rec(i + 1);
        }
        counts[i] = 0;
    };
    rec(0);

    if (!f.radix_position()) return rep;
    std::vector<Symbol> digits;
    for (Symbol d = 0; d < f.base; ++d) digits.push_back(d);
    for (std::size_t l = J; l < s; ++l) {
        // tails that can follow cycle l
        Nfa tail = Nfa::word(f.fixed[l + 1], digits);
        for (std::size_t i = l + 1; i < s; ++i) {
            tail = nfa_concat(tail, nfa_star(Nfa::word(f.cycles[i], digits)));
            tail = nfa_concat(tail, Nfa::word(f.fixed[i + 1], digits));
        }
        // words T with T 0 0 0 ... > y y y ... : states 0..len-1 while equal, then GT, LT
        const Word& y = f.cycles[l];
        const StateId gt = StateId(y.size()), lt = gt + 1;
        Acceptor above;
        above.alphabet = digits;
        above.direction = Direction::Msd;
        above.transitions.assign(y.size() + 2, std::vector<StateId>(digits.size()));
        above.outputs.assign(y.size() + 2, 0);
        above.outputs[gt] = 1;
        for (std::size_t j = 0; j < y.size(); ++j) {
            for (Symbol d : digits) {
                above.transitions[j][d] = d > y[j] ? gt : d < y[j] ? lt : StateId((j + 1) % y.size());
            }
        }
        for (Symbol d : digits) {
            above.transitions[gt][d] = gt;
            above.transitions[lt][d] = lt;
        }
        if (!is_empty(intersect(determinize(tail), above))) {
            rep.well_ordered = false;
            break;
        }
    }
    return rep;
}

}  // namespace sparse
