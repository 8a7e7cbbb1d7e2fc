#include "sparse/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

namespace sparse {

namespace {

struct VectorHash {
    std::size_t operator()(const std::vector<StateId>& v) const {
        std::size_t h = v.size();
        for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

void require_same_alphabet(const Dfao& a, const Dfao& b) {
    if (a.alphabet != b.alphabet) throw PreconditionError("alphabet mismatch between automata");
}

// Renumbers the states reachable from the initial state in BFS order
// (symbols in alphabet order), which makes equal machines identical.
Dfao canonical_reachable(const Dfao& m) {
    std::vector<StateId> id(m.num_states(), StateId(-1));
    std::vector<StateId> order;
    id[m.initial] = 0;
    order.push_back(m.initial);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (StateId t : m.transitions[order[i]]) {
            if (id[t] == StateId(-1)) {
                id[t] = StateId(order.size());
                order.push_back(t);
            }
        }
    }
    Dfao out;
    out.alphabet = m.alphabet;
    out.direction = m.direction;
    out.initial = 0;
    for (StateId q : order) {
        std::vector<StateId> row;
        for (StateId t : m.transitions[q]) row.push_back(id[t]);
        out.transitions.push_back(std::move(row));
        out.outputs.push_back(m.outputs[q]);
    }
    return out;
}

enum class BoolOp { And, Or, Diff };

Acceptor product(const Acceptor& a, const Acceptor& b_in, BoolOp op) {
    require_same_alphabet(a, b_in);
    const Dfao b = with_direction(b_in, a.direction);
    const std::size_t k = a.alphabet.size();
    std::unordered_map<std::uint64_t, StateId> ids;
    std::vector<std::pair<StateId, StateId>> order;
    auto key = [](StateId x, StateId y) { return (std::uint64_t(x) << 32) | y; };
    ids[key(a.initial, b.initial)] = 0;
    order.emplace_back(a.initial, b.initial);
    Acceptor out;
    out.alphabet = a.alphabet;
    out.direction = a.direction;
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto [x, y] = order[i];
        std::vector<StateId> row(k);
        for (std::size_t s = 0; s < k; ++s) {
            const StateId nx = a.transitions[x][s], ny = b.transitions[y][s];
            auto [it, fresh] = ids.emplace(key(nx, ny), StateId(order.size()));
            if (fresh) {
                order.emplace_back(nx, ny);
                if (order.size() > kDefaultStateCap) throw CapExceeded("product automaton exceeds the state cap");
            }
            row[s] = it->second;
        }
        out.transitions.push_back(std::move(row));
        const bool fa = a.outputs[x] != 0, fb = b.outputs[y] != 0;
        bool acc = false;
        switch (op) {
            case BoolOp::And: acc = fa && fb; break;
            case BoolOp::Or: acc = fa || fb; break;
            case BoolOp::Diff: acc = fa && !fb; break;
        }
        out.outputs.push_back(acc ? 1 : 0);
    }
    return minimize(out);
}

Dfao msd_form(const Dfao& m) { return with_direction(m, Direction::Msd); }

}  // namespace

// ---------------------------------------------------------------------------
// Dfao

int Dfao::symbol_index(Symbol s) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (alphabet[i] == s) return int(i);
    }
    return -1;
}

StateId Dfao::step(StateId q, Symbol s) const {
    const int i = symbol_index(s);
    if (i < 0) throw PreconditionError("symbol '" + symbol_text(s) + "' is not in the automaton alphabet");
    return transitions[q][std::size_t(i)];
}

StateId Dfao::state_after(const Word& w, StateId from) const {
    StateId q = from;
    if (direction == Direction::Msd) {
        for (Symbol s : w) q = step(q, s);
    } else {
        for (auto it = w.rbegin(); it != w.rend(); ++it) q = step(q, *it);
    }
    return q;
}

void Dfao::validate() const {
    if (transitions.empty()) throw PreconditionError("automaton has no states");
    if (outputs.size() != transitions.size()) throw PreconditionError("automaton needs one output per state");
    if (initial >= transitions.size()) throw PreconditionError("initial state out of range");
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        for (std::size_t j = i + 1; j < alphabet.size(); ++j) {
            if (alphabet[i] == alphabet[j]) throw PreconditionError("duplicate alphabet symbol");
        }
    }
    for (const auto& row : transitions) {
        if (row.size() != alphabet.size()) throw PreconditionError("transition function is not total");
        for (StateId t : row) {
            if (t >= transitions.size()) throw PreconditionError("transition target out of range");
        }
    }
}

// ---------------------------------------------------------------------------
// Nfa

StateId Nfa::add_state(bool accept) {
    transitions.emplace_back(alphabet.size());
    epsilon.emplace_back();
    accepting.push_back(accept);
    return StateId(transitions.size() - 1);
}

int Nfa::symbol_index(Symbol s) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (alphabet[i] == s) return int(i);
    }
    return -1;
}

void Nfa::add_edge(StateId from, Symbol s, StateId to) {
    const int i = symbol_index(s);
    if (i < 0) throw PreconditionError("symbol '" + symbol_text(s) + "' is not in the automaton alphabet");
    transitions[from][std::size_t(i)].push_back(to);
}

Nfa Nfa::word(const Word& w, std::vector<Symbol> alphabet) {
    Nfa n(std::move(alphabet));
    StateId q = n.add_state(w.empty());
    n.initial = {q};
    for (std::size_t i = 0; i < w.size(); ++i) {
        StateId t = n.add_state(i + 1 == w.size());
        n.add_edge(q, w[i], t);
        q = t;
    }
    return n;
}

Nfa Nfa::empty(std::vector<Symbol> alphabet) {
    Nfa n(std::move(alphabet));
    n.initial = {n.add_state(false)};
    return n;
}

Nfa Nfa::all_words(std::vector<Symbol> alphabet) {
    Nfa n(std::move(alphabet));
    StateId q = n.add_state(true);
    n.initial = {q};
    for (Symbol s : n.alphabet) n.add_edge(q, s, q);
    return n;
}

namespace {

// Copies b's states into a, returning the offset of b's states.
StateId absorb(Nfa& a, const Nfa& b) {
    if (a.alphabet != b.alphabet) throw PreconditionError("alphabet mismatch between automata");
    const StateId off = StateId(a.num_states());
    for (std::size_t q = 0; q < b.num_states(); ++q) {
        a.add_state(b.accepting[q]);
        for (std::size_t s = 0; s < b.alphabet.size(); ++s) {
            for (StateId t : b.transitions[q][s]) a.transitions[off + q][s].push_back(off + t);
        }
        for (StateId t : b.epsilon[q]) a.epsilon[off + q].push_back(off + t);
    }
    return off;
}

}  // namespace

Nfa nfa_union(const Nfa& a, const Nfa& b) {
    Nfa out = a;
    const StateId off = absorb(out, b);
    for (StateId q : b.initial) out.initial.push_back(off + q);
    return out;
}

Nfa nfa_concat(const Nfa& a, const Nfa& b) {
    Nfa out = a;
    const StateId off = absorb(out, b);
    for (std::size_t q = 0; q < a.num_states(); ++q) {
        if (!a.accepting[q]) continue;
        out.accepting[q] = false;
        for (StateId t : b.initial) out.epsilon[q].push_back(off + t);
    }
    return out;
}

Nfa nfa_star(const Nfa& a) {
    Nfa out(a.alphabet);
    StateId start = out.add_state(true);
    out.initial = {start};
    const StateId off = absorb(out, a);
    for (StateId q : a.initial) out.epsilon[start].push_back(off + q);
    for (std::size_t q = 0; q < a.num_states(); ++q) {
        if (a.accepting[q]) out.epsilon[off + q].push_back(start);
    }
    return out;
}

Nfa nfa_reverse(const Nfa& a) {
    Nfa out(a.alphabet);
    for (std::size_t q = 0; q < a.num_states(); ++q) out.add_state(false);
    for (std::size_t q = 0; q < a.num_states(); ++q) {
        for (std::size_t s = 0; s < a.alphabet.size(); ++s) {
            for (StateId t : a.transitions[q][s]) out.transitions[t][s].push_back(StateId(q));
        }
        for (StateId t : a.epsilon[q]) out.epsilon[t].push_back(StateId(q));
        if (a.accepting[q]) out.initial.push_back(StateId(q));
    }
    for (StateId q : a.initial) out.accepting[q] = true;
    return out;
}

Nfa to_nfa(const Acceptor& a) {
    Nfa n(a.alphabet);
    for (std::size_t q = 0; q < a.num_states(); ++q) n.add_state(a.outputs[q] != 0);
    for (std::size_t q = 0; q < a.num_states(); ++q) {
        for (std::size_t s = 0; s < a.alphabet.size(); ++s) n.transitions[q][s].push_back(a.transitions[q][s]);
    }
    n.initial = {a.initial};
    return a.direction == Direction::Msd ? n : nfa_reverse(n);
}

Acceptor determinize(const Nfa& n_in, Direction direction, std::size_t state_cap) {
    const Nfa n = direction == Direction::Msd ? n_in : nfa_reverse(n_in);
    const std::size_t k = n.alphabet.size();
    auto closure = [&](std::vector<StateId> set) {
        std::vector<bool> seen(n.num_states(), false);
        std::vector<StateId> stack;
        for (StateId q : set) {
            if (!seen[q]) {
                seen[q] = true;
                stack.push_back(q);
            }
        }
        set.clear();
        while (!stack.empty()) {
            StateId q = stack.back();
            stack.pop_back();
            set.push_back(q);
            for (StateId t : n.epsilon[q]) {
                if (!seen[t]) {
                    seen[t] = true;
                    stack.push_back(t);
                }
            }
        }
        std::sort(set.begin(), set.end());
        return set;
    };

    std::unordered_map<std::vector<StateId>, StateId, VectorHash> ids;
    std::vector<std::vector<StateId>> subsets;
    auto start = closure(n.initial);
    ids.emplace(start, 0);
    subsets.push_back(start);
    Acceptor out;
    out.alphabet = n.alphabet;
    out.direction = direction;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        std::vector<StateId> row(k);
        bool acc = false;
        for (StateId q : subsets[i]) acc = acc || n.accepting[q];
        for (std::size_t s = 0; s < k; ++s) {
            std::vector<StateId> next;
            for (StateId q : subsets[i]) {
                const auto& ts = n.transitions[q][s];
                next.insert(next.end(), ts.begin(), ts.end());
            }
            next = closure(std::move(next));
            auto [it, fresh] = ids.emplace(next, StateId(subsets.size()));
            if (fresh) {
                if (subsets.size() >= state_cap) {
                    throw CapExceeded("determinization exceeds the state cap of " + std::to_string(state_cap));
                }
                subsets.push_back(std::move(next));
            }
            row[s] = it->second;
        }
        out.transitions.push_back(std::move(row));
        out.outputs.push_back(acc ? 1 : 0);
    }
    return out;
}

Dfao with_direction(const Dfao& m, Direction direction, std::size_t state_cap) {
    if (m.direction == direction) return m;
    // a state is the function q -> tau(delta(q, u)) for the reversed input read so far
    const std::size_t n = m.num_states(), k = m.alphabet.size();
    std::unordered_map<std::vector<StateId>, StateId, VectorHash> ids;
    std::vector<std::vector<StateId>> funcs;
    std::vector<StateId> start(m.outputs.begin(), m.outputs.end());
    ids.emplace(start, 0);
    funcs.push_back(start);
    Dfao out;
    out.alphabet = m.alphabet;
    out.direction = direction;
    for (std::size_t i = 0; i < funcs.size(); ++i) {
        std::vector<StateId> row(k);
        for (std::size_t s = 0; s < k; ++s) {
            std::vector<StateId> g(n);
            for (std::size_t q = 0; q < n; ++q) g[q] = funcs[i][m.transitions[q][s]];
            auto [it, fresh] = ids.emplace(g, StateId(funcs.size()));
            if (fresh) {
                if (funcs.size() >= state_cap) throw CapExceeded("direction change exceeds the state cap of " + std::to_string(state_cap));
                funcs.push_back(std::move(g));
            }
            row[s] = it->second;
        }
        out.transitions.push_back(std::move(row));
        out.outputs.push_back(funcs[i][m.initial]);
    }
    return minimize(out);
}

Acceptor literal(const std::vector<Word>& words, std::vector<Symbol> alphabet, Direction direction) {
    Nfa n = Nfa::empty(alphabet);
    for (const auto& w : words) n = nfa_union(n, Nfa::word(w, alphabet));
    return minimize(determinize(n, direction));
}

Acceptor all_words_acceptor(std::vector<Symbol> alphabet, Direction direction) {
    Acceptor a;
    a.alphabet = std::move(alphabet);
    a.direction = direction;
    a.transitions = {std::vector<StateId>(a.alphabet.size(), 0)};
    a.outputs = {1};
    return a;
}

Acceptor complement(const Acceptor& a) {
    Acceptor out = a;
    for (auto& o : out.outputs) o = o ? 0 : 1;
    return minimize(out);
}

Acceptor intersect(const Acceptor& a, const Acceptor& b) { return product(a, b, BoolOp::And); }
Acceptor unite(const Acceptor& a, const Acceptor& b) { return product(a, b, BoolOp::Or); }
Acceptor difference(const Acceptor& a, const Acceptor& b) { return product(a, b, BoolOp::Diff); }

Acceptor trim(const Acceptor& a) {
    const std::size_t n = a.num_states(), k = a.alphabet.size();
    std::vector<bool> reach(n, false), coreach(n, false);
    std::vector<StateId> stack{a.initial};
    reach[a.initial] = true;
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId t : a.transitions[q]) {
            if (!reach[t]) {
                reach[t] = true;
                stack.push_back(t);
            }
        }
    }
    std::vector<std::vector<StateId>> rev(n);
    for (std::size_t q = 0; q < n; ++q) {
        for (StateId t : a.transitions[q]) rev[t].push_back(StateId(q));
        if (a.outputs[q]) {
            coreach[q] = true;
            stack.push_back(StateId(q));
        }
    }
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId t : rev[q]) {
            if (!coreach[t]) {
                coreach[t] = true;
                stack.push_back(t);
            }
        }
    }
    Acceptor out;
    out.alphabet = a.alphabet;
    out.direction = a.direction;
    std::vector<StateId> id(n, StateId(-1));
    std::vector<StateId> live;
    for (std::size_t q = 0; q < n; ++q) {
        if (reach[q] && coreach[q]) {
            id[q] = StateId(live.size());
            live.push_back(StateId(q));
        }
    }
    const StateId sink = StateId(live.size());
    bool need_sink = id[a.initial] == StateId(-1);
    for (StateId q : live) {
        std::vector<StateId> row(k);
        for (std::size_t s = 0; s < k; ++s) {
            StateId t = id[a.transitions[q][s]];
            if (t == StateId(-1)) {
                t = sink;
                need_sink = true;
            }
            row[s] = t;
        }
        out.transitions.push_back(std::move(row));
        out.outputs.push_back(a.outputs[q] ? 1 : 0);
    }
    if (need_sink) {
        out.transitions.emplace_back(k, sink);
        out.outputs.push_back(0);
    }
    out.initial = id[a.initial] == StateId(-1) ? sink : id[a.initial];
    return canonical_reachable(out);
}

Dfao minimize(const Dfao& m_in) {
    const Dfao m = canonical_reachable(m_in);
    const std::size_t n = m.num_states(), k = m.alphabet.size();
    // Moore refinement: classes start as output codes
    std::vector<StateId> cls(n);
    {
        std::map<std::uint32_t, StateId> first;
        for (std::size_t q = 0; q < n; ++q) {
            auto [it, fresh] = first.emplace(m.outputs[q], StateId(first.size()));
            cls[q] = it->second;
        }
    }
    std::size_t count = 0;
    for (;;) {
        std::map<std::vector<StateId>, StateId> sig_ids;
        std::vector<StateId> next(n);
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<StateId> sig;
            sig.reserve(k + 1);
            sig.push_back(cls[q]);
            for (std::size_t s = 0; s < k; ++s) sig.push_back(cls[m.transitions[q][s]]);
            auto [it, fresh] = sig_ids.emplace(std::move(sig), StateId(sig_ids.size()));
            next[q] = it->second;
        }
        const std::size_t new_count = sig_ids.size();
        cls = std::move(next);
        if (new_count == count) break;
        count = new_count;
    }
    Dfao out;
    out.alphabet = m.alphabet;
    out.direction = m.direction;
    out.transitions.assign(count, std::vector<StateId>(k));
    out.outputs.assign(count, 0);
    for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t s = 0; s < k; ++s) out.transitions[cls[q]][s] = cls[m.transitions[q][s]];
        out.outputs[cls[q]] = m.outputs[q];
    }
    out.initial = cls[m.initial];
    return canonical_reachable(out);
}

bool is_empty(const Acceptor& a) { return !shortest_accepted(a).has_value(); }

bool equivalent(const Acceptor& a, const Acceptor& b) {
    return is_empty(difference(a, b)) && is_empty(difference(b, a));
}

std::optional<Word> shortest_accepted(const Acceptor& a_in) {
    const Dfao a = msd_form(a_in);
    const std::size_t n = a.num_states();
    std::vector<StateId> parent(n, StateId(-1));
    std::vector<Symbol> via(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<StateId> queue{a.initial};
    seen[a.initial] = true;
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        if (a.outputs[q]) {
            Word w;
            for (StateId x = q; x != a.initial; x = parent[x]) w.push_back(via[x]);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::size_t s = 0; s < a.alphabet.size(); ++s) {
            StateId t = a.transitions[q][s];
            if (!seen[t]) {
                seen[t] = true;
                parent[t] = q;
                via[t] = a.alphabet[s];
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

std::vector<BigInt> census_by_length(const Acceptor& a, std::size_t n) {
    std::vector<BigInt> cur(a.num_states(), 0), out;
    cur[a.initial] = 1;
    for (std::size_t len = 0;; ++len) {
        BigInt total = 0;
        for (std::size_t q = 0; q < a.num_states(); ++q) {
            if (a.outputs[q]) total += cur[q];
        }
        out.push_back(total);
        if (len == n) break;
        std::vector<BigInt> next(a.num_states(), 0);
        for (std::size_t q = 0; q < a.num_states(); ++q) {
            if (cur[q] == 0) continue;
            for (StateId t : a.transitions[q]) next[t] += cur[q];
        }
        cur = std::move(next);
    }
    return out;
}

BigInt census(const Acceptor& a, std::size_t n) {
    BigInt total = 0;
    for (const auto& c : census_by_length(a, n)) total += c;
    return total;
}

std::vector<Word> accepted_words(const Acceptor& a_in, std::size_t max_len) {
    const Dfao a = msd_form(a_in);
    const std::size_t n = a.num_states();
    // distance to acceptance, for pruning
    std::vector<std::size_t> dist(n, std::size_t(-1));
    std::vector<std::vector<StateId>> rev(n);
    std::deque<StateId> queue;
    for (std::size_t q = 0; q < n; ++q) {
        for (StateId t : a.transitions[q]) rev[t].push_back(StateId(q));
        if (a.outputs[q]) {
            dist[q] = 0;
            queue.push_back(StateId(q));
        }
    }
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (StateId t : rev[q]) {
            if (dist[t] == std::size_t(-1)) {
                dist[t] = dist[q] + 1;
                queue.push_back(t);
            }
        }
    }
    std::vector<Word> out;
    Word cur;
    for (std::size_t len = 0; len <= max_len; ++len) {
        // depth-first in alphabet order gives lexicographic order within a length
        auto rec = [&](auto&& self, StateId q) -> void {
            const std::size_t remaining = len - cur.size();
            if (dist[q] > remaining) return;
            if (remaining == 0) {
                out.push_back(cur);
                return;
            }
            std::vector<std::size_t> order(a.alphabet.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a.alphabet[x] < a.alphabet[y]; });
            for (std::size_t s : order) {
                cur.push_back(a.alphabet[s]);
                self(self, a.transitions[q][s]);
                cur.pop_back();
            }
        };
        rec(rec, a.initial);
    }
    return out;
}

Acceptor support_of(const Dfao& m) {
    Acceptor a = m;
    for (auto& o : a.outputs) o = o ? 1 : 0;
    return minimize(a);
}

Dfao thue_morse() {
    Dfao m;
    m.alphabet = {0, 1};
    m.transitions = {{0, 1}, {1, 0}};
    m.outputs = {0, 1};
    m.initial = 0;
    m.direction = Direction::Lsd;
    return m;
}

}  // namespace sparse
