#pragma once

// Deterministic finite automata with output, and the regular-language algebra
// built on them. A Dfao reads written (most significant first) words either in
// written order (Msd) or reversed (Lsd); the language it defines is always a
// set of written words, so the direction never changes what is accepted.

#include "sparse/digits.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace sparse {

enum class Direction { Lsd, Msd };

inline constexpr std::size_t kDefaultStateCap = 1000000;

using StateId = std::uint32_t;

struct Dfao {
    std::vector<Symbol> alphabet;
    std::vector<std::vector<StateId>> transitions;  // [state][index into alphabet]
    StateId initial = 0;
    std::vector<std::uint32_t> outputs;             // one output code per state
    Direction direction = Direction::Lsd;

    std::size_t num_states() const { return transitions.size(); }
    /// Position of s in the alphabet, or -1.
    int symbol_index(Symbol s) const;
    StateId step(StateId q, Symbol s) const;
    /// State reached from `from` by consuming w in reading order (w given as written).
    StateId state_after(const Word& w, StateId from) const;
    StateId state_after(const Word& w) const { return state_after(w, initial); }
    /// tau(delta(q0, w)) with w consumed in this machine's direction.
    std::uint32_t run(const Word& w) const { return outputs[state_after(w)]; }
    /// Throws PreconditionError unless transitions are total and in range.
    void validate() const;
};

/// An acceptor is a Dfao whose outputs are 0 or 1.
using Acceptor = Dfao;

inline bool accepts(const Acceptor& a, const Word& w) { return a.run(w) != 0; }

/// Nondeterministic automaton over written words, read left to right.
/// Internal building block for unions, concatenations and projections.
struct Nfa {
    std::vector<Symbol> alphabet;
    std::vector<std::vector<std::vector<StateId>>> transitions;  // [state][symbol index] -> targets
    std::vector<std::vector<StateId>> epsilon;
    std::vector<StateId> initial;
    std::vector<bool> accepting;

    explicit Nfa(std::vector<Symbol> alpha = {}) : alphabet(std::move(alpha)) {}

    std::size_t num_states() const { return transitions.size(); }
    StateId add_state(bool accept = false);
    void add_edge(StateId from, Symbol s, StateId to);
    void add_epsilon(StateId from, StateId to) { epsilon[from].push_back(to); }
    int symbol_index(Symbol s) const;

    static Nfa word(const Word& w, std::vector<Symbol> alphabet);
    static Nfa empty(std::vector<Symbol> alphabet);
    static Nfa all_words(std::vector<Symbol> alphabet);
};

Nfa nfa_union(const Nfa& a, const Nfa& b);
Nfa nfa_concat(const Nfa& a, const Nfa& b);
Nfa nfa_star(const Nfa& a);
Nfa nfa_reverse(const Nfa& a);
/// The language of a as an Nfa over written words.
Nfa to_nfa(const Acceptor& a);

/// Subset construction. Throws CapExceeded beyond `state_cap` subsets.
Acceptor determinize(const Nfa& n, Direction direction = Direction::Msd, std::size_t state_cap = kDefaultStateCap);

/// Same function on written words, read in the other order. Throws CapExceeded
/// beyond `state_cap` states.
Dfao with_direction(const Dfao& m, Direction direction, std::size_t state_cap = kDefaultStateCap);

/// Acceptor for exactly the listed words.
Acceptor literal(const std::vector<Word>& words, std::vector<Symbol> alphabet, Direction direction = Direction::Msd);
Acceptor all_words_acceptor(std::vector<Symbol> alphabet, Direction direction = Direction::Msd);

Acceptor complement(const Acceptor& a);
Acceptor intersect(const Acceptor& a, const Acceptor& b);
Acceptor unite(const Acceptor& a, const Acceptor& b);
Acceptor difference(const Acceptor& a, const Acceptor& b);

/// Removes states that are not both accessible and co-accessible; a single
/// rejecting sink keeps the transition function total.
Acceptor trim(const Acceptor& a);
/// Minimal Dfao computing the same function (unreachable states dropped).
Dfao minimize(const Dfao& m);

bool is_empty(const Acceptor& a);
bool equivalent(const Acceptor& a, const Acceptor& b);
std::optional<Word> shortest_accepted(const Acceptor& a);

/// Number of accepted words of length <= n.
BigInt census(const Acceptor& a, std::size_t n);
/// Number of accepted words of length exactly L, for L = 0..n.
std::vector<BigInt> census_by_length(const Acceptor& a, std::size_t n);

/// All accepted written words of length <= max_len, shortlex order.
std::vector<Word> accepted_words(const Acceptor& a, std::size_t max_len);

/// Binary output map: maps each output code to (code != 0).
Acceptor support_of(const Dfao& m);

/// The Thue-Morse machine over {0,1}: output is the parity of the number of ones.
Dfao thue_morse();

}  // namespace sparse
