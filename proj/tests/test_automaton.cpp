#include "sparse/automaton.hpp"

#include <doctest.h>

#include <random>

using namespace sparse;

namespace {

std::vector<Word> all_words_up_to(const std::vector<Symbol>& alphabet, std::size_t max_len) {
    std::vector<Word> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (Symbol s : alphabet) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

Dfao random_dfao(std::mt19937_64& rng, std::vector<Symbol> alphabet, std::size_t states, std::uint32_t outputs,
                 Direction dir) {
    Dfao m;
    m.alphabet = std::move(alphabet);
    m.direction = dir;
    for (std::size_t q = 0; q < states; ++q) {
        std::vector<StateId> row;
        for (std::size_t s = 0; s < m.alphabet.size(); ++s) row.push_back(StateId(rng() % states));
        m.transitions.push_back(row);
        m.outputs.push_back(std::uint32_t(rng() % outputs));
    }
    m.initial = StateId(rng() % states);
    return m;
}

Acceptor one_zero_star() {
    // 1 0*, read most significant first
    Acceptor a;
    a.alphabet = {0, 1};
    a.direction = Direction::Msd;
    a.transitions = {{2, 1}, {1, 2}, {2, 2}};
    a.outputs = {0, 1, 0};
    return a;
}

}  // namespace

TEST_CASE("thue-morse run examples") {
    const Dfao tm = thue_morse();
    CHECK(tm.run(parse_word("1101", 2)) == 1);
    CHECK(tm.run(parse_word("11", 2)) == 0);
    CHECK(tm.run({}) == tm.outputs[tm.initial]);
    for (int n = 0; n <= 1024; ++n) {
        CHECK(tm.run(encode_nat(n, 2)) == std::uint32_t(__builtin_popcount(n) & 1));
    }
    CHECK_THROWS_AS(tm.run(Word{2}), PreconditionError);
}

TEST_CASE("boolean operations") {
    const std::vector<Symbol> bin{0, 1};
    const Acceptor l1 = literal({parse_word("1", 2)}, bin);
    const Acceptor l10 = literal({parse_word("10", 2)}, bin);
    const Acceptor u = unite(l1, l10);
    for (const auto& w : all_words_up_to(bin, 4)) {
        const std::string t = to_text(w);
        CHECK(accepts(u, w) == (t == "1" || t == "10"));
    }
    const Acceptor a = one_zero_star();
    CHECK(is_empty(intersect(a, complement(a))));
    CHECK(equivalent(difference(unite(a, l1), l1), difference(a, l1)));
    CHECK_THROWS_AS(unite(a, literal({}, {0, 1, 2})), PreconditionError);
}

TEST_CASE("minimize collapses a redundant acceptor for 1 0*") {
    // eight states: two copies of the live part plus several equivalent sinks
    Acceptor a;
    a.alphabet = {0, 1};
    a.direction = Direction::Msd;
    a.transitions = {{4, 1}, {2, 5}, {3, 6}, {2, 7}, {4, 4}, {5, 6}, {7, 5}, {6, 7}};
    a.outputs = {0, 1, 1, 1, 0, 0, 0, 0};
    const Acceptor m = minimize(a);
    CHECK(m.num_states() == 3);
    CHECK(equivalent(m, one_zero_star()));
    for (const auto& w : all_words_up_to({0, 1}, 8)) CHECK(accepts(m, w) == accepts(a, w));
    // pairwise distinguishability oracle: no two states of the result are equivalent
    for (StateId x = 0; x < m.num_states(); ++x) {
        for (StateId y = x + 1; y < m.num_states(); ++y) {
            bool distinguished = false;
            for (const auto& w : all_words_up_to({0, 1}, 3)) {
                distinguished = distinguished || m.outputs[m.state_after(w, x)] != m.outputs[m.state_after(w, y)];
            }
            CHECK(distinguished);
        }
    }
}

TEST_CASE("census examples") {
    CHECK(census(one_zero_star(), 4) == 4);
    CHECK(census(literal({}, {0, 1}), 10) == 0);
    // valid binary expansions with odd digit sum
    Acceptor tm_support;
    tm_support.alphabet = {0, 1};
    tm_support.direction = Direction::Msd;
    // 0: start, 1: even after leading 1 (odd parity accepted), 2: odd, 3: dead
    tm_support.transitions = {{3, 2}, {1, 2}, {2, 1}, {3, 3}};
    tm_support.outputs = {0, 0, 1, 0};
    for (std::size_t n = 1; n <= 12; ++n) CHECK(census(tm_support, n) == big_pow(2, n - 1));
}

TEST_CASE("census matches brute force on random acceptors") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const bool ternary = trial % 2 == 1;
        const std::vector<Symbol> alpha = ternary ? std::vector<Symbol>{0, 1, 2} : std::vector<Symbol>{0, 1};
        const std::size_t max_n = ternary ? 10 : 14;
        const Acceptor a = random_dfao(rng, alpha, 2 + rng() % 6, 2, trial % 4 < 2 ? Direction::Lsd : Direction::Msd);
        const auto words = all_words_up_to(alpha, max_n);
        std::vector<BigInt> by_len(max_n + 1, 0);
        for (const auto& w : words) {
            if (accepts(a, w)) by_len[w.size()] += 1;
        }
        BigInt running = 0;
        for (std::size_t n = 0; n <= max_n; ++n) {
            running += by_len[n];
            CHECK(census(a, n) == running);
        }
        const auto listed = accepted_words(a, 6);
        std::size_t expected = 0;
        for (const auto& w : words) expected += (w.size() <= 6 && accepts(a, w)) ? 1 : 0;
        CHECK(listed.size() == expected);
        for (const auto& w : listed) CHECK(accepts(a, w));
    }
}

TEST_CASE("minimize, trim and direction changes preserve behaviour") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const Dfao m = random_dfao(rng, {0, 1, 2}, 1 + rng() % 7, trial % 3 == 0 ? 3 : 2,
                                   trial % 2 ? Direction::Lsd : Direction::Msd);
        const Dfao mm = minimize(m);
        CHECK(mm.num_states() <= m.num_states());
        const Dfao flipped = with_direction(m, m.direction == Direction::Lsd ? Direction::Msd : Direction::Lsd);
        for (const auto& w : all_words_up_to({0, 1, 2}, 6)) {
            CHECK(mm.run(w) == m.run(w));
            CHECK(flipped.run(w) == m.run(w));
        }
        const Acceptor acc = support_of(m);
        const Acceptor t = trim(acc);
        CHECK(equivalent(t, acc));
        // the reversed NFA route agrees with the function-state route
        const Acceptor via_nfa = determinize(to_nfa(acc), flipped.direction);
        CHECK(equivalent(via_nfa, support_of(flipped)));
        CHECK(minimize(via_nfa).num_states() == support_of(flipped).num_states());
    }
}

TEST_CASE("trim keeps only live states plus a sink") {
    const Acceptor a = one_zero_star();
    const Acceptor t = trim(a);
    CHECK(t.num_states() == 3);
    const Acceptor none = trim(literal({}, {0, 1}));
    CHECK(none.num_states() == 1);
    CHECK(is_empty(none));
}

TEST_CASE("nfa constructions") {
    const std::vector<Symbol> bin{0, 1};
    // 1 (0|1)* 1 over written words
    Nfa n = nfa_concat(nfa_concat(Nfa::word({1}, bin), Nfa::all_words(bin)), Nfa::word({1}, bin));
    const Acceptor a = minimize(determinize(n));
    const Acceptor b = minimize(determinize(n, Direction::Lsd));
    const Acceptor star = minimize(determinize(nfa_star(Nfa::word({1, 0}, bin))));
    for (const auto& w : all_words_up_to(bin, 8)) {
        const bool expect = w.size() >= 2 && w.front() == 1 && w.back() == 1;
        CHECK(accepts(a, w) == expect);
        CHECK(accepts(b, w) == expect);
        bool in_star = w.size() % 2 == 0;
        for (std::size_t i = 0; in_star && i < w.size(); ++i) in_star = w[i] == (i % 2 == 0 ? 1 : 0);
        CHECK(accepts(star, w) == in_star);
    }
    CHECK(to_text(*shortest_accepted(a)) == "11");
}

TEST_CASE("determinization respects the state cap") {
    // (0|1)* 1 (0|1)^12 needs 2^13 subsets
    const std::vector<Symbol> bin{0, 1};
    Nfa n = nfa_concat(Nfa::all_words(bin), Nfa::word({1}, bin));
    for (int i = 0; i < 12; ++i) {
        n = nfa_concat(n, nfa_union(Nfa::word({0}, bin), Nfa::word({1}, bin)));
    }
    CHECK_THROWS_AS(determinize(n, Direction::Msd, 1000), CapExceeded);
    CHECK(minimize(determinize(n, Direction::Msd)).num_states() == 8192);
}
