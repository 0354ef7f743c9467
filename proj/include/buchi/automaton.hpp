// Multi-track finite automata over base-n digit-tuple alphabets, plus the
// closure operations (product, complement, projection with padding closure,
// determinization, minimization) used by the formula compiler and the
// interpretation transforms.
//
// A symbol is an r-tuple of digits packed into one integer id with track 0
// most significant, so increasing id order is lexicographic tuple order.
// Transition tables are dense; -1 marks a missing transition (rejection).
#pragma once

#include "buchi/numeral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace buchi {

int64_t pow_int(int base, int exp);
int64_t pack_symbol(const std::vector<int>& digits, int radix);
std::vector<int> unpack_symbol(int64_t id, int radix, int tracks);

/// Finite word over an r-track digit alphabet, least significant digit first.
struct DigitWord {
    int radix = 2;
    int tracks = 1;
    std::vector<std::vector<int>> symbols;

    friend bool operator==(const DigitWord&, const DigitWord&) = default;
};

/// Digits of a tuple of naturals, all padded to the longest component.
DigitWord word_of_tuple(Base base, const std::vector<Nat>& xs);
std::string to_string(const DigitWord& w);

/// Deterministic automaton. Transitions form a partial function; a missing
/// transition rejects.
struct Dfa {
    int radix = 2;
    int tracks = 1;
    int initial = 0;
    std::vector<bool> finals;
    std::vector<int32_t> table;

    Dfa() = default;
    Dfa(Base base, int tracks, int num_states, int initial);

    Base base() const { return Base(radix); }
    int num_states() const { return static_cast<int>(finals.size()); }
    int64_t symbol_count() const { return pow_int(radix, tracks); }
    int32_t next(int state, int64_t symbol) const {
        return table[static_cast<std::size_t>(state) * symbol_count() + symbol];
    }
    void set_transition(int state, int64_t symbol, int to) {
        table[static_cast<std::size_t>(state) * symbol_count() + symbol] = to;
    }
    bool is_final(int state) const { return finals[state]; }

    friend bool operator==(const Dfa&, const Dfa&) = default;
};

/// Nondeterministic automaton; intermediate form for projection.
struct Nfa {
    int radix = 2;
    int tracks = 1;
    std::vector<int> initials;
    std::vector<bool> finals;
    std::vector<std::vector<std::vector<int32_t>>> moves;

    int num_states() const { return static_cast<int>(finals.size()); }
    int64_t symbol_count() const { return pow_int(radix, tracks); }
};

/// Throws std::logic_error if state ids or table sizes are inconsistent.
void validate(const Dfa& a);

bool run(const Dfa& a, const DigitWord& w);
bool run(const Nfa& a, const DigitWord& w);

/// Encode the tuple LSD-first padded to the common length and run.
bool accepts_tuple(const Dfa& a, const std::vector<Nat>& xs);

enum class ProductMode { And, Or };

/// Language intersection or union; built on reachable pairs only.
Dfa product(const Dfa& a, const Dfa& b, ProductMode mode);

bool is_complete(const Dfa& a);

/// Same language; every (state, symbol) defined, adding a sink if needed.
Dfa complete(const Dfa& a);

/// Accepts exactly the words a rejects.
Dfa complement(const Dfa& a);

/// Insert an unconstrained track at index `at` (0 <= at <= tracks).
Dfa cylindrify(const Dfa& a, int at);

/// Rearrange tracks: input track i becomes output track where[i]; output
/// tracks not mentioned are unconstrained. where must be injective.
Dfa lift_tracks(const Dfa& a, const std::vector<int>& where, int new_tracks);

/// Existential projection: erase track `at`, close under trailing zero
/// padding, determinize, minimize.
Dfa project(const Dfa& a, int at);

/// Drop track `at`, yielding a nondeterministic automaton.
Nfa erase_track(const Dfa& a, int at);

/// Mark final every state that reaches a final state via all-zero symbols.
Nfa padding_closure(Nfa a);
Dfa padding_closure(Dfa a);

Dfa determinize(const Nfa& a);

/// Unique minimal complete DFA, states renumbered breadth-first.
Dfa minimize(const Dfa& a);

/// Restrict to reachable states, renumbered breadth-first from the initial
/// state with symbols in increasing order.
Dfa canonicalize(const Dfa& a);

bool is_empty(const Dfa& a);

/// Minimal-length accepted word, ties broken lexicographically.
std::optional<DigitWord> shortest_accepted(const Dfa& a);

/// Shortest word accepted by exactly one of a, b; nullopt if equivalent.
std::optional<DigitWord> language_difference(const Dfa& a, const Dfa& b);
bool equivalent(const Dfa& a, const Dfa& b);

/// All accepted tuples with every component < bound, sorted.
std::vector<std::vector<Nat>> enumerate_accepted(const Dfa& a, const Nat& bound);

/// State bijection test. Both inputs must be complete, reachable and
/// minimal; throws std::invalid_argument otherwise.
bool isomorphic(const Dfa& a, const Dfa& b);

}  // namespace buchi
