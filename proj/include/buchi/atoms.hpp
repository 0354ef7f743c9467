// Hand-built automata for the signature atoms: equality, addition with
// carry, the valuation graph V_n(x) = y, and single constants.
#pragma once

#include "buchi/automaton.hpp"

namespace buchi {

/// 2 tracks; accepts (x, y) iff x = y.
Dfa eq_automaton(Base base);

/// 3 tracks; accepts (x, y, z) iff x + y = z. States are the carry.
Dfa add_automaton(Base base);

/// 2 tracks; accepts (x, y) iff y is the largest power of the base dividing
/// x, with V(0) = 0.
Dfa valuation_automaton(Base base);

/// 1 track; accepts exactly the representations of c.
Dfa const_automaton(Base base, const Nat& c);

/// Accepts every word over the given alphabet.
Dfa full_automaton(Base base, int tracks);

/// Accepts nothing.
Dfa empty_automaton(Base base, int tracks);

}  // namespace buchi
