#include "buchi/atoms.hpp"

namespace buchi {

Dfa eq_automaton(Base base) {
    const int n = base.radix();
    Dfa a(base, 2, 2, 0);
    a.finals[0] = true;
    for (int d = 0; d < n; ++d)
        for (int e = 0; e < n; ++e) a.set_transition(0, d * n + e, d == e ? 0 : 1);
    for (int64_t s = 0; s < a.symbol_count(); ++s) a.set_transition(1, s, 1);
    return a;
}

Dfa add_automaton(Base base) {
    const int n = base.radix();
    Dfa a(base, 3, 2, 0);
    a.finals[0] = true;
    for (int carry = 0; carry < 2; ++carry)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const int t = x + y + carry;
                a.set_transition(carry, (static_cast<int64_t>(x) * n + y) * n + t % n, t / n);
            }
    return a;
}

Dfa valuation_automaton(Base base) {
    const int n = base.radix();
    Dfa a(base, 2, 2, 0);
    a.finals[0] = true;
    a.finals[1] = true;
    a.set_transition(0, 0, 0);
    for (int d = 1; d < n; ++d) a.set_transition(0, d * n + 1, 1);
    for (int d = 0; d < n; ++d) a.set_transition(1, d * n, 1);
    return a;
}

Dfa const_automaton(Base base, const Nat& c) {
    const DigitSeq seq = to_digits(c, base);
    const int len = static_cast<int>(seq.digits.size());
    Dfa a(base, 1, len + 1, 0);
    a.finals[len] = true;
    for (int i = 0; i < len; ++i) a.set_transition(i, seq.digits[i], i + 1);
    a.set_transition(len, 0, len);
    return a;
}

Dfa full_automaton(Base base, int tracks) {
    Dfa a(base, tracks, 1, 0);
    a.finals[0] = true;
    for (int64_t s = 0; s < a.symbol_count(); ++s) a.set_transition(0, s, 0);
    return a;
}

Dfa empty_automaton(Base base, int tracks) { return Dfa(base, tracks, 1, 0); }

}  // namespace buchi
