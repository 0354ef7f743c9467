#include "buchi/interp.hpp"

#include "buchi/atoms.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace buchi {

namespace {

Dfa assemble(int radix, int tracks, int initial, const std::vector<std::vector<int32_t>>& rows,
             const std::vector<bool>& finals) {
    Dfa out(Base(radix), tracks, static_cast<int>(rows.size()), initial);
    out.finals = finals;
    for (std::size_t q = 0; q < rows.size(); ++q)
        for (int64_t s = 0; s < static_cast<int64_t>(rows[q].size()); ++s)
            out.set_transition(static_cast<int>(q), s, rows[q][s]);
    return out;
}

}  // namespace

Dfa interleave_transform(const Dfa& a, int m, int r) {
    if (m < 1 || r < 1) throw std::invalid_argument("interleave parameters must be positive");
    if (a.tracks != m * r)
        throw std::invalid_argument("automaton has " + std::to_string(a.tracks) +
                                    " tracks, expected " + std::to_string(m) + " components for "
                                    "each of " + std::to_string(r) + " arguments");
    if (m == 1) return a;

    const int radix = a.radix;
    const int64_t out_syms = pow_int(radix, r);

    // key = original state followed by the buffered packed symbols (< m of them)
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> keys;
    auto intern = [&](std::vector<int> key) {
        auto [it, fresh] = ids.try_emplace(std::move(key), static_cast<int>(keys.size()));
        if (fresh) keys.push_back(it->first);
        return it->second;
    };
    const int start = intern({a.initial});

    std::vector<std::vector<int32_t>> rows;
    std::vector<bool> finals;
    for (std::size_t q = 0; q < keys.size(); ++q) {
        const std::vector<int> key = keys[q];
        rows.emplace_back(out_syms, -1);
        finals.push_back(key.size() == 1 && a.is_final(key[0]));
        for (int64_t s = 0; s < out_syms; ++s) {
            if (static_cast<int>(key.size()) < m) {
                std::vector<int> ext = key;
                ext.push_back(static_cast<int>(s));
                rows[q][s] = intern(std::move(ext));
                continue;
            }
            // the m-th symbol of a group: replay the group on the input,
            // placing digit j of the t-th symbol at track m*j + t
            std::vector<int> digits(static_cast<std::size_t>(m) * r);
            for (int t = 0; t < m; ++t) {
                const int packed = t + 1 < static_cast<int>(key.size()) ? key[t + 1]
                                                                        : static_cast<int>(s);
                const std::vector<int> dig = unpack_symbol(packed, radix, r);
                for (int j = 0; j < r; ++j)
                    digits[static_cast<std::size_t>(m) * j + t] = dig[j];
            }
            const int32_t to = a.next(key[0], pack_symbol(digits, radix));
            if (to >= 0) rows[q][s] = intern({to});
        }
    }
    return assemble(radix, r, start, rows, finals);
}

InterpretationFamily identity_family(Base base, int m) {
    if (m < 1) throw std::invalid_argument("dimension must be positive");
    auto componentwise = [&](const Dfa& atom, int args) {
        Dfa out = full_automaton(base, args * m);
        for (int i = 0; i < m; ++i) {
            std::vector<int> where(args);
            for (int j = 0; j < args; ++j) where[j] = j * m + i;
            out = minimize(product(out, lift_tracks(atom, where, args * m), ProductMode::And));
        }
        return out;
    };
    return {base, m, full_automaton(base, m), componentwise(eq_automaton(base), 2),
            componentwise(add_automaton(base), 3), componentwise(valuation_automaton(base), 2)};
}

Interpretation one_dimensionalize(const InterpretationFamily& family) {
    const int m = family.dimension;
    const auto arity_check = [&](const Dfa& a, int r, const char* which) {
        if (a.radix != family.base.radix() || a.tracks != m * r)
            throw std::invalid_argument(std::string(which) + " automaton does not match the "
                                        "family base or dimension");
    };
    arity_check(family.domain, 1, "domain");
    arity_check(family.equality, 2, "equality");
    arity_check(family.addition, 3, "addition");
    arity_check(family.valuation, 2, "valuation");
    const Codec codec = Codec::interleave(m, family.base);
    if (m == 1)
        return {family.base, family.base, 1, family.domain, family.equality,
                family.addition, family.valuation, codec};
    auto shrink = [&](const Dfa& a, int r) {
        return minimize(padding_closure(interleave_transform(a, m, r)));
    };
    return {family.base, family.base, 1, shrink(family.domain, 1), shrink(family.equality, 2),
            shrink(family.addition, 3), shrink(family.valuation, 2), codec};
}

Dfa base_square_transform(const Dfa& a) {
    int k = 1;
    while (k * k < a.radix) ++k;
    if (k * k != a.radix)
        throw std::invalid_argument("radix " + std::to_string(a.radix) +
                                    " is not a perfect square");
    const int r = a.tracks;
    const int64_t out_syms = pow_int(k, r);

    // key = (original state, buffered high-digit tuple or -1)
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> keys;
    auto intern = [&](int orig, int mid) {
        auto [it, fresh] = ids.try_emplace({orig, mid}, static_cast<int>(keys.size()));
        if (fresh) keys.push_back({orig, mid});
        return it->second;
    };
    const int start = intern(a.initial, -1);

    std::vector<std::vector<int32_t>> rows;
    std::vector<bool> finals;
    for (std::size_t q = 0; q < keys.size(); ++q) {
        const auto [orig, mid] = keys[q];
        rows.emplace_back(out_syms, -1);
        finals.push_back(mid < 0 && a.is_final(orig));
        for (int64_t s = 0; s < out_syms; ++s) {
            if (mid < 0) {
                rows[q][s] = intern(orig, static_cast<int>(s));
                continue;
            }
            const std::vector<int> high = unpack_symbol(mid, k, r);
            const std::vector<int> low = unpack_symbol(s, k, r);
            std::vector<int> combined(r);
            for (int j = 0; j < r; ++j) combined[j] = k * high[j] + low[j];
            const int32_t to = a.next(orig, pack_symbol(combined, a.radix));
            if (to >= 0) rows[q][s] = intern(to, -1);
        }
    }
    return padding_closure(assemble(k, r, start, rows, finals));
}

Dfa digit_embed_transform(const Dfa& a) {
    const int k = a.radix;
    const int r = a.tracks;
    const int n = a.num_states();
    const int64_t out_syms = pow_int(k + 1, r);
    Dfa out(Base(k + 1), r, n + 1, a.initial);
    out.finals.assign(n + 1, false);
    for (int q = 0; q < n; ++q) out.finals[q] = a.is_final(q);
    const int dead = n;
    for (int64_t s = 0; s < out_syms; ++s) {
        const std::vector<int> digits = unpack_symbol(s, k + 1, r);
        const bool has_k = std::find(digits.begin(), digits.end(), k) != digits.end();
        const int64_t inner = has_k ? -1 : pack_symbol(digits, k);
        for (int q = 0; q < n; ++q) {
            if (has_k) {
                out.set_transition(q, s, dead);
                continue;
            }
            const int32_t to = a.next(q, inner);
            if (to >= 0) out.set_transition(q, s, to);
        }
        out.set_transition(dead, s, dead);
    }
    return out;
}

Dfa domain_automaton_avoiding(Base k) {
    Dfa out(Base(k.radix() + 1), 1, 2, 0);
    out.finals = {true, false};
    for (int d = 0; d <= k.radix(); ++d) {
        out.set_transition(0, d, d < k.radix() ? 0 : 1);
        out.set_transition(1, d, 1);
    }
    return out;
}

std::vector<PlanStep> plan_interpretation(Base k, Base l) {
    std::vector<PlanStep> steps;
    if (k.radix() == l.radix()) return steps;
    std::vector<Nat> towers{l.radix()};  // l^(2^i)
    while (towers.back() < k.radix()) towers.push_back(towers.back() * towers.back());
    for (int b = k.radix(); Nat(b) < towers.back(); ++b)
        steps.push_back({PlanStep::Kind::Embed, b});
    for (std::size_t i = towers.size() - 1; i-- > 0;)
        steps.push_back({PlanStep::Kind::Square, static_cast<int>(towers[i])});
    return steps;
}

std::string describe(const PlanStep& step) {
    std::ostringstream os;
    if (step.kind == PlanStep::Kind::Embed)
        os << "embed " << step.base << "->" << step.base + 1;
    else
        os << "square " << step.base * step.base << "->" << step.base;
    return os.str();
}

Interpretation build_interpretation(Base k, Base l) {
    Dfa domain = full_automaton(k, 1);
    Dfa equality = eq_automaton(k);
    Dfa addition = add_automaton(k);
    Dfa valuation = valuation_automaton(k);
    std::vector<Codec> parts;
    for (const PlanStep& step : plan_interpretation(k, l)) {
        if (step.kind == PlanStep::Kind::Embed) {
            const Base b(step.base);
            domain = minimize(product(digit_embed_transform(domain),
                                      domain_automaton_avoiding(b), ProductMode::And));
            equality = minimize(digit_embed_transform(equality));
            addition = minimize(digit_embed_transform(addition));
            valuation = minimize(digit_embed_transform(valuation));
            parts.push_back(Codec::digit_avoid(b));
        } else {
            domain = minimize(base_square_transform(domain));
            equality = minimize(base_square_transform(equality));
            addition = minimize(base_square_transform(addition));
            valuation = minimize(base_square_transform(valuation));
            parts.push_back(Codec::pair_group(Base(step.base)));
        }
    }
    const Codec codec = parts.empty() ? Codec::identity() : Codec::compose(std::move(parts));
    return {k, l, 1, std::move(domain), std::move(equality), std::move(addition),
            std::move(valuation), codec};
}

RefutationWitness refute_pairing(const Dfa& b) {
    if (b.tracks != 2 || b.radix != 2)
        throw std::invalid_argument("refuter needs a 2-track automaton over base 2");
    const Dfa c = complete(b);
    const int n = c.num_states();
    auto pow2 = [](int e) { return Nat(1) << e; };

    for (int k = 0; k <= n; ++k) {
        const Nat x = pow2(k), y = pow2(2 * k);
        if (!accepts_tuple(c, {x, y}))
            return {RefutationWitness::Kind::FalseNegative, x, y};
    }

    // All of (2^0,2^0)..(2^n,2^2n) accepted, so among the states reached by
    // (0,0)^k (1,0) for k = 1..n+1 two coincide and the shorter zero prefix
    // borrows the longer one's accepting suffix.
    const int64_t zeros = pack_symbol({0, 0}, 2);
    const int64_t one_first = pack_symbol({1, 0}, 2);
    std::vector<int> seen(n, -1);
    int p = c.initial;
    int lo = -1, hi = -1;
    for (int k = 1; k <= n + 1; ++k) {
        p = c.next(p, zeros);
        const int s = c.next(p, one_first);
        if (seen[s] >= 0) {
            lo = seen[s];
            hi = k;
            break;
        }
        seen[s] = k;
    }
    if (lo < 0) throw std::logic_error("no repeated state within the pigeonhole range");

    const Nat x = pow2(lo), y = pow2(lo + hi);
    if (accepts_tuple(c, {x, y})) return {RefutationWitness::Kind::FalsePositive, x, y};
    // The borrowed suffix was rejected after all, so the language member it
    // came from is rejected too.
    const Nat mx = pow2(hi), my = pow2(2 * hi);
    if (accepts_tuple(c, {mx, my}))
        throw std::logic_error("refuter state repetition contradicts the direct run");
    return {RefutationWitness::Kind::FalseNegative, mx, my};
}

}  // namespace buchi
