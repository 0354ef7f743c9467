// Structure-preserving automaton transforms: tuple interleaving, base
// squaring, digit-avoidance embedding, the planner composing them between
// arbitrary bases, and the refuter that exhibits a misclassified pair for any
// candidate automaton for {(2^k, 4^k)}.
#pragma once

#include "buchi/automaton.hpp"
#include "buchi/numeral.hpp"

#include <string>
#include <vector>

namespace buchi {

/// An m-dimensional family: relations on m-tuples, one block of m tracks per
/// argument (argument j occupies tracks m*j .. m*j+m-1).
struct InterpretationFamily {
    Base base;
    int dimension;
    Dfa domain;     // m tracks
    Dfa equality;   // 2m tracks
    Dfa addition;   // 3m tracks
    Dfa valuation;  // 2m tracks
};

/// A one-dimensional interpretation of BA_source in BA_target: concrete
/// automata over the target base plus the codec used to verify them.
struct Interpretation {
    Base source_base;
    Base target_base;
    int dimension = 1;
    Dfa domain;     // 1 track
    Dfa equality;   // 2 tracks
    Dfa addition;   // 3 tracks
    Dfa valuation;  // 2 tracks
    Codec codec;
};

struct PlanStep {
    enum class Kind { Embed, Square };
    Kind kind;
    int base;  // Embed: base -> base+1; Square: base*base -> base

    bool operator==(const PlanStep&) const = default;
};

std::string describe(const PlanStep& step);

struct RefutationWitness {
    enum class Kind { FalsePositive, FalseNegative };
    Kind kind;
    Nat first, second;
};

/// Collapse groups of m tracks into single tracks: the result reads one
/// r-tuple per step and accepts interleaved codes whose decodings the input
/// accepts on words of complete groups. States are the originals plus chain
/// states buffering up to m-1 symbols; only original finals stay final, so
/// close under padding before comparing languages pointwise.
Dfa interleave_transform(const Dfa& a, int m, int r);

/// The m-dimensional interpretation of BA_base in itself: full domain,
/// componentwise equality, addition and valuation.
InterpretationFamily identity_family(Base base, int m);

/// Interleave every member of the family down to one track per argument
/// (r = 1, 2, 3, 2), close under padding, minimize; codec Interleave{m}.
Interpretation one_dimensionalize(const InterpretationFamily& family);

/// Base k*k to base k: each digit d is read as its two base-k digits, d/k
/// then d%k, via intermediate buffer states; closed under padding so the
/// result accepts y iff the input accepts the componentwise pair-grouped
/// decoding of y.
Dfa base_square_transform(const Dfa& a);

/// Base k to base k+1 over the digit-k-free domain: transitions are kept
/// verbatim, and any symbol containing digit k falls into a new dead-end
/// state.
Dfa digit_embed_transform(const Dfa& a);

/// One-track base k+1 automaton for the numbers whose expansion avoids
/// digit k.
Dfa domain_automaton_avoiding(Base k);

/// Step sequence lowering base k to base l: raise k by single embeds to
/// l^(2^p) for the minimal p with l^(2^p) >= k, then square down to l.
/// Empty when k = l.
std::vector<PlanStep> plan_interpretation(Base k, Base l);

/// Run the plan over the four atoms of BA_k, intersecting the domain with
/// the digit-avoidance automaton after each embed; the codec composes the
/// steps' primitive codecs.
Interpretation build_interpretation(Base k, Base l);

/// A pair misclassified by the candidate (2 tracks, base 2) relative to
/// L = {(2^k, 4^k)}. Phase one scans k up to the state count for a rejected
/// member; phase two pumps the zero prefix to a repeated state and returns an
/// accepted non-member. The witness is re-verified by a direct run.
RefutationWitness refute_pairing(const Dfa& b);

}  // namespace buchi
