// Brute-force reference semantics kept independent of the automata pipeline:
// direct arithmetic evaluation of formulas, exhaustive relation tables, and
// the correspondence checks that compare transformed automata against plain
// integer arithmetic through a codec.
#pragma once

#include "buchi/interp.hpp"
#include "buchi/logic.hpp"
#include "buchi/numeral.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace buchi {

/// Largest power of the radix dividing x, by trial division; 0 for x = 0.
Nat v_of(const Nat& x, Base base);

using Assignment = std::map<std::string, Nat>;

/// Direct recursive evaluation; quantifiers range over [0, quantifier_bound].
/// Throws std::invalid_argument on variables missing from the assignment.
bool oracle_eval(const FormulaPtr& f, const Assignment& assignment, Base base,
                 const Nat& quantifier_bound);

using Predicate = std::function<bool(const std::vector<Nat>&)>;

/// All tuples with components < bound satisfying pred, in ascending order.
std::vector<std::vector<Nat>> relation_table(const Predicate& pred, int arity, const Nat& bound);

struct CheckReport {
    bool pass = true;
    std::string detail;  // empty on pass, else the first counterexample

    static CheckReport ok() { return {}; }
    static CheckReport fail(std::string detail) { return {false, std::move(detail)}; }
};

/// Two-directional correspondence between a transformed automaton (one track
/// per source argument) and a plain arithmetic predicate. The codec consumes
/// one m-tuple per argument; source_pred takes the r*m source values
/// flattened argument-major. Direction one: every source tuple with
/// components < bound must be accepted in encoded form exactly when the
/// predicate holds. Direction two: every target tuple with components < bound
/// that all pass codec membership must be accepted exactly when its decoding
/// satisfies the predicate; non-members are skipped.
CheckReport check_correspondence(const Dfa& transformed, const Predicate& source_pred,
                                 const Codec& codec, const Nat& bound);

/// The domain automaton accepts exactly the codec image: encodes of all
/// x < bound are accepted, and acceptance below bound coincides with codec
/// membership.
CheckReport check_domain_exact(const Dfa& domain, const Codec& codec, const Nat& bound);

/// Internal-model laws checked exactly at the automaton level (restricted to
/// the domain): equality is reflexive, symmetric and transitive; addition and
/// valuation are total and functional. enum_bound caps the enumerated
/// reflexivity/symmetry sweeps.
CheckReport check_internal_model(const Interpretation& interp, const Nat& enum_bound);

/// Everything cmd_check runs: per-automaton correspondence against source
/// arithmetic, exact domain membership, and the internal-model laws. Each
/// line of the report reads "<subject>: pass" or carries the counterexample.
CheckReport check_interpretation(const Interpretation& interp, const Nat& bound);

}  // namespace buchi
