// Formula AST over (=, +, V), a text parser with sugar for <, <=, != and
// numeric multiples, normalization to graph atoms, and the compiler from
// formulas to automata (one track per free variable, sorted by name).
#pragma once

#include "buchi/automaton.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace buchi {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class Kind { Var, Const, Sum, Val };
    Kind kind;
    std::string name;  // Var
    Nat value;         // Const
    TermPtr lhs, rhs;  // Sum; Val uses lhs only

    static TermPtr var(std::string name);
    static TermPtr constant(Nat value);
    static TermPtr sum(TermPtr a, TermPtr b);
    static TermPtr val(TermPtr a);
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Eq, Not, And, Or, Implies, Iff, Exists, Forall };
    Kind kind;
    TermPtr lhs, rhs;  // Eq
    FormulaPtr a, b;   // Not/quantifier body in a; binary connectives in a, b
    std::string var;   // quantifier variable

    static FormulaPtr eq(TermPtr l, TermPtr r);
    static FormulaPtr negate(FormulaPtr f);
    static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
    static FormulaPtr iff(FormulaPtr a, FormulaPtr b);
    static FormulaPtr exists(std::string var, FormulaPtr body);
    static FormulaPtr forall(std::string var, FormulaPtr body);
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& message, std::size_t pos);
};

/// Grammar: terms `var | const | t + t | const * var | V(t)`; atoms
/// `t = t | t < t | t <= t | t != t`; connectives `! & | -> <->` in that
/// precedence order; quantifiers `A x ...`, `E x ...` scope as far right as
/// possible. A, E and V are reserved names. Order atoms and multiples are
/// desugared during parsing.
FormulaPtr parse_formula(std::string_view text);

std::string to_string(const TermPtr& t);
std::string to_string(const FormulaPtr& f);

/// Free variables, sorted ascending.
std::vector<std::string> free_variables(const FormulaPtr& f);

/// Equivalent formula whose atoms all have one of the shapes x=y, x+y=z,
/// V(x)=y, x=c, with fresh existential variables for nested subterms.
FormulaPtr flatten(const FormulaPtr& f);

/// Minimized automaton with one track per free variable, variables ordered
/// ascending by name; accepts a tuple iff the formula holds for it.
Dfa compile(const FormulaPtr& f, Base base);
Dfa compile(std::string_view text, Base base);

/// Truth value of a sentence. Throws std::invalid_argument on free variables.
bool decide(const FormulaPtr& sentence, Base base);
bool decide(std::string_view text, Base base);

/// Accepted tuples of the compiled automaton with components < bound.
std::vector<std::vector<Nat>> satisfying_assignments(const FormulaPtr& f, Base base,
                                                     const Nat& bound);

}  // namespace buchi
