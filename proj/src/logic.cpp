#include "buchi/logic.hpp"

#include "buchi/atoms.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace buchi {

TermPtr Term::var(std::string name) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Var;
    t->name = std::move(name);
    return t;
}

TermPtr Term::constant(Nat value) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Const;
    t->value = std::move(value);
    return t;
}

TermPtr Term::sum(TermPtr a, TermPtr b) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Sum;
    t->lhs = std::move(a);
    t->rhs = std::move(b);
    return t;
}

TermPtr Term::val(TermPtr a) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Val;
    t->lhs = std::move(a);
    return t;
}

namespace {

std::shared_ptr<Formula> make_formula(Formula::Kind kind) {
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    return f;
}

}  // namespace

FormulaPtr Formula::eq(TermPtr l, TermPtr r) {
    auto f = make_formula(Kind::Eq);
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}

FormulaPtr Formula::negate(FormulaPtr x) {
    auto f = make_formula(Kind::Not);
    f->a = std::move(x);
    return f;
}

FormulaPtr Formula::conj(FormulaPtr x, FormulaPtr y) {
    auto f = make_formula(Kind::And);
    f->a = std::move(x);
    f->b = std::move(y);
    return f;
}

FormulaPtr Formula::disj(FormulaPtr x, FormulaPtr y) {
    auto f = make_formula(Kind::Or);
    f->a = std::move(x);
    f->b = std::move(y);
    return f;
}

FormulaPtr Formula::implies(FormulaPtr x, FormulaPtr y) {
    auto f = make_formula(Kind::Implies);
    f->a = std::move(x);
    f->b = std::move(y);
    return f;
}

FormulaPtr Formula::iff(FormulaPtr x, FormulaPtr y) {
    auto f = make_formula(Kind::Iff);
    f->a = std::move(x);
    f->b = std::move(y);
    return f;
}

FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
    auto f = make_formula(Kind::Exists);
    f->var = std::move(var);
    f->a = std::move(body);
    return f;
}

FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
    auto f = make_formula(Kind::Forall);
    f->var = std::move(var);
    f->a = std::move(body);
    return f;
}

ParseError::ParseError(const std::string& message, std::size_t pos)
    : std::runtime_error(message + " at position " + std::to_string(pos)), position(pos) {}

namespace {

enum class Tok {
    Ident, Number, Eq, Lt, Le, Ne, Not, And, Or, Arrow, DArrow, LParen, RParen, Plus, Star, End
};

struct Token {
    Tok kind;
    std::string text;
    Nat value;
    std::size_t pos = 0;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                name += s[i++];
            out.push_back({Tok::Ident, std::move(name), 0, start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
            out.push_back({Tok::Number, digits, Nat(digits), start});
            continue;
        }
        auto two = [&](char a, char b) {
            return c == a && i + 1 < s.size() && s[i + 1] == b;
        };
        if (c == '<' && i + 2 < s.size() && s[i + 1] == '-' && s[i + 2] == '>') {
            out.push_back({Tok::DArrow, "<->", 0, start});
            i += 3;
        } else if (two('<', '=')) {
            out.push_back({Tok::Le, "<=", 0, start});
            i += 2;
        } else if (two('!', '=')) {
            out.push_back({Tok::Ne, "!=", 0, start});
            i += 2;
        } else if (two('-', '>')) {
            out.push_back({Tok::Arrow, "->", 0, start});
            i += 2;
        } else {
            Tok k;
            switch (c) {
                case '=': k = Tok::Eq; break;
                case '<': k = Tok::Lt; break;
                case '!': k = Tok::Not; break;
                case '&': k = Tok::And; break;
                case '|': k = Tok::Or; break;
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                case '+': k = Tok::Plus; break;
                case '*': k = Tok::Star; break;
                default:
                    throw ParseError(std::string("unexpected character '") + c + "'", start);
            }
            out.push_back({k, std::string(1, c), 0, start});
            ++i;
        }
    }
    out.push_back({Tok::End, "", 0, s.size()});
    return out;
}

bool reserved(const std::string& name) { return name == "A" || name == "E" || name == "V"; }

// c * x built with a balanced doubling tree so large multipliers stay small.
TermPtr multiple(const Nat& c, const TermPtr& x) {
    if (c == 0) return Term::constant(0);
    if (c == 1) return x;
    TermPtr half = multiple(c / 2, x);
    TermPtr both = Term::sum(half, half);
    return c % 2 == 0 ? both : Term::sum(both, x);
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    FormulaPtr parse() {
        FormulaPtr f = formula();
        if (peek().kind != Tok::End) throw ParseError("trailing input", peek().pos);
        return f;
    }

private:
    const Token& peek() const { return toks_[at_]; }
    Token advance() { return toks_[at_++]; }

    void expect(Tok k, const char* what) {
        if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
        ++at_;
    }

    std::string fresh() { return "#o" + std::to_string(counter_++); }

    FormulaPtr formula() {
        FormulaPtr f = implication();
        while (peek().kind == Tok::DArrow) {
            ++at_;
            f = Formula::iff(f, implication());
        }
        return f;
    }

    FormulaPtr implication() {
        FormulaPtr f = disjunction();
        if (peek().kind == Tok::Arrow) {
            ++at_;
            return Formula::implies(f, implication());
        }
        return f;
    }

    FormulaPtr disjunction() {
        FormulaPtr f = conjunction();
        while (peek().kind == Tok::Or) {
            ++at_;
            f = Formula::disj(f, conjunction());
        }
        return f;
    }

    FormulaPtr conjunction() {
        FormulaPtr f = unary();
        while (peek().kind == Tok::And) {
            ++at_;
            f = Formula::conj(f, unary());
        }
        return f;
    }

    FormulaPtr unary() {
        if (peek().kind == Tok::Not) {
            ++at_;
            return Formula::negate(unary());
        }
        if (peek().kind == Tok::Ident && (peek().text == "A" || peek().text == "E")) {
            const bool universal = peek().text == "A";
            ++at_;
            if (peek().kind != Tok::Ident)
                throw ParseError("expected a variable after quantifier", peek().pos);
            if (reserved(peek().text))
                throw ParseError("'" + peek().text + "' is reserved and cannot be a variable",
                                 peek().pos);
            std::string var = advance().text;
            FormulaPtr body = formula();  // quantifiers take maximal scope
            return universal ? Formula::forall(std::move(var), std::move(body))
                             : Formula::exists(std::move(var), std::move(body));
        }
        if (peek().kind == Tok::LParen) {
            ++at_;
            FormulaPtr f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        return atom();
    }

    FormulaPtr atom() {
        TermPtr l = term();
        const Token op = peek();
        if (op.kind != Tok::Eq && op.kind != Tok::Lt && op.kind != Tok::Le && op.kind != Tok::Ne)
            throw ParseError("expected a comparison operator", op.pos);
        ++at_;
        TermPtr r = term();
        switch (op.kind) {
            case Tok::Eq: return Formula::eq(std::move(l), std::move(r));
            case Tok::Ne: return Formula::negate(Formula::eq(std::move(l), std::move(r)));
            case Tok::Le: {
                const std::string v = fresh();
                return Formula::exists(v, Formula::eq(Term::sum(std::move(l), Term::var(v)),
                                                      std::move(r)));
            }
            default: {  // Lt
                const std::string v = fresh();
                return Formula::exists(
                    v, Formula::conj(Formula::eq(Term::sum(std::move(l), Term::var(v)),
                                                 std::move(r)),
                                     Formula::negate(Formula::eq(Term::var(v),
                                                                 Term::constant(0)))));
            }
        }
    }

    TermPtr term() {
        TermPtr t = primary();
        while (peek().kind == Tok::Plus) {
            ++at_;
            t = Term::sum(std::move(t), primary());
        }
        return t;
    }

    TermPtr primary() {
        if (peek().kind == Tok::Number) {
            const Token num = advance();
            if (peek().kind == Tok::Star) {
                ++at_;
                if (peek().kind != Tok::Ident || reserved(peek().text))
                    throw ParseError("expected a variable after '*'", peek().pos);
                return multiple(num.value, Term::var(advance().text));
            }
            return Term::constant(num.value);
        }
        if (peek().kind == Tok::Ident) {
            if (peek().text == "V") {
                ++at_;
                expect(Tok::LParen, "'(' after V");
                TermPtr inner = term();
                expect(Tok::RParen, "')'");
                return Term::val(std::move(inner));
            }
            if (reserved(peek().text))
                throw ParseError("'" + peek().text + "' is reserved and cannot be a variable",
                                 peek().pos);
            return Term::var(advance().text);
        }
        throw ParseError("expected a term", peek().pos);
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
    int counter_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Var: return t->name;
        case Term::Kind::Const: return t->value.str();
        case Term::Kind::Sum: return to_string(t->lhs) + " + " + to_string(t->rhs);
        case Term::Kind::Val: return "V(" + to_string(t->lhs) + ")";
    }
    return {};
}

namespace {

int precedence(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::Iff: return 1;
        case Formula::Kind::Implies: return 2;
        case Formula::Kind::Or: return 3;
        case Formula::Kind::And: return 4;
        default: return 5;
    }
}

std::string fmt(const FormulaPtr& f, int parent) {
    const int prec = precedence(f->kind);
    std::string s;
    switch (f->kind) {
        case Formula::Kind::Eq: s = to_string(f->lhs) + " = " + to_string(f->rhs); break;
        case Formula::Kind::Not: s = "!(" + fmt(f->a, 0) + ")"; return s;
        case Formula::Kind::And: s = fmt(f->a, prec) + " & " + fmt(f->b, prec); break;
        case Formula::Kind::Or: s = fmt(f->a, prec) + " | " + fmt(f->b, prec); break;
        case Formula::Kind::Implies: s = fmt(f->a, prec + 1) + " -> " + fmt(f->b, prec); break;
        case Formula::Kind::Iff: s = fmt(f->a, prec) + " <-> " + fmt(f->b, prec + 1); break;
        case Formula::Kind::Exists: return "E " + f->var + " (" + fmt(f->a, 0) + ")";
        case Formula::Kind::Forall: return "A " + f->var + " (" + fmt(f->a, 0) + ")";
    }
    if (prec < parent) s = "(" + s + ")";
    return s;
}

void term_vars(const TermPtr& t, const std::vector<std::string>& bound,
               std::set<std::string>& out) {
    switch (t->kind) {
        case Term::Kind::Var:
            if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) out.insert(t->name);
            break;
        case Term::Kind::Sum:
            term_vars(t->lhs, bound, out);
            term_vars(t->rhs, bound, out);
            break;
        case Term::Kind::Val: term_vars(t->lhs, bound, out); break;
        case Term::Kind::Const: break;
    }
}

void formula_vars(const FormulaPtr& f, std::vector<std::string>& bound,
                  std::set<std::string>& out) {
    switch (f->kind) {
        case Formula::Kind::Eq:
            term_vars(f->lhs, bound, out);
            term_vars(f->rhs, bound, out);
            break;
        case Formula::Kind::Not: formula_vars(f->a, bound, out); break;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            bound.push_back(f->var);
            formula_vars(f->a, bound, out);
            bound.pop_back();
            break;
        default:
            formula_vars(f->a, bound, out);
            formula_vars(f->b, bound, out);
            break;
    }
}

}  // namespace

std::string to_string(const FormulaPtr& f) { return fmt(f, 0); }

std::vector<std::string> free_variables(const FormulaPtr& f) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    formula_vars(f, bound, out);
    return {out.begin(), out.end()};
}

namespace {

class Flattener {
public:
    FormulaPtr run(const FormulaPtr& f) {
        switch (f->kind) {
            case Formula::Kind::Eq: return flat_eq(f->lhs, f->rhs, f);
            case Formula::Kind::Not: return Formula::negate(run(f->a));
            case Formula::Kind::And: return Formula::conj(run(f->a), run(f->b));
            case Formula::Kind::Or: return Formula::disj(run(f->a), run(f->b));
            case Formula::Kind::Implies: return Formula::implies(run(f->a), run(f->b));
            case Formula::Kind::Iff: return Formula::iff(run(f->a), run(f->b));
            case Formula::Kind::Exists: return Formula::exists(f->var, run(f->a));
            case Formula::Kind::Forall: return Formula::forall(f->var, run(f->a));
        }
        return f;
    }

private:
    std::string fresh() { return "#f" + std::to_string(counter_++); }

    // Reduce a term to a variable, recording graph-atom constraints.
    std::string lower(const TermPtr& t, std::vector<FormulaPtr>& cs,
                      std::vector<std::string>& vars) {
        switch (t->kind) {
            case Term::Kind::Var: return t->name;
            case Term::Kind::Const: {
                std::string v = fresh();
                vars.push_back(v);
                cs.push_back(Formula::eq(Term::var(v), Term::constant(t->value)));
                return v;
            }
            case Term::Kind::Sum: {
                std::string a = lower(t->lhs, cs, vars);
                std::string b = lower(t->rhs, cs, vars);
                std::string v = fresh();
                vars.push_back(v);
                cs.push_back(Formula::eq(Term::sum(Term::var(a), Term::var(b)), Term::var(v)));
                return v;
            }
            case Term::Kind::Val: {
                std::string a = lower(t->lhs, cs, vars);
                std::string v = fresh();
                vars.push_back(v);
                cs.push_back(Formula::eq(Term::val(Term::var(a)), Term::var(v)));
                return v;
            }
        }
        throw std::logic_error("unreachable term kind");
    }

    static FormulaPtr assemble(std::vector<FormulaPtr> cs, FormulaPtr atom,
                               const std::vector<std::string>& vars) {
        FormulaPtr body = std::move(atom);
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) body = Formula::conj(*it, body);
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            body = Formula::exists(*it, std::move(body));
        return body;
    }

    FormulaPtr flat_eq(TermPtr l, TermPtr r, const FormulaPtr& original) {
        using K = Term::Kind;
        // canonical orientation: Sum/Val on the left, Const on the right
        bool swapped = false;
        if ((r->kind == K::Sum || r->kind == K::Val) && l->kind != K::Sum && l->kind != K::Val) {
            std::swap(l, r);
            swapped = true;
        }
        if (l->kind == K::Const && r->kind != K::Const) {
            std::swap(l, r);
            swapped = true;
        }

        if (l->kind == K::Var && (r->kind == K::Var || r->kind == K::Const))
            return swapped ? Formula::eq(l, r) : original;
        if (l->kind == K::Sum && l->lhs->kind == K::Var && l->rhs->kind == K::Var &&
            r->kind == K::Var)
            return swapped ? Formula::eq(l, r) : original;
        if (l->kind == K::Val && l->lhs->kind == K::Var && r->kind == K::Var)
            return swapped ? Formula::eq(l, r) : original;

        std::vector<FormulaPtr> cs;
        std::vector<std::string> vars;
        if (l->kind == K::Sum && r->kind == K::Var) {
            std::string a = lower(l->lhs, cs, vars);
            std::string b = lower(l->rhs, cs, vars);
            return assemble(std::move(cs),
                            Formula::eq(Term::sum(Term::var(a), Term::var(b)), r), vars);
        }
        if (l->kind == K::Val && r->kind == K::Var) {
            std::string a = lower(l->lhs, cs, vars);
            return assemble(std::move(cs), Formula::eq(Term::val(Term::var(a)), r), vars);
        }
        const std::string vl = lower(l, cs, vars);
        const std::string vr = lower(r, cs, vars);
        return assemble(std::move(cs), Formula::eq(Term::var(vl), Term::var(vr)), vars);
    }

    int counter_ = 0;
};

struct Compiled {
    Dfa dfa;
    std::vector<std::string> vars;  // sorted; one track each
};

Compiled lift_to(const Compiled& c, const std::vector<std::string>& target) {
    std::vector<int> where(c.vars.size());
    for (std::size_t i = 0; i < c.vars.size(); ++i) {
        const auto it = std::lower_bound(target.begin(), target.end(), c.vars[i]);
        where[i] = static_cast<int>(it - target.begin());
    }
    return {lift_tracks(c.dfa, where, static_cast<int>(target.size())), target};
}

// Build the automaton of a graph atom given its argument variables (with
// possible repeats): start from the base relation, force repeated argument
// tracks equal, and project the duplicates away.
Compiled atom_with_args(Dfa base_rel, std::vector<std::string> args, Base base) {
    for (std::size_t j = 1; j < args.size();) {
        const auto prior = std::find(args.begin(), args.begin() + j, args[j]);
        if (prior == args.begin() + j) {
            ++j;
            continue;
        }
        const int i = static_cast<int>(prior - args.begin());
        std::vector<int> where{i, static_cast<int>(j)};
        const Dfa same = lift_tracks(eq_automaton(base), where, base_rel.tracks);
        base_rel = project(product(base_rel, same, ProductMode::And), static_cast<int>(j));
        args.erase(args.begin() + j);
    }
    std::vector<std::string> sorted = args;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> where(args.size());
    for (std::size_t i = 0; i < args.size(); ++i)
        where[i] = static_cast<int>(
            std::lower_bound(sorted.begin(), sorted.end(), args[i]) - sorted.begin());
    return {lift_tracks(base_rel, where, static_cast<int>(args.size())), std::move(sorted)};
}

class Compiler {
public:
    explicit Compiler(Base base) : base_(base) {}

    Compiled run(const FormulaPtr& f) {
        switch (f->kind) {
            case Formula::Kind::Eq: return atom(f->lhs, f->rhs);
            case Formula::Kind::Not: {
                Compiled c = run(f->a);
                return {complement(c.dfa), std::move(c.vars)};
            }
            case Formula::Kind::And: return binary(f->a, f->b, ProductMode::And);
            case Formula::Kind::Or: return binary(f->a, f->b, ProductMode::Or);
            case Formula::Kind::Implies:
                return run(Formula::disj(Formula::negate(f->a), f->b));
            case Formula::Kind::Iff:
                return run(Formula::conj(Formula::implies(f->a, f->b),
                                         Formula::implies(f->b, f->a)));
            case Formula::Kind::Exists: {
                Compiled c = run(f->a);
                const auto it = std::find(c.vars.begin(), c.vars.end(), f->var);
                if (it == c.vars.end()) return c;
                const int at = static_cast<int>(it - c.vars.begin());
                c.vars.erase(it);
                return {project(c.dfa, at), std::move(c.vars)};
            }
            case Formula::Kind::Forall:
                return run(Formula::negate(
                    Formula::exists(f->var, Formula::negate(f->a))));
        }
        throw std::logic_error("unreachable formula kind");
    }

private:
    Compiled binary(const FormulaPtr& fa, const FormulaPtr& fb, ProductMode mode) {
        Compiled ca = run(fa), cb = run(fb);
        std::vector<std::string> all;
        std::set_union(ca.vars.begin(), ca.vars.end(), cb.vars.begin(), cb.vars.end(),
                       std::back_inserter(all));
        Compiled la = lift_to(ca, all);
        Compiled lb = lift_to(cb, all);
        return {product(la.dfa, lb.dfa, mode), std::move(all)};
    }

    // flattened shapes only: x=y, x=c, x+y=z, V(x)=y
    Compiled atom(const TermPtr& l, const TermPtr& r) {
        using K = Term::Kind;
        if (l->kind == K::Var && r->kind == K::Const)
            return {const_automaton(base_, r->value), {l->name}};
        if (l->kind == K::Var && r->kind == K::Var) {
            if (l->name == r->name) return {full_automaton(base_, 1), {l->name}};
            return atom_with_args(eq_automaton(base_), {l->name, r->name}, base_);
        }
        if (l->kind == K::Sum && r->kind == K::Var)
            return atom_with_args(add_automaton(base_),
                                  {l->lhs->name, l->rhs->name, r->name}, base_);
        if (l->kind == K::Val && r->kind == K::Var)
            return atom_with_args(valuation_automaton(base_), {l->lhs->name, r->name}, base_);
        throw std::logic_error("compiler saw an unflattened atom");
    }

    Base base_;
};

}  // namespace

FormulaPtr flatten(const FormulaPtr& f) { return Flattener().run(f); }

Dfa compile(const FormulaPtr& f, Base base) {
    Compiled c = Compiler(base).run(flatten(f));
    return minimize(c.dfa);
}

Dfa compile(std::string_view text, Base base) { return compile(parse_formula(text), base); }

bool decide(const FormulaPtr& sentence, Base base) {
    const std::vector<std::string> free = free_variables(sentence);
    if (!free.empty()) {
        std::string names;
        for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
        throw std::invalid_argument("sentence has free variables: " + names);
    }
    return accepts_tuple(compile(sentence, base), {});
}

bool decide(std::string_view text, Base base) { return decide(parse_formula(text), base); }

std::vector<std::vector<Nat>> satisfying_assignments(const FormulaPtr& f, Base base,
                                                     const Nat& bound) {
    return enumerate_accepted(compile(f, base), bound);
}

}  // namespace buchi
