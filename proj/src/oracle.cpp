#include "buchi/oracle.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace buchi {

Nat v_of(const Nat& x, Base base) {
    if (x == 0) return 0;
    Nat power = 1, rest = x;
    while (rest % base.radix() == 0) {
        rest /= base.radix();
        power *= base.radix();
    }
    return power;
}

namespace {

Nat term_eval(const TermPtr& t, const Assignment& env, Base base) {
    switch (t->kind) {
        case Term::Kind::Var: {
            const auto it = env.find(t->name);
            if (it == env.end()) throw std::invalid_argument("unassigned variable: " + t->name);
            return it->second;
        }
        case Term::Kind::Const: return t->value;
        case Term::Kind::Sum: return term_eval(t->lhs, env, base) + term_eval(t->rhs, env, base);
        case Term::Kind::Val: return v_of(term_eval(t->lhs, env, base), base);
    }
    throw std::logic_error("unreachable term kind");
}

bool eval_rec(const FormulaPtr& f, Assignment& env, Base base, const Nat& qbound) {
    switch (f->kind) {
        case Formula::Kind::Eq:
            return term_eval(f->lhs, env, base) == term_eval(f->rhs, env, base);
        case Formula::Kind::Not: return !eval_rec(f->a, env, base, qbound);
        case Formula::Kind::And:
            return eval_rec(f->a, env, base, qbound) && eval_rec(f->b, env, base, qbound);
        case Formula::Kind::Or:
            return eval_rec(f->a, env, base, qbound) || eval_rec(f->b, env, base, qbound);
        case Formula::Kind::Implies:
            return !eval_rec(f->a, env, base, qbound) || eval_rec(f->b, env, base, qbound);
        case Formula::Kind::Iff:
            return eval_rec(f->a, env, base, qbound) == eval_rec(f->b, env, base, qbound);
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            const bool universal = f->kind == Formula::Kind::Forall;
            std::optional<Nat> saved;
            const auto it = env.find(f->var);
            if (it != env.end()) saved = it->second;
            bool result = universal;
            for (Nat v = 0; v <= qbound; ++v) {
                env[f->var] = v;
                if (eval_rec(f->a, env, base, qbound) != universal) {
                    result = !universal;
                    break;
                }
            }
            if (saved)
                env[f->var] = *saved;
            else
                env.erase(f->var);
            return result;
        }
    }
    throw std::logic_error("unreachable formula kind");
}

std::string show(const std::vector<Nat>& xs) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ", ";
        os << xs[i];
    }
    os << ')';
    return os.str();
}

// lexicographically next tuple below bound; false once exhausted
bool bump(std::vector<Nat>& tuple, const Nat& bound) {
    for (std::size_t i = tuple.size(); i-- > 0;) {
        if (++tuple[i] < bound) return true;
        tuple[i] = 0;
    }
    return false;
}

Nat value_of_track(const DigitWord& w, int t) {
    Nat x = 0;
    for (std::size_t p = w.symbols.size(); p-- > 0;) x = x * w.radix + w.symbols[p][t];
    return x;
}

std::vector<Nat> values_of_word(const DigitWord& w) {
    std::vector<Nat> out(w.tracks);
    for (int t = 0; t < w.tracks; ++t) out[t] = value_of_track(w, t);
    return out;
}

}  // namespace

bool oracle_eval(const FormulaPtr& f, const Assignment& assignment, Base base,
                 const Nat& quantifier_bound) {
    Assignment env = assignment;
    return eval_rec(f, env, base, quantifier_bound);
}

std::vector<std::vector<Nat>> relation_table(const Predicate& pred, int arity, const Nat& bound) {
    std::vector<std::vector<Nat>> out;
    if (bound == 0) return out;
    std::vector<Nat> tuple(arity, 0);
    do {
        if (pred(tuple)) out.push_back(tuple);
    } while (bump(tuple, bound));
    return out;
}

CheckReport check_correspondence(const Dfa& transformed, const Predicate& source_pred,
                                 const Codec& codec, const Nat& bound) {
    const int r = transformed.tracks;
    const int m = codec.source_arity();
    if (bound == 0) return CheckReport::ok();

    std::map<std::vector<Nat>, Nat> encode_memo;
    auto encode = [&](std::vector<Nat> arg) -> const Nat& {
        auto [it, fresh] = encode_memo.try_emplace(std::move(arg), 0);
        if (fresh) it->second = codec.apply(it->first);
        return it->second;
    };

    std::vector<Nat> flat(static_cast<std::size_t>(r) * m, 0);
    do {
        std::vector<Nat> encoded(r);
        for (int j = 0; j < r; ++j)
            encoded[j] = encode({flat.begin() + static_cast<std::ptrdiff_t>(j) * m,
                                 flat.begin() + static_cast<std::ptrdiff_t>(j + 1) * m});
        const bool want = source_pred(flat);
        if (accepts_tuple(transformed, encoded) != want)
            return CheckReport::fail("source tuple " + show(flat) + " encodes to " +
                                     show(encoded) +
                                     (want ? " which the automaton rejects"
                                           : " which the automaton accepts"));
    } while (bump(flat, bound));

    std::vector<Nat> members;
    std::vector<std::vector<Nat>> decodes;
    for (Nat y = 0; y < bound; ++y) {
        auto decoded = codec.invert(y);
        if (!decoded) continue;
        members.push_back(y);
        decodes.push_back(*decoded);
    }
    if (members.empty()) return CheckReport::ok();
    std::vector<std::size_t> idx(r, 0);
    while (true) {
        std::vector<Nat> encoded(r);
        std::vector<Nat> source;
        for (int j = 0; j < r; ++j) {
            encoded[j] = members[idx[j]];
            source.insert(source.end(), decodes[idx[j]].begin(), decodes[idx[j]].end());
        }
        const bool want = source_pred(source);
        if (accepts_tuple(transformed, encoded) != want)
            return CheckReport::fail("target tuple " + show(encoded) + " decodes to " +
                                     show(source) +
                                     (want ? " yet the automaton rejects it"
                                           : " yet the automaton accepts it"));
        std::size_t i = idx.size();
        while (i-- > 0) {
            if (++idx[i] < members.size()) break;
            idx[i] = 0;
            if (i == 0) return CheckReport::ok();
        }
    }
}

CheckReport check_domain_exact(const Dfa& domain, const Codec& codec, const Nat& bound) {
    if (domain.tracks != 1)
        throw std::invalid_argument("domain automaton must have a single track");
    if (bound == 0) return CheckReport::ok();

    std::vector<Nat> source(codec.source_arity(), 0);
    do {
        const Nat y = codec.apply(source);
        if (!accepts_tuple(domain, {y}))
            return CheckReport::fail("encode" + show(source) + " = " + y.str() +
                                     " is rejected by the domain automaton");
    } while (bump(source, bound));

    for (Nat y = 0; y < bound; ++y) {
        const bool member = codec.member(y);
        if (accepts_tuple(domain, {y}) != member)
            return CheckReport::fail("the domain automaton " +
                                     std::string(member ? "rejects codec member "
                                                        : "accepts non-member ") +
                                     y.str());
    }
    return CheckReport::ok();
}

namespace {

// eq/addition/valuation lifted onto chosen tracks of a wider product
Dfa on_tracks(const Dfa& a, std::vector<int> where, int total) {
    return lift_tracks(a, where, total);
}

std::optional<std::vector<Nat>> nonempty_witness(const Dfa& a) {
    const auto w = shortest_accepted(a);
    if (!w) return std::nullopt;
    return values_of_word(*w);
}

}  // namespace

CheckReport check_internal_model(const Interpretation& interp, const Nat& enum_bound) {
    const Dfa& dom = interp.domain;
    const Dfa& eq = interp.equality;
    const Dfa& add = interp.addition;
    const Dfa& val = interp.valuation;
    const int radix = dom.radix;

    std::vector<Nat> ds;
    for (auto& tuple : enumerate_accepted(dom, enum_bound)) ds.push_back(tuple[0]);
    std::vector<std::vector<int>> dig(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) dig[i] = to_digits(ds[i], dom.base()).digits;

    auto eq_run = [&](std::size_t i, std::size_t j) {
        const auto &di = dig[i], &dj = dig[j];
        const std::size_t len = std::max(di.size(), dj.size());
        int32_t q = eq.initial;
        for (std::size_t p = 0; p < len && q >= 0; ++p) {
            const int a = p < di.size() ? di[p] : 0;
            const int b = p < dj.size() ? dj[p] : 0;
            q = eq.next(q, static_cast<int64_t>(a) * radix + b);
        }
        return q >= 0 && eq.is_final(q);
    };
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (!eq_run(i, i))
            return CheckReport::fail("equality is not reflexive at " + ds[i].str());
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j)
            if (eq_run(i, j) != eq_run(j, i))
                return CheckReport::fail("equality is not symmetric on (" + ds[i].str() + ", " +
                                         ds[j].str() + ")");

    const Dfa not_trans = product(
        product(on_tracks(eq, {0, 1}, 3), on_tracks(eq, {1, 2}, 3), ProductMode::And),
        product(on_tracks(dom, {0}, 3),
                product(on_tracks(dom, {1}, 3),
                        product(on_tracks(dom, {2}, 3), complement(on_tracks(eq, {0, 2}, 3)),
                                ProductMode::And),
                        ProductMode::And),
                ProductMode::And),
        ProductMode::And);
    if (auto w = nonempty_witness(not_trans))
        return CheckReport::fail("equality is not transitive on " + show(*w));

    const Dfa add_some = project(product(add, on_tracks(dom, {2}, 3), ProductMode::And), 2);
    const Dfa add_gap =
        product(product(on_tracks(dom, {0}, 2), on_tracks(dom, {1}, 2), ProductMode::And),
                complement(add_some), ProductMode::And);
    if (auto w = nonempty_witness(add_gap))
        return CheckReport::fail("addition has no domain value on " + show(*w));

    Dfa add_two = product(on_tracks(add, {0, 1, 2}, 4), on_tracks(add, {0, 1, 3}, 4),
                          ProductMode::And);
    for (int t = 0; t < 4; ++t)
        add_two = product(add_two, on_tracks(dom, {t}, 4), ProductMode::And);
    add_two = product(add_two, complement(on_tracks(eq, {2, 3}, 4)), ProductMode::And);
    if (auto w = nonempty_witness(add_two))
        return CheckReport::fail("addition is not functional: " + show(*w));

    const Dfa val_some = project(product(val, on_tracks(dom, {1}, 2), ProductMode::And), 1);
    const Dfa val_gap = product(on_tracks(dom, {0}, 1), complement(val_some), ProductMode::And);
    if (auto w = nonempty_witness(val_gap))
        return CheckReport::fail("valuation has no domain value on " + show(*w));

    Dfa val_two = product(on_tracks(val, {0, 1}, 3), on_tracks(val, {0, 2}, 3), ProductMode::And);
    for (int t = 0; t < 3; ++t)
        val_two = product(val_two, on_tracks(dom, {t}, 3), ProductMode::And);
    val_two = product(val_two, complement(on_tracks(eq, {1, 2}, 3)), ProductMode::And);
    if (auto w = nonempty_witness(val_two))
        return CheckReport::fail("valuation is not functional: " + show(*w));

    return CheckReport::ok();
}

CheckReport check_interpretation(const Interpretation& interp, const Nat& bound) {
    if (interp.domain.tracks != 1 || interp.equality.tracks != 2 ||
        interp.addition.tracks != 3 || interp.valuation.tracks != 2)
        throw std::invalid_argument("interpretation automata have the wrong arities");
    const int target = interp.target_base.radix();
    if (interp.domain.radix != target || interp.equality.radix != target ||
        interp.addition.radix != target || interp.valuation.radix != target)
        throw std::invalid_argument("interpretation automata disagree with the target base");

    const Base source = interp.source_base;
    std::ostringstream lines;
    auto step = [&](const char* name, CheckReport report) -> std::optional<CheckReport> {
        if (report.pass) {
            lines << name << ": pass\n";
            return std::nullopt;
        }
        lines << name << ": " << report.detail << '\n';
        return CheckReport{false, lines.str()};
    };

    if (auto bad = step("domain", check_domain_exact(interp.domain, interp.codec, bound)))
        return *bad;
    if (auto bad = step("equality",
                        check_correspondence(
                            interp.equality,
                            [](const std::vector<Nat>& t) { return t[0] == t[1]; },
                            interp.codec, bound)))
        return *bad;
    if (auto bad = step("addition",
                        check_correspondence(
                            interp.addition,
                            [](const std::vector<Nat>& t) { return t[0] + t[1] == t[2]; },
                            interp.codec, bound)))
        return *bad;
    if (auto bad = step("valuation",
                        check_correspondence(
                            interp.valuation,
                            [source](const std::vector<Nat>& t) {
                                return v_of(t[0], source) == t[1];
                            },
                            interp.codec, bound)))
        return *bad;
    if (auto bad = step("internal model", check_internal_model(interp, bound))) return *bad;
    return {true, lines.str()};
}

}  // namespace buchi
