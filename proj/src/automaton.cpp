#include "buchi/automaton.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace buchi {

int64_t pow_int(int base, int exp) {
    int64_t v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

int64_t pack_symbol(const std::vector<int>& digits, int radix) {
    int64_t id = 0;
    for (int d : digits) id = id * radix + d;
    return id;
}

std::vector<int> unpack_symbol(int64_t id, int radix, int tracks) {
    std::vector<int> digits(tracks, 0);
    for (int i = tracks - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(id % radix);
        id /= radix;
    }
    return digits;
}

DigitWord word_of_tuple(Base base, const std::vector<Nat>& xs) {
    DigitWord w;
    w.radix = base.radix();
    w.tracks = static_cast<int>(xs.size());
    std::vector<DigitSeq> seqs;
    std::size_t len = 0;
    for (const Nat& x : xs) {
        seqs.push_back(to_digits(x, base));
        len = std::max(len, seqs.back().digits.size());
    }
    w.symbols.assign(len, std::vector<int>(xs.size(), 0));
    for (std::size_t i = 0; i < seqs.size(); ++i)
        for (std::size_t p = 0; p < seqs[i].digits.size(); ++p)
            w.symbols[p][i] = seqs[i].digits[p];
    return w;
}

std::string to_string(const DigitWord& w) {
    std::ostringstream os;
    for (const auto& sym : w.symbols) {
        os << '(';
        for (std::size_t i = 0; i < sym.size(); ++i) {
            if (i) os << ',';
            os << sym[i];
        }
        os << ')';
    }
    return os.str();
}

Dfa::Dfa(Base base, int tracks_, int num_states_, int initial_)
    : radix(base.radix()), tracks(tracks_), initial(initial_) {
    if (tracks_ < 0) throw std::invalid_argument("negative track count");
    if (num_states_ < 1) throw std::invalid_argument("automaton needs at least one state");
    if (initial_ < 0 || initial_ >= num_states_)
        throw std::invalid_argument("initial state out of range");
    finals.assign(num_states_, false);
    table.assign(static_cast<std::size_t>(num_states_) * symbol_count(), -1);
}

void validate(const Dfa& a) {
    if (a.radix < 2) throw std::logic_error("automaton radix below 2");
    if (a.tracks < 0) throw std::logic_error("automaton has negative track count");
    const int n = a.num_states();
    if (n < 1) throw std::logic_error("automaton has no states");
    if (a.initial < 0 || a.initial >= n) throw std::logic_error("initial state out of range");
    if (a.table.size() != static_cast<std::size_t>(n) * a.symbol_count())
        throw std::logic_error("transition table size mismatch");
    for (int32_t t : a.table)
        if (t < -1 || t >= n) throw std::logic_error("transition endpoint out of range");
}

bool run(const Dfa& a, const DigitWord& w) {
    if (w.radix != a.radix || w.tracks != a.tracks)
        throw std::invalid_argument("word base/arity does not match automaton");
    int state = a.initial;
    for (const auto& sym : w.symbols) {
        if (static_cast<int>(sym.size()) != a.tracks)
            throw std::invalid_argument("malformed symbol in word");
        for (int d : sym)
            if (d < 0 || d >= a.radix) throw std::invalid_argument("digit out of range in word");
        state = a.next(state, pack_symbol(sym, a.radix));
        if (state < 0) return false;
    }
    return a.is_final(state);
}

bool run(const Nfa& a, const DigitWord& w) {
    if (w.radix != a.radix || w.tracks != a.tracks)
        throw std::invalid_argument("word base/arity does not match automaton");
    std::vector<char> cur(a.num_states(), 0);
    for (int q : a.initials) cur[q] = 1;
    std::vector<char> nxt(a.num_states(), 0);
    for (const auto& sym : w.symbols) {
        const int64_t s = pack_symbol(sym, a.radix);
        std::fill(nxt.begin(), nxt.end(), 0);
        for (int q = 0; q < a.num_states(); ++q)
            if (cur[q])
                for (int32_t t : a.moves[q][s]) nxt[t] = 1;
        std::swap(cur, nxt);
    }
    for (int q = 0; q < a.num_states(); ++q)
        if (cur[q] && a.finals[q]) return true;
    return false;
}

bool accepts_tuple(const Dfa& a, const std::vector<Nat>& xs) {
    if (static_cast<int>(xs.size()) != a.tracks)
        throw std::invalid_argument("tuple arity does not match automaton");
    return run(a, word_of_tuple(a.base(), xs));
}

Dfa product(const Dfa& a, const Dfa& b, ProductMode mode) {
    if (a.radix != b.radix || a.tracks != b.tracks)
        throw std::invalid_argument("product of mismatched automata");
    const int64_t K = a.symbol_count();
    // (-1) stands for the implicit sink of one side; Or mode keeps running there.
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> todo;
    auto intern = [&](int x, int y) {
        auto [it, fresh] = ids.try_emplace({x, y}, static_cast<int>(ids.size()));
        if (fresh) todo.push_back({x, y});
        return it->second;
    };
    intern(a.initial, b.initial);
    std::vector<std::vector<int32_t>> rows;
    std::vector<bool> fin;
    for (std::size_t qi = 0; qi < todo.size(); ++qi) {
        auto [x, y] = todo[qi];
        rows.emplace_back(K, -1);
        const bool fx = x >= 0 && a.is_final(x);
        const bool fy = y >= 0 && b.is_final(y);
        fin.push_back(mode == ProductMode::And ? fx && fy : fx || fy);
        for (int64_t s = 0; s < K; ++s) {
            const int nx = x >= 0 ? a.next(x, s) : -1;
            const int ny = y >= 0 ? b.next(y, s) : -1;
            if (mode == ProductMode::And ? (nx < 0 || ny < 0) : (nx < 0 && ny < 0)) continue;
            rows[qi][s] = intern(nx, ny);
        }
    }
    Dfa out(Base(a.radix), a.tracks, static_cast<int>(rows.size()), 0);
    out.finals.assign(fin.begin(), fin.end());
    for (std::size_t q = 0; q < rows.size(); ++q)
        for (int64_t s = 0; s < K; ++s) out.set_transition(static_cast<int>(q), s, rows[q][s]);
    return out;
}

bool is_complete(const Dfa& a) {
    for (int32_t t : a.table)
        if (t < 0) return false;
    return true;
}

Dfa complete(const Dfa& a) {
    if (is_complete(a)) return a;
    Dfa out(Base(a.radix), a.tracks, a.num_states() + 1, a.initial);
    const int sink = a.num_states();
    for (int q = 0; q < a.num_states(); ++q) out.finals[q] = a.finals[q];
    const int64_t K = a.symbol_count();
    for (int q = 0; q < a.num_states(); ++q)
        for (int64_t s = 0; s < K; ++s) {
            const int32_t t = a.next(q, s);
            out.set_transition(q, s, t < 0 ? sink : t);
        }
    for (int64_t s = 0; s < K; ++s) out.set_transition(sink, s, sink);
    return out;
}

Dfa complement(const Dfa& a) {
    Dfa out = complete(a);
    out.finals.flip();
    return out;
}

Dfa lift_tracks(const Dfa& a, const std::vector<int>& where, int new_tracks) {
    if (static_cast<int>(where.size()) != a.tracks)
        throw std::invalid_argument("lift map arity mismatch");
    std::vector<bool> used(new_tracks, false);
    for (int w : where) {
        if (w < 0 || w >= new_tracks || used[w])
            throw std::invalid_argument("lift map must be injective into the new tracks");
        used[w] = true;
    }
    Dfa out(Base(a.radix), new_tracks, a.num_states(), a.initial);
    out.finals = a.finals;
    const int64_t K = out.symbol_count();
    std::vector<int64_t> old_sym(K);
    for (int64_t s = 0; s < K; ++s) {
        const std::vector<int> digits = unpack_symbol(s, a.radix, new_tracks);
        int64_t id = 0;
        for (int i = 0; i < a.tracks; ++i) id = id * a.radix + digits[where[i]];
        old_sym[s] = id;
    }
    for (int q = 0; q < a.num_states(); ++q)
        for (int64_t s = 0; s < K; ++s) out.set_transition(q, s, a.next(q, old_sym[s]));
    return out;
}

Dfa cylindrify(const Dfa& a, int at) {
    if (at < 0 || at > a.tracks) throw std::invalid_argument("cylindrify index out of range");
    std::vector<int> where(a.tracks);
    for (int i = 0; i < a.tracks; ++i) where[i] = i < at ? i : i + 1;
    return lift_tracks(a, where, a.tracks + 1);
}

Nfa erase_track(const Dfa& a, int at) {
    if (a.tracks < 1) throw std::invalid_argument("cannot project a 0-track automaton");
    if (at < 0 || at >= a.tracks) throw std::invalid_argument("projection index out of range");
    Nfa out;
    out.radix = a.radix;
    out.tracks = a.tracks - 1;
    out.initials = {a.initial};
    out.finals = a.finals;
    out.moves.assign(a.num_states(), std::vector<std::vector<int32_t>>(out.symbol_count()));
    const int64_t K = a.symbol_count();
    for (int64_t s = 0; s < K; ++s) {
        std::vector<int> digits = unpack_symbol(s, a.radix, a.tracks);
        digits.erase(digits.begin() + at);
        const int64_t ns = pack_symbol(digits, a.radix);
        for (int q = 0; q < a.num_states(); ++q) {
            const int32_t t = a.next(q, s);
            if (t >= 0) out.moves[q][ns].push_back(t);
        }
    }
    for (auto& row : out.moves)
        for (auto& targets : row) {
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        }
    return out;
}

namespace {

// Reverse reachability from the final states over the given zero-symbol edges.
std::vector<char> zero_closure_marks(int n, const std::vector<bool>& finals,
                                     const std::vector<std::vector<int32_t>>& rev_zero) {
    std::vector<char> mark(n, 0);
    std::vector<int> todo;
    for (int q = 0; q < n; ++q)
        if (finals[q]) {
            mark[q] = 1;
            todo.push_back(q);
        }
    while (!todo.empty()) {
        const int t = todo.back();
        todo.pop_back();
        for (int32_t p : rev_zero[t])
            if (!mark[p]) {
                mark[p] = 1;
                todo.push_back(p);
            }
    }
    return mark;
}

}  // namespace

Nfa padding_closure(Nfa a) {
    const int n = a.num_states();
    std::vector<std::vector<int32_t>> rev(n);
    for (int q = 0; q < n; ++q)
        for (int32_t t : a.moves[q][0]) rev[t].push_back(q);
    const std::vector<char> mark = zero_closure_marks(n, a.finals, rev);
    for (int q = 0; q < n; ++q)
        if (mark[q]) a.finals[q] = true;
    return a;
}

Dfa padding_closure(Dfa a) {
    const int n = a.num_states();
    std::vector<std::vector<int32_t>> rev(n);
    for (int q = 0; q < n; ++q) {
        const int32_t t = a.next(q, 0);
        if (t >= 0) rev[t].push_back(q);
    }
    const std::vector<char> mark = zero_closure_marks(n, a.finals, rev);
    for (int q = 0; q < n; ++q)
        if (mark[q]) a.finals[q] = true;
    return a;
}

Dfa determinize(const Nfa& a) {
    const int64_t K = a.symbol_count();
    std::map<std::vector<int32_t>, int> ids;
    std::vector<std::vector<int32_t>> subsets;
    auto intern = [&](std::vector<int32_t> set) {
        auto [it, fresh] = ids.try_emplace(set, static_cast<int>(ids.size()));
        if (fresh) subsets.push_back(std::move(set));
        return it->second;
    };
    std::vector<int32_t> init(a.initials.begin(), a.initials.end());
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    intern(std::move(init));
    std::vector<std::vector<int32_t>> rows;
    std::vector<bool> fin;
    std::vector<char> in_union(a.num_states(), 0);
    for (std::size_t qi = 0; qi < subsets.size(); ++qi) {
        rows.emplace_back(K, -1);
        bool f = false;
        for (int32_t q : subsets[qi]) f = f || a.finals[q];
        fin.push_back(f);
        for (int64_t s = 0; s < K; ++s) {
            std::vector<int32_t> next_set;
            for (int32_t q : subsets[qi])
                for (int32_t t : a.moves[q][s])
                    if (!in_union[t]) {
                        in_union[t] = 1;
                        next_set.push_back(t);
                    }
            if (next_set.empty()) continue;
            for (int32_t t : next_set) in_union[t] = 0;
            std::sort(next_set.begin(), next_set.end());
            rows[qi][s] = intern(std::move(next_set));
        }
    }
    Dfa out(Base(a.radix), a.tracks, static_cast<int>(rows.size()), 0);
    out.finals.assign(fin.begin(), fin.end());
    for (std::size_t q = 0; q < rows.size(); ++q)
        for (int64_t s = 0; s < K; ++s) out.set_transition(static_cast<int>(q), s, rows[q][s]);
    return out;
}

Dfa project(const Dfa& a, int at) {
    return minimize(determinize(padding_closure(erase_track(a, at))));
}

Dfa canonicalize(const Dfa& a) {
    const int64_t K = a.symbol_count();
    std::vector<int32_t> renum(a.num_states(), -1);
    std::vector<int32_t> bfs;
    renum[a.initial] = 0;
    bfs.push_back(a.initial);
    for (std::size_t i = 0; i < bfs.size(); ++i)
        for (int64_t s = 0; s < K; ++s) {
            const int32_t t = a.next(bfs[i], s);
            if (t >= 0 && renum[t] < 0) {
                renum[t] = static_cast<int32_t>(bfs.size());
                bfs.push_back(t);
            }
        }
    Dfa out(Base(a.radix), a.tracks, static_cast<int>(bfs.size()), 0);
    for (std::size_t i = 0; i < bfs.size(); ++i) {
        out.finals[i] = a.finals[bfs[i]];
        for (int64_t s = 0; s < K; ++s) {
            const int32_t t = a.next(bfs[i], s);
            out.set_transition(static_cast<int>(i), s, t < 0 ? -1 : renum[t]);
        }
    }
    return out;
}

namespace {

// Hopcroft partition refinement; input must be complete with every state
// reachable. Returns the equivalence-class id of each state.
std::vector<int32_t> hopcroft(const Dfa& a) {
    const int n = a.num_states();
    const int64_t K = a.symbol_count();

    // predecessor lists in CSR form, grouped by (symbol, target)
    std::vector<int32_t> cnt(static_cast<std::size_t>(K) * n, 0);
    for (int q = 0; q < n; ++q)
        for (int64_t s = 0; s < K; ++s) ++cnt[static_cast<std::size_t>(s) * n + a.next(q, s)];
    std::vector<std::size_t> off(static_cast<std::size_t>(K) * n + 1, 0);
    for (std::size_t i = 0; i < cnt.size(); ++i) off[i + 1] = off[i] + cnt[i];
    std::vector<int32_t> dat(off.back());
    std::vector<std::size_t> fill(off.begin(), off.end() - 1);
    for (int q = 0; q < n; ++q)
        for (int64_t s = 0; s < K; ++s)
            dat[fill[static_cast<std::size_t>(s) * n + a.next(q, s)]++] = q;

    std::vector<int32_t> block_of(n, 0), pos(n), order(n);
    struct Blk {
        int32_t begin, end, marks;
    };
    std::vector<Blk> blocks;

    int32_t nf = 0;
    for (int q = 0; q < n; ++q)
        if (a.is_final(q)) ++nf;
    if (nf == 0 || nf == n) return block_of;
    {
        int32_t i0 = 0, i1 = nf;
        for (int q = 0; q < n; ++q) {
            const int32_t at = a.is_final(q) ? i0++ : i1++;
            order[at] = q;
            pos[q] = at;
            block_of[q] = a.is_final(q) ? 0 : 1;
        }
        blocks.push_back({0, nf, 0});
        blocks.push_back({nf, n, 0});
    }

    std::vector<int32_t> worklist{0, 1};
    std::vector<char> in_work{1, 1};
    std::vector<int32_t> touched, members;
    while (!worklist.empty()) {
        const int32_t A = worklist.back();
        worklist.pop_back();
        in_work[A] = 0;
        members.assign(order.begin() + blocks[A].begin, order.begin() + blocks[A].end);
        for (int64_t s = 0; s < K; ++s) {
            touched.clear();
            for (int32_t t : members)
                for (std::size_t e = off[static_cast<std::size_t>(s) * n + t];
                     e < off[static_cast<std::size_t>(s) * n + t + 1]; ++e) {
                    const int32_t p = dat[e];
                    Blk& b = blocks[block_of[p]];
                    if (pos[p] < b.begin + b.marks) continue;  // already marked
                    if (b.marks == 0) touched.push_back(block_of[p]);
                    const int32_t mp = b.begin + b.marks;
                    const int32_t other = order[mp];
                    std::swap(order[pos[p]], order[mp]);
                    pos[other] = pos[p];
                    pos[p] = mp;
                    ++b.marks;
                }
            for (int32_t bi : touched) {
                const int32_t b_begin = blocks[bi].begin;
                const int32_t b_end = blocks[bi].end;
                const int32_t b_marks = blocks[bi].marks;
                blocks[bi].marks = 0;
                if (b_marks == b_end - b_begin) continue;
                const int32_t nb = static_cast<int32_t>(blocks.size());
                blocks.push_back({b_begin, b_begin + b_marks, 0});
                blocks[bi].begin = b_begin + b_marks;
                for (int32_t i = b_begin; i < b_begin + b_marks; ++i) block_of[order[i]] = nb;
                if (in_work[bi]) {
                    worklist.push_back(nb);
                    in_work.push_back(1);
                } else if (b_marks <= b_end - b_begin - b_marks) {
                    worklist.push_back(nb);
                    in_work.push_back(1);
                } else {
                    worklist.push_back(bi);
                    in_work[bi] = 1;
                    in_work.push_back(0);
                }
            }
        }
    }
    return block_of;
}

}  // namespace

Dfa minimize(const Dfa& a) {
    const Dfa c = canonicalize(complete(a));
    const std::vector<int32_t> block_of = hopcroft(c);
    int nb = 0;
    for (int32_t b : block_of) nb = std::max(nb, b + 1);
    Dfa q(Base(c.radix), c.tracks, nb, block_of[c.initial]);
    const int64_t K = c.symbol_count();
    for (int st = 0; st < c.num_states(); ++st) {
        if (c.is_final(st)) q.finals[block_of[st]] = true;
        for (int64_t s = 0; s < K; ++s) q.set_transition(block_of[st], s, block_of[c.next(st, s)]);
    }
    return canonicalize(q);
}

std::optional<DigitWord> shortest_accepted(const Dfa& a) {
    const int64_t K = a.symbol_count();
    std::vector<int64_t> via(a.num_states(), -1);
    std::vector<int32_t> par(a.num_states(), -1);
    std::vector<char> seen(a.num_states(), 0);
    std::vector<int32_t> bfs{a.initial};
    seen[a.initial] = 1;
    int32_t goal = a.is_final(a.initial) ? a.initial : -1;
    for (std::size_t i = 0; i < bfs.size() && goal < 0; ++i) {
        const int q = bfs[i];
        for (int64_t s = 0; s < K && goal < 0; ++s) {
            const int32_t t = a.next(q, s);
            if (t < 0 || seen[t]) continue;
            seen[t] = 1;
            par[t] = q;
            via[t] = s;
            bfs.push_back(t);
            if (a.is_final(t)) goal = t;
        }
    }
    if (goal < 0) return std::nullopt;
    std::vector<int64_t> syms;
    for (int32_t q = goal; par[q] >= 0; q = par[q]) syms.push_back(via[q]);
    std::reverse(syms.begin(), syms.end());
    DigitWord w;
    w.radix = a.radix;
    w.tracks = a.tracks;
    for (int64_t s : syms) w.symbols.push_back(unpack_symbol(s, a.radix, a.tracks));
    return w;
}

bool is_empty(const Dfa& a) { return !shortest_accepted(a).has_value(); }

std::optional<DigitWord> language_difference(const Dfa& a0, const Dfa& b0) {
    if (a0.radix != b0.radix || a0.tracks != b0.tracks)
        throw std::invalid_argument("language comparison of mismatched automata");
    const Dfa a = complete(a0), b = complete(b0);
    const int64_t K = a.symbol_count();
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> todo;
    std::vector<int32_t> par;
    std::vector<int64_t> via;
    auto intern = [&](int x, int y, int32_t from, int64_t sym) {
        auto [it, fresh] = ids.try_emplace({x, y}, static_cast<int>(ids.size()));
        if (fresh) {
            todo.push_back({x, y});
            par.push_back(from);
            via.push_back(sym);
        }
        return std::pair(it->second, fresh);
    };
    auto differs = [&](int x, int y) { return a.is_final(x) != b.is_final(y); };
    intern(a.initial, b.initial, -1, -1);
    int32_t goal = differs(a.initial, b.initial) ? 0 : -1;
    for (std::size_t i = 0; i < todo.size() && goal < 0; ++i) {
        const auto [x, y] = todo[i];
        for (int64_t s = 0; s < K && goal < 0; ++s) {
            const auto [id, fresh] = intern(a.next(x, s), b.next(y, s), static_cast<int32_t>(i), s);
            if (fresh && differs(todo[id].first, todo[id].second)) goal = id;
        }
    }
    if (goal < 0) return std::nullopt;
    std::vector<int64_t> syms;
    for (int32_t q = goal; par[q] >= 0; q = par[q]) syms.push_back(via[q]);
    std::reverse(syms.begin(), syms.end());
    DigitWord w;
    w.radix = a.radix;
    w.tracks = a.tracks;
    for (int64_t s : syms) w.symbols.push_back(unpack_symbol(s, a.radix, a.tracks));
    return w;
}

bool equivalent(const Dfa& a, const Dfa& b) { return !language_difference(a, b).has_value(); }

std::vector<std::vector<Nat>> enumerate_accepted(const Dfa& a, const Nat& bound) {
    std::vector<std::vector<Nat>> out;
    if (a.tracks == 0) {
        if (bound >= 0 && a.is_final(a.initial)) out.push_back({});
        return out;
    }
    if (bound <= 0) return out;
    if (bound > Nat(std::numeric_limits<int64_t>::max()))
        throw std::invalid_argument("enumeration bound too large");
    const uint64_t B = bound.convert_to<uint64_t>();
    int len = 0;
    for (uint64_t v = B - 1; v != 0; v /= a.radix) ++len;
    std::vector<uint8_t> digs(B * std::max(len, 1), 0);
    std::vector<uint8_t> clen(B, 0);
    for (uint64_t v = 0; v < B; ++v) {
        uint64_t x = v;
        int l = 0;
        while (x != 0) {
            digs[v * len + l] = static_cast<uint8_t>(x % a.radix);
            x /= a.radix;
            ++l;
        }
        clen[v] = static_cast<uint8_t>(l);
    }
    const int r = a.tracks;
    std::vector<uint64_t> tuple(r, 0);
    while (true) {
        int wordlen = 0;
        for (uint64_t v : tuple) wordlen = std::max<int>(wordlen, clen[v]);
        int state = a.initial;
        for (int p = 0; p < wordlen && state >= 0; ++p) {
            int64_t sym = 0;
            for (int i = 0; i < r; ++i) sym = sym * a.radix + digs[tuple[i] * len + p];
            state = a.next(state, sym);
        }
        if (state >= 0 && a.is_final(state)) {
            std::vector<Nat> tup;
            tup.reserve(r);
            for (uint64_t v : tuple) tup.emplace_back(v);
            out.push_back(std::move(tup));
        }
        int i = r - 1;
        while (i >= 0 && tuple[i] + 1 == B) tuple[i--] = 0;
        if (i < 0) break;
        ++tuple[i];
    }
    return out;
}

bool isomorphic(const Dfa& a, const Dfa& b) {
    for (const Dfa* x : {&a, &b}) {
        if (!is_complete(*x))
            throw std::invalid_argument("isomorphic requires complete automata");
        if (canonicalize(*x).num_states() != x->num_states() ||
            minimize(*x).num_states() != x->num_states())
            throw std::invalid_argument("isomorphic requires minimized automata");
    }
    if (a.radix != b.radix || a.tracks != b.tracks) return false;
    return canonicalize(a) == canonicalize(b);
}

}  // namespace buchi
