#include "buchi/numeral.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace buchi {

Base::Base(int radix) : radix_(radix) {
    if (radix < 2)
        throw std::invalid_argument("base must be at least 2, got " + std::to_string(radix));
}

DigitSeq to_digits(Nat x, Base base) {
    if (x < 0) throw std::invalid_argument("negative value has no digit string");
    DigitSeq seq{base, {}};
    const int r = base.radix();
    while (x != 0) {
        seq.digits.push_back(static_cast<int>(x % r));
        x /= r;
    }
    return seq;
}

Nat from_digits(const DigitSeq& seq) {
    const int r = seq.base.radix();
    Nat value = 0;
    for (auto it = seq.digits.rbegin(); it != seq.digits.rend(); ++it) {
        if (*it < 0 || *it >= r)
            throw std::invalid_argument("digit " + std::to_string(*it) +
                                        " out of range for base " + std::to_string(r));
        value = value * r + *it;
    }
    return value;
}

int digit_at(const Nat& x, Base base, std::size_t position) {
    Nat shifted = x;
    const int r = base.radix();
    for (std::size_t i = 0; i < position && shifted != 0; ++i) shifted /= r;
    return static_cast<int>(shifted % r);
}

Nat interleave_encode(const std::vector<Nat>& xs, Base base) {
    if (xs.empty()) throw std::invalid_argument("cannot interleave zero values");
    const int m = static_cast<int>(xs.size());
    std::vector<DigitSeq> parts;
    std::size_t len = 0;
    for (const Nat& x : xs) {
        parts.push_back(to_digits(x, base));
        len = std::max(len, parts.back().digits.size());
    }
    DigitSeq merged{base, std::vector<int>(len * m, 0)};
    for (int j = 0; j < m; ++j)
        for (std::size_t i = 0; i < parts[j].digits.size(); ++i)
            merged.digits[i * m + j] = parts[j].digits[i];
    return from_digits(merged);
}

std::vector<Nat> interleave_decode(const Nat& x, Base base, int m) {
    if (m < 1) throw std::invalid_argument("interleave width must be positive");
    DigitSeq seq = to_digits(x, base);
    std::vector<DigitSeq> parts(m, DigitSeq{base, {}});
    for (std::size_t pos = 0; pos < seq.digits.size(); ++pos)
        parts[pos % m].digits.push_back(seq.digits[pos]);
    std::vector<Nat> out;
    out.reserve(m);
    for (const DigitSeq& p : parts) out.push_back(from_digits(p));
    return out;
}

Nat pairgroup_encode(const Nat& x, Base k) {
    const int r = k.radix();
    DigitSeq wide = to_digits(x, Base(r * r));
    DigitSeq narrow{k, {}};
    narrow.digits.reserve(wide.digits.size() * 2);
    for (int d : wide.digits) {
        narrow.digits.push_back(d / r);
        narrow.digits.push_back(d % r);
    }
    return from_digits(narrow);
}

Nat pairgroup_decode(const Nat& y, Base k) {
    const int r = k.radix();
    DigitSeq narrow = to_digits(y, k);
    if (narrow.digits.size() % 2 != 0) narrow.digits.push_back(0);
    DigitSeq wide{Base(r * r), {}};
    wide.digits.reserve(narrow.digits.size() / 2);
    for (std::size_t j = 0; j + 1 < narrow.digits.size(); j += 2)
        wide.digits.push_back(r * narrow.digits[j] + narrow.digits[j + 1]);
    return from_digits(wide);
}

Nat digitavoid_encode(const Nat& x, Base k) {
    DigitSeq seq = to_digits(x, k);
    return from_digits(DigitSeq{Base(k.radix() + 1), seq.digits});
}

std::optional<Nat> digitavoid_decode(const Nat& y, Base k) {
    DigitSeq seq = to_digits(y, Base(k.radix() + 1));
    for (int d : seq.digits)
        if (d == k.radix()) return std::nullopt;
    return from_digits(DigitSeq{k, seq.digits});
}

Codec::Codec(Kind kind, int m, Base base, std::vector<Codec> parts)
    : kind_(kind), m_(m), base_(base), parts_(std::move(parts)) {}

Codec Codec::identity() { return compose({}); }

Codec Codec::interleave(int m, Base base) {
    if (m < 1) throw std::invalid_argument("interleave width must be positive");
    return Codec(Kind::Interleave, m, base, {});
}

Codec Codec::pair_group(Base k) { return Codec(Kind::PairGroup, 1, k, {}); }

Codec Codec::digit_avoid(Base k) { return Codec(Kind::DigitAvoid, 1, k, {}); }

Codec Codec::compose(std::vector<Codec> parts) {
    for (std::size_t i = 1; i < parts.size(); ++i)
        if (parts[i].source_arity() != 1)
            throw std::invalid_argument("only the first codec of a composition may take a tuple");
    return Codec(Kind::Compose, 1, Base(2), std::move(parts));
}

int Codec::source_arity() const {
    switch (kind_) {
        case Kind::Interleave: return m_;
        case Kind::Compose: return parts_.empty() ? 1 : parts_.front().source_arity();
        default: return 1;
    }
}

Nat Codec::apply(const std::vector<Nat>& xs) const {
    if (static_cast<int>(xs.size()) != source_arity())
        throw std::invalid_argument("codec expects " + std::to_string(source_arity()) +
                                    " values, got " + std::to_string(xs.size()));
    switch (kind_) {
        case Kind::Interleave: return interleave_encode(xs, base_);
        case Kind::PairGroup: return pairgroup_encode(xs[0], base_);
        case Kind::DigitAvoid: return digitavoid_encode(xs[0], base_);
        case Kind::Compose: {
            if (parts_.empty()) return xs[0];
            Nat v = parts_.front().apply(xs);
            for (std::size_t i = 1; i < parts_.size(); ++i) v = parts_[i].apply({v});
            return v;
        }
    }
    throw std::logic_error("unreachable codec kind");
}

std::optional<std::vector<Nat>> Codec::invert(const Nat& y) const {
    switch (kind_) {
        case Kind::Interleave: return interleave_decode(y, base_, m_);
        case Kind::PairGroup: return std::vector<Nat>{pairgroup_decode(y, base_)};
        case Kind::DigitAvoid: {
            auto x = digitavoid_decode(y, base_);
            if (!x) return std::nullopt;
            return std::vector<Nat>{*x};
        }
        case Kind::Compose: {
            Nat v = y;
            for (std::size_t i = parts_.size(); i-- > 1;) {
                auto xs = parts_[i].invert(v);
                if (!xs) return std::nullopt;
                v = (*xs)[0];
            }
            if (parts_.empty()) return std::vector<Nat>{v};
            return parts_.front().invert(v);
        }
    }
    throw std::logic_error("unreachable codec kind");
}

std::string Codec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Interleave:
            os << "interleave{m=" << m_ << ", base=" << base_.radix() << "}";
            break;
        case Kind::PairGroup:
            os << "pairgroup{" << base_.radix() * base_.radix() << "->" << base_.radix() << "}";
            break;
        case Kind::DigitAvoid:
            os << "digitavoid{" << base_.radix() << "->" << base_.radix() + 1 << "}";
            break;
        case Kind::Compose: {
            if (parts_.empty()) { os << "identity"; break; }
            for (std::size_t i = 0; i < parts_.size(); ++i) {
                if (i) os << " ; ";
                os << parts_[i].describe();
            }
            break;
        }
    }
    return os.str();
}

}  // namespace buchi
