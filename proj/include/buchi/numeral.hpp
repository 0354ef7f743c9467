// Positional numerals (LSD-first) and the encodings used to move values
// between bases: digit interleaving, pair grouping and digit avoidance.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace buchi {

using Nat = boost::multiprecision::cpp_int;

/// Radix of a positional numeral system; always at least 2.
class Base {
public:
    explicit Base(int radix);
    int radix() const { return radix_; }
    friend bool operator==(Base a, Base b) { return a.radix_ == b.radix_; }
    friend bool operator!=(Base a, Base b) { return a.radix_ != b.radix_; }

private:
    int radix_;
};

/// Digit string, least significant digit first. The canonical form carries
/// no trailing zeros, so the empty sequence denotes 0.
struct DigitSeq {
    Base base;
    std::vector<int> digits;
};

/// Canonical digit string of x.
DigitSeq to_digits(Nat x, Base base);

/// Value of a digit string; trailing zeros are harmless. Throws
/// std::invalid_argument on a digit outside [0, radix).
Nat from_digits(const DigitSeq& seq);

/// Digit of x at the given position (0 = least significant); 0 beyond the end.
int digit_at(const Nat& x, Base base, std::size_t position);

/// Merge m values into one by interleaving their digits round-robin:
/// digit i of xs[j] lands at position m*i + j of the result.
Nat interleave_encode(const std::vector<Nat>& xs, Base base);

/// Inverse of interleave_encode: deal the digits of x into m values.
std::vector<Nat> interleave_decode(const Nat& x, Base base, int m);

/// Rewrite a base-k^2 value in base k by splitting each digit d = k*l + m
/// into the two digits l, m (in that order).
Nat pairgroup_encode(const Nat& x, Base k);

/// Inverse of pairgroup_encode: group base-k digits in pairs (e0, e1) into
/// the base-k^2 digit k*e0 + e1. An odd-length digit string is padded with
/// one zero.
Nat pairgroup_decode(const Nat& y, Base k);

/// Reread the base-k digits of x as base-(k+1) digits. Total and injective;
/// the image is exactly the base-(k+1) numbers avoiding digit k.
Nat digitavoid_encode(const Nat& x, Base k);

/// Inverse of digitavoid_encode, or nullopt if some base-(k+1) digit of y
/// equals k.
std::optional<Nat> digitavoid_decode(const Nat& y, Base k);

/// Composable value encoding. A codec maps a tuple of source values to one
/// target value; every primitive except interleaving is unary.
class Codec {
public:
    enum class Kind { Interleave, PairGroup, DigitAvoid, Compose };

    static Codec identity();
    static Codec interleave(int m, Base base);
    static Codec pair_group(Base k);
    static Codec digit_avoid(Base k);
    /// Apply parts left to right. Only the first part may take more than
    /// one argument.
    static Codec compose(std::vector<Codec> parts);

    /// Number of source values consumed by apply().
    int source_arity() const;

    Nat apply(const std::vector<Nat>& xs) const;

    /// Decode a target value, or nullopt if it is not in the image.
    std::optional<std::vector<Nat>> invert(const Nat& y) const;

    /// True iff y is in the image of apply().
    bool member(const Nat& y) const { return invert(y).has_value(); }

    std::string describe() const;

    Kind kind() const { return kind_; }
    int width() const { return m_; }
    Base base() const { return base_; }
    const std::vector<Codec>& parts() const { return parts_; }

private:
    Codec(Kind kind, int m, Base base, std::vector<Codec> parts);

    Kind kind_;
    int m_;
    Base base_;
    std::vector<Codec> parts_;
};

}  // namespace buchi
