#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace qrot {

using BigInt = boost::multiprecision::cpp_int;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rotation angle as an exact rational multiple of pi.
///
/// Invariants: gcd(|num|, den) == 1, den >= 1, and the value theta = num/den
/// (in units of pi) is normalized to -1 < num/den <= 1, i.e. -pi < theta <= pi.
class Angle {
  public:
    Angle() : num_(0), den_(1) {}
    Angle(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    Angle(long num, long den) : num_(num), den_(den) { normalize(); }

    static Angle zero() { return Angle(); }
    static Angle pi() { return Angle(1, 1); }
    /// pi / 2^k, exact for any k >= 0.
    static Angle pi_over_pow2(unsigned k) { return Angle(BigInt(1), BigInt(1) << k); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_pi() const { return num_ == 1 && den_ == 1; }
    bool is_boolean() const { return is_zero() || is_pi(); }

    Angle operator+(const Angle& o) const {
        return Angle(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Angle operator-(const Angle& o) const {
        return Angle(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Angle negated() const { return Angle(-num_, den_); }

    /// (a2 - a1) / 2, halved before any modular wrap so the result is the
    /// exact rational midpoint of the difference.
    static Angle half_difference(const Angle& a2, const Angle& a1) {
        return Angle(a2.num_ * a1.den_ - a1.num_ * a2.den_, 2 * a2.den_ * a1.den_);
    }

    bool operator==(const Angle& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Angle& o) const { return !(*this == o); }
    /// Order by rational value; total on normalized representatives.
    bool operator<(const Angle& o) const { return num_ * o.den_ < o.num_ * den_; }

    /// Value in radians, for the simulator only.
    double radians() const;

    /// Textual form `p/q` (value p*pi/q), `0`, or an integer for multiples of pi.
    std::string str() const;
    static Angle parse(const std::string& text);

    size_t hash() const {
        size_t h = boost::hash<BigInt>()(num_);
        boost::hash_combine(h, boost::hash<BigInt>()(den_));
        return h;
    }

  private:
    void normalize();
    BigInt num_, den_;
};

struct AngleHash {
    size_t operator()(const Angle& a) const { return a.hash(); }
};

std::ostream& operator<<(std::ostream& os, const Angle& a);

}  // namespace qrot
