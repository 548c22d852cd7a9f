#include "qrot/angle.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace qrot {

void Angle::normalize() {
    if (den_ == 0) throw ParseError("angle denominator must be nonzero");
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    // Wrap num_/den_ into (-1, 1] modulo 2.
    BigInt two_den = 2 * den_;
    BigInt r = num_ % two_den;
    if (r < 0) r += two_den;
    if (r > den_) r -= two_den;
    num_ = r;
}

double Angle::radians() const {
    return std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Angle::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

Angle Angle::parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty angle");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Angle(BigInt(text), BigInt(1));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw ParseError("bad angle '" + text + "': zero denominator");
        return Angle(num, den);
    } catch (const std::exception& e) {
        throw ParseError("bad angle '" + text + "': " + e.what());
    }
}

std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << a.str(); }

}  // namespace qrot
