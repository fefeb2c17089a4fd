#include "f2mix/rational.hpp"

#include <cmath>

#include "f2mix/errors.hpp"

namespace f2mix {

Rational parse_decimal(std::string_view s) {
    if (s.empty())
        throw ParseError("empty decimal string");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    BigInt num = 0;
    BigInt den = 1;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot)
                throw ParseError("malformed decimal: " + std::string(s));
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9')
            throw ParseError("malformed decimal: " + std::string(s));
        num = num * 10 + (c - '0');
        if (seen_dot)
            den *= 10;
        seen_digit = true;
    }
    if (!seen_digit)
        throw ParseError("malformed decimal: " + std::string(s));
    Rational r(num, den);
    return neg ? -r : r;
}

std::string format_decimal(const Rational& r, int digits) {
    Rational x = r < 0 ? -r : r;
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    // Round to nearest.
    BigInt scaled = (boost::multiprecision::numerator(x) * scale * 2 +
                     boost::multiprecision::denominator(x)) /
                    (boost::multiprecision::denominator(x) * 2);
    BigInt ip = scaled / scale;
    BigInt fp = scaled % scale;
    std::string frac = fp.str();
    frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
    std::string out = (r < 0 ? "-" : "") + ip.str();
    if (digits > 0)
        out += "." + frac;
    return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::uint64_t bernoulli_threshold(const Rational& p) {
    if (p <= 0)
        return 0;
    if (p >= 1)
        return ~std::uint64_t(0);
    BigInt t = (boost::multiprecision::numerator(p) << 64) / boost::multiprecision::denominator(p);
    return t.convert_to<std::uint64_t>();
}

} // namespace f2mix
