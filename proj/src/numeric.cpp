#include "fusion/numeric.hpp"

#include <cctype>
#include <sstream>

namespace fusion {

Rat parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParamError("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rat num = parse_rational(s.substr(0, slash));
        Rat den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw ParamError("zero denominator in '" + text + "'");
        return num / den;
    }

    bool negative = false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        negative = (s[i] == '-');
        ++i;
    }
    BigInt mantissa = 0;
    BigInt scale = 1;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '.') {
            if (seen_dot) throw ParamError("malformed number '" + text + "'");
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParamError("malformed number '" + text + "'");
        mantissa = mantissa * 10 + (s[i] - '0');
        if (seen_dot) scale *= 10;
        seen_digit = true;
    }
    if (!seen_digit) throw ParamError("malformed number '" + text + "'");
    Rat r(mantissa, scale);
    return negative ? -r : r;
}

std::string rational_to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

BigInt catalan(unsigned k) {
    // C_k = binom(2k, k) / (k + 1)
    BigInt b = 1;
    for (unsigned i = 1; i <= k; ++i) {
        b *= (k + i);
        b /= i;
    }
    return b / (k + 1);
}

} // namespace fusion
