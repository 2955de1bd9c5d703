#include "pcnet/numeric.hpp"

#include <cmath>
#include <sstream>

namespace pcnet {

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os.str();
}

std::optional<Rat> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) return std::nullopt;
            return Rat(num, den);
        }
        auto dot = text.find('.');
        if (dot != std::string::npos) {
            std::string intpart = text.substr(0, dot);
            std::string frac = text.substr(dot + 1);
            if (frac.empty() && intpart.empty()) return std::nullopt;
            for (char c : frac)
                if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            bool neg = !intpart.empty() && intpart[0] == '-';
            if (neg) intpart = intpart.substr(1);
            if (intpart.empty()) intpart = "0";
            BigInt num(intpart);
            BigInt den = 1;
            for (char c : frac) {
                num = num * 10 + (c - '0');
                den *= 10;
            }
            if (neg) num = -num;
            return Rat(num, den);
        }
        return Rat(BigInt(text), BigInt(1));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string format_rounded(const Rat& r, int digits) {
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Rat scaled = r * Rat(scale, 1);
    BigInt num = scaled.numerator();
    BigInt den = scaled.denominator();
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt q = num / den;
    BigInt rem = num % den;
    if (2 * rem >= den) q += 1;  // half away from zero
    std::string body = q.str();
    while (static_cast<int>(body.size()) <= digits) body.insert(body.begin(), '0');
    std::string out = body.substr(0, body.size() - digits);
    std::string frac = body.substr(body.size() - digits);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    if (neg && (out != "0" || !frac.empty())) out.insert(out.begin(), '-');
    return out;
}

std::string format_sci2(const BigInt& v) {
    if (v == 0) return "0.0E+00";
    std::string digits = BigInt(boost::multiprecision::abs(v)).str();
    int exp = static_cast<int>(digits.size()) - 1;
    // round to two significant digits
    long lead = (digits[0] - '0') * 10 + (digits.size() > 1 ? digits[1] - '0' : 0);
    if (digits.size() > 2 && digits[2] >= '5') ++lead;
    if (lead == 100) {
        lead = 10;
        ++exp;
    }
    std::ostringstream os;
    if (v < 0) os << '-';
    os << (lead / 10) << '.' << (lead % 10) << "E+" << (exp < 10 ? "0" : "") << exp;
    return os.str();
}

}  // namespace pcnet
