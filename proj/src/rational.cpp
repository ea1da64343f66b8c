#include "troprank/rational.hpp"

namespace troprank {

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text), Int(1));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rat(num, den);
    } catch (const std::exception& e) {
        throw ParseError("bad rational literal '" + text + "': " + e.what());
    }
}

std::string format_rational(const Rat& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

Int gcd_of(const ZVec& values) {
    Int g = 0;
    for (const Int& v : values) g = boost::multiprecision::gcd(g, v);
    return g;
}

}  // namespace troprank
