#ifndef TROPRANK_RATIONAL_HPP
#define TROPRANK_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

namespace troprank {

// All arithmetic in this library is exact. Rationals are kept canonical
// (lowest terms, positive denominator) by the GMP backend, provided every
// entry point constructs them through the numerator/denominator pair.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using QVec = std::vector<Rat>;
using ZVec = std::vector<Int>;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses "p", "-p" or "p/q" into a canonical rational. Rejects q = 0.
Rat parse_rational(const std::string& text);

// Serializes canonically: integers as "p", otherwise "p/q" with q > 0.
std::string format_rational(const Rat& value);

Int gcd_of(const ZVec& values);

inline Rat rat(long num, long den = 1) { return Rat(Int(num), Int(den)); }

}  // namespace troprank

#endif
