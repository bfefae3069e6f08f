#ifndef GDC_RATIONAL_HPP
#define GDC_RATIONAL_HPP

#include <boost/rational.hpp>

#include <string>
#include <string_view>

namespace gdc {

// All money and energy quantities are exact rationals so that profit
// ratios on the constructed two-slot instances are exact identities,
// not floating-point approximations.
using Int = long long;
using Rat = boost::rational<Int>;
using Money = Rat; // dollars

inline double to_double(const Rat& r)
{
	return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// floor(r) as an integer, correct for negative values as well
inline Int rat_floor(const Rat& r)
{
	Int q = r.numerator() / r.denominator();
	if (r.numerator() % r.denominator() != 0 && r.numerator() < 0)
		--q;
	return q;
}

inline Int rat_ceil(const Rat& r)
{
	return -rat_floor(-r);
}

// Parses "3", "-2", "3/4", or a decimal literal like "0.13" into an exact
// rational. Throws std::invalid_argument on malformed input.
Rat parse_rat(std::string_view text);

// Canonical form used in instance files: "num/den", or just "num" when the
// denominator is 1. parse_rat(format_rat(r)) == r for every r.
std::string format_rat(const Rat& r);

} // namespace gdc

#endif
