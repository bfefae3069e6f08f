#include "gdc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace gdc {

namespace {

Int parse_int(std::string_view s)
{
	if (s.empty())
		throw std::invalid_argument("empty integer");
	std::size_t i = 0;
	bool negative = false;
	if (s[0] == '-' || s[0] == '+') {
		negative = (s[0] == '-');
		i = 1;
	}
	if (i == s.size())
		throw std::invalid_argument("sign without digits");
	Int value = 0;
	for (; i < s.size(); ++i) {
		if (!std::isdigit(static_cast<unsigned char>(s[i])))
			throw std::invalid_argument("not a digit: '" + std::string(s) + "'");
		value = value * 10 + (s[i] - '0');
	}
	return negative ? -value : value;
}

} // namespace

Rat parse_rat(std::string_view text)
{
	if (auto slash = text.find('/'); slash != std::string_view::npos) {
		Int num = parse_int(text.substr(0, slash));
		Int den = parse_int(text.substr(slash + 1));
		if (den == 0)
			throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
		return Rat(num, den);
	}
	if (auto dot = text.find('.'); dot != std::string_view::npos) {
		std::string_view whole = text.substr(0, dot);
		std::string_view frac = text.substr(dot + 1);
		// nine fractional digits keep every downstream product inside 64 bits
		if (frac.empty() || frac.size() > 9)
			throw std::invalid_argument("bad decimal literal '" + std::string(text) +
			                            "' (at most 9 fractional digits)");
		bool negative = !whole.empty() && whole[0] == '-';
		Int whole_part = whole.empty() || whole == "-" || whole == "+" ? 0 : parse_int(whole);
		Int frac_part = parse_int(frac);
		if (frac_part < 0)
			throw std::invalid_argument("bad decimal literal '" + std::string(text) + "'");
		Int scale = 1;
		for (std::size_t i = 0; i < frac.size(); ++i)
			scale *= 10;
		Rat magnitude = Rat(whole_part < 0 ? -whole_part : whole_part) + Rat(frac_part, scale);
		return negative || whole_part < 0 ? -magnitude : magnitude;
	}
	return Rat(parse_int(text));
}

std::string format_rat(const Rat& r)
{
	if (r.denominator() == 1)
		return std::to_string(r.numerator());
	return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace gdc
