#ifndef TPATH_RATIONAL_HPP
#define TPATH_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace tpath {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// accepts "7", "-3/4", "0.25", "+1.5"; decimals are converted exactly
// throws std::invalid_argument on anything else
Rat parse_rat(const std::string& text);

// canonical text: "p" for integers, reduced "p/q" with q > 1 otherwise
std::string rat_str(const Rat& r);

double rat_double(const Rat& r);

int rat_sign(const Rat& r);

}

#endif
