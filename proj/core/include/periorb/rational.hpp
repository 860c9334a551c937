#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace periorb {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses `['-'] uint ('/' uint)?` into a canonical rational.
Rational parse_rational(std::string_view text);

/// Canonical form: "n" for integers, "n/d" otherwise, '-' on the numerator.
std::string rational_str(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline long to_long(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
    return z.get_si();
}

} // namespace periorb
