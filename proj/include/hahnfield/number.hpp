#pragma once

#include <gmpxx.h>

#include <string>

namespace hahnfield {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer &z) { return z.get_str(); }

inline std::string to_string(const Rational &q)
{
    Rational c(q);
    c.canonicalize();
    return c.get_str();
}

inline int sign(const Rational &q) { return sgn(q); }

} // namespace hahnfield
