#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fusionkz {

using Rational = mpq_class;

/// Formats as "p/q", or "p" when the denominator is one.
std::string to_string(const Rational &q);

/// Accepts "p", "p/q" and "-p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms; the two-argument mpq_class constructor does not
/// reduce. Throws DomainError on a zero denominator.
Rational make_rational(long num, long den);

inline bool is_integer(const Rational &q) { return q.get_den() == 1; }

inline Rational floor_of(const Rational &q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

} // namespace fusionkz
