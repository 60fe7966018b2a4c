#include "fusionkz/errors.hpp"
#include "fusionkz/rational.hpp"

#include <string>

namespace fusionkz {

std::string to_string(const Rational &q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational make_rational(long num, long den) {
    if (den == 0)
        throw DomainError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty())
        throw DomainError("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw DomainError("not a rational number: " + s);
    if (q.get_den() == 0)
        throw DomainError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

} // namespace fusionkz
