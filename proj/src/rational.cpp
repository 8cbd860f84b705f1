#include "covforge/rational.hpp"

#include "covforge/error.hpp"

#include <cctype>

namespace covforge {

Integer factorial(unsigned n)
{
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Rational binomial(const Rational& rho, unsigned k)
{
    Rational out = 1;
    for (unsigned i = 0; i < k; ++i) {
        out *= (rho - i);
        out /= (i + 1);
    }
    return out;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational parse_rational(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    auto valid_int = [](std::string_view t, bool allow_sign) {
        if (t.empty()) {
            return false;
        }
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) {
            i = 1;
        }
        if (i == t.size()) {
            return false;
        }
        for (; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
                return false;
            }
        }
        return true;
    };
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) {
        throw ParseError("invalid rational: '" + std::string(text) + "'");
    }
    Integer n(num[0] == '+' ? num.substr(1) : num);
    Integer dd(den);
    if (dd == 0) {
        throw ParseError("zero denominator in rational: '" + std::string(text) + "'");
    }
    Rational q(n, dd);
    q.canonicalize();
    return q;
}

} // namespace covforge
