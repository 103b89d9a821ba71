#include "bratteli/rational.hpp"

#include "bratteli/error.hpp"

#include <gmp.h>

#include <cctype>
#include <cmath>
#include <vector>

namespace bratteli {

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw ConfigError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    s = s.substr(b);
    if (!s.empty() && s[0] == '+') s = s.substr(1);
    BigInt z;
    if (s.empty() || z.set_str(s, 10) != 0) throw ConfigError("not an integer: '" + std::string(text) + "'");
    return z;
}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(text));
    return make_rational(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
}

std::string to_decimal_string(const Rational& q, int significant) {
    if (q == 0) return "0";
    // Enough working precision for the requested digits regardless of magnitude.
    mpf_class f(q, 64 + 4 * static_cast<unsigned>(significant));
    int n = gmp_snprintf(nullptr, 0, "%.*Fg", significant, f.get_mpf_t());
    std::vector<char> buf(static_cast<std::size_t>(n) + 1);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant, f.get_mpf_t());
    return std::string(buf.data());
}

double to_double(const Rational& q) { return q.get_d(); }

BigInt ipow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rational ipow(const Rational& base, unsigned long exp) {
    Rational r(ipow(base.get_num(), exp), ipow(base.get_den(), exp));
    r.canonicalize();
    return r;
}

}  // namespace bratteli
