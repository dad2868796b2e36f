#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qeuler {

using BigInt = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

/// Exact rational scalar. The backend keeps values canonical: lowest terms,
/// denominator > 0, so equality is plain comparison. Expression templates are
/// off so every operation yields a concrete Rat (plays well with templates
/// and auto).
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline BigInt int_pow(const BigInt& base, unsigned long e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// q^e for integer e of either sign; e < 0 requires q != 0.
inline Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (q == 0 && e < 0) throw std::domain_error("rat_pow: 0 to a negative power");
    unsigned long a = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    BigInt n = int_pow(numerator(q), a);
    BigInt d = int_pow(denominator(q), a);
    return e > 0 ? Rat(n, d) : Rat(d, n);
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned long i = 0; i < k; ++i) {
        r *= BigInt(n - i);
        r /= BigInt(i + 1);  // exact at each step
    }
    return r;
}

/// Parses "p/q" or "p" (decimal, optional leading '-'). Rejects zero denominators.
inline Rat rat_from_string(std::string_view s) {
    auto bad = [&] { return std::invalid_argument("rat_from_string: bad rational '" + std::string(s) + "'"); };
    if (s.empty()) throw bad();
    auto is_int = [](std::string_view t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::size_t slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(s)) throw bad();
        return Rat(BigInt(std::string(s)));
    }
    std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw bad();
    BigInt n{std::string(num)};
    BigInt d{std::string(den)};
    if (d == 0) throw std::invalid_argument("rat_from_string: zero denominator");
    return Rat(n, d);
}

/// Always "p/q", including integers ("1" prints as "1/1").
inline std::string rat_to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double rat_to_double(const Rat& r) { return r.template convert_to<double>(); }

/// v_p of a nonzero integer.
inline long int_valuation(BigInt v, const BigInt& p) {
    if (v == 0) throw std::domain_error("int_valuation: zero argument");
    long n = 0;
    while (v % p == 0) {
        v /= p;
        ++n;
    }
    return n;
}

/// v_p of a nonzero rational (negative when p divides the denominator).
inline long rat_valuation(const Rat& r, const BigInt& p) {
    if (r == 0) throw std::domain_error("rat_valuation: zero argument");
    long n = numerator(r) % p == 0 ? int_valuation(numerator(r), p) : 0;
    long d = denominator(r) % p == 0 ? int_valuation(denominator(r), p) : 0;
    return n - d;
}

}  // namespace qeuler
