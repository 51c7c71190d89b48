#include "cubiclin/rational.hpp"

#include <cctype>

namespace cubiclin {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    for (char ch : s) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' ||
              ch == '+' || ch == '/'))
            throw ParseError("bad character in rational literal '" + s + "'");
    }
    Rat q;
    try {
        q = Rat(s, 10);
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational literal '" + s + "'");
    }
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

Rat make_rat(long num, long den) {
    if (den == 0) throw ParseError("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

double to_double(const Rat& q) { return q.get_d(); }

Rat pow_int(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (e < 0 && sgn(q) == 0) throw ZeroToNegativePower();
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), n);
    Rat r;
    if (e > 0) {
        r = Rat(num, den);
    } else {
        r = Rat(den, num);
    }
    r.canonicalize();
    return r;
}

std::optional<Rat> exact_root(const Rat& q, unsigned long n) {
    if (n == 0 || n % 2 == 0) throw EvenRootRequested();
    mpz_class rn, rd;
    // mpz_root returns nonzero iff the root is exact; odd n handles negatives.
    int num_exact = mpz_root(rn.get_mpz_t(), q.get_num().get_mpz_t(), n);
    if (!num_exact) return std::nullopt;
    int den_exact = mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), n);
    if (!den_exact) return std::nullopt;
    Rat r(rn, rd);
    r.canonicalize();
    return r;
}

}  // namespace cubiclin
