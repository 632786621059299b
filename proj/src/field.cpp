#include "khmix/field.hpp"

namespace khmix {

namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

Field::Field(unsigned p) : p_(p) {
    if (p != 0 && !is_prime(p)) fail("field characteristic must be 0 or a prime, got " + std::to_string(p));
}

mpq_class Field::reduce(const mpq_class& a) const {
    if (p_ == 0) return a;
    // a = num/den with gcd(den, p) required to be 1.
    mpz_class p(p_);
    mpz_class den = a.get_den() % p;
    if (den < 0) den += p;
    require(den != 0, "denominator not invertible mod " + std::to_string(p_));
    mpz_class den_inv;
    require(mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) != 0,
            "denominator not invertible mod " + std::to_string(p_));
    mpz_class n = (a.get_num() % p) * den_inv % p;
    if (n < 0) n += p;
    return mpq_class(n);
}

mpq_class Field::inv(const mpq_class& a) const {
    mpq_class r = reduce(a);
    require(r != 0, "division by zero");
    if (p_ == 0) return 1 / r;
    mpz_class p(p_), n = r.get_num(), n_inv;
    require(mpz_invert(n_inv.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()) != 0, "division by zero residue");
    return mpq_class(n_inv);
}

mpq_class Field::parse(const std::string& text) const {
    try {
        mpq_class q(text);
        q.canonicalize();
        return reduce(q);
    } catch (const std::invalid_argument&) {
        fail("bad scalar literal '" + text + "'");
    }
}

std::string Field::to_string(const mpq_class& a) const { return reduce(a).get_str(); }

}  // namespace khmix
