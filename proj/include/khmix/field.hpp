#pragma once

#include <gmpxx.h>

#include <string>

#include "khmix/common.hpp"

namespace khmix {

// Coefficient field for all chain-level computations: the rationals when
// characteristic() == 0, otherwise the prime field F_p.  Elements are stored
// as mpq_class in both cases; finite-field elements are kept reduced to the
// canonical residue 0 <= n < p with denominator 1.
class Field {
  public:
    Field() : p_(0) {}
    explicit Field(unsigned p);

    unsigned characteristic() const { return p_; }
    bool is_rational() const { return p_ == 0; }

    mpq_class reduce(const mpq_class& a) const;
    mpq_class add(const mpq_class& a, const mpq_class& b) const { return reduce(a + b); }
    mpq_class sub(const mpq_class& a, const mpq_class& b) const { return reduce(a - b); }
    mpq_class neg(const mpq_class& a) const { return reduce(-a); }
    mpq_class mul(const mpq_class& a, const mpq_class& b) const { return reduce(a * b); }
    mpq_class inv(const mpq_class& a) const;
    mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

    mpq_class from_int(long n) const { return reduce(mpq_class(n)); }
    bool is_zero(const mpq_class& a) const { return reduce(a) == 0; }

    // Parses either an integer or "n/d".
    mpq_class parse(const std::string& text) const;
    std::string to_string(const mpq_class& a) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }

  private:
    unsigned p_;
};

}  // namespace khmix
