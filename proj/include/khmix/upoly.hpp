#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "khmix/field.hpp"

namespace khmix {

// Sparse Laurent polynomial in the deformation variable U over a Field.
//
// Exponents are stored doubled: a term with exponent e2 stands for U^(e2/2).
// Ordinary arithmetic only ever produces even e2; odd values appear once a
// formal square root of U has been adjoined (the diagonal basis of the Lee
// algebra needs it).  Terms are kept sorted by ascending e2 with nonzero
// coefficients; the zero polynomial has no terms.
class UPoly {
  public:
    struct Term {
        int e2;
        mpq_class c;
    };

    UPoly() = default;

    static UPoly zero() { return UPoly(); }
    static UPoly constant(const mpq_class& c, const Field& F);
    // c * U^(e2/2)
    static UPoly monomial(const mpq_class& c, int e2, const Field& F);

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    // True when every exponent is even (no square-root contribution).
    bool is_integral() const;
    const std::vector<Term>& terms() const { return terms_; }
    int min_e2() const;  // requires nonzero
    int max_e2() const;  // requires nonzero

    mpq_class coeff(int e2) const;

    UPoly add(const UPoly& o, const Field& F) const;
    UPoly sub(const UPoly& o, const Field& F) const;
    UPoly neg(const Field& F) const;
    UPoly scale(const mpq_class& s, const Field& F) const;
    UPoly mul(const UPoly& o, const Field& F) const;
    // Multiplies by U^(e2/2).
    UPoly shift(int e2) const;
    // Exact division by a monomial s * U^(e2/2); s must be invertible.
    UPoly div_monomial(const mpq_class& s, int e2, const Field& F) const;

    bool equals(const UPoly& o) const;

    // Substitutes U := 0, i.e. keeps the e2 == 0 term; requires no negative
    // exponents.
    mpq_class at_zero() const;
    // Drops all terms with e2 < cutoff.
    UPoly truncate_below(int cutoff) const;

    // Renders with the given variable name, e.g. "3*T^2 - 1/2" or "H^-1".
    // Half-integer exponents render as "^(k/2)".
    std::string to_string(const std::string& var, const Field& F) const;

  private:
    std::vector<Term> terms_;
};

}  // namespace khmix
