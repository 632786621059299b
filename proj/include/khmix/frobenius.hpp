#pragma once

#include <string>
#include <utility>

#include "khmix/upoly.hpp"

namespace khmix {

enum class Theory { Lee, BarNatan };

std::string theory_name(Theory t);

// Element a*1 + b*X of the rank-2 circle algebra, with UPoly coefficients.
struct AlgElem {
    UPoly c1;  // coefficient of 1
    UPoly cx;  // coefficient of X

    bool is_zero() const { return c1.is_zero() && cx.is_zero(); }
};

// Element of the two-circle tensor square, coefficients on 1x1, 1xX, Xx1, XxX.
struct TensorElem {
    UPoly c11, c1x, cx1, cxx;
};

// The diagonal (idempotent-like) basis A, B: AA = c*A, BB = c*B, AB = 0,
// coproduct diagonal on A and anti-diagonal on B.  For the Lee theory the
// entries involve the adjoined square root of U.
struct DiagonalBasis {
    AlgElem A;
    AlgElem B;
    UPoly c;  // A*A = c*A and B*B = c*B
};

// Structure constants of the deformed circle algebra for one theory over one
// field, together with the derived operations every higher layer uses.
//
// Lee:        X*X = U,   coproduct(1) = 1xX + Xx1,          counit(X) = 1
// Bar-Natan:  X*X = U*X, coproduct(1) = 1xX + Xx1 - U*1x1,  counit(X) = 1
// In both, coproduct(X) has the matching deformation term and counit(1) = 0.
class FrobeniusTable {
  public:
    FrobeniusTable(Theory theory, Field field);

    Theory theory() const { return theory_; }
    const Field& field() const { return field_; }

    // q-degree of U: -4 for Lee, -2 for Bar-Natan.  Doubled exponents carry
    // half of this per unit.
    int u_qdeg() const { return theory_ == Theory::Lee ? -4 : -2; }
    int u_qdeg_half() const { return u_qdeg() / 2; }

    AlgElem unit() const;
    AlgElem x() const;
    AlgElem multiply(const AlgElem& a, const AlgElem& b) const;
    TensorElem comultiply(const AlgElem& a) const;
    UPoly counit(const AlgElem& a) const;

    // The framing-change element: 2X for Lee, 2X - U for Bar-Natan.
    AlgElem star_elem() const;
    AlgElem star_op(const AlgElem& a) const { return multiply(star_elem(), a); }
    AlgElem dot_op(const AlgElem& a) const { return multiply(x(), a); }

    DiagonalBasis diagonal_basis() const;
    // Coordinates (lambda_A, lambda_B) with a = lambda_A*A + lambda_B*B.
    // Laurent in U; for Lee also half powers.  Requires invertible 2 (Lee).
    std::pair<UPoly, UPoly> to_diagonal(const AlgElem& a) const;

    AlgElem add(const AlgElem& a, const AlgElem& b) const;
    AlgElem scale(const UPoly& s, const AlgElem& a) const;

  private:
    Theory theory_;
    Field field_;
};

}  // namespace khmix
