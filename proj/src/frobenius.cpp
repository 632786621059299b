#include "khmix/frobenius.hpp"

namespace khmix {

std::string theory_name(Theory t) { return t == Theory::Lee ? "lee" : "bn"; }

FrobeniusTable::FrobeniusTable(Theory theory, Field field) : theory_(theory), field_(field) {
    if (theory == Theory::Lee)
        require(field.characteristic() != 2, "lee theory needs 2 invertible; characteristic 2 not supported");
}

AlgElem FrobeniusTable::unit() const { return {UPoly::constant(1, field_), UPoly::zero()}; }

AlgElem FrobeniusTable::x() const { return {UPoly::zero(), UPoly::constant(1, field_)}; }

AlgElem FrobeniusTable::multiply(const AlgElem& a, const AlgElem& b) const {
    const Field& F = field_;
    UPoly xx = a.cx.mul(b.cx, F);  // coefficient of X*X
    UPoly c1 = a.c1.mul(b.c1, F);
    UPoly cx = a.c1.mul(b.cx, F).add(a.cx.mul(b.c1, F), F);
    if (theory_ == Theory::Lee) {
        c1 = c1.add(xx.shift(2), F);  // X*X = U
    } else {
        cx = cx.add(xx.shift(2), F);  // X*X = U*X
    }
    return {c1, cx};
}

TensorElem FrobeniusTable::comultiply(const AlgElem& a) const {
    const Field& F = field_;
    TensorElem r;
    r.c1x = a.c1;
    r.cx1 = a.c1;
    r.cxx = a.cx;
    if (theory_ == Theory::Lee) {
        r.c11 = a.cx.shift(2);  // coproduct(X) = XxX + U*1x1
    } else {
        r.c11 = a.c1.shift(2).neg(F);  // coproduct(1) = 1xX + Xx1 - U*1x1
    }
    return r;
}

UPoly FrobeniusTable::counit(const AlgElem& a) const { return a.cx; }

AlgElem FrobeniusTable::star_elem() const {
    const Field& F = field_;
    AlgElem e{UPoly::zero(), UPoly::constant(2, F)};
    if (theory_ == Theory::BarNatan) e.c1 = UPoly::monomial(-1, 2, F);
    return e;
}

DiagonalBasis FrobeniusTable::diagonal_basis() const {
    const Field& F = field_;
    DiagonalBasis d;
    if (theory_ == Theory::Lee) {
        // A = sqrtU + X, B = sqrtU - X, c = 2*sqrtU.
        UPoly root = UPoly::monomial(1, 1, F);
        d.A = {root, UPoly::constant(1, F)};
        d.B = {root, UPoly::constant(-1, F)};
        d.c = UPoly::monomial(2, 1, F);
    } else {
        // A = X, B = U - X, c = U.
        d.A = {UPoly::zero(), UPoly::constant(1, F)};
        d.B = {UPoly::monomial(1, 2, F), UPoly::constant(-1, F)};
        d.c = UPoly::monomial(1, 2, F);
    }
    return d;
}

std::pair<UPoly, UPoly> FrobeniusTable::to_diagonal(const AlgElem& a) const {
    const Field& F = field_;
    if (theory_ == Theory::Lee) {
        // a1 + a2 X = lA (rt + X) + lB (rt - X):
        //   lA = (a1/rt + a2)/2, lB = (a1/rt - a2)/2.
        UPoly a1r = a.c1.shift(-1);
        mpq_class half = F.inv(F.from_int(2));
        UPoly lA = a1r.add(a.cx, F).scale(half, F);
        UPoly lB = a1r.sub(a.cx, F).scale(half, F);
        return {lA, lB};
    }
    // a1 + a2 X = lA X + lB (U - X):  lB = a1/U, lA = a2 + a1/U.
    UPoly lB = a.c1.shift(-2);
    UPoly lA = a.cx.add(lB, F);
    return {lA, lB};
}

AlgElem FrobeniusTable::add(const AlgElem& a, const AlgElem& b) const {
    return {a.c1.add(b.c1, field_), a.cx.add(b.cx, field_)};
}

AlgElem FrobeniusTable::scale(const UPoly& s, const AlgElem& a) const {
    return {s.mul(a.c1, field_), s.mul(a.cx, field_)};
}

}  // namespace khmix
