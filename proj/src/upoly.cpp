#include "khmix/upoly.hpp"

#include <algorithm>
#include <cassert>

namespace khmix {

UPoly UPoly::constant(const mpq_class& c, const Field& F) { return monomial(c, 0, F); }

UPoly UPoly::monomial(const mpq_class& c, int e2, const Field& F) {
    UPoly r;
    mpq_class rc = F.reduce(c);
    if (rc != 0) r.terms_.push_back({e2, rc});
    return r;
}

bool UPoly::is_integral() const {
    for (const Term& t : terms_)
        if (t.e2 % 2 != 0) return false;
    return true;
}

int UPoly::min_e2() const {
    require(!terms_.empty(), "min_e2 of zero polynomial");
    return terms_.front().e2;
}

int UPoly::max_e2() const {
    require(!terms_.empty(), "max_e2 of zero polynomial");
    return terms_.back().e2;
}

mpq_class UPoly::coeff(int e2) const {
    for (const Term& t : terms_) {
        if (t.e2 == e2) return t.c;
        if (t.e2 > e2) break;
    }
    return mpq_class(0);
}

UPoly UPoly::add(const UPoly& o, const Field& F) const {
    UPoly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].e2 < o.terms_[j].e2)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].e2 < terms_[i].e2) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            mpq_class c = F.add(terms_[i].c, o.terms_[j].c);
            if (c != 0) r.terms_.push_back({terms_[i].e2, c});
            ++i, ++j;
        }
    }
    return r;
}

UPoly UPoly::sub(const UPoly& o, const Field& F) const { return add(o.neg(F), F); }

UPoly UPoly::neg(const Field& F) const {
    UPoly r = *this;
    for (Term& t : r.terms_) t.c = F.neg(t.c);
    return r;
}

UPoly UPoly::scale(const mpq_class& s, const Field& F) const {
    mpq_class rs = F.reduce(s);
    if (rs == 0) return UPoly();
    UPoly r = *this;
    for (Term& t : r.terms_) t.c = F.mul(t.c, rs);
    return r;
}

UPoly UPoly::mul(const UPoly& o, const Field& F) const {
    UPoly r;
    for (const Term& a : terms_) {
        UPoly row;
        row.terms_.reserve(o.terms_.size());
        for (const Term& b : o.terms_) row.terms_.push_back({a.e2 + b.e2, F.mul(a.c, b.c)});
        r = r.add(row, F);
    }
    return r;
}

UPoly UPoly::shift(int e2) const {
    UPoly r = *this;
    for (Term& t : r.terms_) t.e2 += e2;
    return r;
}

UPoly UPoly::div_monomial(const mpq_class& s, int e2, const Field& F) const {
    mpq_class inv = F.inv(s);
    UPoly r = *this;
    for (Term& t : r.terms_) {
        t.e2 -= e2;
        t.c = F.mul(t.c, inv);
    }
    return r;
}

bool UPoly::equals(const UPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].e2 != o.terms_[i].e2 || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

mpq_class UPoly::at_zero() const {
    if (!terms_.empty()) require(terms_.front().e2 >= 0, "substituting U=0 into a pole");
    return coeff(0);
}

UPoly UPoly::truncate_below(int cutoff) const {
    UPoly r;
    for (const Term& t : terms_)
        if (t.e2 >= cutoff) r.terms_.push_back(t);
    return r;
}

std::string UPoly::to_string(const std::string& var, const Field& F) const {
    if (terms_.empty()) return "0";
    std::string out;
    // Render highest exponent first, the usual reading order.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        mpq_class c = it->c;
        bool neg = c < 0 && F.is_rational();
        std::string cs = F.to_string(neg ? mpq_class(-c) : c);
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string pow;
        if (it->e2 != 0) {
            pow = var;
            if (it->e2 != 2) {
                if (it->e2 % 2 == 0)
                    pow += "^" + std::to_string(it->e2 / 2);
                else
                    pow += "^(" + std::to_string(it->e2) + "/2)";
            }
        }
        if (pow.empty()) {
            out += cs;
        } else if (cs == "1") {
            out += pow;
        } else {
            out += cs + "*" + pow;
        }
    }
    return out;
}

}  // namespace khmix
