#include "khmix/khcomplex.hpp"

#include <algorithm>
#include <cassert>

namespace khmix {

Chain chain_add(const Chain& a, const Chain& b, const Field& F) {
    Chain out = a;
    for (const auto& [idx, c] : b) {
        auto it = out.find(idx);
        if (it == out.end()) {
            out[idx] = c;
        } else {
            it->second = it->second.add(c, F);
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

Chain chain_scale(const Chain& a, const UPoly& s, const Field& F) {
    Chain out;
    if (s.is_zero()) return out;
    for (const auto& [idx, c] : a) {
        UPoly p = c.mul(s, F);
        if (!p.is_zero()) out[idx] = p;
    }
    return out;
}

bool chain_is_zero(const Chain& a) { return a.empty(); }

KhComplex::KhComplex(PlanarDiagram diagram, FrobeniusTable alg)
    : diagram_(std::move(diagram)), alg_(std::move(alg)) {
    diagram_.validate();
    axes_ = diagram_.crossing_order();
    require(axes_.size() <= 20, "diagram too large for cube enumeration");
    for (const auto& [cid, s] : diagram_.geometry().sign) (s > 0 ? n_pos_ : n_neg_)++;

    int n = static_cast<int>(axes_.size());
    res_.reserve(1u << n);
    offset_.reserve(1u << n);
    for (int v = 0; v < (1 << n); ++v) {
        std::vector<uint8_t> bits(n);
        for (int i = 0; i < n; ++i) bits[i] = (v >> i) & 1;
        res_.push_back(diagram_.resolve(bits));
        offset_.push_back(total_);
        total_ += 1L << res_.back().n_circles();
    }
}

int KhComplex::axis_of(Id crossing) const {
    auto it = std::lower_bound(axes_.begin(), axes_.end(), crossing);
    require(it != axes_.end() && *it == crossing, "unknown crossing id");
    return static_cast<int>(it - axes_.begin());
}

GenRef KhComplex::gen(long idx) const {
    require(idx >= 0 && idx < total_, "generator index out of range");
    auto it = std::upper_bound(offset_.begin(), offset_.end(), idx);
    int vmask = static_cast<int>(it - offset_.begin()) - 1;
    return {vmask, static_cast<int>(idx - offset_[vmask])};
}

int KhComplex::weight(int vmask) { return __builtin_popcount(static_cast<unsigned>(vmask)); }

int KhComplex::gr_h(const GenRef& g) const { return weight(g.vmask) - n_neg_; }

int KhComplex::gr_q(const GenRef& g) const {
    int c = circles(g.vmask);
    int xs = __builtin_popcount(static_cast<unsigned>(g.ymask));
    return n_pos_ - 2 * n_neg_ + weight(g.vmask) + (c - xs) - xs;
}

int KhComplex::edge_sign(int vmask, int axis) {
    int below = vmask & ((1 << axis) - 1);
    return weight(below) % 2 == 0 ? +1 : -1;
}

std::vector<std::pair<long, UPoly>> KhComplex::d_gen(long idx) const {
    const Field& F = field();
    GenRef g = gen(idx);
    const Resolution& r = res_[g.vmask];
    std::vector<std::pair<long, UPoly>> out;

    for (int i = 0; i < n(); ++i) {
        if ((g.vmask >> i) & 1) continue;
        int tmask = g.vmask | (1 << i);
        const Resolution& rt = res_[tmask];
        const CrossingRec& c = diagram_.crossings().at(axes_[i]);
        int sgn = edge_sign(g.vmask, i);

        int cA = r.circle_of_arc.at(c.slot[0]);
        int cB = r.circle_of_arc.at(c.slot[2]);

        // Transport labels of circles untouched by this edge.
        auto transported = [&](int skip1, int skip2) {
            int base = 0;
            for (int j = 0; j < r.n_circles(); ++j) {
                if (j == skip1 || j == skip2) continue;
                if ((g.ymask >> j) & 1) {
                    int jt = rt.circle_of_arc.at(r.circle_rep[j]);
                    base |= 1 << jt;
                }
            }
            return base;
        };
        auto emit = [&](int ymask, const UPoly& coef) {
            if (coef.is_zero()) return;
            UPoly signed_coef = sgn > 0 ? coef : coef.neg(F);
            out.push_back({offset_[tmask] + ymask, signed_coef});
        };
        auto label = [&](int circle) {
            return ((g.ymask >> circle) & 1) ? alg_.x() : alg_.unit();
        };

        if (cA != cB) {
            // Merge.
            int ct = rt.circle_of_arc.at(c.slot[0]);
            int base = transported(cA, cB);
            AlgElem prod = alg_.multiply(label(cA), label(cB));
            emit(base, prod.c1);
            emit(base | (1 << ct), prod.cx);
        } else {
            // Split.
            int ct1 = rt.circle_of_arc.at(c.slot[0]);
            int ct2 = rt.circle_of_arc.at(c.slot[1]);
            assert(ct1 != ct2);
            int base = transported(cA, -1);
            TensorElem co = alg_.comultiply(label(cA));
            emit(base, co.c11);
            emit(base | (1 << ct2), co.c1x);
            emit(base | (1 << ct1), co.cx1);
            emit(base | (1 << ct1) | (1 << ct2), co.cxx);
        }
    }
    return out;
}

Chain KhComplex::apply_d(const Chain& z) const {
    const Field& F = field();
    Chain out;
    for (const auto& [idx, coef] : z) {
        for (const auto& [tidx, m] : d_gen(idx)) {
            UPoly add = m.mul(coef, F);
            auto it = out.find(tidx);
            if (it == out.end()) {
                if (!add.is_zero()) out[tidx] = add;
            } else {
                it->second = it->second.add(add, F);
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

bool KhComplex::verify_d_squared() const {
    for (long idx = 0; idx < total_; ++idx) {
        Chain z;
        z[idx] = UPoly::constant(1, field());
        if (!chain_is_zero(apply_d(apply_d(z)))) return false;
    }
    return true;
}

std::vector<long> KhComplex::gens_at_h(int h) const {
    std::vector<long> out;
    int w = h + n_neg_;
    if (w < 0 || w > n()) return out;
    for (int v = 0; v < (1 << n()); ++v) {
        if (weight(v) != w) continue;
        for (int y = 0; y < (1 << circles(v)); ++y) out.push_back(offset_[v] + y);
    }
    return out;
}

UPoly mirror_pairing(const KhComplex& mirror_cx, long mirror_gen, const KhComplex& cx, long gen) {
    const FrobeniusTable& A = cx.alg();
    const Field& F = A.field();
    require(mirror_cx.n() == cx.n(), "mirror pairing needs matching crossing sets");
    GenRef gm = mirror_cx.gen(mirror_gen);
    GenRef g = cx.gen(gen);
    int full = (1 << cx.n()) - 1;
    if (gm.vmask != (full & ~g.vmask)) return UPoly::zero();

    const Resolution& rm = mirror_cx.resolution(gm.vmask);
    const Resolution& r = cx.resolution(g.vmask);
    require(rm.circle_rep == r.circle_rep, "mirror resolution does not match");

    UPoly prod = UPoly::constant(1, F);
    for (int j = 0; j < r.n_circles(); ++j) {
        AlgElem a = ((gm.ymask >> j) & 1) ? A.x() : A.unit();
        AlgElem b = ((g.ymask >> j) & 1) ? A.x() : A.unit();
        prod = prod.mul(A.counit(A.multiply(a, b)), F);
        if (prod.is_zero()) break;
    }
    return prod;
}

}  // namespace khmix
