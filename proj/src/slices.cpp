#include <algorithm>

#include "khmix/common.hpp"
#include "khmix/homology.hpp"
#include "snf_internal.hpp"

namespace khmix {

namespace {

// Incremental Gaussian elimination over the field with expression tracking,
// used for solving d x = b on a slice.
class SolveGauss {
  public:
    explicit SolveGauss(const Field& F) : F_(F) {}

    void add_column(int j, std::map<int, mpq_class> v) {
        std::map<int, mpq_class> expr{{j, mpq_class(1)}};
        reduce(v, expr);
        if (v.empty()) return;
        int lead = v.begin()->first;
        mpq_class inv = F_.inv(v.begin()->second);
        scale(v, inv);
        scale(expr, inv);
        rows_.emplace(lead, std::make_pair(std::move(v), std::move(expr)));
    }

    // Expresses b as a combination of the added columns; empty optional when
    // b is outside their span.
    std::optional<std::map<int, mpq_class>> solve(std::map<int, mpq_class> b) const {
        std::map<int, mpq_class> expr;
        while (!b.empty()) {
            auto it = rows_.find(b.begin()->first);
            if (it == rows_.end()) return std::nullopt;
            mpq_class c = b.begin()->second;
            axpy(b, F_.neg(c), it->second.first);
            axpy(expr, c, it->second.second);
        }
        return expr;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

  private:
    void scale(std::map<int, mpq_class>& v, const mpq_class& s) const {
        for (auto& [i, c] : v) c = F_.mul(c, s);
    }

    void axpy(std::map<int, mpq_class>& dst, const mpq_class& f,
              const std::map<int, mpq_class>& src) const {
        for (const auto& [i, w] : src) {
            auto it = dst.find(i);
            mpq_class nv = F_.add(it == dst.end() ? mpq_class(0) : it->second, F_.mul(f, w));
            if (F_.is_zero(nv)) {
                if (it != dst.end()) dst.erase(it);
            } else if (it == dst.end()) {
                dst.emplace(i, nv);
            } else {
                it->second = nv;
            }
        }
    }

    void reduce(std::map<int, mpq_class>& v, std::map<int, mpq_class>& expr) const {
        while (!v.empty()) {
            auto it = rows_.find(v.begin()->first);
            if (it == rows_.end()) break;
            mpq_class c = v.begin()->second;
            axpy(v, F_.neg(c), it->second.first);
            axpy(expr, F_.neg(c), it->second.second);
        }
        // Entries below the first unmatched pivot may still be reducible; a
        // full sweep keeps residuals canonical.
        if (v.empty()) return;
        auto vi = v.begin();
        ++vi;
        while (vi != v.end()) {
            auto it = rows_.find(vi->first);
            if (it == rows_.end()) {
                ++vi;
                continue;
            }
            int at = vi->first;
            mpq_class c = vi->second;
            axpy(v, F_.neg(c), it->second.first);
            axpy(expr, F_.neg(c), it->second.second);
            vi = v.upper_bound(at);
        }
    }

    const Field& F_;
    std::map<int, std::pair<std::map<int, mpq_class>, std::map<int, mpq_class>>> rows_;
};

int field_rank(const std::vector<std::vector<std::pair<int, mpq_class>>>& cols, const Field& F) {
    SolveGauss g(F);
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
        std::map<int, mpq_class> v(cols[j].begin(), cols[j].end());
        g.add_column(j, std::move(v));
    }
    return g.rank();
}

}  // namespace

bool chain_is_homogeneous(const KhComplex& cx, const Chain& z) {
    if (z.empty()) return true;
    const int uqh = cx.alg().u_qdeg_half();
    bool first = true;
    int h = 0, q = 0;
    for (const auto& [g, poly] : z) {
        if (poly.is_zero()) continue;
        for (const auto& t : poly.terms()) {
            int th = cx.gr_h(g);
            int tq = cx.gr_q(g) + t.e2 * uqh;
            if (first) {
                h = th;
                q = tq;
                first = false;
            } else if (th != h || tq != q) {
                return false;
            }
        }
    }
    return true;
}

std::pair<int, int> chain_bigrading(const KhComplex& cx, const Chain& z) {
    require(!z.empty(), "empty chain has no bigrading");
    require(chain_is_homogeneous(cx, z), "chain is not homogeneous");
    const int uqh = cx.alg().u_qdeg_half();
    for (const auto& [g, poly] : z) {
        if (poly.is_zero()) continue;
        return {cx.gr_h(g), cx.gr_q(g) + poly.min_e2() * uqh};
    }
    fail("empty chain has no bigrading");
}

// ---------------------------------------------------------------------------

SliceSolver::SliceSolver(const KhComplex& cx, Flavor flavor) : cx_(cx), flavor_(flavor) {}

bool SliceSolver::admit(int e2) const {
    if (e2 % 2 != 0) return false;
    switch (flavor_) {
        case Flavor::Minus: return e2 >= 0;
        case Flavor::Hat: return e2 == 0;
        case Flavor::Inf: return true;
        case Flavor::Plus: return e2 <= -2;
    }
    fail("unknown flavor");
}

SliceSolver::Slice SliceSolver::slice(int h, int q) const {
    Slice s;
    s.h = h;
    s.q = q;
    if (h < cx_.min_h() || h > cx_.max_h()) return s;
    const int uqh = cx_.alg().u_qdeg_half();
    for (long g : cx_.gens_at_h(h)) {
        int diff = q - cx_.gr_q(g);
        int e2 = diff / uqh;
        if (e2 * uqh != diff) continue;
        if (admit(e2)) s.basis.emplace_back(g, e2);
    }
    return s;
}

std::vector<std::vector<std::pair<int, mpq_class>>> SliceSolver::slice_matrix(
    const Slice& from, const Slice& to) const {
    std::map<std::pair<long, int>, int> tindex;
    for (int i = 0; i < static_cast<int>(to.basis.size()); ++i) tindex[to.basis[i]] = i;
    std::vector<std::vector<std::pair<int, mpq_class>>> cols(from.basis.size());
    for (int j = 0; j < static_cast<int>(from.basis.size()); ++j) {
        auto [g, e2] = from.basis[j];
        for (const auto& [tg, poly] : cx_.d_gen(g)) {
            require(poly.is_monomial(), "differential entry is not a monomial");
            auto it = tindex.find({tg, e2 + poly.min_e2()});
            if (it != tindex.end()) cols[j].emplace_back(it->second, poly.coeff(poly.min_e2()));
        }
    }
    return cols;
}

int SliceSolver::dim_chain(int h, int q) const {
    return static_cast<int>(slice(h, q).basis.size());
}

int SliceSolver::dim_homology(int h, int q) const {
    const Field& F = cx_.field();
    Slice here = slice(h, q);
    if (here.basis.empty()) return 0;
    Slice up = slice(h + 1, q);
    Slice dn = slice(h - 1, q);
    int rk_out = field_rank(slice_matrix(here, up), F);
    int rk_in = field_rank(slice_matrix(dn, here), F);
    return static_cast<int>(here.basis.size()) - rk_out - rk_in;
}

Chain SliceSolver::project(const Chain& z) const {
    const Field& F = cx_.field();
    Chain out;
    for (const auto& [g, poly] : z) {
        UPoly kept = UPoly::zero();
        for (const auto& t : poly.terms()) {
            switch (flavor_) {
                case Flavor::Minus:
                    require(t.e2 >= 0, "chain leaves the minus complex");
                    kept = kept.add(UPoly::monomial(t.c, t.e2, F), F);
                    break;
                case Flavor::Hat:
                    require(t.e2 >= 0, "chain leaves the minus complex");
                    if (t.e2 == 0) kept = kept.add(UPoly::monomial(t.c, t.e2, F), F);
                    break;
                case Flavor::Inf:
                    kept = kept.add(UPoly::monomial(t.c, t.e2, F), F);
                    break;
                case Flavor::Plus:
                    if (t.e2 < 0) kept = kept.add(UPoly::monomial(t.c, t.e2, F), F);
                    break;
            }
        }
        if (!kept.is_zero()) out[g] = kept;
    }
    return out;
}

namespace {

std::map<int, mpq_class> slice_coords(const SliceSolver::Slice& s, const Chain& z) {
    std::map<std::pair<long, int>, int> index;
    for (int i = 0; i < static_cast<int>(s.basis.size()); ++i) index[s.basis[i]] = i;
    std::map<int, mpq_class> v;
    for (const auto& [g, poly] : z) {
        for (const auto& t : poly.terms()) {
            auto it = index.find({g, t.e2});
            require(it != index.end(), "chain does not lie in the slice");
            v[it->second] = t.c;
        }
    }
    return v;
}

Chain slice_chain(const SliceSolver::Slice& s, const std::map<int, mpq_class>& v,
                  const Field& F) {
    Chain z;
    for (const auto& [i, c] : v) {
        auto [g, e2] = s.basis[i];
        auto it = z.find(g);
        if (it == z.end())
            z[g] = UPoly::monomial(c, e2, F);
        else
            it->second = it->second.add(UPoly::monomial(c, e2, F), F);
    }
    return z;
}

}  // namespace

std::optional<Chain> SliceSolver::solve_d(const Chain& target, int h, int q) const {
    const Field& F = cx_.field();
    Slice src = slice(h - 1, q);
    Slice dst = slice(h, q);
    std::map<int, mpq_class> b = slice_coords(dst, target);
    SolveGauss g(F);
    auto cols = slice_matrix(src, dst);
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        g.add_column(j, std::map<int, mpq_class>(cols[j].begin(), cols[j].end()));
    auto x = g.solve(std::move(b));
    if (!x) return std::nullopt;
    return slice_chain(src, *x, F);
}

bool SliceSolver::class_is_zero(const Chain& cycle, int h, int q) const {
    Chain z = project(cycle);
    if (chain_is_zero(z)) return true;
    return solve_d(z, h, q).has_value();
}

SliceSolver::SliceHomology SliceSolver::homology_basis(int h, int q) const {
    const Field& F = cx_.field();
    SliceHomology hb;
    hb.slice = slice(h, q);
    if (hb.slice.basis.empty()) return hb;
    Slice up = slice(h + 1, q);
    Slice dn = slice(h - 1, q);

    // Kernel of the outgoing differential via column transforms.
    auto out_cols = slice_matrix(hb.slice, up);
    std::vector<std::map<int, mpq_class>> cols(out_cols.size());
    for (int j = 0; j < static_cast<int>(out_cols.size()); ++j)
        cols[j] = std::map<int, mpq_class>(out_cols[j].begin(), out_cols[j].end());
    std::vector<int> zeroq_rows(up.basis.size(), 0), zeroq_cols(hb.slice.basis.size(), 0);
    detail::GradedSnf sn = detail::graded_snf(std::move(cols), static_cast<int>(up.basis.size()),
                                              zeroq_rows, zeroq_cols, -2, F, true, false, false);

    // Echelon rows: boundaries first, then surviving kernel vectors.
    auto reduce_against = [&](std::map<int, mpq_class>& v) {
        std::vector<std::pair<int, mpq_class>> coords;
        while (!v.empty()) {
            auto it = hb.rows.find(v.begin()->first);
            if (it == hb.rows.end()) break;
            mpq_class c = v.begin()->second;
            if (it->second.first >= 0) coords.emplace_back(it->second.first, c);
            for (const auto& [i, w] : it->second.second) {
                auto vi = v.find(i);
                mpq_class nv = F.add(vi == v.end() ? mpq_class(0) : vi->second,
                                     F.mul(F.neg(c), w));
                if (F.is_zero(nv)) {
                    if (vi != v.end()) v.erase(vi);
                } else if (vi == v.end()) {
                    v.emplace(i, nv);
                } else {
                    vi->second = nv;
                }
            }
        }
        return coords;
    };
    auto add_row = [&](std::map<int, mpq_class> v, int tag) -> int {
        reduce_against(v);
        if (v.empty()) return -1;
        int lead = v.begin()->first;
        mpq_class inv = F.inv(v.begin()->second);
        for (auto& [i, c] : v) c = F.mul(c, inv);
        hb.rows.emplace(lead, std::make_pair(tag, std::move(v)));
        return lead;
    };

    for (const auto& col : slice_matrix(dn, hb.slice))
        add_row(std::map<int, mpq_class>(col.begin(), col.end()), -1);

    for (int j = 0; j < static_cast<int>(hb.slice.basis.size()); ++j) {
        if (sn.col_pivot[j]) continue;
        int lead = add_row(sn.v[j], static_cast<int>(hb.basis.size()));
        if (lead >= 0) hb.basis.push_back(slice_chain(hb.slice, hb.rows.at(lead).second, F));
    }
    return hb;
}

std::vector<mpq_class> SliceSolver::coords(const SliceHomology& hb, const Chain& cycle) const {
    const Field& F = cx_.field();
    std::vector<mpq_class> out(hb.basis.size(), 0);
    Chain z = project(cycle);
    if (chain_is_zero(z)) return out;
    std::map<int, mpq_class> v = slice_coords(hb.slice, z);
    while (!v.empty()) {
        auto it = hb.rows.find(v.begin()->first);
        require(it != hb.rows.end(), "vector is not a cycle in the slice");
        mpq_class c = v.begin()->second;
        if (it->second.first >= 0) out[it->second.first] = F.add(out[it->second.first], c);
        for (const auto& [i, w] : it->second.second) {
            auto vi = v.find(i);
            mpq_class nv = F.add(vi == v.end() ? mpq_class(0) : vi->second, F.mul(F.neg(c), w));
            if (F.is_zero(nv)) {
                if (vi != v.end()) v.erase(vi);
            } else if (vi == v.end()) {
                v.emplace(i, nv);
            } else {
                vi->second = nv;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

std::optional<TorsionPrimitive> solve_torsion_primitive(const KhComplex& cx, const Chain& z,
                                                        int max_k) {
    require(chain_is_zero(cx.apply_d(z)), "torsion primitive of a non-cycle");
    SliceSolver solver(cx, Flavor::Minus);
    Chain zz = solver.project(z);
    if (chain_is_zero(zz)) return TorsionPrimitive{0, Chain{}};
    auto [h, q] = chain_bigrading(cx, zz);
    if (max_k < 0) {
        // Beyond the q-spread of the complex a power of U cannot land on a
        // boundary it missed before.
        int lo = 0, hi = 0;
        bool first = true;
        for (int hh = cx.min_h(); hh <= cx.max_h(); ++hh)
            for (long g : cx.gens_at_h(hh)) {
                int gq = cx.gr_q(g);
                if (first) {
                    lo = hi = gq;
                    first = false;
                } else {
                    lo = std::min(lo, gq);
                    hi = std::max(hi, gq);
                }
            }
        max_k = (hi - lo) / (-cx.alg().u_qdeg()) + 2;
    }
    const Field& F = cx.field();
    for (int k = 0; k <= max_k; ++k) {
        Chain target = k == 0 ? zz : chain_scale(zz, UPoly::monomial(1, 2 * k, F), F);
        auto w = solver.solve_d(target, h, q + k * cx.alg().u_qdeg());
        if (w) return TorsionPrimitive{k, std::move(*w)};
    }
    return std::nullopt;
}

PlusClass plus_is_zero(const KhComplex& cx, const Chain& zplus) {
    SliceSolver solver(cx, Flavor::Plus);
    Chain z = solver.project(zplus);
    PlusClass out;
    if (chain_is_zero(z)) return out;
    auto [h, q] = chain_bigrading(cx, z);
    out.h = h;
    out.q = q;
    if (solver.class_is_zero(z, h, q)) return out;
    out.zero = false;
    auto hb = solver.homology_basis(h, q);
    out.coords = solver.coords(hb, z);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct LesShape {
    Flavor src, dst;
    int dh, dq;
};

LesShape les_shape(const KhComplex& cx, LesMap kind) {
    const int uq = cx.alg().u_qdeg();
    switch (kind) {
        case LesMap::MultU: return {Flavor::Minus, Flavor::Minus, 0, uq};
        case LesMap::ToHat: return {Flavor::Minus, Flavor::Hat, 0, 0};
        case LesMap::HatDelta: return {Flavor::Hat, Flavor::Minus, 1, -uq};
        case LesMap::IotaInf: return {Flavor::Minus, Flavor::Inf, 0, 0};
        case LesMap::PiPlus: return {Flavor::Inf, Flavor::Plus, 0, 0};
        case LesMap::PlusDelta: return {Flavor::Plus, Flavor::Minus, 1, 0};
        case LesMap::HatToPlus: return {Flavor::Hat, Flavor::Plus, 0, -uq};
        case LesMap::PlusToHat: return {Flavor::Plus, Flavor::Hat, 1, 0};
    }
    fail("unknown les map");
}

Chain drop_negative(const KhComplex& cx, const Chain& z, const char* what) {
    const Field& F = cx.field();
    Chain out;
    for (const auto& [g, poly] : z) {
        UPoly kept = UPoly::zero();
        for (const auto& t : poly.terms()) {
            require(t.e2 >= 0, what);
            kept = kept.add(UPoly::monomial(t.c, t.e2, F), F);
        }
        if (!kept.is_zero()) out[g] = kept;
    }
    return out;
}

}  // namespace

Chain les_apply(const KhComplex& cx, LesMap kind, const Chain& z) {
    const Field& F = cx.field();
    switch (kind) {
        case LesMap::MultU:
            return chain_scale(z, UPoly::monomial(1, 2, F), F);
        case LesMap::ToHat:
            return SliceSolver(cx, Flavor::Hat).project(z);
        case LesMap::HatDelta: {
            Chain w = cx.apply_d(z);
            Chain out;
            for (const auto& [g, poly] : w) {
                require(poly.is_zero() || poly.min_e2() >= 2,
                        "hat connecting map applied to a non-cycle");
                if (!poly.is_zero()) out[g] = poly.shift(-2);
            }
            return out;
        }
        case LesMap::IotaInf:
            return z;
        case LesMap::PiPlus:
            return SliceSolver(cx, Flavor::Plus).project(z);
        case LesMap::PlusDelta: {
            Chain w = cx.apply_d(z);
            for (const auto& [g, poly] : w) {
                (void)g;
                require(poly.is_zero() || poly.min_e2() >= 0,
                        "plus connecting map applied to a non-cycle");
            }
            return drop_negative(cx, w, "plus connecting map applied to a non-cycle");
        }
        case LesMap::HatToPlus:
            return chain_scale(z, UPoly::monomial(1, -2, F), F);
        case LesMap::PlusToHat: {
            Chain w = les_apply(cx, LesMap::PlusDelta, z);
            return SliceSolver(cx, Flavor::Hat).project(w);
        }
    }
    fail("unknown les map");
}

LesMatrix les_map(const KhComplex& cx, LesMap kind, int h, int q) {
    LesShape sh = les_shape(cx, kind);
    SliceSolver src(cx, sh.src), dst(cx, sh.dst);
    LesMatrix out;
    out.from = src.homology_basis(h, q);
    out.to = dst.homology_basis(h + sh.dh, q + sh.dq);
    for (const auto& rep : out.from.basis) {
        Chain img = les_apply(cx, kind, rep);
        out.mat.push_back(dst.coords(out.to, img));
    }
    return out;
}

int hred_dim(const KhComplex& cx, int h, int q) {
    LesMatrix m = les_map(cx, LesMap::HatToPlus, h, q);
    const Field& F = cx.field();
    SolveGauss g(F);
    for (int j = 0; j < static_cast<int>(m.mat.size()); ++j) {
        std::map<int, mpq_class> v;
        for (int i = 0; i < static_cast<int>(m.mat[j].size()); ++i)
            if (!F.is_zero(m.mat[j][i])) v[i] = m.mat[j][i];
        g.add_column(j, std::move(v));
    }
    return static_cast<int>(m.from.basis.size()) - g.rank();
}

}  // namespace khmix
