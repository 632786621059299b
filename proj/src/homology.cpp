#include "khmix/homology.hpp"

#include <algorithm>

#include "khmix/common.hpp"
#include "snf_internal.hpp"

namespace khmix {

std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Minus: return "minus";
        case Flavor::Hat: return "hat";
        case Flavor::Inf: return "inf";
        case Flavor::Plus: return "plus";
    }
    fail("unknown flavor");
}

void GradedModule::sort() {
    std::sort(free_part.begin(), free_part.end());
    std::sort(torsion.begin(), torsion.end());
}

namespace {

// Expands a scalar vector with a homogeneous q-label into a chain; entry
// exponents are forced by the label and the generators' own gradings.
Chain label_chain(const std::map<int, mpq_class>& vec, int vec_q, const std::vector<long>& gens,
                  const KhComplex& cx) {
    const Field& F = cx.field();
    const int uqh = cx.alg().u_qdeg_half();
    Chain z;
    for (const auto& [i, c] : vec) {
        long g = gens[i];
        int diff = vec_q - cx.gr_q(g);
        int e2 = diff / uqh;
        require(e2 * uqh == diff && e2 >= 0, "homology: vector off the exponent lattice");
        z[g] = UPoly::monomial(c, e2, F);
    }
    return z;
}

}  // namespace

HomologyResult homology(const KhComplex& cx, Flavor flavor) {
    require(flavor == Flavor::Minus || flavor == Flavor::Hat,
            "full decomposition is implemented for the minus and hat flavors; use slices for "
            "inf and plus");
    const Field& F = cx.field();
    const int uqh = cx.alg().u_qdeg_half();
    const bool hat = flavor == Flavor::Hat;

    const int hmin = cx.min_h(), hmax = cx.max_h();
    const int nh = hmax - hmin + 1;

    std::vector<std::vector<long>> gens(nh + 1);
    std::vector<std::vector<int>> qs(nh + 1);
    for (int t = 0; t < nh; ++t) {
        gens[t] = cx.gens_at_h(hmin + t);
        qs[t].reserve(gens[t].size());
        for (long g : gens[t]) qs[t].push_back(cx.gr_q(g));
    }

    // Differentials d[t]: degree hmin+t -> hmin+t+1, as scalar columns.
    std::vector<detail::GradedSnf> snf(nh);
    for (int t = 0; t < nh; ++t) {
        std::map<long, int> pos;
        for (int i = 0; i < static_cast<int>(gens[t + 1].size()); ++i) pos[gens[t + 1][i]] = i;
        std::vector<std::map<int, mpq_class>> cols(gens[t].size());
        for (int j = 0; j < static_cast<int>(gens[t].size()); ++j) {
            for (const auto& [tg, poly] : cx.d_gen(gens[t][j])) {
                require(poly.is_monomial(), "differential entry is not a monomial");
                int e2 = poly.min_e2();
                int i = pos.at(tg);
                require(e2 * uqh == qs[t][j] - qs[t + 1][i],
                        "differential entry exponent disagrees with the gradings");
                if (hat && e2 != 0) continue;
                cols[j][i] = poly.coeff(e2);
            }
        }
        snf[t] = detail::graded_snf(std::move(cols), static_cast<int>(gens[t + 1].size()),
                                    qs[t + 1], qs[t], uqh, F, true, true, true);
    }

    std::vector<std::pair<GradedSummand, Chain>> frees, tors;

    for (int t = 0; t < nh; ++t) {
        const int h = hmin + t;
        const int s = static_cast<int>(gens[t].size());
        if (s == 0) continue;
        const detail::GradedSnf& sh = snf[t];

        // Kernel basis: the non-pivot columns of v.
        std::vector<int> kcols;
        for (int j = 0; j < s; ++j)
            if (!sh.col_pivot[j]) kcols.push_back(j);
        const int sk = static_cast<int>(kcols.size());
        if (sk == 0) continue;
        std::vector<int> kq(sk);
        std::vector<int> kpos(s, -1);
        for (int i = 0; i < sk; ++i) {
            kq[i] = qs[t][kcols[i]];
            kpos[kcols[i]] = i;
        }

        // Incoming image, written in kernel coordinates.
        std::vector<std::map<int, mpq_class>> bcols;
        std::vector<int> bq;
        if (t > 0) {
            const detail::GradedSnf& sp = snf[t - 1];
            for (const auto& p : sp.pivots) {
                if (hat && p.e2 != 0) fail("hat pivot with positive exponent");
                // Image generator: p.coef * U^(p.e2/2) * (uinv column p.row).
                std::map<int, mpq_class> w;
                for (const auto& [b, u0] : sp.uinv[p.row]) {
                    mpq_class cv = F.mul(p.coef, u0);
                    if (!F.is_zero(cv)) w[b] = cv;
                }
                int qw = qs[t][p.row] + p.e2 * uqh;
                // Coordinates in sh's column basis are vinv * w.
                std::map<int, mpq_class> xc;
                for (int a = 0; a < s; ++a) {
                    mpq_class acc = 0;
                    for (const auto& [b, wv] : w) {
                        auto it = sh.vinv[a].find(b);
                        if (it != sh.vinv[a].end()) acc = F.add(acc, F.mul(it->second, wv));
                    }
                    if (!F.is_zero(acc)) {
                        require(!sh.col_pivot[a], "incoming image is not a cycle");
                        xc[kpos[a]] = acc;
                    }
                }
                bcols.push_back(std::move(xc));
                bq.push_back(qw);
            }
        }

        detail::GradedSnf sb =
            detail::graded_snf(std::move(bcols), sk, kq, bq, uqh, F, false, false, true);

        std::vector<Chain> kchains(sk);
        for (int i = 0; i < sk; ++i)
            kchains[i] = label_chain(sh.v[kcols[i]], kq[i], gens[t], cx);

        std::vector<int> pivot_of_row(sk, -1);
        for (int pi = 0; pi < static_cast<int>(sb.pivots.size()); ++pi)
            pivot_of_row[sb.pivots[pi].row] = pi;

        for (int i = 0; i < sk; ++i) {
            int k = 0;
            if (pivot_of_row[i] >= 0) {
                int e2 = sb.pivots[pivot_of_row[i]].e2;
                if (e2 == 0) continue;  // unit invariant factor: trivial quotient
                require(!hat, "torsion over a field");
                require(e2 % 2 == 0, "odd torsion exponent");
                k = e2 / 2;
            }
            // Representative: uinv column i combined over the kernel chains.
            Chain rep;
            for (const auto& [a, c] : sb.uinv[i]) {
                int diff = kq[i] - kq[a];
                int e2 = diff / uqh;
                require(e2 * uqh == diff && e2 >= 0, "homology: basis change off the lattice");
                rep = chain_add(rep, chain_scale(kchains[a], UPoly::monomial(c, e2, F), F), F);
            }
            GradedSummand sm{h, kq[i], k};
            if (k > 0)
                tors.emplace_back(sm, std::move(rep));
            else
                frees.emplace_back(sm, std::move(rep));
        }
    }

    auto by_summand = [](const std::pair<GradedSummand, Chain>& a,
                         const std::pair<GradedSummand, Chain>& b) { return a.first < b.first; };
    std::stable_sort(frees.begin(), frees.end(), by_summand);
    std::stable_sort(tors.begin(), tors.end(), by_summand);

    HomologyResult out;
    for (auto& [sm, rep] : frees) {
        out.module.free_part.push_back(sm);
        out.free_reps.push_back(std::move(rep));
    }
    for (auto& [sm, rep] : tors) {
        out.module.torsion.push_back(sm);
        out.torsion_reps.push_back(std::move(rep));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Orientation generators.

namespace {

struct OrPattern {
    std::map<Id, int> obits;
    int vmask{0};
    std::vector<char> is_a;  // per circle of the oriented resolution
};

OrPattern orientation_pattern(const KhComplex& cx, int mask) {
    const PlanarDiagram& d = cx.diagram();
    const Geometry& geo = d.geometry();
    OrPattern out;
    for (int i = 0; i < static_cast<int>(geo.comps.size()); ++i)
        out.obits[geo.comps[i]] = ((mask >> i) & 1) ? -1 : +1;
    std::vector<uint8_t> bits = d.oriented_vertex(out.obits);
    for (int i = 0; i < static_cast<int>(bits.size()); ++i)
        if (bits[i]) out.vmask |= 1 << i;

    const Resolution& r = cx.resolution(out.vmask);
    std::map<Dart, int> left = d.resolved_left_color(r);
    out.is_a.assign(r.n_circles(), 0);
    std::vector<char> seen(r.n_circles(), 0);
    for (const auto& [arc, circ] : r.circle_of_arc) {
        if (seen[circ]) continue;
        seen[circ] = 1;
        Dart od = d.oriented_dart(arc, out.obits);
        out.is_a[circ] = left.at(od) == 1;
    }
    return out;
}

}  // namespace

std::vector<OrientationGenerator> canonical_orientation_generators(const KhComplex& cx) {
    const Geometry& geo = cx.diagram().geometry();
    const int nc = static_cast<int>(geo.comps.size());
    require(nc <= 16, "too many link components for orientation generators");
    const FrobeniusTable& A = cx.alg();
    const Field& F = cx.field();
    DiagonalBasis diag = A.diagonal_basis();

    std::vector<OrientationGenerator> out;
    for (int mask = 0; mask < (1 << nc); ++mask) {
        OrPattern pat = orientation_pattern(cx, mask);
        const int ncirc = static_cast<int>(pat.is_a.size());
        require(ncirc <= 20, "oriented resolution has too many circles");
        Chain chain;
        for (long y = 0; y < (1L << ncirc); ++y) {
            UPoly coef = UPoly::constant(1, F);
            bool dead = false;
            for (int j = 0; j < ncirc && !dead; ++j) {
                const AlgElem& e = pat.is_a[j] ? diag.A : diag.B;
                const UPoly& part = ((y >> j) & 1) ? e.cx : e.c1;
                if (part.is_zero())
                    dead = true;
                else
                    coef = coef.mul(part, F);
            }
            if (!dead) chain[cx.index(GenRef{pat.vmask, static_cast<int>(y)})] = coef;
        }
        OrientationGenerator g;
        g.obits = std::move(pat.obits);
        g.vmask = pat.vmask;
        g.gr_h = cx.gr_h(GenRef{pat.vmask, 0});
        g.chain = std::move(chain);
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<InftyRank> infty_rank(const KhComplex& cx) {
    SliceSolver solver(cx, Flavor::Inf);
    const int M = -cx.alg().u_qdeg();
    std::vector<InftyRank> out;
    for (int h = cx.min_h(); h <= cx.max_h(); ++h) {
        // In the inf flavor the slice depends on q only through q mod |U|, so
        // one representative per residue suffices.
        std::map<int, int> rep_q;  // residue -> concrete q
        for (long g : cx.gens_at_h(h)) {
            int q = cx.gr_q(g);
            int r = ((q % M) + M) % M;
            if (!rep_q.count(r)) rep_q[r] = q;
        }
        for (const auto& [r, q] : rep_q) {
            int rank = solver.dim_homology(h, q);
            if (rank > 0) out.push_back({h, r, rank});
        }
    }
    return out;
}

std::vector<std::pair<std::map<Id, int>, UPoly>> infty_coords(const KhComplex& cx,
                                                              const Chain& z) {
    require(!z.empty(), "cannot project an empty chain");
    const FrobeniusTable& A = cx.alg();
    const Field& F = cx.field();
    const int h = cx.gr_h(z.begin()->first);
    for (const auto& [g, c] : z) {
        (void)c;
        require(cx.gr_h(g) == h, "chain is not homogeneous in the homological grading");
    }

    // Diagonal coordinates of the two labels, per circle color.
    auto lam1 = A.to_diagonal(A.unit());
    auto lamx = A.to_diagonal(A.x());

    const int nc = static_cast<int>(cx.diagram().geometry().comps.size());
    require(nc <= 16, "too many link components for orientation generators");

    std::vector<std::pair<std::map<Id, int>, UPoly>> out;
    for (int mask = 0; mask < (1 << nc); ++mask) {
        OrPattern pat = orientation_pattern(cx, mask);
        UPoly lam = UPoly::zero();
        if (cx.gr_h(GenRef{pat.vmask, 0}) == h) {
            const int ncirc = static_cast<int>(pat.is_a.size());
            for (const auto& [gidx, coef] : z) {
                GenRef g = cx.gen(gidx);
                if (g.vmask != pat.vmask) continue;
                UPoly term = coef;
                for (int j = 0; j < ncirc && !term.is_zero(); ++j) {
                    bool isx = (g.ymask >> j) & 1;
                    const auto& pair = isx ? lamx : lam1;
                    term = term.mul(pat.is_a[j] ? pair.first : pair.second, F);
                }
                lam = lam.add(term, F);
            }
        }
        out.emplace_back(std::move(pat.obits), std::move(lam));
    }
    return out;
}

}  // namespace khmix
