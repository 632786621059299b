#include <doctest.h>

#include <set>
#include <sstream>

#include "khmix/homology.hpp"

using namespace khmix;

namespace {

const char* kTrefoil = "diagram PD[X(5,3,0,2;+),X(3,1,4,0;+),X(1,5,2,4;+)]";
const char* kHopf = "diagram PD[X(0,3,1,2;+),X(3,0,2,1;+)]";
const char* kR2Unlink = "diagram PD[X(2,1,3,0;+),X(3,1,2,0;-)]";
const char* kPosKink = "diagram PD[X(0,0,1,1;+)]";
const char* kNegKink = "diagram PD[X(0,1,1,0;-)]";

KhComplex make(const char* pd, Theory th, unsigned p = 0) {
    return KhComplex(parse_pd(pd), FrobeniusTable(th, Field(p)));
}

std::string dump(const GradedModule& m) {
    std::ostringstream os;
    os << "free:";
    for (const auto& s : m.free_part) os << " (" << s.h << "," << s.q << ")";
    os << " tors:";
    for (const auto& s : m.torsion) os << " (" << s.h << "," << s.q << "," << s.k << ")";
    return os.str();
}

// Plain dense Gaussian elimination, written independently of the library's
// solvers, as the second opinion for every rank below.
int dense_rank(std::vector<std::vector<mpq_class>> rows, const Field& F) {
    int rank = 0;
    size_t ncols = rows.empty() ? 0 : rows[0].size();
    size_t lead = 0;
    for (size_t r = 0; r < rows.size() && lead < ncols; ++lead) {
        size_t piv = r;
        while (piv < rows.size() && F.is_zero(rows[piv][lead])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        mpq_class inv = F.inv(rows[r][lead]);
        for (size_t c = lead; c < ncols; ++c) rows[r][c] = F.mul(rows[r][c], inv);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || F.is_zero(rows[i][lead])) continue;
            mpq_class f = rows[i][lead];
            for (size_t c = lead; c < ncols; ++c)
                rows[i][c] = F.sub(rows[i][c], F.mul(f, rows[r][c]));
        }
        ++r;
        ++rank;
    }
    return rank;
}

// Hat-flavor homology dimension at one bigrading, computed from scratch: the
// generators at fixed q form the chain groups and only exponent-zero entries
// of the differential survive.
int naive_hat_dim(const KhComplex& cx, int h, int q) {
    auto gens_at = [&](int hh) {
        std::vector<long> out;
        for (long g : cx.gens_at_h(hh))
            if (cx.gr_q(g) == q) out.push_back(g);
        return out;
    };
    auto matrix = [&](const std::vector<long>& from, const std::vector<long>& to) {
        std::map<long, int> pos;
        for (int i = 0; i < static_cast<int>(to.size()); ++i) pos[to[i]] = i;
        std::vector<std::vector<mpq_class>> rows(to.size(),
                                                 std::vector<mpq_class>(from.size(), 0));
        for (int j = 0; j < static_cast<int>(from.size()); ++j)
            for (const auto& [tg, poly] : cx.d_gen(from[j])) {
                if (poly.min_e2() != 0) continue;
                auto it = pos.find(tg);
                if (it != pos.end()) rows[it->second][j] = poly.coeff(0);
            }
        return rows;
    };
    auto here = gens_at(h);
    if (here.empty()) return 0;
    const Field& F = cx.field();
    int rk_out = dense_rank(matrix(here, gens_at(h + 1)), F);
    int rk_in = dense_rank(matrix(gens_at(h - 1), here), F);
    return static_cast<int>(here.size()) - rk_out - rk_in;
}

std::pair<int, int> q_bounds(const KhComplex& cx) {
    int lo = 0, hi = 0;
    bool first = true;
    for (int h = cx.min_h(); h <= cx.max_h(); ++h)
        for (long g : cx.gens_at_h(h)) {
            int q = cx.gr_q(g);
            if (first) {
                lo = hi = q;
                first = false;
            } else {
                lo = std::min(lo, q);
                hi = std::max(hi, q);
            }
        }
    return {lo, hi};
}

// Slice dimension of the minus homology predicted by a graded module
// decomposition.
int predicted_minus_dim(const GradedModule& m, int h, int q, int period) {
    int dim = 0;
    for (const auto& s : m.free_part) {
        if (s.h != h) continue;
        int d = s.q - q;
        if (d >= 0 && d % period == 0) ++dim;
    }
    for (const auto& s : m.torsion) {
        if (s.h != h) continue;
        int d = s.q - q;
        if (d >= 0 && d % period == 0 && d / period < s.k) ++dim;
    }
    return dim;
}

int matrix_rank(const LesMatrix& m, const Field& F) {
    std::vector<std::vector<mpq_class>> rows(m.to.basis.size(),
                                             std::vector<mpq_class>(m.from.basis.size(), 0));
    for (size_t j = 0; j < m.mat.size(); ++j)
        for (size_t i = 0; i < m.mat[j].size(); ++i) rows[i][j] = m.mat[j][i];
    return dense_rank(std::move(rows), F);
}

// Coordinates of (second o first): both endpoints must be the same slice
// bases, which holds because homology_basis is deterministic.
std::vector<std::vector<mpq_class>> compose(const LesMatrix& first, const LesMatrix& second,
                                            const Field& F) {
    REQUIRE(first.to.basis.size() == second.from.basis.size());
    std::vector<std::vector<mpq_class>> out;
    for (const auto& ycol : first.mat) {
        std::vector<mpq_class> z(second.to.basis.size(), 0);
        for (size_t i = 0; i < ycol.size(); ++i) {
            if (F.is_zero(ycol[i])) continue;
            for (size_t t = 0; t < z.size(); ++t)
                z[t] = F.add(z[t], F.mul(ycol[i], second.mat[i][t]));
        }
        out.push_back(std::move(z));
    }
    return out;
}

bool all_zero(const std::vector<std::vector<mpq_class>>& cols, const Field& F) {
    for (const auto& col : cols)
        for (const auto& c : col)
            if (!F.is_zero(c)) return false;
    return true;
}

}  // namespace

TEST_SUITE("homology") {

TEST_CASE("hat homology tables over the rationals") {
    CHECK(dump(homology(make(kTrefoil, Theory::BarNatan), Flavor::Hat).module) ==
          "free: (0,1) (0,3) (2,5) (3,9) tors:");
    CHECK(dump(homology(make(kTrefoil, Theory::Lee), Flavor::Hat).module) ==
          "free: (0,1) (0,3) (2,5) (3,9) tors:");
    CHECK(dump(homology(make(kHopf, Theory::BarNatan), Flavor::Hat).module) ==
          "free: (0,0) (0,2) (2,4) (2,6) tors:");
    CHECK(dump(homology(make(kPosKink, Theory::BarNatan), Flavor::Hat).module) ==
          "free: (0,-1) (0,1) tors:");
    CHECK(dump(homology(make(kNegKink, Theory::BarNatan), Flavor::Hat).module) ==
          "free: (0,-1) (0,1) tors:");
    CHECK(dump(homology(make(kR2Unlink, Theory::BarNatan), Flavor::Hat).module) ==
          "free: (0,-2) (0,0) (0,0) (0,2) tors:");
}

TEST_CASE("hat homology of the trefoil over F2 sees the torsion pair") {
    CHECK(dump(homology(make(kTrefoil, Theory::BarNatan, 2), Flavor::Hat).module) ==
          "free: (0,1) (0,3) (2,5) (2,7) (3,7) (3,9) tors:");
}

TEST_CASE("minus homology decompositions") {
    CHECK(dump(homology(make(kTrefoil, Theory::BarNatan), Flavor::Minus).module) ==
          "free: (0,1) (0,3) tors: (3,9,2)");
    CHECK(dump(homology(make(kTrefoil, Theory::Lee), Flavor::Minus).module) ==
          "free: (0,1) (0,3) tors: (3,9,1)");
    CHECK(dump(homology(make(kHopf, Theory::BarNatan), Flavor::Minus).module) ==
          "free: (0,0) (0,2) (2,4) (2,6) tors:");
    CHECK(dump(homology(make(kHopf, Theory::Lee), Flavor::Minus).module) ==
          "free: (0,0) (0,2) (2,4) (2,6) tors:");
    // Both kink diagrams present the unknot.
    CHECK(dump(homology(make(kPosKink, Theory::BarNatan), Flavor::Minus).module) ==
          "free: (0,-1) (0,1) tors:");
    CHECK(dump(homology(make(kNegKink, Theory::BarNatan), Flavor::Minus).module) ==
          "free: (0,-1) (0,1) tors:");
    CHECK(dump(homology(make(kR2Unlink, Theory::Lee), Flavor::Minus).module) ==
          "free: (0,-2) (0,0) (0,0) (0,2) tors:");
    // Full decompositions are only materialized for minus and hat.
    CHECK_THROWS_AS(homology(make(kPosKink, Theory::Lee), Flavor::Inf), Error);
}

TEST_CASE("representatives are cycles with the advertised gradings") {
    for (Theory th : {Theory::Lee, Theory::BarNatan}) {
        for (const char* pd : {kTrefoil, kHopf, kR2Unlink}) {
            KhComplex cx = make(pd, th);
            for (Flavor fl : {Flavor::Minus, Flavor::Hat}) {
                HomologyResult H = homology(cx, fl);
                for (size_t i = 0; i < H.module.free_part.size(); ++i) {
                    const Chain& rep = H.free_reps[i];
                    REQUIRE(!chain_is_zero(rep));
                    auto [h, q] = chain_bigrading(cx, rep);
                    CHECK(h == H.module.free_part[i].h);
                    CHECK(q == H.module.free_part[i].q);
                    if (fl == Flavor::Minus) CHECK(chain_is_zero(cx.apply_d(rep)));
                }
                for (size_t i = 0; i < H.module.torsion.size(); ++i) {
                    const Chain& rep = H.torsion_reps[i];
                    REQUIRE(!chain_is_zero(rep));
                    auto [h, q] = chain_bigrading(cx, rep);
                    CHECK(h == H.module.torsion[i].h);
                    CHECK(q == H.module.torsion[i].q);
                    if (fl == Flavor::Minus) CHECK(chain_is_zero(cx.apply_d(rep)));
                }
            }
        }
    }
}

TEST_CASE("torsion representatives die at exactly the stated power") {
    struct Case {
        Theory th;
        int k;
    };
    for (Case c : {Case{Theory::BarNatan, 2}, Case{Theory::Lee, 1}}) {
        KhComplex cx = make(kTrefoil, c.th);
        HomologyResult H = homology(cx, Flavor::Minus);
        REQUIRE(H.module.torsion.size() == 1);
        CHECK(H.module.torsion[0].k == c.k);
        const Chain& rep = H.torsion_reps[0];
        SliceSolver solver(cx, Flavor::Minus);
        auto [h, q] = chain_bigrading(cx, rep);
        const Field& F = cx.field();
        // Not a boundary itself, but U^k times it is.
        CHECK(!solver.class_is_zero(rep, h, q));
        Chain uk = chain_scale(rep, UPoly::monomial(1, 2 * c.k, F), F);
        CHECK(solver.class_is_zero(uk, h, q + c.k * cx.alg().u_qdeg()));
        if (c.k > 1) {
            Chain u1 = chain_scale(rep, UPoly::monomial(1, 2, F), F);
            CHECK(!solver.class_is_zero(u1, h, q + cx.alg().u_qdeg()));
        }
    }
}

TEST_CASE("hat dimensions: naive path, decomposition, and slices agree") {
    for (Theory th : {Theory::Lee, Theory::BarNatan}) {
        for (const char* pd : {kTrefoil, kHopf, kR2Unlink, kNegKink}) {
            for (unsigned p : {0u, th == Theory::Lee ? 3u : 2u}) {
                KhComplex cx = make(pd, th, p);
                GradedModule m = homology(cx, Flavor::Hat).module;
                SliceSolver solver(cx, Flavor::Hat);
                auto [qlo, qhi] = q_bounds(cx);
                for (int h = cx.min_h() - 1; h <= cx.max_h() + 1; ++h) {
                    for (int q = qlo - 2; q <= qhi + 2; ++q) {
                        int want = 0;
                        for (const auto& s : m.free_part)
                            if (s.h == h && s.q == q) ++want;
                        CHECK(naive_hat_dim(cx, h, q) == want);
                        CHECK(solver.dim_homology(h, q) == want);
                    }
                }
            }
        }
    }
}

TEST_CASE("minus slice dimensions match the decomposition") {
    for (Theory th : {Theory::Lee, Theory::BarNatan}) {
        for (const char* pd : {kTrefoil, kHopf, kR2Unlink}) {
            KhComplex cx = make(pd, th);
            GradedModule m = homology(cx, Flavor::Minus).module;
            SliceSolver solver(cx, Flavor::Minus);
            int period = -cx.alg().u_qdeg();
            auto [qlo, qhi] = q_bounds(cx);
            for (int h = cx.min_h(); h <= cx.max_h(); ++h)
                for (int q = qlo - 2 * period; q <= qhi; ++q)
                    CHECK(solver.dim_homology(h, q) == predicted_minus_dim(m, h, q, period));
        }
    }
}

TEST_CASE("orientation generators are cycles matching the free part") {
    for (Theory th : {Theory::Lee, Theory::BarNatan}) {
        for (const char* pd : {kTrefoil, kHopf, kR2Unlink, kPosKink}) {
            KhComplex cx = make(pd, th);
            const PlanarDiagram& d = cx.diagram();
            auto gens = canonical_orientation_generators(cx);
            int ncomp = static_cast<int>(d.geometry().comps.size());
            REQUIRE(static_cast<int>(gens.size()) == 1 << ncomp);

            GradedModule m = homology(cx, Flavor::Minus).module;
            std::map<int, int> free_at_h;
            for (const auto& s : m.free_part) ++free_at_h[s.h];

            std::map<int, int> gens_at_h;
            for (const auto& g : gens) {
                REQUIRE(!chain_is_zero(g.chain));
                CHECK(chain_is_zero(cx.apply_d(g.chain)));
                CHECK(chain_is_homogeneous(cx, g.chain));
                // Homological degree is twice the linking number of the
                // reversed sublink with its complement.
                std::set<Id> reversed;
                for (const auto& [comp, dir] : g.obits)
                    if (dir < 0) reversed.insert(comp);
                CHECK(mpq_class(g.gr_h) == 2 * d.linking_number(reversed));
                ++gens_at_h[g.gr_h];
            }
            CHECK(gens_at_h == free_at_h);
        }
    }
}

TEST_CASE("diagonal projection separates the orientation generators") {
    for (Theory th : {Theory::Lee, Theory::BarNatan}) {
        KhComplex cx = make(kHopf, th);
        auto gens = canonical_orientation_generators(cx);
        const Field& F = cx.field();
        for (const auto& g : gens) {
            auto coords = infty_coords(cx, g.chain);
            for (const auto& [obits, lam] : coords) {
                if (obits == g.obits)
                    CHECK(lam.equals(UPoly::constant(1, F)));
                else
                    CHECK(lam.is_zero());
            }
        }
    }
}

TEST_CASE("infinity ranks bucket the free part by residue") {
    for (Theory th : {Theory::Lee, Theory::BarNatan}) {
        for (const char* pd : {kTrefoil, kHopf, kR2Unlink}) {
            KhComplex cx = make(pd, th);
            int period = -cx.alg().u_qdeg();
            GradedModule m = homology(cx, Flavor::Minus).module;
            std::map<std::pair<int, int>, int> want;
            for (const auto& s : m.free_part)
                ++want[{s.h, ((s.q % period) + period) % period}];
            std::map<std::pair<int, int>, int> got;
            int total = 0;
            for (const auto& r : infty_rank(cx)) {
                got[{r.h, r.q_mod}] = r.rank;
                total += r.rank;
            }
            CHECK(got == want);
            int ncomp = static_cast<int>(cx.diagram().geometry().comps.size());
            CHECK(total == 1 << ncomp);
        }
    }
}

TEST_CASE("long exact sequences are exact at every slice") {
    struct Fixture {
        const char* pd;
        Theory th;
    };
    for (Fixture fx : {Fixture{kTrefoil, Theory::BarNatan}, Fixture{kTrefoil, Theory::Lee},
                       Fixture{kHopf, Theory::BarNatan}}) {
        KhComplex cx = make(fx.pd, fx.th);
        const Field& F = cx.field();
        int M = -cx.alg().u_qdeg();
        auto [qlo, qhi] = q_bounds(cx);
        for (int h = cx.min_h() - 1; h <= cx.max_h(); ++h) {
            for (int q = qlo - 2 * M; q <= qhi + M; ++q) {
                // U-coefficient sequence: U, reduction, connecting map.
                LesMatrix a = les_map(cx, LesMap::MultU, h, q + M);
                LesMatrix b = les_map(cx, LesMap::ToHat, h, q);
                LesMatrix c = les_map(cx, LesMap::HatDelta, h, q);
                LesMatrix e = les_map(cx, LesMap::MultU, h + 1, q + M);
                CHECK(all_zero(compose(a, b, F), F));
                CHECK(all_zero(compose(b, c, F), F));
                CHECK(all_zero(compose(c, e, F), F));
                CHECK(matrix_rank(a, F) + matrix_rank(b, F) ==
                      static_cast<int>(b.from.basis.size()));
                CHECK(matrix_rank(b, F) + matrix_rank(c, F) ==
                      static_cast<int>(c.from.basis.size()));
                CHECK(matrix_rank(c, F) + matrix_rank(e, F) ==
                      static_cast<int>(e.from.basis.size()));

                // Completion sequence: inclusion, projection, connecting map.
                LesMatrix i1 = les_map(cx, LesMap::IotaInf, h, q);
                LesMatrix p1 = les_map(cx, LesMap::PiPlus, h, q);
                LesMatrix d1 = les_map(cx, LesMap::PlusDelta, h, q);
                LesMatrix i2 = les_map(cx, LesMap::IotaInf, h + 1, q);
                CHECK(all_zero(compose(i1, p1, F), F));
                CHECK(all_zero(compose(p1, d1, F), F));
                CHECK(all_zero(compose(d1, i2, F), F));
                CHECK(matrix_rank(i1, F) + matrix_rank(p1, F) ==
                      static_cast<int>(p1.from.basis.size()));
                CHECK(matrix_rank(p1, F) + matrix_rank(d1, F) ==
                      static_cast<int>(d1.from.basis.size()));
                CHECK(matrix_rank(d1, F) + matrix_rank(i2, F) ==
                      static_cast<int>(i2.from.basis.size()));
            }
        }
    }
}

TEST_CASE("connecting maps satisfy the triangle identities") {
    KhComplex cx = make(kTrefoil, Theory::BarNatan);
    const Field& F = cx.field();
    int M = -cx.alg().u_qdeg();
    auto [qlo, qhi] = q_bounds(cx);
    for (int h = cx.min_h() - 1; h <= cx.max_h(); ++h) {
        for (int q = qlo - 2 * M; q <= qhi + M; ++q) {
            // From plus to hat, directly or through minus.
            LesMatrix direct = les_map(cx, LesMap::PlusToHat, h, q);
            auto via = compose(les_map(cx, LesMap::PlusDelta, h, q),
                               les_map(cx, LesMap::ToHat, h + 1, q), F);
            REQUIRE(via.size() == direct.mat.size());
            for (size_t j = 0; j < via.size(); ++j)
                for (size_t i = 0; i < via[j].size(); ++i)
                    CHECK(F.is_zero(F.sub(via[j][i], direct.mat[j][i])));

            // Hat connecting map factors through plus.
            LesMatrix hd = les_map(cx, LesMap::HatDelta, h, q);
            auto via2 = compose(les_map(cx, LesMap::HatToPlus, h, q),
                                les_map(cx, LesMap::PlusDelta, h, q + M), F);
            REQUIRE(via2.size() == hd.mat.size());
            for (size_t j = 0; j < via2.size(); ++j)
                for (size_t i = 0; i < via2[j].size(); ++i)
                    CHECK(F.is_zero(F.sub(via2[j][i], hd.mat[j][i])));
        }
    }
}

TEST_CASE("torsion primitives") {
    struct Case {
        Theory th;
        int k;
    };
    for (Case c : {Case{Theory::BarNatan, 2}, Case{Theory::Lee, 1}}) {
        KhComplex cx = make(kTrefoil, c.th);
        const Field& F = cx.field();
        HomologyResult H = homology(cx, Flavor::Minus);
        REQUIRE(H.module.torsion.size() == 1);

        auto prim = solve_torsion_primitive(cx, H.torsion_reps[0]);
        REQUIRE(prim.has_value());
        CHECK(prim->k == c.k);
        Chain lhs = cx.apply_d(prim->w);
        Chain rhs = chain_scale(H.torsion_reps[0], UPoly::monomial(1, 2 * c.k, F), F);
        CHECK(chain_is_zero(chain_add(lhs, chain_scale(rhs, UPoly::constant(-1, F), F), F)));

        // A free class is not torsion.
        CHECK(!solve_torsion_primitive(cx, H.free_reps[0]).has_value());
        // A boundary is torsion at k = 0.
        Chain b = cx.apply_d(Chain{{cx.index(GenRef{0, 0}), UPoly::constant(1, F)}});
        auto prim0 = solve_torsion_primitive(cx, b);
        REQUIRE(prim0.has_value());
        CHECK(prim0->k == 0);
    }
}

TEST_CASE("plus classes: free tails live, torsion shadows die") {
    KhComplex cx = make(kTrefoil, Theory::BarNatan);
    const Field& F = cx.field();
    HomologyResult H = homology(cx, Flavor::Minus);

    Chain tail = chain_scale(H.free_reps[0], UPoly::monomial(1, -2, F), F);
    PlusClass alive = plus_is_zero(cx, tail);
    CHECK(!alive.zero);
    CHECK(alive.h == 0);

    Chain shadow = chain_scale(H.torsion_reps[0], UPoly::monomial(1, -2, F), F);
    PlusClass dead = plus_is_zero(cx, shadow);
    CHECK(dead.zero);
}

TEST_CASE("reduced dimension counts torsion summands") {
    struct Fixture {
        const char* pd;
        Theory th;
    };
    for (Fixture fx : {Fixture{kTrefoil, Theory::BarNatan}, Fixture{kTrefoil, Theory::Lee},
                       Fixture{kHopf, Theory::BarNatan}, Fixture{kR2Unlink, Theory::BarNatan}}) {
        KhComplex cx = make(fx.pd, fx.th);
        GradedModule m = homology(cx, Flavor::Minus).module;
        auto [qlo, qhi] = q_bounds(cx);
        for (int h = cx.min_h(); h <= cx.max_h(); ++h) {
            for (int q = qlo - 2; q <= qhi + 2; ++q) {
                int want = 0;
                for (const auto& s : m.torsion)
                    if (s.h == h && s.q == q) ++want;
                CHECK(hred_dim(cx, h, q) == want);
            }
        }
    }
}

}  // TEST_SUITE
