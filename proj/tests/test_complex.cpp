#include <doctest.h>

#include <set>

#include "khmix/khcomplex.hpp"

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

}  // namespace

TEST_SUITE("complex") {

TEST_CASE("generator bookkeeping on the trefoil") {
    KhComplex cx = make(kTrefoil, Theory::BarNatan);
    CHECK(cx.n() == 3);
    CHECK(cx.n_pos() == 3);
    CHECK(cx.n_neg() == 0);
    CHECK(cx.min_h() == 0);
    CHECK(cx.max_h() == 3);

    // Circle counts agree with the independent tracing oracle at every
    // vertex, and the generator total is their power sum.
    const PlanarDiagram& d = cx.diagram();
    long total = 0;
    for (int v = 0; v < 8; ++v) {
        std::vector<uint8_t> bits{static_cast<uint8_t>(v & 1), static_cast<uint8_t>((v >> 1) & 1),
                                  static_cast<uint8_t>((v >> 2) & 1)};
        CHECK(cx.circles(v) == trace_circles(d, bits));
        total += 1L << cx.circles(v);
    }
    CHECK(total == 30);
    CHECK(cx.total_generators() == 30);

    // index/gen round trip and vmask-major order.
    for (long i = 0; i < cx.total_generators(); ++i) {
        GenRef g = cx.gen(i);
        CHECK(cx.index(g) == i);
    }
    CHECK(cx.gen(0).vmask == 0);

    // gens_at_h partitions the generators.
    long sum = 0;
    for (int h = cx.min_h(); h <= cx.max_h(); ++h) {
        auto gs = cx.gens_at_h(h);
        for (long g : gs) CHECK(cx.gr_h(g) == h);
        sum += static_cast<long>(gs.size());
    }
    CHECK(sum == 30);
    CHECK(cx.gens_at_h(0).size() == 4);
    CHECK(cx.gens_at_h(3).size() == 8);
}

TEST_CASE("quantum gradings at the cube corners of the trefoil") {
    KhComplex cx = make(kTrefoil, Theory::Lee);
    auto qs_at_vertex = [&](int v) {
        std::multiset<int> qs;
        for (int y = 0; y < (1 << cx.circles(v)); ++y) qs.insert(cx.gr_q(GenRef{v, y}));
        return qs;
    };
    CHECK(qs_at_vertex(0) == std::multiset<int>{1, 3, 3, 5});
    CHECK(qs_at_vertex(7) == std::multiset<int>{3, 5, 5, 5, 7, 7, 7, 9});
}

TEST_CASE("negative crossings shift the grading window") {
    KhComplex cx = make(kNegKink, Theory::BarNatan);
    CHECK(cx.n_pos() == 0);
    CHECK(cx.n_neg() == 1);
    CHECK(cx.min_h() == -1);
    CHECK(cx.max_h() == 0);
    // The oriented resolution of the curl splits off a circle, so h = 0
    // carries two circles; h = -1 carries one.
    auto qs_at = [&](int h) {
        std::multiset<int> qs;
        for (long g : cx.gens_at_h(h)) qs.insert(cx.gr_q(g));
        return qs;
    };
    CHECK(qs_at(0) == std::multiset<int>{-3, -1, -1, 1});
    CHECK(qs_at(-1) == std::multiset<int>{-3, -1});
}

TEST_CASE("differential is bigraded of degree (1,0)") {
    for (Theory th : {Theory::Lee, Theory::BarNatan}) {
        for (const char* pd : {kTrefoil, kHopf, kR2Unlink, kPosKink}) {
            KhComplex cx = make(pd, th);
            int uqh = cx.alg().u_qdeg_half();
            for (long g = 0; g < cx.total_generators(); ++g) {
                for (const auto& [tg, poly] : cx.d_gen(g)) {
                    REQUIRE(poly.is_monomial());
                    CHECK(cx.gr_h(tg) == cx.gr_h(g) + 1);
                    CHECK(cx.gr_q(tg) + poly.min_e2() * uqh == cx.gr_q(g));
                    CHECK(poly.min_e2() >= 0);
                }
            }
        }
    }
}

TEST_CASE("cube edges anticommute around every square") {
    for (int n : {2, 3, 4}) {
        for (int v = 0; v < (1 << n); ++v) {
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    if ((v >> i) & 1) continue;
                    if ((v >> j) & 1) continue;
                    int s1 = KhComplex::edge_sign(v, i) * KhComplex::edge_sign(v | (1 << i), j);
                    int s2 = KhComplex::edge_sign(v, j) * KhComplex::edge_sign(v | (1 << j), i);
                    CHECK(s1 == -s2);
                }
            }
        }
    }
}

TEST_CASE("d squared vanishes") {
    for (const char* pd : {kTrefoil, kHopf, kR2Unlink, kPosKink, kNegKink}) {
        CHECK(make(pd, Theory::Lee).verify_d_squared());
        CHECK(make(pd, Theory::BarNatan).verify_d_squared());
        CHECK(make(pd, Theory::BarNatan, 2).verify_d_squared());
        CHECK(make(pd, Theory::Lee, 3).verify_d_squared());
        CHECK(make(pd, Theory::BarNatan, 5).verify_d_squared());
    }
}

TEST_CASE("apply_d is linear and matches d_gen") {
    KhComplex cx = make(kHopf, Theory::BarNatan);
    const Field& F = cx.field();
    Chain z;
    z[cx.index(GenRef{0, 0})] = UPoly::constant(2, F);
    z[cx.index(GenRef{0, 3})] = UPoly::monomial(1, 2, F);
    Chain dz = cx.apply_d(z);
    Chain expect;
    for (const auto& [tg, poly] : cx.d_gen(cx.index(GenRef{0, 0})))
        expect = chain_add(expect, Chain{{tg, poly.scale(2, F)}}, F);
    for (const auto& [tg, poly] : cx.d_gen(cx.index(GenRef{0, 3})))
        expect = chain_add(expect, Chain{{tg, poly.shift(2)}}, F);
    CHECK(chain_is_zero(chain_add(dz, chain_scale(expect, UPoly::constant(-1, F), F), F)));
}

TEST_CASE("empty diagram has a single generator") {
    KhComplex cx(PlanarDiagram::empty(), FrobeniusTable(Theory::BarNatan, Field(0)));
    CHECK(cx.total_generators() == 1);
    CHECK(cx.gr_h(0L) == 0);
    CHECK(cx.gr_q(0L) == 0);
    CHECK(cx.verify_d_squared());
}

TEST_CASE("mirror pairing pairs complementary vertices") {
    PlanarDiagram d = parse_pd(kTrefoil);
    PlanarDiagram m = d.mirror();

    SUBCASE("bar-natan values") {
        KhComplex cx(d, FrobeniusTable(Theory::BarNatan, Field(0)));
        KhComplex mx(m, FrobeniusTable(Theory::BarNatan, Field(0)));
        // Complement of the all-zero vertex; both have the same two circles.
        int v = 0, w = 7;
        REQUIRE(cx.circles(v) == mx.circles(w));
        // <1,X> = 1 per circle.
        UPoly p = mirror_pairing(mx, mx.index(GenRef{w, 0}), cx, cx.index(GenRef{v, 3}));
        CHECK(p.equals(UPoly::constant(1, Field(0))));
        // <X,X> = U per circle.
        UPoly p2 = mirror_pairing(mx, mx.index(GenRef{w, 3}), cx, cx.index(GenRef{v, 3}));
        CHECK(p2.equals(UPoly::monomial(1, 4, Field(0))));
        // <1,1> = 0.
        UPoly p3 = mirror_pairing(mx, mx.index(GenRef{w, 0}), cx, cx.index(GenRef{v, 0}));
        CHECK(p3.is_zero());
        // Non-complementary vertices pair to zero.
        CHECK(mirror_pairing(mx, mx.index(GenRef{0, 0}), cx, cx.index(GenRef{0, 0})).is_zero());
    }

    SUBCASE("lee kills the xx pairing") {
        KhComplex cx(d, FrobeniusTable(Theory::Lee, Field(0)));
        KhComplex mx(m, FrobeniusTable(Theory::Lee, Field(0)));
        UPoly p = mirror_pairing(mx, mx.index(GenRef{7, 3}), cx, cx.index(GenRef{0, 3}));
        CHECK(p.is_zero());
        UPoly p2 = mirror_pairing(mx, mx.index(GenRef{7, 1}), cx, cx.index(GenRef{0, 2}));
        CHECK(p2.equals(UPoly::constant(1, Field(0))));
    }
}

}  // TEST_SUITE
