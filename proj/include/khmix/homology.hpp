#pragma once

#include <optional>
#include <vector>

#include "khmix/khcomplex.hpp"

namespace khmix {

enum class Flavor { Minus, Hat, Inf, Plus };

std::string flavor_name(Flavor f);

// One summand of a bigraded module over the ground ring: k == 0 is a free
// summand generated at (h, q); k > 0 is a torsion summand F[U]/U^k generated
// at (h, q).
struct GradedSummand {
    int h{0};
    int q{0};
    int k{0};

    bool operator==(const GradedSummand& o) const { return h == o.h && q == o.q && k == o.k; }
    bool operator<(const GradedSummand& o) const {
        if (h != o.h) return h < o.h;
        if (q != o.q) return q < o.q;
        return k < o.k;
    }
};

struct GradedModule {
    std::vector<GradedSummand> free_part;  // k == 0
    std::vector<GradedSummand> torsion;    // k > 0

    void sort();
    bool operator==(const GradedModule& o) const {
        return free_part == o.free_part && torsion == o.torsion;
    }
};

struct HomologyResult {
    GradedModule module;
    std::vector<Chain> free_reps;     // aligned with module.free_part
    std::vector<Chain> torsion_reps;  // aligned with module.torsion
};

// Full decomposition via graded Smith normal form.  Minus works over F[U]
// (monomial entries, exponent forced by the gradings); Hat works over the
// field with U set to zero.  Inf and Plus are not materialized this way; use
// the slice interface below.
HomologyResult homology(const KhComplex& cx, Flavor flavor);

// ---------------------------------------------------------------------------
// Slice computations over the coefficient field.
//
// A slice is the finite-dimensional piece of one flavor at a single (h, q):
// basis elements are U^(e2/2) g for generators g at homological degree h with
// the exponent forced by q.  Chains returned and consumed here carry those
// powers in their UPoly coefficients.

class SliceSolver {
  public:
    SliceSolver(const KhComplex& cx, Flavor flavor);

    const KhComplex& complex() const { return cx_; }
    Flavor flavor() const { return flavor_; }

    struct Slice {
        int h{0}, q{0};
        std::vector<std::pair<long, int>> basis;  // (generator index, e2)
    };
    Slice slice(int h, int q) const;

    // Differential restricted to the slice, as columns over the field.
    std::vector<std::vector<std::pair<int, mpq_class>>> slice_matrix(const Slice& from,
                                                                     const Slice& to) const;

    int dim_chain(int h, int q) const;
    int dim_homology(int h, int q) const;

    // Representative cycles of the slice homology, plus coordinates of an
    // arbitrary cycle in that basis (reduction modulo boundaries).
    struct SliceHomology {
        Slice slice;
        std::vector<Chain> basis;
        // Echelon rows used by coords(): pivot position -> (basis index or -1
        // for a boundary row, normalized row vector over the slice basis).
        std::map<int, std::pair<int, std::map<int, mpq_class>>> rows;
    };
    SliceHomology homology_basis(int h, int q) const;
    std::vector<mpq_class> coords(const SliceHomology& hb, const Chain& cycle) const;

    // Solves d x = target within the flavor, target at (h, q); x at (h-1, q).
    std::optional<Chain> solve_d(const Chain& target, int h, int q) const;
    // True when the cycle's class vanishes in this flavor's homology.
    bool class_is_zero(const Chain& cycle, int h, int q) const;

    // Truncates a chain to the flavor's window (drops C^- terms for Plus,
    // positive powers for Hat); Minus and Inf pass through.
    Chain project(const Chain& z) const;

  private:
    const KhComplex& cx_;
    Flavor flavor_;

    bool admit(int e2) const;
};

// Bigrading of a homogeneous chain; throws for mixed or empty chains.
std::pair<int, int> chain_bigrading(const KhComplex& cx, const Chain& z);
bool chain_is_homogeneous(const KhComplex& cx, const Chain& z);

// Finds the minimal k >= 0 and a chain w with d w = U^k z, for a cycle z in
// the minus complex; fails if the class is not U-torsion within the search
// bound.
struct TorsionPrimitive {
    int k{0};
    Chain w;
};
std::optional<TorsionPrimitive> solve_torsion_primitive(const KhComplex& cx, const Chain& z,
                                                        int max_k = -1);

// Decides vanishing of a class in H^+ and reports deterministic coordinates
// of the reduced representative when nonzero.
struct PlusClass {
    bool zero{true};
    std::vector<mpq_class> coords;
    int h{0}, q{0};
};
PlusClass plus_is_zero(const KhComplex& cx, const Chain& zplus);

// ---------------------------------------------------------------------------
// Orientation generators and the infinity flavor.

struct OrientationGenerator {
    std::map<Id, int> obits;  // component -> +1/-1
    int vmask{0};
    Chain chain;  // coefficients may carry half powers in the Lee theory
    int gr_h{0};
};

// The 2^c diagonal-basis cycles, one per orientation assignment.
std::vector<OrientationGenerator> canonical_orientation_generators(const KhComplex& cx);

struct InftyRank {
    int h{0};
    int q_mod{0};  // residue of q modulo |u_qdeg|
    int rank{0};
};
// Ranks of H^infinity by (h, q mod |U|), computed by stabilized slices.
std::vector<InftyRank> infty_rank(const KhComplex& cx);

// Coordinates of a cycle's H^infinity class in the orientation-generator
// basis: coefficient per orientation, read off by diagonal projection at the
// oriented vertex.
std::vector<std::pair<std::map<Id, int>, UPoly>> infty_coords(const KhComplex& cx, const Chain& z);

// ---------------------------------------------------------------------------
// Long exact sequence plumbing at slice level.

enum class LesMap {
    MultU,     // H^-(h, q+|U|) -> H^-(h, q)
    ToHat,     // H^-(h, q) -> H^hat(h, q)
    HatDelta,  // H^hat(h, q) -> H^-(h+1, q+|U|)
    IotaInf,   // H^-(h, q) -> H^inf(h, q)
    PiPlus,    // H^inf(h, q) -> H^+(h, q)
    PlusDelta, // H^+(h, q) -> H^-(h+1, q)
    HatToPlus, // H^hat(h, q) -> H^+(h, q+|U|)
    PlusToHat  // H^+(h, q) -> H^hat(h+1, q)
};

// Chain-level long exact sequence map applied to a homogeneous chain in the
// source flavor; throws when the input is not a cycle where one is required.
Chain les_apply(const KhComplex& cx, LesMap kind, const Chain& z);

// Matrix of the requested map between slice homology bases at the stated
// source bigrading (the target bigrading follows from the map's shift).
struct LesMatrix {
    SliceSolver::SliceHomology from, to;
    std::vector<std::vector<mpq_class>> mat;  // mat[j] = image coords of from.basis[j]
};
LesMatrix les_map(const KhComplex& cx, LesMap kind, int h, int q);

// Dimension of ker(H^hat(h,q) -> H^+(h, q+|U|)), the reduced part of the hat
// group at one bigrading.
int hred_dim(const KhComplex& cx, int h, int q);

}  // namespace khmix
