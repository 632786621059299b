#pragma once

#include <map>
#include <utility>
#include <vector>

#include "khmix/diagram.hpp"
#include "khmix/frobenius.hpp"

namespace khmix {

// Generator of the cube complex: vmask bit i is the smoothing of the i-th
// crossing (ascending id order), ymask bit j marks circle j (ascending least
// arc id) as labeled X rather than 1.
struct GenRef {
    int vmask{0};
    int ymask{0};

    bool operator==(const GenRef& o) const { return vmask == o.vmask && ymask == o.ymask; }
    bool operator<(const GenRef& o) const { return vmask != o.vmask ? vmask < o.vmask : ymask < o.ymask; }
};

// Sparse chain: generator index -> Laurent coefficient.
using Chain = std::map<long, UPoly>;

Chain chain_add(const Chain& a, const Chain& b, const Field& F);
Chain chain_scale(const Chain& a, const UPoly& s, const Field& F);
bool chain_is_zero(const Chain& a);

// The deformed cube complex of a diagram over one Frobenius theory.  All
// resolutions are materialized; the differential is evaluated lazily per
// generator, so full matrices are only ever assembled degree by degree.
class KhComplex {
  public:
    KhComplex(PlanarDiagram diagram, FrobeniusTable alg);

    const PlanarDiagram& diagram() const { return diagram_; }
    const FrobeniusTable& alg() const { return alg_; }
    const Field& field() const { return alg_.field(); }

    int n() const { return static_cast<int>(axes_.size()); }
    const std::vector<Id>& axes() const { return axes_; }
    int axis_of(Id crossing) const;
    int n_pos() const { return n_pos_; }
    int n_neg() const { return n_neg_; }

    const Resolution& resolution(int vmask) const { return res_[vmask]; }
    int circles(int vmask) const { return res_[vmask].n_circles(); }
    long offset(int vmask) const { return offset_[vmask]; }
    long total_generators() const { return total_; }

    long index(const GenRef& g) const { return offset_[g.vmask] + g.ymask; }
    GenRef gen(long idx) const;

    static int weight(int vmask);  // popcount
    int gr_h(const GenRef& g) const;
    int gr_q(const GenRef& g) const;
    int gr_h(long idx) const { return gr_h(gen(idx)); }
    int gr_q(long idx) const { return gr_q(gen(idx)); }

    // Sign of the cube edge leaving vmask along the given axis.
    static int edge_sign(int vmask, int axis);

    // Differential of a single generator: (target index, monomial) pairs.
    std::vector<std::pair<long, UPoly>> d_gen(long idx) const;
    Chain apply_d(const Chain& z) const;

    // Exhaustively checks d(d(g)) = 0 for every generator.
    bool verify_d_squared() const;

    std::vector<long> gens_at_h(int h) const;
    int min_h() const { return -n_neg_; }
    int max_h() const { return n() - n_neg_; }

  private:
    PlanarDiagram diagram_;
    FrobeniusTable alg_;
    std::vector<Id> axes_;
    int n_pos_{0}, n_neg_{0};
    std::vector<Resolution> res_;
    std::vector<long> offset_;
    long total_{0};
};

// Frobenius pairing of a generator of the mirror complex against one of the
// original: nonzero only when the vertices are complementary, in which case
// it is the product over circles of the label pairing counit(a*b).
UPoly mirror_pairing(const KhComplex& mirror_cx, long mirror_gen, const KhComplex& cx, long gen);

}  // namespace khmix
