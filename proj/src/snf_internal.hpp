#pragma once

// Internal: Smith normal form of a graded matrix over F[U].
//
// Rows and columns carry q-labels; because every basis vector is homogeneous,
// the U-exponent of the entry at (r, c) is forced to (col_q[c] - row_q[r]) /
// uqh, so the matrix is stored as bare field scalars.  Pivots are chosen with
// minimal exponent first (ties: lowest column, then lowest row), which keeps
// every recorded row and column operation inside F[U] and makes the pivot
// exponents the invariant factors.  With all labels equal this degenerates to
// plain Gaussian elimination over the field.

#include <map>
#include <vector>

#include <gmpxx.h>

#include "khmix/field.hpp"

namespace khmix::detail {

struct GradedSnf {
    struct Pivot {
        int row{0}, col{0};
        int e2{0};  // doubled exponent of the invariant factor
        mpq_class coef;
    };
    std::vector<Pivot> pivots;  // nondecreasing in e2
    std::vector<char> row_pivot, col_pivot;

    // Optional transforms, empty unless requested.  With the original matrix
    // M and the diagonalized D: (row ops) M (col ops) = D; v's columns are
    // the new source basis, vinv its inverse as rows, uinv's columns the new
    // target basis.  Non-pivot columns of v span ker M.
    std::vector<std::map<int, mpq_class>> v;     // columns over source indices
    std::vector<std::map<int, mpq_class>> vinv;  // rows over source indices
    std::vector<std::map<int, mpq_class>> uinv;  // columns over target indices
};

GradedSnf graded_snf(std::vector<std::map<int, mpq_class>> cols, int nrows,
                     const std::vector<int>& row_q, const std::vector<int>& col_q, int uqh,
                     const Field& F, bool need_v, bool need_vinv, bool need_uinv);

}  // namespace khmix::detail
