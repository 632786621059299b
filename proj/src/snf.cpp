#include "snf_internal.hpp"

#include <set>

#include "khmix/common.hpp"

namespace khmix::detail {

namespace {

void axpy(std::map<int, mpq_class>& dst, const mpq_class& f, const std::map<int, mpq_class>& src,
          const Field& F) {
    for (const auto& [i, w] : src) {
        auto it = dst.find(i);
        mpq_class nv = F.add(it == dst.end() ? mpq_class(0) : it->second, F.mul(f, w));
        if (F.is_zero(nv)) {
            if (it != dst.end()) dst.erase(it);
        } else if (it == dst.end()) {
            dst.emplace(i, nv);
        } else {
            it->second = nv;
        }
    }
}

}  // namespace

GradedSnf graded_snf(std::vector<std::map<int, mpq_class>> cols, int nrows,
                     const std::vector<int>& row_q, const std::vector<int>& col_q, int uqh,
                     const Field& F, bool need_v, bool need_vinv, bool need_uinv) {
    const int ncols = static_cast<int>(cols.size());
    require(static_cast<int>(row_q.size()) == nrows && static_cast<int>(col_q.size()) == ncols,
            "graded_snf: label sizes mismatch");
    require(uqh < 0, "graded_snf: exponent unit must be negative");

    GradedSnf out;
    out.row_pivot.assign(nrows, 0);
    out.col_pivot.assign(ncols, 0);
    if (need_v) {
        out.v.resize(ncols);
        for (int j = 0; j < ncols; ++j) out.v[j][j] = 1;
    }
    if (need_vinv) {
        out.vinv.resize(ncols);
        for (int j = 0; j < ncols; ++j) out.vinv[j][j] = 1;
    }
    if (need_uinv) {
        out.uinv.resize(nrows);
        for (int i = 0; i < nrows; ++i) out.uinv[i][i] = 1;
    }

    std::vector<std::set<int>> row_cols(nrows);
    for (int j = 0; j < ncols; ++j)
        for (const auto& [r, val] : cols[j]) {
            (void)val;
            row_cols[r].insert(j);
        }

    auto ent_e2 = [&](int r, int c) {
        int diff = col_q[c] - row_q[r];
        int e2 = diff / uqh;
        require(e2 * uqh == diff && e2 >= 0, "graded_snf: entry off the exponent lattice");
        return e2;
    };

    auto set_entry = [&](int r, int c, const mpq_class& val) {
        if (F.is_zero(val)) {
            if (cols[c].erase(r)) row_cols[r].erase(c);
        } else {
            if (cols[c].find(r) == cols[c].end()) row_cols[r].insert(c);
            cols[c][r] = val;
        }
    };

    while (true) {
        int br = -1, bc = -1, be = 0;
        for (int c = 0; c < ncols; ++c) {
            if (out.col_pivot[c]) continue;
            for (const auto& [r, val] : cols[c]) {
                (void)val;
                int e = ent_e2(r, c);
                if (br < 0 || e < be) {
                    br = r;
                    bc = c;
                    be = e;
                }
            }
        }
        if (br < 0) break;

        const mpq_class a = cols[bc].at(br);
        out.pivots.push_back({br, bc, be, a});
        out.row_pivot[br] = 1;
        out.col_pivot[bc] = 1;

        // Row operations clear the pivot column at every other row.
        {
            const std::map<int, mpq_class> colc = cols[bc];
            for (const auto& [r2, b] : colc) {
                if (r2 == br) continue;
                mpq_class f = F.div(b, a);
                mpq_class nf = F.neg(f);
                // row r2 -= f * row br, touching every column where row br
                // has an entry.
                const std::vector<int> touched(row_cols[br].begin(), row_cols[br].end());
                for (int j : touched) {
                    auto it = cols[j].find(br);
                    require(it != cols[j].end(), "graded_snf: row index out of sync");
                    auto it2 = cols[j].find(r2);
                    mpq_class nv =
                        F.add(it2 == cols[j].end() ? mpq_class(0) : it2->second, F.mul(nf, it->second));
                    set_entry(r2, j, nv);
                }
                // Target basis: uinv column br gains f * column r2.
                if (need_uinv) axpy(out.uinv[br], f, out.uinv[r2], F);
            }
        }

        // Column operations clear the pivot row at every other column; by now
        // the pivot column has a single entry, so the matrix only changes in
        // row br.
        {
            const std::vector<int> touched(row_cols[br].begin(), row_cols[br].end());
            for (int j : touched) {
                if (j == bc) continue;
                mpq_class g = F.div(cols[j].at(br), a);
                mpq_class ng = F.neg(g);
                set_entry(br, j, 0);
                if (need_v) axpy(out.v[j], ng, out.v[bc], F);
                // Inverse of the column op: vinv row bc -= g * vinv row j.
                if (need_vinv) axpy(out.vinv[bc], ng, out.vinv[j], F);
            }
        }
    }

    return out;
}

}  // namespace khmix::detail
