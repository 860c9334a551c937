#pragma once

#include <vector>

#include "periorb/cyclotomic.hpp"

namespace periorb {

/// Dense matrix over Q(zeta_L), row major.
class CycloMatrix {
  public:
    CycloMatrix(CycloContextPtr ctx, size_t rows, size_t cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols),
          data_(rows * cols, CycloNum::zero(ctx_)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const CycloContextPtr& context() const { return ctx_; }

    CycloNum& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const CycloNum& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  private:
    CycloContextPtr ctx_;
    size_t rows_, cols_;
    std::vector<CycloNum> data_;
};

/// Rank by fraction-free (Bareiss) elimination.  Rows are first scaled to
/// integer coefficients; every division is by the previous pivot and exact.
size_t rank(CycloMatrix m);

/// Determinant test for a square matrix, decided exactly via the rank.
bool determinant_is_zero(const CycloMatrix& m);

inline size_t kernel_dimension(const CycloMatrix& m) { return m.cols() - rank(m); }

} // namespace periorb
