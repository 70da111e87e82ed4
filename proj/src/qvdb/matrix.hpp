#pragma once

#include <cstddef>
#include <vector>

#include "qvdb/circuit.hpp"

namespace qvdb {

// Dense row-major complex matrix, used only by the verification path.
struct CMatrix {
  std::size_t dim = 0;
  std::vector<cplx> data;

  CMatrix() = default;
  explicit CMatrix(std::size_t d) : dim(d), data(d * d) {}

  cplx& at(std::size_t r, std::size_t c) { return data[r * dim + c]; }
  const cplx& at(std::size_t r, std::size_t c) const {
    return data[r * dim + c];
  }

  static CMatrix identity(std::size_t d) {
    CMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

double max_abs_diff(const CMatrix& a, const CMatrix& b);
double matrix_distance_up_to_global_phase(const CMatrix& a, const CMatrix& b);

}  // namespace qvdb
