#pragma once

#include <initializer_list>

#include "gowerk/symmat.hpp"

namespace testing {

inline gowerk::Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  gowerk::Matrix m(static_cast<gowerk::Index>(rows.size()),
                   rows.size() ? static_cast<gowerk::Index>(rows.begin()->size()) : 0);
  gowerk::Index i = 0;
  for (const auto& r : rows) {
    gowerk::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline gowerk::Vector vec(std::initializer_list<double> values) {
  gowerk::Vector v(static_cast<gowerk::Index>(values.size()));
  gowerk::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

inline gowerk::DissimilarityMatrix dis(const gowerk::Matrix& m) {
  return gowerk::validate_dissimilarity(gowerk::SquareMatrix::from(m));
}

inline gowerk::KernelMatrix ker(const gowerk::Matrix& m) { return gowerk::KernelMatrix::from(m); }

template <class F>
gowerk::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const gowerk::Error& e) {
    return e.code();
  }
  return static_cast<gowerk::ErrorCode>(-1);
}

}  // namespace testing
