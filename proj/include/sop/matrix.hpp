#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sop/cyclo.hpp"
#include "sop/errors.hpp"

namespace sop {

/// Dense matrix with exact cyclotomic entries; the oracle side of the engine.
class SopMatrix {
 public:
  SopMatrix(std::size_t rows, std::size_t cols, int level)
      : rows_(rows), cols_(cols), level_(level), data_(rows * cols, CycloNumber(level)) {}

  static SopMatrix identity(std::size_t n, int level) {
    SopMatrix m(n, n, level);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CycloNumber::one(level);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int level() const { return level_; }
  CycloNumber& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycloNumber& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  SopMatrix operator*(const SopMatrix& o) const {
    if (cols_ != o.rows_) throw ArityMismatchError("matrix product shape mismatch");
    SopMatrix r(rows_, o.cols_, std::max(level_, o.level_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
      }
    return r;
  }

  SopMatrix tensor(const SopMatrix& o) const {
    SopMatrix r(rows_ * o.rows_, cols_ * o.cols_, std::max(level_, o.level_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t k = 0; k < o.rows_; ++k)
          for (std::size_t l = 0; l < o.cols_; ++l) r.at(i * o.rows_ + k, j * o.cols_ + l) = at(i, j) * o.at(k, l);
    return r;
  }

  /// Conjugate transpose.
  SopMatrix dagger() const {
    SopMatrix r(cols_, rows_, level_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
    return r;
  }

  SopMatrix scaled(const CycloNumber& s) const {
    SopMatrix r = *this;
    for (auto& e : r.data_) e = e * s;
    r.level_ = std::max(level_, s.level());
    return r;
  }

  bool operator==(const SopMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!(data_[i] == o.data_[i])) return false;
    return true;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += "[ ";
      for (std::size_t j = 0; j < cols_; ++j) s += at(i, j).str() + (j + 1 < cols_ ? " | " : " ");
      s += "]\n";
    }
    return s;
  }

 private:
  std::size_t rows_, cols_;
  int level_;
  std::vector<CycloNumber> data_;  // row-major
};

}  // namespace sop
