#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cbtopo/error.hpp"

namespace cbtopo {

/// Dense matrix over GF(2), rows packed into 64-bit words.
class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), bits_(rows * words_per_row_, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return (word(r, c) >> (c % 64)) & 1u; }

  void set(std::size_t r, std::size_t c, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    if (value)
      word(r, c) |= mask;
    else
      word(r, c) &= ~mask;
  }

  bool is_zero() const {
    for (std::uint64_t w : bits_)
      if (w != 0) return false;
    return true;
  }

  /// Row echelon elimination on a copy.
  std::size_t rank() const {
    std::vector<std::uint64_t> m = bits_;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
      const std::size_t w = c / 64;
      const std::uint64_t mask = std::uint64_t{1} << (c % 64);
      std::size_t pivot = rank;
      while (pivot < rows_ && !(m[pivot * words_per_row_ + w] & mask)) ++pivot;
      if (pivot == rows_) continue;
      if (pivot != rank)
        for (std::size_t k = 0; k < words_per_row_; ++k)
          std::swap(m[pivot * words_per_row_ + k], m[rank * words_per_row_ + k]);
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == rank || !(m[r * words_per_row_ + w] & mask)) continue;
        for (std::size_t k = w; k < words_per_row_; ++k) m[r * words_per_row_ + k] ^= m[rank * words_per_row_ + k];
      }
      ++rank;
    }
    return rank;
  }

  friend Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b) {
    if (a.cols_ != b.rows_) throw error(errc::dimension_out_of_range, "GF(2) product shape mismatch");
    Gf2Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (!a.get(r, k)) continue;
        for (std::size_t w = 0; w < b.words_per_row_; ++w)
          out.bits_[r * out.words_per_row_ + w] ^= b.bits_[k * b.words_per_row_ + w];
      }
    return out;
  }

 private:
  std::uint64_t& word(std::size_t r, std::size_t c) { return bits_.at(r * words_per_row_ + c / 64); }
  const std::uint64_t& word(std::size_t r, std::size_t c) const { return bits_.at(r * words_per_row_ + c / 64); }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace cbtopo
