#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace linform {

/// Dense membership table over [0, width). Bits at or beyond `width` are kept zero.
class BitTable {
 public:
  BitTable() = default;
  explicit BitTable(std::size_t width) { reset(width); }

  void reset(std::size_t width) {
    width_ = width;
    words_.assign((width + 63) / 64, 0);
  }

  std::size_t width() const noexcept { return width_; }

  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }

  /// this |= (src << shift), truncated to this table's width.
  void or_shifted(const BitTable& src, std::size_t shift) noexcept {
    const std::size_t n = words_.size();
    const std::size_t word_shift = shift >> 6;
    const unsigned bit_shift = shift & 63;
    if (word_shift >= n) return;
    const std::size_t src_n = src.words_.size();
    for (std::size_t i = n; i-- > word_shift;) {
      const std::size_t j = i - word_shift;
      std::uint64_t w = j < src_n ? src.words_[j] << bit_shift : 0;
      if (bit_shift != 0 && j > 0 && j - 1 < src_n) w |= src.words_[j - 1] >> (64 - bit_shift);
      words_[i] |= w;
    }
    trim();
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  template <class Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        fn(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

 private:
  void trim() noexcept {
    if (const unsigned tail = width_ & 63; tail != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << tail) - 1;
  }

  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace linform
