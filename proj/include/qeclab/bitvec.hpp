// Copyright 2026 The qeclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qeclab {

/// Thrown when two objects that must share a dimension do not.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Packed, dynamically sized bit vector. Bits past size() are always zero.
class BitVec {
 public:
  using word_t = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVec() = default;
  explicit BitVec(std::size_t n) : size_(n), words_((n + kWordBits - 1) / kWordBits, 0) {}

  static BitVec from_string(const std::string& bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("bit string may only contain 0 and 1");
      }
    }
    return v;
  }

  std::size_t size() const { return size_; }
  std::size_t num_words() const { return words_.size(); }
  const word_t* data() const { return words_.data(); }
  word_t* data() { return words_.data(); }
  word_t word(std::size_t w) const { return words_[w]; }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  bool operator[](std::size_t i) const { return get(i); }
  void set(std::size_t i, bool value = true) {
    word_t mask = word_t{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= word_t{1} << (i % kWordBits); }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }
  bool none() const { return !any(); }

  /// Index of the lowest set bit, or size() when empty.
  std::size_t first_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w]) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return size_;
  }

  /// Calls f(i) for every set bit in increasing order.
  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      word_t bits = words_[w];
      while (bits) {
        f(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  BitVec& operator^=(const BitVec& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  BitVec& operator&=(const BitVec& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  BitVec& operator|=(const BitVec& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

  /// Parity of the bitwise AND, i.e. the GF(2) dot product.
  bool dot(const BitVec& o) const {
    check_same(o);
    word_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
    return std::popcount(acc) & 1;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  /// Lexicographic by bit index (bit 0 most significant).
  friend bool operator<(const BitVec& a, const BitVec& b) {
    for (std::size_t i = 0; i < a.size_ && i < b.size_; ++i) {
      if (a.get(i) != b.get(i)) return !a.get(i);
    }
    return a.size_ < b.size_;
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for_each_set([&](std::size_t i) { s[i] = '1'; });
    return s;
  }

  /// Concatenation [*this | o].
  BitVec concat(const BitVec& o) const {
    BitVec r(size_ + o.size_);
    for_each_set([&](std::size_t i) { r.set(i); });
    o.for_each_set([&](std::size_t i) { r.set(size_ + i); });
    return r;
  }
  BitVec slice(std::size_t begin, std::size_t len) const {
    BitVec r(len);
    for (std::size_t i = 0; i < len; ++i) {
      if (get(begin + i)) r.set(i);
    }
    return r;
  }

  std::size_t hash() const {
    std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return h;
  }

 private:
  void check_same(const BitVec& o) const {
    if (o.size_ != size_) {
      throw DimensionError("bit vector length mismatch: " + std::to_string(size_) + " vs " +
                           std::to_string(o.size_));
    }
  }

  std::size_t size_ = 0;
  std::vector<word_t> words_;
};

}  // namespace qeclab
