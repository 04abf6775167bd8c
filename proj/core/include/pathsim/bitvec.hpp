#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pathsim {

// Fixed-width bit vector over 64-bit words; bit j of word j/64 is qubit j.
// Doubles as SupportMask: a set of qubit indices.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int n) : n_(n), words_((n + 63) / 64, 0) {}

  static BitVec from_u64(int n, uint64_t bits) {
    BitVec v(n);
    if (n > 0) v.words_[0] = (n >= 64) ? bits : (bits & ((uint64_t(1) << n) - 1));
    return v;
  }

  int size() const { return n_; }

  bool test(int j) const { return (words_[j >> 6] >> (j & 63)) & 1; }
  void set(int j, bool b = true) {
    uint64_t m = uint64_t(1) << (j & 63);
    if (b)
      words_[j >> 6] |= m;
    else
      words_[j >> 6] &= ~m;
  }
  void flip(int j) { words_[j >> 6] ^= uint64_t(1) << (j & 63); }

  bool any() const {
    for (uint64_t w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  int popcount() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  BitVec& operator^=(const BitVec& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  BitVec& operator&=(const BitVec& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitVec& operator|=(const BitVec& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  // Parity of |a & b|; the workhorse of symplectic products.
  static bool and_parity(const BitVec& a, const BitVec& b) {
    uint64_t acc = 0;
    for (size_t i = 0; i < a.words_.size(); ++i) acc ^= a.words_[i] & b.words_[i];
    return std::popcount(acc) & 1;
  }

  // Overlap of the low 64 bits with a plain mask (n <= 64 paths).
  uint64_t low64() const { return words_.empty() ? 0 : words_[0]; }

  bool intersects(const BitVec& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool subset_of(const BitVec& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  template <typename F>
  void for_each_set(F&& f) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(int(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  size_t hash() const {
    size_t h = 0x9e3779b97f4a7c15ull ^ size_t(n_);
    for (uint64_t w : words_) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }

 private:
  int n_ = 0;
  std::vector<uint64_t> words_;
};

using SupportMask = BitVec;

}  // namespace pathsim
