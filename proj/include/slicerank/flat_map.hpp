#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace slicerank {

// Open-addressing map from 63-bit keys to residues mod p. Insert/accumulate
// only; the all-ones key marks empty slots.
class ResidueTable {
public:
  explicit ResidueTable(std::uint32_t p, std::size_t expected = 16) : p_(p) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    slots_.assign(cap, Slot{kEmpty, 0});
  }

  void add(std::uint64_t key, std::uint32_t value) {
    if (2 * (size_ + 1) > slots_.size()) grow();
    Slot& s = probe(key);
    if (s.key == kEmpty) {
      s.key = key;
      s.value = value % p_;
      ++size_;
    } else {
      s.value = static_cast<std::uint32_t>((std::uint64_t{s.value} + value) % p_);
    }
  }

  // 0 when absent.
  std::uint32_t find(std::uint64_t key) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash(key) & mask;; i = (i + 1) & mask) {
      const Slot& s = slots_[i];
      if (s.key == key) return s.value;
      if (s.key == kEmpty) return 0;
    }
  }

  bool contains(std::uint64_t key) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash(key) & mask;; i = (i + 1) & mask) {
      if (slots_[i].key == key) return true;
      if (slots_[i].key == kEmpty) return false;
    }
  }

  std::size_t size() const noexcept { return size_; }

  // Entries with nonzero value, unordered.
  template <class F> void for_each_nonzero(F&& f) const {
    for (const Slot& s : slots_)
      if (s.key != kEmpty && s.value != 0) f(s.key, s.value);
  }

private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

  struct Slot {
    std::uint64_t key;
    std::uint32_t value;
  };

  static std::size_t hash(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return static_cast<std::size_t>(x);
  }

  Slot& probe(std::uint64_t key) {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash(key) & mask;; i = (i + 1) & mask) {
      Slot& s = slots_[i];
      if (s.key == key || s.key == kEmpty) return s;
    }
  }

  void grow() {
    std::vector<Slot> old(slots_.size() * 2, Slot{kEmpty, 0});
    old.swap(slots_);
    for (const Slot& s : old) {
      if (s.key == kEmpty) continue;
      probe(s.key) = s;
    }
  }

  std::uint32_t p_;
  std::size_t size_ = 0;
  std::vector<Slot> slots_;
};

} // namespace slicerank
