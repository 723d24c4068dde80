#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace submax {

// A subset of the dense ground set {0, ..., n-1}. Backed by a bitset:
// membership tests and updates are O(1), iteration is O(n/64).
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int universe_size);
  ElementSet(int universe_size, std::initializer_list<int> members);
  static ElementSet from_mask(int universe_size, std::uint64_t mask);

  int universe_size() const { return n_; }
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(int u) const;
  void insert(int u);  // no-op if already a member
  void erase(int u);   // no-op if not a member
  ElementSet with(int u) const;
  ElementSet united(const ElementSet& other) const;

  // Members in ascending order.
  std::vector<int> elements() const;

  // Bitmask form; requires universe_size() <= 64.
  std::uint64_t mask() const;

  std::string to_string() const;  // "{0, 3, 7}"

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        fn(static_cast<int>(w * 64) + bit);
        word &= word - 1;
      }
    }
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) = default;

 private:
  void check_range(int u) const;

  int n_ = 0;
  int count_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace submax
