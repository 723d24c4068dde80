#include "submax/element_set.hpp"

#include <sstream>

#include "submax/errors.hpp"

namespace submax {

ElementSet::ElementSet(int universe_size) : n_(universe_size) {
  if (universe_size < 0) {
    throw DomainError("universe size must be non-negative");
  }
  bits_.assign((static_cast<std::size_t>(n_) + 63) / 64, 0);
}

ElementSet::ElementSet(int universe_size, std::initializer_list<int> members)
    : ElementSet(universe_size) {
  for (int u : members) insert(u);
}

ElementSet ElementSet::from_mask(int universe_size, std::uint64_t mask) {
  if (universe_size > 64) {
    throw DomainError("from_mask requires universe size <= 64");
  }
  ElementSet s(universe_size);
  if (universe_size > 0) {
    const std::uint64_t valid =
        universe_size == 64 ? ~0ULL : ((1ULL << universe_size) - 1);
    if ((mask & ~valid) != 0) {
      throw DomainError("mask has bits outside the universe");
    }
    s.bits_[0] = mask;
    s.count_ = std::popcount(mask);
  } else if (mask != 0) {
    throw DomainError("mask has bits outside the universe");
  }
  return s;
}

void ElementSet::check_range(int u) const {
  if (u < 0 || u >= n_) {
    throw DomainError("element id " + std::to_string(u) +
                      " outside ground set of size " + std::to_string(n_));
  }
}

bool ElementSet::contains(int u) const {
  check_range(u);
  return (bits_[static_cast<std::size_t>(u) / 64] >> (u % 64)) & 1;
}

void ElementSet::insert(int u) {
  check_range(u);
  std::uint64_t& word = bits_[static_cast<std::size_t>(u) / 64];
  const std::uint64_t bit = 1ULL << (u % 64);
  if ((word & bit) == 0) {
    word |= bit;
    ++count_;
  }
}

void ElementSet::erase(int u) {
  check_range(u);
  std::uint64_t& word = bits_[static_cast<std::size_t>(u) / 64];
  const std::uint64_t bit = 1ULL << (u % 64);
  if ((word & bit) != 0) {
    word &= ~bit;
    --count_;
  }
}

ElementSet ElementSet::with(int u) const {
  ElementSet copy = *this;
  copy.insert(u);
  return copy;
}

ElementSet ElementSet::united(const ElementSet& other) const {
  if (other.n_ != n_) {
    throw DomainError("union of sets over different ground sets");
  }
  ElementSet out = *this;
  for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w] |= other.bits_[w];
  out.count_ = 0;
  for (std::uint64_t word : out.bits_) out.count_ += std::popcount(word);
  return out;
}

std::vector<int> ElementSet::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count_));
  for_each([&](int u) { out.push_back(u); });
  return out;
}

std::uint64_t ElementSet::mask() const {
  if (n_ > 64) {
    throw DomainError("mask() requires universe size <= 64");
  }
  return bits_.empty() ? 0 : bits_[0];
}

std::string ElementSet::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for_each([&](int u) {
    if (!first) out << ", ";
    first = false;
    out << u;
  });
  out << '}';
  return out.str();
}

}  // namespace submax
