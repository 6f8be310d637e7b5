// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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
#include <initializer_list>
#include <string>
#include <vector>

namespace teamshare {

using Agent = std::size_t;

// A team of agents stored as a bitset over agent indices. Trailing zero
// words are trimmed, so two sets with the same members compare equal
// regardless of how they were built. For n <= 63 the whole set is the
// single word returned by mask().
class AgentSet {
 public:
  AgentSet() = default;
  AgentSet(std::initializer_list<Agent> members) {
    for (Agent a : members) insert(a);
  }

  static AgentSet from_mask(std::uint64_t mask) {
    AgentSet s;
    if (mask != 0) s.words_.push_back(mask);
    return s;
  }

  // {0, 1, ..., k-1}
  static AgentSet prefix(std::size_t k) {
    AgentSet s;
    s.words_.assign(k / 64, ~std::uint64_t{0});
    if (k % 64 != 0) s.words_.push_back((std::uint64_t{1} << (k % 64)) - 1);
    return s;
  }

  static AgentSet from_members(const std::vector<Agent>& members) {
    AgentSet s;
    for (Agent a : members) s.insert(a);
    return s;
  }

  void insert(Agent a) {
    const std::size_t w = a / 64;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= bit(a);
  }

  void erase(Agent a) {
    const std::size_t w = a / 64;
    if (w >= words_.size()) return;
    words_[w] &= ~bit(a);
    trim();
  }

  bool contains(Agent a) const {
    const std::size_t w = a / 64;
    return w < words_.size() && (words_[w] & bit(a)) != 0;
  }

  bool empty() const { return words_.empty(); }

  std::size_t size() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  // One past the largest member; 0 for the empty set.
  std::size_t bound() const {
    if (words_.empty()) return 0;
    return (words_.size() - 1) * 64 + (64 - static_cast<std::size_t>(std::countl_zero(words_.back())));
  }

  // Only meaningful when bound() <= 64.
  std::uint64_t mask() const { return words_.empty() ? 0 : words_.front(); }

  std::vector<Agent> members() const {
    std::vector<Agent> out;
    out.reserve(size());
    for_each([&](Agent a) { out.push_back(a); });
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        fn(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  AgentSet with(Agent a) const {
    AgentSet s = *this;
    s.insert(a);
    return s;
  }

  AgentSet without(Agent a) const {
    AgentSet s = *this;
    s.erase(a);
    return s;
  }

  AgentSet& operator|=(const AgentSet& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  AgentSet& operator&=(const AgentSet& o) {
    if (words_.size() > o.words_.size()) words_.resize(o.words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    trim();
    return *this;
  }

  AgentSet& operator-=(const AgentSet& o) {
    const std::size_t common = std::min(words_.size(), o.words_.size());
    for (std::size_t i = 0; i < common; ++i) words_[i] &= ~o.words_[i];
    trim();
    return *this;
  }

  friend AgentSet operator|(AgentSet a, const AgentSet& b) { return a |= b; }
  friend AgentSet operator&(AgentSet a, const AgentSet& b) { return a &= b; }
  friend AgentSet operator-(AgentSet a, const AgentSet& b) { return a -= b; }

  bool is_subset_of(const AgentSet& o) const { return (*this - o).empty(); }

  friend bool operator==(const AgentSet&, const AgentSet&) = default;

  // Lexicographic order on the sorted member lists; the empty set is
  // smallest and a proper prefix precedes its extensions.
  friend bool lex_less(const AgentSet& a, const AgentSet& b) {
    const std::size_t nw = std::max(a.words_.size(), b.words_.size());
    for (std::size_t w = 0; w < nw; ++w) {
      const std::uint64_t x = w < a.words_.size() ? a.words_[w] : 0;
      const std::uint64_t y = w < b.words_.size() ? b.words_[w] : 0;
      if (x == y) continue;
      const unsigned p = static_cast<unsigned>(std::countr_zero(x ^ y));
      // Whoever owns the first differing index wins unless the other list
      // has already run out of members.
      const bool a_has = (x >> p) & 1U;
      const AgentSet& other = a_has ? b : a;
      const bool other_continues = other.has_member_above(w * 64 + p);
      return a_has ? other_continues : !other_continues;
    }
    return false;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](Agent a) {
      if (!first) s += ",";
      s += std::to_string(a);
      first = false;
    });
    return s + "}";
  }

 private:
  static std::uint64_t bit(Agent a) { return std::uint64_t{1} << (a % 64); }

  bool has_member_above(std::size_t idx) const {
    const std::size_t w = idx / 64;
    if (w >= words_.size()) return false;
    const unsigned off = static_cast<unsigned>(idx % 64);
    const std::uint64_t higher = off == 63 ? 0 : (words_[w] >> (off + 1));
    if (higher != 0) return true;
    for (std::size_t i = w + 1; i < words_.size(); ++i)
      if (words_[i] != 0) return true;
    return false;
  }

  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

// Lexicographic comparison on raw masks, same order as lex_less(AgentSet).
inline bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  const unsigned p = static_cast<unsigned>(std::countr_zero(a ^ b));
  const bool a_has = (a >> p) & 1U;
  const std::uint64_t other = a_has ? b : a;
  const bool other_continues = p < 63 && (other >> (p + 1)) != 0;
  return a_has ? other_continues : !other_continues;
}

}  // namespace teamshare
