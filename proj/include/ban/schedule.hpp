/// @file schedule.hpp
/// @brief Periodic update schedules given by one period of blocks.

#pragma once

#include <algorithm>
#include <vector>

#include "ban/errors.hpp"

namespace ban {

/// One period of an update schedule: an ordered sequence of non-empty
/// blocks of automaton indices. Block-sequential schedules partition the
/// automata; general periodic schedules may repeat or skip automata.
struct UpdateSchedule {
  std::vector<std::vector<int>> blocks;

  static UpdateSchedule parallel(int n) {
    UpdateSchedule s;
    if (n == 0) return s;
    s.blocks.emplace_back();
    for (int i = 0; i < n; ++i) s.blocks.back().push_back(i);
    return s;
  }

  static UpdateSchedule sequential(int n) {
    UpdateSchedule s;
    for (int i = 0; i < n; ++i) s.blocks.push_back({i});
    return s;
  }

  bool empty() const { return blocks.empty(); }

  /// Throws unless every block is non-empty, duplicate-free and within range.
  void validate(int n) const {
    if (blocks.empty()) throw PreconditionError("empty schedule");
    for (const auto& block : blocks) {
      if (block.empty()) throw PreconditionError("empty block in schedule");
      std::vector<int> sorted = block;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= n)
          throw PreconditionError("automaton index out of range in schedule");
        if (i > 0 && sorted[i] == sorted[i - 1])
          throw PreconditionError("duplicate automaton in block");
      }
    }
  }

  /// True iff the blocks form a partition of {0..n-1}.
  bool is_block_sequential(int n) const {
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (const auto& block : blocks) {
      if (block.empty()) return false;
      for (int i : block) {
        if (i < 0 || i >= n) return false;
        ++count[static_cast<std::size_t>(i)];
      }
    }
    for (int c : count)
      if (c != 1) return false;
    return !blocks.empty();
  }

  /// Position of the block updating automaton `i`. Only meaningful for
  /// block-sequential schedules, where that block is unique.
  int block_index_of(int i) const {
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (int j : blocks[b])
        if (j == i) return static_cast<int>(b);
    return -1;
  }
};

inline void require_block_sequential(const UpdateSchedule& s, int n) {
  s.validate(n);
  if (!s.is_block_sequential(n))
    throw PreconditionError("schedule is not block-sequential");
}

}  // namespace ban
