// subshift.hpp -- irreducible vertex shifts, admissible word enumeration,
// locally constant observables.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace punity {

// Fixed-length symbol string.  Admissibility is relative to a system.
struct Word {
  std::vector<int> symbols;

  Word() = default;
  explicit Word(std::vector<int> s) : symbols(std::move(s)) {}
  int length() const { return static_cast<int>(symbols.size()); }
};

// Metric on one-sided sequence space restricted to equal-length words:
// 2^-i with i the first index of disagreement, 2^-length for equal words.
// Throws std::invalid_argument on length mismatch.
double word_distance(std::span<const int> a, std::span<const int> b);
double word_distance(const Word& a, const Word& b);

// All admissible words of one depth, lexicographic, packed row-major.
class WordSet {
 public:
  WordSet(int depth, std::vector<int32_t> flat);

  int depth() const { return depth_; }
  int count() const { return count_; }
  std::span<const int32_t> word(int i) const {
    return {flat_.data() + static_cast<size_t>(i) * depth_, static_cast<size_t>(depth_)};
  }
  // Index of a word among this set, -1 if not admissible here.
  int index_of(std::span<const int> w) const;

  // For every word here, the index within `sub` of the window
  // [offset, offset+sub.depth()).  Requires offset+sub.depth() <= depth().
  std::vector<int32_t> window_map(const WordSet& sub, int offset) const;

 private:
  int depth_;
  int count_;
  std::vector<int32_t> flat_;
};

// Vertex shift on {0..alphabet-1} given by an allowed-transition relation.
// Irreducibility (strong connectivity of the transition graph) is enforced
// at construction; everything downstream relies on it.
class SubshiftSystem : public std::enable_shared_from_this<SubshiftSystem> {
 public:
  static std::shared_ptr<const SubshiftSystem> full_shift(int alphabet_size);
  static std::shared_ptr<const SubshiftSystem> forbidden_pairs(
      int alphabet_size, const std::vector<std::pair<int, int>>& forbidden);
  // Two symbols, "11" forbidden.
  static std::shared_ptr<const SubshiftSystem> golden_mean();

  int alphabet_size() const { return alphabet_; }
  bool allowed(int i, int j) const { return allow_[static_cast<size_t>(i) * alphabet_ + j] != 0; }
  bool is_full_shift() const { return full_; }
  bool admissible(std::span<const int> w) const;

  // Cached per depth; thread safe.
  const WordSet& words(int depth) const;

 private:
  SubshiftSystem(int alphabet_size, std::vector<uint8_t> allow);

  int alphabet_;
  std::vector<uint8_t> allow_;
  bool full_;
  mutable std::mutex cache_mu_;
  mutable std::map<int, std::unique_ptr<WordSet>> cache_;
};

using SystemPtr = std::shared_ptr<const SubshiftSystem>;

// Observable depending on the first `depth` coordinates only; one value per
// admissible word of that depth, in WordSet order.
class LocallyConstantFunction {
 public:
  LocallyConstantFunction(SystemPtr system, int depth, std::vector<double> values);

  static LocallyConstantFunction constant(SystemPtr system, double c);
  // Indicator of the cylinder set of `w`.
  static LocallyConstantFunction cylinder_indicator(SystemPtr system, const Word& w);

  const SystemPtr& system() const { return system_; }
  int depth() const { return depth_; }
  const std::vector<double>& values() const { return values_; }

  double value_by_index(int word_index) const { return values_[word_index]; }
  // Value on a word of length >= depth (uses the first `depth` symbols).
  double value_on(std::span<const int> w) const;

  double min_value() const;
  double max_value() const;

  // Same function re-tabulated at a deeper resolution.  target >= depth.
  LocallyConstantFunction refine_to_depth(int target) const;
  // f composed with the shift: depth+1, value on w0..wk equals f(w1..wk).
  LocallyConstantFunction shift_pullback() const;

 private:
  SystemPtr system_;
  int depth_;
  std::vector<double> values_;
};

}  // namespace punity
