#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morphsyn/errors.hpp"

namespace morphsyn {

/// Assessment problem P^{l,eta}: an ordinal scale of `levels` grades
/// (grade 1 is best) and estimates holding `cardinality` elements.
struct Scale {
  int levels = 1;
  int cardinality = 1;

  friend bool operator==(const Scale&, const Scale&) = default;

  std::string str() const;                      // "P4,3"
  static Scale parse(std::string_view text);    // inverse of str()
};

/// An estimate in position form: counts[i] elements sit at grade i+1,
/// summing to the scale cardinality. Interval estimates occupy a contiguous
/// run of grades; integration can produce non-interval count vectors, which
/// are kept but flagged.
class MultisetEstimate {
 public:
  MultisetEstimate(Scale scale, std::vector<int> counts);

  /// Parses "(2,1,0,0)"; the scale is derived from the vector itself.
  static MultisetEstimate parse(std::string_view text);
  /// Parses against a known scale, rejecting length/cardinality mismatches.
  static MultisetEstimate parse(std::string_view text, const Scale& scale);

  const Scale& scale() const noexcept { return scale_; }
  const std::vector<int>& counts() const noexcept { return counts_; }
  bool is_interval() const noexcept { return interval_; }

  /// Cumulative profile c[k] = counts[0] + ... + counts[k], k < levels-1.
  /// Poset order, proximity and medians are all expressed through it.
  std::vector<int> cumulative_profile() const;

  std::string str() const;                      // "(2,1,0,0)"

  friend bool operator==(const MultisetEstimate& a, const MultisetEstimate& b) {
    return a.scale_ == b.scale_ && a.counts_ == b.counts_;
  }

 private:
  Scale scale_;
  std::vector<int> counts_;
  bool interval_ = false;
};

/// One-step move counts turning one estimate into another: `improvements`
/// moves an element one grade up (toward 1), `degradations` one grade down.
struct ProximityVector {
  int improvements = 0;
  int degradations = 0;

  int total() const noexcept { return improvements + degradations; }

  friend bool operator==(const ProximityVector&, const ProximityVector&) = default;
};

/// Number of multisets of the given cardinality over `levels` grades,
/// C(levels + cardinality - 1, cardinality). Reports overflow instead of
/// wrapping.
std::uint64_t multiset_coefficient(int levels, int cardinality);

/// All interval estimates of the scale, ordered by descending cumulative
/// profile (lexicographic), i.e. best first. The order is stable and is the
/// canonical enumeration order used throughout.
std::vector<MultisetEstimate> enumerate_scale(const Scale& scale);

/// Poset comparison: greater means `a` is the better estimate. Estimates are
/// unordered when neither cumulative profile dominates the other.
std::partial_ordering dominates(const MultisetEstimate& a, const MultisetEstimate& b);

/// Minimal one-step moves transforming `from` into `to`, split by direction.
ProximityVector proximity(const MultisetEstimate& from, const MultisetEstimate& to);

/// Component-wise sum. Inputs must share the level count; cardinalities add.
MultisetEstimate integrate(std::span<const MultisetEstimate> estimates);

/// Minimizers of the total proximity magnitude to a set of inputs.
struct MedianResult {
  /// All minimizers, in enumeration order (so ties.front() is poset-maximal
  /// among the ties with the lexicographically largest profile).
  std::vector<MultisetEstimate> ties;
  long long deviation = 0;

  const MultisetEstimate& representative() const { return ties.front(); }
};

/// Median over the interval estimates of the inputs' scale.
MedianResult generalized_median(std::span<const MultisetEstimate> estimates);

/// Median over an explicit candidate set (callers that already hold an
/// enumeration avoid re-enumerating per call).
MedianResult generalized_median(std::span<const MultisetEstimate> estimates,
                                std::span<const MultisetEstimate> candidates);

/// Median restricted to the input estimates themselves.
MedianResult set_median(std::span<const MultisetEstimate> estimates);

/// Covering relations of a set of mutually distinct same-scale estimates:
/// (i, j) means poset[i] covers poset[j].
std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(
    std::span<const MultisetEstimate> poset);

}  // namespace morphsyn
