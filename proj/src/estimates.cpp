#include "morphsyn/estimates.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

namespace morphsyn {

namespace {

void check_scale(const Scale& scale) {
  if (scale.levels < 1) fail(Errc::schema_error, "scale needs at least one level");
  if (scale.cardinality < 1) fail(Errc::schema_error, "scale cardinality must be positive");
}

std::vector<int> profile_of(const std::vector<int>& counts) {
  std::vector<int> out;
  out.reserve(counts.size() - 1);
  int running = 0;
  for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
    running += counts[i];
    out.push_back(running);
  }
  return out;
}

long long l1(const std::vector<int>& a, const std::vector<int>& b) {
  long long d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

void require_same_scale(const MultisetEstimate& a, const MultisetEstimate& b) {
  if (!(a.scale() == b.scale()))
    fail(Errc::scale_mismatch,
         a.scale().str() + " vs " + b.scale().str());
}

// Strips optional ASCII whitespace around tokens; the grammar itself is exact.
std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail(Errc::parse_error, "bad " + std::string(what) + ": '" + std::string(s) + "'");
  return value;
}

std::vector<int> parse_count_vector(std::string_view text) {
  std::string_view s = trim(text);
  if (s.size() < 3 || s.front() != '(' || s.back() != ')')
    fail(Errc::parse_error, "estimate must look like (2,1,0,0), got '" + std::string(text) + "'");
  s.remove_prefix(1);
  s.remove_suffix(1);
  std::vector<int> counts;
  while (true) {
    const std::size_t comma = s.find(',');
    counts.push_back(parse_int(s.substr(0, comma), "count"));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return counts;
}

}  // namespace

std::string Scale::str() const {
  return "P" + std::to_string(levels) + "," + std::to_string(cardinality);
}

Scale Scale::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty() || s.front() != 'P')
    fail(Errc::parse_error, "scale must look like P4,3, got '" + std::string(text) + "'");
  s.remove_prefix(1);
  const std::size_t comma = s.find(',');
  if (comma == std::string_view::npos)
    fail(Errc::parse_error, "scale must look like P4,3, got '" + std::string(text) + "'");
  Scale scale{parse_int(s.substr(0, comma), "level count"),
              parse_int(s.substr(comma + 1), "cardinality")};
  check_scale(scale);
  return scale;
}

MultisetEstimate::MultisetEstimate(Scale scale, std::vector<int> counts)
    : scale_(scale), counts_(std::move(counts)) {
  check_scale(scale_);
  if (static_cast<int>(counts_.size()) != scale_.levels)
    fail(Errc::wrong_length, "expected " + std::to_string(scale_.levels) +
                                 " counts, got " + std::to_string(counts_.size()));
  long long sum = 0;
  for (int c : counts_) {
    if (c < 0) fail(Errc::wrong_length, "counts must be non-negative");
    sum += c;
  }
  if (sum != scale_.cardinality)
    fail(Errc::cardinality_mismatch, "counts sum to " + std::to_string(sum) +
                                         ", scale cardinality is " +
                                         std::to_string(scale_.cardinality));
  int first = -1, last = -1;
  for (int i = 0; i < scale_.levels; ++i) {
    if (counts_[i] > 0) {
      if (first < 0) first = i;
      last = i;
    }
  }
  interval_ = true;
  for (int i = first; i <= last; ++i)
    if (counts_[i] == 0) interval_ = false;
}

MultisetEstimate MultisetEstimate::parse(std::string_view text) {
  std::vector<int> counts = parse_count_vector(text);
  const int levels = static_cast<int>(counts.size());
  const int sum = std::accumulate(counts.begin(), counts.end(), 0);
  return MultisetEstimate(Scale{levels, sum}, std::move(counts));
}

MultisetEstimate MultisetEstimate::parse(std::string_view text, const Scale& scale) {
  return MultisetEstimate(scale, parse_count_vector(text));
}

std::vector<int> MultisetEstimate::cumulative_profile() const {
  return profile_of(counts_);
}

std::string MultisetEstimate::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts_[i]);
  }
  out += ')';
  return out;
}

std::uint64_t multiset_coefficient(int levels, int cardinality) {
  check_scale(Scale{levels, cardinality});
  // C(levels + cardinality - 1, k) with the smaller cofactor as k.
  const std::uint64_t n = static_cast<std::uint64_t>(levels) + cardinality - 1;
  const std::uint64_t k = std::min<std::uint64_t>(cardinality, levels - 1);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n-k+i) equals C(n-k+i, i) * i, so the division is exact.
    const unsigned __int128 next =
        static_cast<unsigned __int128>(result) * (n - k + i) / i;
    if (next > std::numeric_limits<std::uint64_t>::max())
      fail(Errc::overflow, "multiset coefficient exceeds 64 bits for " +
                               Scale{levels, cardinality}.str());
    result = static_cast<std::uint64_t>(next);
  }
  return result;
}

std::vector<MultisetEstimate> enumerate_scale(const Scale& scale) {
  check_scale(scale);
  std::vector<MultisetEstimate> out;

  // Supports are the contiguous grade ranges; within a range of width k the
  // counts are the compositions of the cardinality into k positive parts.
  std::vector<int> parts;
  auto emit = [&](int start) {
    std::vector<int> counts(scale.levels, 0);
    for (std::size_t i = 0; i < parts.size(); ++i) counts[start + i] = parts[i];
    out.emplace_back(scale, std::move(counts));
  };
  auto compose = [&](auto&& self, int remaining, int slots, int start) -> void {
    if (slots == 1) {
      parts.push_back(remaining);
      emit(start);
      parts.pop_back();
      return;
    }
    for (int take = 1; take + slots - 1 <= remaining; ++take) {
      parts.push_back(take);
      self(self, remaining - take, slots - 1, start);
      parts.pop_back();
    }
  };
  const int max_width = std::min(scale.levels, scale.cardinality);
  for (int width = 1; width <= max_width; ++width)
    for (int start = 0; start + width <= scale.levels; ++start)
      compose(compose, scale.cardinality, width, start);

  std::sort(out.begin(), out.end(), [](const MultisetEstimate& a, const MultisetEstimate& b) {
    return a.cumulative_profile() > b.cumulative_profile();
  });
  return out;
}

std::partial_ordering dominates(const MultisetEstimate& a, const MultisetEstimate& b) {
  require_same_scale(a, b);
  const std::vector<int> pa = a.cumulative_profile();
  const std::vector<int> pb = b.cumulative_profile();
  bool ge = true, le = true;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i] < pb[i]) ge = false;
    if (pa[i] > pb[i]) le = false;
  }
  if (ge && le) return std::partial_ordering::equivalent;
  if (ge) return std::partial_ordering::greater;
  if (le) return std::partial_ordering::less;
  return std::partial_ordering::unordered;
}

ProximityVector proximity(const MultisetEstimate& from, const MultisetEstimate& to) {
  require_same_scale(from, to);
  const std::vector<int> pf = from.cumulative_profile();
  const std::vector<int> pt = to.cumulative_profile();
  ProximityVector delta;
  for (std::size_t i = 0; i < pf.size(); ++i) {
    if (pt[i] > pf[i]) delta.improvements += pt[i] - pf[i];
    if (pf[i] > pt[i]) delta.degradations += pf[i] - pt[i];
  }
  return delta;
}

MultisetEstimate integrate(std::span<const MultisetEstimate> estimates) {
  if (estimates.empty()) fail(Errc::empty_input, "nothing to integrate");
  const int levels = estimates.front().scale().levels;
  std::vector<int> counts(levels, 0);
  int cardinality = 0;
  for (const MultisetEstimate& e : estimates) {
    if (e.scale().levels != levels)
      fail(Errc::scale_mismatch, "integration mixes " + std::to_string(levels) + "-level and " +
                                     std::to_string(e.scale().levels) + "-level estimates");
    for (int i = 0; i < levels; ++i) counts[i] += e.counts()[i];
    cardinality += e.scale().cardinality;
  }
  return MultisetEstimate(Scale{levels, cardinality}, std::move(counts));
}

namespace {

MedianResult median_over(std::span<const MultisetEstimate> candidates,
                         std::span<const MultisetEstimate> estimates) {
  std::vector<std::vector<int>> input_profiles;
  input_profiles.reserve(estimates.size());
  for (const MultisetEstimate& e : estimates) {
    require_same_scale(estimates.front(), e);
    input_profiles.push_back(e.cumulative_profile());
  }

  MedianResult result;
  result.deviation = std::numeric_limits<long long>::max();
  for (const MultisetEstimate& m : candidates) {
    require_same_scale(m, estimates.front());
    const std::vector<int> pm = m.cumulative_profile();
    long long total = 0;
    for (const std::vector<int>& pe : input_profiles) total += l1(pm, pe);
    if (total < result.deviation) {
      result.deviation = total;
      result.ties.clear();
    }
    if (total == result.deviation) result.ties.push_back(m);
  }
  // Candidates arrive in descending profile order, so ties.front() is the
  // lexicographically largest minimizer and cannot be dominated by a tie.
  return result;
}

}  // namespace

MedianResult generalized_median(std::span<const MultisetEstimate> estimates) {
  if (estimates.empty()) fail(Errc::empty_input, "median of an empty set");
  return median_over(enumerate_scale(estimates.front().scale()), estimates);
}

MedianResult generalized_median(std::span<const MultisetEstimate> estimates,
                                std::span<const MultisetEstimate> candidates) {
  if (estimates.empty()) fail(Errc::empty_input, "median of an empty set");
  if (candidates.empty()) fail(Errc::empty_input, "median needs candidates");
  return median_over(candidates, estimates);
}

MedianResult set_median(std::span<const MultisetEstimate> estimates) {
  if (estimates.empty()) fail(Errc::empty_input, "median of an empty set");
  std::vector<MultisetEstimate> distinct;
  for (const MultisetEstimate& e : estimates)
    if (std::find(distinct.begin(), distinct.end(), e) == distinct.end())
      distinct.push_back(e);
  std::sort(distinct.begin(), distinct.end(),
            [](const MultisetEstimate& a, const MultisetEstimate& b) {
              return a.cumulative_profile() > b.cumulative_profile();
            });
  return median_over(distinct, estimates);
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(
    std::span<const MultisetEstimate> poset) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    for (std::size_t j = 0; j < poset.size(); ++j) {
      if (i == j || dominates(poset[i], poset[j]) != std::partial_ordering::greater)
        continue;
      bool covered = true;
      for (std::size_t k = 0; k < poset.size() && covered; ++k) {
        if (k == i || k == j) continue;
        if (dominates(poset[i], poset[k]) == std::partial_ordering::greater &&
            dominates(poset[k], poset[j]) == std::partial_ordering::greater)
          covered = false;
      }
      if (covered) edges.emplace_back(i, j);
    }
  }
  return edges;
}

}  // namespace morphsyn
