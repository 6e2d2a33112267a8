#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "lacuna/rational.hpp"

namespace lacuna {

/// Strictly increasing positive integers with certified growth metadata.
/// `epsilon` is present when the ratio condition terms[j+1] >= (1+eps)*terms[j]
/// has been verified exactly; `doubling_span` is the smallest M such that
/// terms[j+M] > 2*terms[j] for every j valid on this truncation.
struct LacunarySequence {
  std::vector<std::uint64_t> terms;
  std::optional<Rational> epsilon;
  std::size_t doubling_span = 1;
};

namespace detail {

inline std::size_t compute_doubling_span(const std::vector<std::uint64_t>& t) {
  for (std::size_t m = 1; m < t.size(); ++m) {
    bool ok = true;
    for (std::size_t j = 0; j + m < t.size(); ++j) {
      if (t[j + m] <= 2 * t[j]) {
        ok = false;
        break;
      }
    }
    if (ok) return m;
  }
  return t.size();  // vacuous on this truncation
}

}  // namespace detail

/// Smallest K >= 1 with (1+eps)^K strictly above `threshold` (exact powers).
inline std::size_t growth_exponent(const Rational& eps, const Rational& threshold) {
  if (eps <= 0) fail(Err::InvalidArgument, "epsilon must be positive");
  Rational ratio = 1 + eps;
  Rational p = ratio;
  std::size_t k = 1;
  while (p <= threshold) {
    p *= ratio;
    ++k;
  }
  return k;
}

/// K(eps) with (1+eps)^K > 2: the exact doubling-span bound for a
/// ratio-certified sequence. Agrees with ceil(1/eps) except at eps = 1,
/// where the power equals 2 and one more step is needed.
inline std::size_t doubling_span_bound(const Rational& eps) { return growth_exponent(eps, Rational(2)); }

inline LacunarySequence validate(const std::vector<std::uint64_t>& terms,
                                 std::optional<Rational> epsilon = std::nullopt) {
  if (terms.empty()) fail(Err::EmptySequence, "no terms");
  if (terms.front() < 1) fail(Err::NotIncreasing, "terms must be >= 1");
  for (std::size_t j = 0; j + 1 < terms.size(); ++j)
    if (terms[j + 1] <= terms[j])
      fail(Err::NotIncreasing, "terms[" + std::to_string(j + 1) + "] does not increase",
           static_cast<long>(j + 1));
  if (epsilon) {
    if (*epsilon <= 0) fail(Err::InvalidArgument, "epsilon must be positive");
    Rational ratio = 1 + *epsilon;
    for (std::size_t j = 0; j + 1 < terms.size(); ++j) {
      // terms[j+1] >= (1+eps)*terms[j], compared exactly
      if (Rational(Integer(terms[j + 1])) < ratio * Rational(Integer(terms[j])))
        fail(Err::RatioViolation, "ratio below 1+epsilon at index " + std::to_string(j + 1),
             static_cast<long>(j + 1));
    }
  }
  LacunarySequence s{terms, std::move(epsilon), detail::compute_doubling_span(terms)};
  return s;
}

/// n_1 = start, n_{j+1} = smallest integer strictly greater than (1+eps)*n_j.
inline LacunarySequence generate_geometric(const Rational& epsilon, std::size_t count,
                                           std::uint64_t start = 1) {
  if (epsilon <= 0) fail(Err::InvalidArgument, "epsilon must be positive");
  if (count < 1) fail(Err::InvalidArgument, "count must be >= 1");
  if (start < 1) fail(Err::InvalidArgument, "start must be >= 1");
  Rational ratio = 1 + epsilon;
  std::vector<std::uint64_t> terms;
  terms.reserve(count);
  terms.push_back(start);
  while (terms.size() < count) {
    Rational next = ratio * Rational(Integer(terms.back()));
    Integer f = floor_int(next) + 1;  // strictly greater, so floor+1
    if (!f.fits_ulong_p()) fail(Err::TooLarge, "term exceeds 64-bit range");
    terms.push_back(f.get_ui());
  }
  return validate(terms, epsilon);
}

/// Sorted deduplicated union. The doubling span is recomputed from the merged
/// terms; it is guaranteed (and asserted) to be at most sum_i K(eps_i) with
/// K as in doubling_span_bound.
inline LacunarySequence merge_union(const std::vector<LacunarySequence>& seqs) {
  if (seqs.empty()) fail(Err::EmptySequence, "nothing to merge");
  std::size_t bound = 0;
  std::vector<std::uint64_t> merged;
  for (const auto& s : seqs) {
    if (!s.epsilon) fail(Err::EpsilonRequired, "merge_union needs ratio-certified inputs");
    bound += doubling_span_bound(*s.epsilon);
    merged.insert(merged.end(), s.terms.begin(), s.terms.end());
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  LacunarySequence out = validate(merged);
  if (out.doubling_span > bound)
    throw std::logic_error("merged doubling span exceeds the certified bound");
  return out;  // no epsilon: lacunarity itself does not transfer to unions
}

/// Partition into K subsequences {n_{Kj+r}}, r = 1..K, with K the smallest
/// integer such that (1+eps)^K > 4 exactly; each subsequence then has
/// consecutive ratio strictly above 4.
inline std::vector<LacunarySequence> split_subsequences(const LacunarySequence& seq) {
  if (!seq.epsilon) fail(Err::EpsilonRequired, "split needs a ratio-certified sequence");
  std::size_t k = growth_exponent(*seq.epsilon, Rational(4));
  std::vector<LacunarySequence> out;
  for (std::size_t r = 0; r < k && r < seq.terms.size(); ++r) {
    std::vector<std::uint64_t> sub;
    for (std::size_t i = r; i < seq.terms.size(); i += k) sub.push_back(seq.terms[i]);
    out.push_back(validate(sub));
  }
  return out;
}

}  // namespace lacuna
