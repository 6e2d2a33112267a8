#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "lacuna/rational.hpp"

namespace lacuna {

/// All dyadic machinery lives on a fixed 2^-62 grid: positions are unsigned
/// integers counting grid units, so set algebra is pure integer arithmetic
/// and every measure is exactly representable. Levels beyond 62 are refused.
inline constexpr int kGridBits = 62;
inline constexpr std::uint64_t kGridOne = std::uint64_t(1) << kGridBits;

/// Half-open dyadic interval [index*2^-level, (index+1)*2^-level).
struct DyadicInterval {
  std::uint64_t index = 0;
  int level = 0;

  Rational lo() const { return rat(Integer(index), Integer(1)) * pow2_rat(-level); }
  Rational width() const { return pow2_rat(-level); }
  Rational midpoint() const {
    return rat(Integer(2 * index + 1), Integer(1)) * pow2_rat(-(level + 1));
  }
  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

inline void check_level(int level) {
  if (level < 0) fail(Err::InvalidArgument, "negative dyadic level");
  if (level > kGridBits)
    fail(Err::LevelTooFine, "level " + std::to_string(level) + " exceeds the 2^-62 grid");
}

/// Half-open span in grid units, 0 <= lo < hi <= kGridOne.
struct Span {
  std::uint64_t lo = 0, hi = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

namespace detail {

inline void normalize_spans(std::vector<Span>& v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](const Span& s) { return s.lo >= s.hi; }),
          v.end());
  if (!std::is_sorted(v.begin(), v.end(),
                      [](const Span& a, const Span& b) { return a.lo < b.lo; }))
    std::sort(v.begin(), v.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (out > 0 && v[i].lo <= v[out - 1].hi)
      v[out - 1].hi = std::max(v[out - 1].hi, v[i].hi);
    else
      v[out++] = v[i];
  }
  v.resize(out);
}

inline std::vector<Span> subtract_spans(const std::vector<Span>& a, const std::vector<Span>& b) {
  std::vector<Span> out;
  out.reserve(a.size() + b.size());
  std::size_t ib = 0;
  for (const Span& s : a) {
    std::uint64_t lo = s.lo;
    while (ib < b.size() && b[ib].hi <= lo) ++ib;
    std::size_t j = ib;
    while (j < b.size() && b[j].lo < s.hi) {
      if (b[j].lo > lo) out.push_back({lo, b[j].lo});
      lo = std::max(lo, b[j].hi);
      if (lo >= s.hi) break;
      ++j;
    }
    if (lo < s.hi) out.push_back({lo, s.hi});
  }
  return out;
}

inline std::vector<Span> intersect_spans(const std::vector<Span>& a, const std::vector<Span>& b) {
  std::vector<Span> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    std::uint64_t lo = std::max(a[i].lo, b[j].lo);
    std::uint64_t hi = std::min(a[i].hi, b[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    (a[i].hi < b[j].hi ? i : j)++;
  }
  return out;
}

/// Total overlap in grid units, without materializing the intersection.
inline std::uint64_t intersect_units(const std::vector<Span>& a, const std::vector<Span>& b) {
  std::uint64_t units = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    std::uint64_t lo = std::max(a[i].lo, b[j].lo);
    std::uint64_t hi = std::min(a[i].hi, b[j].hi);
    if (lo < hi) units += hi - lo;
    (a[i].hi < b[j].hi ? i : j)++;
  }
  return units;
}

inline std::vector<Span> unite_spans(std::vector<Span> a, const std::vector<Span>& b) {
  a.insert(a.end(), b.begin(), b.end());
  normalize_spans(a);
  return a;
}

inline std::uint64_t span_units(const std::vector<Span>& v) {
  std::uint64_t u = 0;
  for (const Span& s : v) u += s.hi - s.lo;
  return u;
}

/// Greedy maximal-block walk over one span. Because canonical spans are
/// separated by gaps, each emitted block is maximal in the whole set.
template <typename Fn>
inline void for_each_block_in(const Span& s, Fn&& fn) {
  std::uint64_t lo = s.lo;
  while (lo < s.hi) {
    int align = lo == 0 ? kGridBits : std::countr_zero(lo);
    int fit = std::bit_width(s.hi - lo) - 1;
    int size = std::min(align, fit);
    fn(DyadicInterval{lo >> size, kGridBits - size});
    lo += std::uint64_t(1) << size;
  }
}

}  // namespace detail

/// Finite union of dyadic subintervals of [0,1) in canonical form: maximal
/// disjoint half-open spans, sorted. Two sets with the same points always
/// have identical representations. Value semantics, all operations pure.
class DyadicSet {
 public:
  DyadicSet() = default;

  static DyadicSet empty() { return DyadicSet(); }
  static DyadicSet full() { return DyadicSet(std::vector<Span>{{0, kGridOne}}); }

  static DyadicSet from_spans(std::vector<Span> spans) {
    for (const Span& s : spans)
      if (s.hi > kGridOne) fail(Err::InvalidArgument, "span beyond [0,1)");
    detail::normalize_spans(spans);
    return DyadicSet(std::move(spans));
  }

  static DyadicSet from_blocks(const std::vector<DyadicInterval>& blocks) {
    std::vector<Span> spans;
    spans.reserve(blocks.size());
    for (const DyadicInterval& b : blocks) {
      check_level(b.level);
      if (b.index >= (std::uint64_t(1) << b.level) && !(b.level == 0 && b.index == 0))
        fail(Err::InvalidArgument, "dyadic index out of range");
      std::uint64_t w = std::uint64_t(1) << (kGridBits - b.level);
      spans.push_back({b.index * w, (b.index + 1) * w});
    }
    return from_spans(std::move(spans));
  }

  bool is_empty() const { return spans_.empty(); }
  const std::vector<Span>& spans() const { return spans_; }
  std::size_t span_count() const { return spans_.size(); }

  Rational measure() const { return rat(Integer(detail::span_units(spans_)), Integer(kGridOne)); }
  std::uint64_t units() const { return detail::span_units(spans_); }

  DyadicSet unite(const DyadicSet& o) const {
    return DyadicSet(detail::unite_spans(spans_, o.spans_));
  }
  DyadicSet intersect(const DyadicSet& o) const {
    return DyadicSet(detail::intersect_spans(spans_, o.spans_));
  }
  DyadicSet subtract(const DyadicSet& o) const {
    return DyadicSet(detail::subtract_spans(spans_, o.spans_));
  }
  DyadicSet complement() const { return full().subtract(*this); }

  /// Exact membership for any rational in [0,1).
  bool contains(const Rational& x) const {
    if (x < 0 || x >= 1) return false;
    Integer t = x.get_num() << kGridBits;  // x * 2^62 as t / den
    const Integer& den = x.get_den();
    // last span with lo*den <= t
    std::size_t lo = 0, hi = spans_.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (Integer(Integer(spans_[mid].lo) * den) <= t)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo == 0) return false;
    const Span& s = spans_[lo - 1];
    return t < Integer(Integer(s.hi) * den);
  }

  template <typename Fn>
  void for_each_block(Fn&& fn) const {
    for (const Span& s : spans_) detail::for_each_block_in(s, fn);
  }

  /// Maximal-block view (the mixed-level decomposition).
  std::vector<DyadicInterval> blocks() const {
    std::vector<DyadicInterval> out;
    for_each_block([&](const DyadicInterval& b) { out.push_back(b); });
    return out;
  }

  /// Widest maximal block; ties resolved to the leftmost.
  DyadicInterval widest_block() const {
    if (spans_.empty()) fail(Err::EmptySet, "widest_block of empty set");
    DyadicInterval best{0, kGridBits + 1};
    for_each_block([&](const DyadicInterval& b) {
      if (b.level < best.level) best = b;
    });
    return best;
  }

  std::string to_debug_string() const {
    std::string out;
    for_each_block([&](const DyadicInterval& b) {
      out += std::to_string(b.index) + "/2^" + std::to_string(b.level) + " .. " +
             std::to_string(b.index + 1) + "/2^" + std::to_string(b.level) + "\n";
    });
    return out;
  }

  friend bool operator==(const DyadicSet&, const DyadicSet&) = default;

 private:
  explicit DyadicSet(std::vector<Span> spans) : spans_(std::move(spans)) {}
  std::vector<Span> spans_;
};

/// The unique level with 2^-(l+1) < 2*delta/n <= 2^-l.
inline int level_for(std::uint64_t n, const Rational& delta) {
  if (n < 1) fail(Err::InvalidArgument, "n must be >= 1");
  if (delta <= 0) fail(Err::InvalidArgument, "delta must be positive");
  Integer a = delta.get_den() * Integer(n);  // 1/t = a/b with t = 2 delta / n
  Integer b = delta.get_num() * 2;
  if (b > a) fail(Err::DeltaTooLarge, "2*delta/n exceeds 1");
  Integer f = a / b;
  int level = static_cast<int>(mpz_sizeinbase(f.get_mpz_t(), 2)) - 1;
  check_level(level);
  return level;
}

namespace detail {

/// Appends the level-`level` cover of the forbidden arcs of theta -> ||n theta||
/// < delta, restricted to [pane_lo, pane_hi), as sorted clipped spans.
/// Each open arc (k/n - delta/n, k/n + delta/n) is covered by the cells
/// [floor(lo*2^l), ceil(hi*2^l)-1], at most two per arc.
inline void append_cover_spans(std::uint64_t n, const Rational& delta, int level,
                               std::uint64_t pane_lo, std::uint64_t pane_hi,
                               std::vector<Span>& out) {
  const std::uint64_t cell = std::uint64_t(1) << (kGridBits - level);
  const auto clip = [&](std::uint64_t lo, std::uint64_t hi) {
    lo = std::max(lo, pane_lo);
    hi = std::min(hi, pane_hi);
    if (lo < hi) out.push_back({lo, hi});
  };

  // Arc around 0 always covers exactly cell 0 and the wrapped top cell.
  std::vector<Span> wrap_tail;
  clip(0, cell);

  if (n > 1) {
    const Integer p = delta.get_num(), q = delta.get_den();
    const Integer den = q * Integer(n);
    // candidate arc indices whose cover can reach the pane (cover extends
    // less than 8*delta/n, i.e. under 4 arc spacings, past each center)
    unsigned __int128 plo = static_cast<unsigned __int128>(pane_lo) * n;
    unsigned __int128 phi = static_cast<unsigned __int128>(pane_hi) * n;
    std::uint64_t k_lo = static_cast<std::uint64_t>(plo >> kGridBits);
    std::uint64_t k_hi = static_cast<std::uint64_t>(phi >> kGridBits) + 5;
    k_lo = k_lo > 5 ? k_lo - 5 : 0;
    k_hi = std::min<std::uint64_t>(k_hi, n - 1);

    bool fast = mpz_sizeinbase(den.get_mpz_t(), 2) + static_cast<std::size_t>(level) <= 120 &&
                q.fits_ulong_p() && p.fits_ulong_p();
    if (fast) {
      const unsigned __int128 qq = q.get_ui(), pp = p.get_ui();
      const unsigned __int128 dd = static_cast<unsigned __int128>(n) * qq;
      for (std::uint64_t k = std::max<std::uint64_t>(k_lo, 1); k <= k_hi; ++k) {
        unsigned __int128 kq = static_cast<unsigned __int128>(k) * qq;
        std::uint64_t c_lo = static_cast<std::uint64_t>(((kq - pp) << level) / dd);
        std::uint64_t c_hi =
            static_cast<std::uint64_t>((((kq + pp) << level) + dd - 1) / dd) - 1;
        clip(c_lo * cell, (c_hi + 1) * cell);
      }
    } else {
      for (std::uint64_t k = std::max<std::uint64_t>(k_lo, 1); k <= k_hi; ++k) {
        Integer kq = Integer(k) * q;
        Integer a = (kq - p) << level;
        Integer b = (kq + p) << level;
        Integer c_lo_z = a / den;                 // a >= 0 here
        Integer c_hi_z = ceil_div(b, den) - 1;
        clip(c_lo_z.get_ui() * cell, (c_hi_z.get_ui() + 1) * cell);
      }
    }
  }
  clip(kGridOne - cell, kGridOne);  // wrapped half of the arc around 0
  normalize_spans(out);
}

}  // namespace detail

/// Dyadic cover A of the forbidden set E = {theta in [0,1) : ||n theta|| < delta}
/// at the level fixed by level_for. Guarantees E inside A, at most two cells
/// per arc of E, and measure(A) < 8*delta.
inline DyadicSet cover_forbidden(std::uint64_t n, const Rational& delta) {
  int level = level_for(n, delta);
  std::vector<Span> spans;
  spans.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n + 2, 1 << 26)));
  detail::append_cover_spans(n, delta, level, 0, kGridOne, spans);
  return DyadicSet::from_spans(std::move(spans));
}

/// Midpoint of the widest maximal block (ties: leftmost); always interior.
inline Rational pick_point(const DyadicSet& s) {
  if (s.is_empty()) fail(Err::EmptySet, "pick_point of empty set");
  return s.widest_block().midpoint();
}

}  // namespace lacuna
