#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace rba {

/// A (i_1, ..., i_k)-shuffle: a permutation of {1..n} increasing on each
/// consecutive block of positions. `image[p]` is sigma(p + 1), 1-based.
struct Shuffle {
  std::vector<std::size_t> blocks;
  std::vector<std::size_t> image;
  int sign = 1;

  std::size_t operator()(std::size_t position) const { return image[position - 1]; }
};

/// sigma(position) = value, both 1-based.
struct ImageConstraint {
  std::size_t position;
  std::size_t value;
};

inline int permutation_sign(std::span<const std::size_t> image) {
  std::size_t inversions = 0;
  for (std::size_t a = 0; a < image.size(); ++a)
    for (std::size_t b = a + 1; b < image.size(); ++b)
      if (image[a] > image[b]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

namespace detail {

// Values are placed in increasing order; each goes to the next open position
// of some block with room left, so each shuffle is produced exactly once.
inline void generate_shuffles(const std::vector<std::size_t>& blocks, const std::vector<std::size_t>& start,
                              std::vector<std::size_t>& filled, std::size_t value, std::size_t n,
                              std::vector<std::size_t>& image, std::span<const ImageConstraint> constraints,
                              std::vector<Shuffle>& out) {
  if (value > n) {
    Shuffle s{blocks, image, permutation_sign(image)};
    out.push_back(std::move(s));
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (filled[b] == blocks[b]) continue;
    const std::size_t pos = start[b] + filled[b];  // 0-based
    bool ok = true;
    for (const auto& c : constraints) {
      if (c.position == pos + 1 && c.value != value) ok = false;
      if (c.value == value && c.position != pos + 1) ok = false;
    }
    if (!ok) continue;
    image[pos] = value;
    ++filled[b];
    generate_shuffles(blocks, start, filled, value + 1, n, image, constraints, out);
    --filled[b];
  }
}

}  // namespace detail

/// All shuffles of the given block type satisfying the constraints, each with
/// its sign. Inconsistent constraints give an empty list.
inline std::vector<Shuffle> shuffles(std::span<const std::size_t> blocks,
                                     std::span<const ImageConstraint> constraints = {}) {
  std::vector<std::size_t> b(blocks.begin(), blocks.end());
  const std::size_t n = std::accumulate(b.begin(), b.end(), std::size_t{0});
  for (const auto& c : constraints) {
    if (c.position == 0 || c.position > n || c.value == 0 || c.value > n) return {};
  }
  std::vector<std::size_t> start(b.size(), 0);
  for (std::size_t i = 1; i < b.size(); ++i) start[i] = start[i - 1] + b[i - 1];
  std::vector<std::size_t> filled(b.size(), 0);
  std::vector<std::size_t> image(n, 0);
  std::vector<Shuffle> out;
  detail::generate_shuffles(b, start, filled, 1, n, image, constraints, out);
  return out;
}

inline std::vector<Shuffle> shuffles(std::initializer_list<std::size_t> blocks,
                                     std::initializer_list<ImageConstraint> constraints = {}) {
  std::vector<std::size_t> b(blocks);
  std::vector<ImageConstraint> c(constraints);
  return shuffles(std::span<const std::size_t>(b), std::span<const ImageConstraint>(c));
}

}  // namespace rba
