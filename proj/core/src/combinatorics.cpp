#include "eddeg/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "eddeg/errors.hpp"

namespace edd::core {
namespace {

[[noreturn]] void throw_overflow(const char* what, std::uint64_t cap) {
  std::ostringstream msg;
  msg << what << ": enumeration exceeds the cap of " << cap << " items";
  throw Overflow(msg.str());
}

}  // namespace

std::uint64_t binomial(int m, int r, std::uint64_t cap) {
  if (m < 0 || r < 0 || r > m)
    throw InvalidParameter("binomial: need 0 <= r <= m");
  r = std::min(r, m - r);
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    // result * (m - r + i) cannot overflow: result stays <= cap < 2^24 * ...
    // guard anyway by dividing first where exact.
    const std::uint64_t num = static_cast<std::uint64_t>(m - r + i);
    if (result > (static_cast<std::uint64_t>(-1)) / num)
      throw_overflow("binomial", cap);
    result = result * num / static_cast<std::uint64_t>(i);
    if (result > cap) throw_overflow("binomial", cap);
  }
  return result;
}

std::uint64_t multinomial(const std::vector<int>& sizes, std::uint64_t cap) {
  if (sizes.empty()) throw InvalidParameter("multinomial: empty size list");
  int n = 0;
  for (int s : sizes) {
    if (s < 0) throw InvalidParameter("multinomial: negative block size");
    n += s;
  }
  // Product of binomials C(n, s1) * C(n - s1, s2) * ...
  std::uint64_t result = 1;
  int rest = n;
  for (int s : sizes) {
    const std::uint64_t factor = binomial(rest, s, cap);
    if (factor > 0 && result > cap / factor)
      throw_overflow("multinomial", cap);
    result *= factor;
    rest -= s;
  }
  return result;
}

std::uint64_t two_pow(int k, std::uint64_t cap) {
  if (k < 0) throw InvalidParameter("two_pow: negative exponent");
  if (k >= 63) throw_overflow("two_pow", cap);
  const std::uint64_t result = std::uint64_t{1} << k;
  if (result > cap) throw_overflow("two_pow", cap);
  return result;
}

std::vector<BlockAssignment> block_assignments(
    const std::vector<int>& block_sizes, std::uint64_t cap) {
  for (int s : block_sizes) {
    if (s <= 0)
      throw InvalidParameter("block_assignments: block sizes must be positive");
  }
  const std::uint64_t count = multinomial(block_sizes, cap);

  // Start from the lexicographically smallest label vector and walk the
  // distinct permutations in order.
  std::vector<int> labels;
  for (std::size_t j = 0; j < block_sizes.size(); ++j)
    labels.insert(labels.end(), block_sizes[j], static_cast<int>(j) + 1);

  std::vector<BlockAssignment> out;
  out.reserve(count);
  do {
    out.push_back(BlockAssignment{labels, block_sizes});
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

std::vector<std::vector<int>> k_subsets(int m, int r, std::uint64_t cap) {
  if (m < 0 || r < 0 || r > m)
    throw InvalidParameter("k_subsets: need 0 <= r <= m");
  const std::uint64_t count = binomial(m, r, cap);

  std::vector<std::vector<int>> out;
  out.reserve(count);
  std::vector<int> cur(r);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    // Advance to the next subset in lexicographic order.
    int i = r - 1;
    while (i >= 0 && cur[i] == m - r + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<int>> sign_vectors(int k, std::uint64_t cap) {
  if (k < 0) throw InvalidParameter("sign_vectors: need k >= 0");
  const std::uint64_t count = two_pow(k, cap);

  std::vector<std::vector<int>> out;
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<int> signs(k);
    for (int j = 0; j < k; ++j) {
      // Most significant bit first; 0 encodes +1 so the all-plus vector leads.
      const bool minus = (code >> (k - 1 - j)) & 1u;
      signs[j] = minus ? -1 : +1;
    }
    out.push_back(std::move(signs));
  }
  return out;
}

std::string subset_label(const std::vector<int>& subset) {
  std::string out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(subset[i] + 1);  // 1-based positions in labels
  }
  return out;
}

std::string signs_label(const std::vector<int>& signs) {
  std::string out;
  out.reserve(signs.size());
  for (int s : signs) out += (s > 0) ? '+' : '-';
  return out;
}

}  // namespace edd::core
