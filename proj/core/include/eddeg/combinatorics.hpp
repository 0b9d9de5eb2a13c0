#pragma once

// Combinatorial index sets driving the closed-form enumerations: multiset
// block assignments, k-subsets and sign vectors, plus their exact counts.
// Every generator is capped so oversized requests fail fast instead of
// exhausting memory.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "eddeg/matrix.hpp"

namespace edd::core {

// Default ceiling on the number of generated items.
inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

// n! / (sizes[0]! * ... * sizes.back()!) where n = sum(sizes).
// Throws Overflow if the count exceeds `cap`.
std::uint64_t multinomial(const std::vector<int>& sizes,
                          std::uint64_t cap = kEnumerationCap);

// Binomial coefficient C(m, r). Throws Overflow beyond `cap`.
std::uint64_t binomial(int m, int r, std::uint64_t cap = kEnumerationCap);

// 2^k. Throws Overflow beyond `cap`.
std::uint64_t two_pow(int k, std::uint64_t cap = kEnumerationCap);

// All distinct label vectors with the given block multiplicities, in
// lexicographic order. sizes must be positive; throws Overflow past `cap`.
std::vector<BlockAssignment> block_assignments(
    const std::vector<int>& block_sizes, std::uint64_t cap = kEnumerationCap);

// All r-element subsets of {0, ..., m-1} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int m, int r,
                                        std::uint64_t cap = kEnumerationCap);

// All vectors in {+1, -1}^k, ordered with +1 before -1 (so the all-plus
// vector comes first and the all-minus vector last).
std::vector<std::vector<int>> sign_vectors(int k,
                                           std::uint64_t cap = kEnumerationCap);

// Canonical label renderings used in reports: subsets print 1-based positions
// ("1,3"; empty subset prints ""), sign vectors print as "+-+".
std::string subset_label(const std::vector<int>& subset);
std::string signs_label(const std::vector<int>& signs);

}  // namespace edd::core
