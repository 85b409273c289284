#pragma once

// Brute-force reference computations. Each one avoids the code path of the
// routine it checks; they exist for the test and acceptance suites.

#include <cstdint>
#include <optional>
#include <vector>

#include "sumfree/bounds.hpp"
#include "sumfree/core.hpp"
#include "sumfree/sumsets.hpp"

namespace sumfree::oracle {

bool is_sum_free_triple_loop(const std::vector<int>& s, Convention conv);

std::uint64_t schur_edge_count(int n);
int delta2(int n);

std::vector<int> sumset(const std::vector<int>& a, const std::vector<int>& b);

/// Ascending y in the window with at most delta|S| escapes, via std::set lookups.
std::vector<std::int64_t> b_set(const std::vector<int>& s, Ratio delta);

/// Whether some progression of at most `max_length` terms contains S.
bool ap_cover_exists(const std::vector<int>& s, std::int64_t max_length);

std::uint64_t partitions(int k);
/// ell-subsets of {1..k} summing to k.
std::uint64_t distinct_partitions(int k, int ell);
std::uint64_t distinct_partitions_any_size(int k);

struct JansonPlain {
  double mu = 0;
  double delta = 0;
};

/// Direct double loop over ordered pairs of the family.
JansonPlain janson(const JansonInput& in);

}  // namespace sumfree::oracle
