#include "hptdyn/combinatorics.hpp"

#include <limits>
#include <string>

#include "hptdyn/errors.hpp"

namespace hptdyn {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw CapacityError(std::string(what) + ": exceeds 64-bit range");
  return out;
}

void check_counts(std::span<const int> counts, int total) {
  long long sum = 0;
  for (int c : counts) {
    if (c < 0) throw DomainError("negative player count");
    sum += c;
  }
  if (sum != total)
    throw DomainError("counts sum to " + std::to_string(sum) + ", expected " + std::to_string(total));
}

}  // namespace

std::uint64_t binomial(int n, int r) {
  if (n < 0 || r < 0) throw DomainError("binomial of negative argument");
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  u128 acc = 1;
  for (int i = 0; i < r; ++i) {
    // acc * (n - i) is divisible by (i + 1) since acc = C(n, i) * ... at every step.
    acc = acc * static_cast<u128>(n - i) / static_cast<u128>(i + 1);
    if (acc > std::numeric_limits<std::uint64_t>::max()) throw CapacityError("binomial coefficient exceeds 64-bit range");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t multinomial(std::span<const int> counts, int total) {
  check_counts(counts, total);
  std::uint64_t out = 1;
  int remaining = total;
  for (int c : counts) {
    out = checked_mul(out, binomial(remaining, c), "multinomial coefficient");
    remaining -= c;
  }
  return out;
}

std::uint64_t variant_combination(std::span<const int> counts, std::size_t i, int total) {
  check_counts(counts, total);
  if (i >= counts.size()) throw DomainError("strategy index out of range");
  if (counts[i] == 0) throw DomainError("variant combination requires at least one player on the focal strategy");
  std::uint64_t out = 1;
  int remaining = total - 1;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    const int c = l == i ? counts[l] - 1 : counts[l];
    out = checked_mul(out, binomial(remaining, c), "variant combination number");
    remaining -= c;
  }
  return out;
}

std::uint64_t composition_count(int n, int k) {
  if (n < 0 || k < 1) throw DomainError("composition count needs n >= 0 and k >= 1");
  if (n > std::numeric_limits<int>::max() - k) throw CapacityError("composition count exceeds integer range");
  return binomial(n + k - 1, k - 1);
}

std::vector<CountRow> enumerate_rows_symmetric(int n, int k) {
  if (n < 1 || k < 1) throw DomainError("enumeration needs n >= 1 and k >= 1");
  const std::uint64_t total = composition_count(n, k);
  std::vector<CountRow> rows;
  if (total > rows.max_size()) throw CapacityError("row count exceeds addressable range");
  rows.reserve(static_cast<std::size_t>(total));

  const auto last = static_cast<std::size_t>(k - 1);
  CountRow c(static_cast<std::size_t>(k), 0);
  c[0] = n;
  while (true) {
    rows.push_back(c);
    // rightmost non-zero entry among the first k-1 positions
    std::size_t p = last;
    for (std::size_t q = last; q-- > 0;) {
      if (c[q] > 0) {
        p = q;
        break;
      }
    }
    if (p == last) break;
    int tail = 0;
    for (std::size_t q = p + 1; q < c.size(); ++q) {
      tail += c[q];
      c[q] = 0;
    }
    --c[p];
    c[p + 1] = tail + 1;
  }
  return rows;
}

std::vector<PairCountRow> enumerate_rows_asymmetric(int m, int n, int k) {
  if (m < 1 || n < 1 || k < 1) throw DomainError("enumeration needs m, n, k >= 1");
  const std::uint64_t total = checked_mul(composition_count(m, k), composition_count(n, k), "asymmetric row count");
  std::vector<PairCountRow> rows;
  if (total > rows.max_size()) throw CapacityError("row count exceeds addressable range");
  rows.reserve(static_cast<std::size_t>(total));
  const auto outer = enumerate_rows_symmetric(m, k);
  const auto inner = enumerate_rows_symmetric(n, k);
  for (const auto& a : outer)
    for (const auto& b : inner) rows.push_back({a, b});
  return rows;
}

}  // namespace hptdyn
