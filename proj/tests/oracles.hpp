#pragma once

// Independent reference computations used by the tests.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace oracle {

inline int mobius(int n)
{
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0)
        return 0;
      result = -result;
    }
  }
  return n > 1 ? -result : result;
}

/// Rank of the weight-k layer of the free Lie ring on n generators.
inline long long witt(long long n, int k)
{
  long long sum = 0;
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0)
      continue;
    long long p = 1;
    for (int i = 0; i < k / d; ++i)
      p *= n;
    sum += mobius(d) * p;
  }
  return sum / k;
}

inline long long gcd(long long a, long long b)
{
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

}  // namespace oracle
