#pragma once

// Slow reference implementations. Each one follows the definition directly,
// with no tables, bitsets or shortcuts, so the fast paths can be compared
// against something obviously right.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline u64 mulmod(u64 a, u64 b, u64 p) { return a * b % p; }  // p < 2^32 only

inline u64 inverse(u64 x, u64 p) {
  for (u64 y = 1; y < p; ++y) {
    if (mulmod(x, y, p) == 1) return y;
  }
  return 0;
}

inline u64 order(u64 x, u64 p) {
  u64 k = 1;
  for (u64 y = x % p; y != 1; y = mulmod(y, x, p)) ++k;
  return k;
}

inline u64 least_primitive_root(u64 p) {
  for (u64 g = 2;; ++g) {
    if (order(g, p) == p - 1) return g;
  }
}

inline u64 dlog(u64 g, u64 x, u64 p) {
  u64 y = 1;
  for (u64 k = 0; k < p - 1; ++k, y = mulmod(y, g, p)) {
    if (y == x) return k;
  }
  return p;
}

inline bool is_square(u64 x, u64 p) {
  for (u64 y = 1; y < p; ++y) {
    if (mulmod(y, y, p) == x % p) return true;
  }
  return false;
}

using Set = std::set<u64>;

inline Set sumset(const Set& a, const Set& b, u64 p) {
  Set out;
  for (u64 x : a) {
    for (u64 y : b) out.insert((x + y) % p);
  }
  return out;
}

/// {a (b + c)} by the triple loop.
inline Set a_aplusa(const Set& a, u64 p) {
  Set out;
  for (u64 x : a) {
    for (u64 y : a) {
      for (u64 z : a) out.insert(mulmod(x, (y + z) % p, p));
    }
  }
  return out;
}

inline std::vector<u64> rho(const Set& a, u64 p) {
  std::vector<u64> r(p, 0);
  for (u64 x : a) {
    for (u64 y : a) {
      for (u64 z : a) ++r[mulmod(x, (y + z) % p, p)];
    }
  }
  return r;
}

inline u64 additive_energy(const Set& a, u64 p) {
  u64 e = 0;
  for (u64 w : a) {
    for (u64 x : a) {
      for (u64 y : a) {
        for (u64 z : a) e += (w + p - x) % p == (y + p - z) % p;
      }
    }
  }
  return e;
}

inline u64 multiplicative_energy(const Set& a, u64 p) {
  u64 e = 0;
  for (u64 w : a) {
    for (u64 x : a) {
      for (u64 y : a) {
        for (u64 z : a) e += mulmod(w, x, p) == mulmod(y, z, p);
      }
    }
  }
  return e;
}

inline std::complex<double> e_p(u64 k, u64 p) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k % p) / static_cast<double>(p));
}

inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& f) {
  const u64 p = f.size();
  std::vector<std::complex<double>> out(p);
  for (u64 t = 0; t < p; ++t) {
    for (u64 x = 0; x < p; ++x) out[t] += f[x] * e_p(t * x, p);
  }
  return out;
}

inline std::complex<double> kloosterman(u64 a, u64 b, u64 p) {
  std::complex<double> acc = 0;
  for (u64 k = 1; k < p; ++k) acc += e_p(a * k + b * inverse(k, p), p);
  return acc;
}

/// Whether x avoids A(A+A) for the subset of F_p* encoded by `mask` (bit i is i + 1).
inline bool avoids(u64 mask, u64 x, u64 p) {
  Set a;
  for (u64 i = 0; i + 1 < p; ++i) {
    if ((mask >> i) & 1U) a.insert(i + 1);
  }
  return !a_aplusa(a, p).contains(x);
}

/// Largest |A| over all 2^(p-1) subsets of F_p* with x missing from A(A+A).
inline u64 max_avoiding(u64 x, u64 p) {
  u64 best = 0;
  for (u64 mask = 0; mask < (u64{1} << (p - 1)); ++mask) {
    const u64 size = static_cast<u64>(std::popcount(mask));
    if (size > best && avoids(mask, x, p)) best = size;
  }
  return best;
}

inline Set to_set(const std::vector<u64>& xs) { return Set(xs.begin(), xs.end()); }

}  // namespace oracle
