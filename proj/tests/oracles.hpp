#pragma once

// Brute-force reference computations, written without the library.

#include <cstddef>
#include <string>
#include <vector>

namespace oracle {

inline std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Pairs (x, y) with f(x) = g(y).
inline std::size_t pullback_size(const std::vector<std::size_t>& f, const std::vector<std::size_t>& g) {
  std::size_t n = 0;
  for (auto a : f)
    for (auto b : g) n += a == b;
  return n;
}

// Arrows of the standard multicategory of a one-object ring of order r over
// Set_f up to `bound`: one ring element per domain element.
inline std::size_t ring_arrows(std::size_t r, std::size_t bound) {
  std::size_t n = 0;
  for (std::size_t m = 0; m <= bound; ++m)
    for (std::size_t k = 0; k <= bound; ++k) n += power(k, m) * power(r, m);
  return n;
}

inline std::size_t finset_maps(std::size_t bound) { return ring_arrows(1, bound); }

// Pushforward along f by summing over fibers, as formal sums of symbols.
inline std::vector<std::string> fiber_sums(const std::vector<std::size_t>& f, const std::vector<std::string>& t,
                                           std::size_t cod) {
  std::vector<std::string> out(cod);
  for (std::size_t i = 0; i < f.size(); ++i) out[f[i]] += (out[f[i]].empty() ? "" : "+") + t[i];
  for (auto& s : out)
    if (s.empty()) s = "0";
  return out;
}

// Row of a function table over 2-element sets, first argument most significant.
inline std::size_t row2(const std::vector<int>& args) {
  std::size_t r = 0;
  for (int a : args) r = 2 * r + static_cast<std::size_t>(a);
  return r;
}

// Z/2 affine n-ary operation c0 + Σ x_i with all coefficients one.
inline int affine(int c0, const std::vector<int>& xs) {
  int r = c0;
  for (int x : xs) r ^= x;
  return r;
}

// Interchange law between two such binary operations with constants c and d.
inline bool interchange(int c, int d) {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          if (affine(c, {affine(d, {a, b}), affine(d, {x, y})}) != affine(d, {affine(c, {a, x}), affine(c, {b, y})}))
            return false;
        }
  return true;
}

// Products of matrix families exist in range iff every fiber's dimensions
// sum to at most max_dim.
inline bool dims_fit(const std::vector<int>& dims, const std::vector<std::size_t>& f, std::size_t cod, int max_dim) {
  std::vector<int> sum(cod, 0);
  for (std::size_t i = 0; i < f.size(); ++i) sum[f[i]] += dims[i];
  for (int s : sum)
    if (s > max_dim) return false;
  return true;
}

}  // namespace oracle
