#pragma once

// Hand-rolled random generators for property tests. All randomness flows
// through a caller-owned std::mt19937_64 so every suite is reproducible.

#include <cstdint>
#include <numeric>
#include <random>
#include <string>

#include "dehn/knot_expr.hpp"
#include "dehn/slope.hpp"

namespace testgen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Coprime (r, s) with 2 <= |r|, |s| <= bound and arbitrary signs and order.
inline std::pair<std::int64_t, std::int64_t> torus_pair(Rng& rng, std::int64_t bound = 9) {
  while (true) {
    const std::int64_t r = uniform(rng, 2, bound), s = uniform(rng, 2, bound);
    if (std::gcd(r, s) != 1) continue;
    return {coin(rng) ? r : -r, coin(rng) ? s : -s};
  }
}

// Cable parameters: 2 <= |s| <= 7, r != 0 coprime to s.
inline std::pair<std::int64_t, std::int64_t> cable_pair(Rng& rng) {
  while (true) {
    const std::int64_t s = uniform(rng, 2, 7) * (coin(rng) ? 1 : -1);
    const std::int64_t r = uniform(rng, -25, 25);
    if (r == 0 || std::gcd(std::abs(r), std::abs(s)) != 1) continue;
    return {r, s};
  }
}

inline std::string atom_name(Rng& rng) {
  static const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
  std::string name;
  const auto len = uniform(rng, 1, 6);
  for (std::int64_t i = 0; i < len; ++i) name.push_back(alphabet[uniform(rng, 0, alphabet.size() - 1)]);
  return name;
}

inline dehn::CuspShape cusp_shape(Rng& rng) {
  std::uniform_real_distribution<double> x(-4.0, 4.0);
  while (true) {
    dehn::CuspShape c{{x(rng), x(rng)}, {x(rng), x(rng)}};
    if (std::abs(c.lattice_determinant()) > 1e-3) return c;
  }
}

inline dehn::KnotExpr hyp_atom(Rng& rng) {
  const auto cusps = uniform(rng, 1, 3);
  std::vector<dehn::CuspShape> shapes;
  if (coin(rng)) {
    for (std::int64_t i = 0; i < cusps; ++i) shapes.push_back(cusp_shape(rng));
  }
  return dehn::KnotExpr::hyp(atom_name(rng), cusps, shapes);
}

// A tree whose canonical form is valid, but which is itself usually not in
// canonical form: swapped or negated torus parameters, negative winding
// numbers, nested and unsorted sums, cables of the unknot.
inline dehn::KnotExpr raw_knot(Rng& rng, int depth) {
  const int choice = static_cast<int>(uniform(rng, 0, depth > 0 ? 4 : 1));
  switch (choice) {
    case 0: {
      const auto [r, s] = torus_pair(rng);
      return dehn::KnotExpr::torus(r, s);
    }
    case 1:
      return hyp_atom(rng);
    case 2: {
      if (coin(rng, 0.15)) {
        const auto [r, s] = torus_pair(rng, 7);
        return dehn::KnotExpr::cable(r, s, dehn::KnotExpr::unknot());
      }
      const auto [r, s] = cable_pair(rng);
      return dehn::KnotExpr::cable(r, s, raw_knot(rng, depth - 1));
    }
    default: {
      std::vector<dehn::KnotExpr> parts;
      const auto n = uniform(rng, 2, 3);
      for (std::int64_t i = 0; i < n; ++i) parts.push_back(raw_knot(rng, depth - 1));
      return dehn::KnotExpr::sum(std::move(parts));
    }
  }
}

inline dehn::KnotExpr canonical_knot(Rng& rng, int depth) { return dehn::canonicalize(raw_knot(rng, depth)); }

// Inserts random whitespace at token boundaries.
inline std::string respace(const std::string& text, Rng& rng) {
  static const char* const blanks[] = {"", "", " ", "  ", "\t", "\n "};
  std::string out;
  bool in_name = false;
  for (char c : text) {
    if (c == '"') in_name = !in_name;
    if (!in_name && c == ')') out += blanks[uniform(rng, 0, 5)];
    out.push_back(c);
    if (!in_name && (c == '(' || c == ',' || c == ';')) out += blanks[uniform(rng, 0, 5)];
  }
  return out;
}

inline dehn::Slope slope(Rng& rng, std::int64_t max_p, std::int64_t max_q) {
  while (true) {
    const std::int64_t q = uniform(rng, 0, max_q), p = uniform(rng, -max_p, max_p);
    if (std::gcd(std::abs(p), q) != 1) continue;
    return dehn::Slope::normalized(p, q);
  }
}

}  // namespace testgen
