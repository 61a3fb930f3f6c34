#include "dehn/homology.hpp"

#include <algorithm>
#include <cstdint>

namespace dehn {

namespace {

struct Overflow {};

std::int64_t checked_mul_sub(std::int64_t a, std::int64_t b, std::int64_t c) {
  std::int64_t prod = 0, out = 0;
  if (__builtin_mul_overflow(b, c, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow{};
  return out;
}

Integer checked_mul_sub(const Integer& a, const Integer& b, const Integer& c) { return a - b * c; }

bool is_unit(std::int64_t x) { return x == 1 || x == -1; }
bool is_unit(const Integer& x) { return x == 1 || x == -1; }

Integer to_integer(std::int64_t x) { return Integer(x); }
const Integer& to_integer(const Integer& x) { return x; }

template <class T>
Integer reduce_and_measure(std::vector<std::vector<T>> m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<bool> row_live(rows, true), col_live(cols, true);
  std::size_t live_cols = cols;

  // Unit-pivot elimination: each step drops one generator and one relation
  // without changing the presented group.
  bool progress = true;
  while (progress && live_cols > 0) {
    progress = false;
    for (std::size_t i = 0; i < rows && !progress; ++i) {
      if (!row_live[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!col_live[j] || !is_unit(m[i][j])) continue;
        const T pivot = m[i][j];
        for (std::size_t k = 0; k < rows; ++k) {
          if (k == i || !row_live[k] || m[k][j] == 0) continue;
          const T factor = m[k][j] * pivot;  // pivot is its own inverse
          for (std::size_t c = 0; c < cols; ++c) {
            if (col_live[c] && m[i][c] != 0) m[k][c] = checked_mul_sub(m[k][c], factor, m[i][c]);
          }
        }
        row_live[i] = false;
        col_live[j] = false;
        --live_cols;
        progress = true;
        break;
      }
    }
  }

  std::vector<std::vector<Integer>> rest;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!row_live[i]) continue;
    std::vector<Integer> row;
    row.reserve(live_cols);
    bool nonzero = false;
    for (std::size_t j = 0; j < cols; ++j) {
      if (!col_live[j]) continue;
      row.push_back(to_integer(m[i][j]));
      nonzero = nonzero || m[i][j] != 0;
    }
    if (nonzero) rest.push_back(std::move(row));
  }
  return cokernel_order(rest, live_cols);
}

}  // namespace

std::vector<std::vector<Integer>> Presentation::matrix() const {
  std::vector<std::vector<Integer>> m(relations_.size(), std::vector<Integer>(generators_, Integer(0)));
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    for (const auto& [gen, coeff] : relations_[i]) m[i][gen] += coeff;
  }
  return m;
}

Integer group_order(const Presentation& pres) {
  const auto exact = pres.matrix();
  std::vector<std::vector<std::int64_t>> small(exact.size(), std::vector<std::int64_t>(pres.generator_count(), 0));
  bool fits = true;
  for (std::size_t i = 0; i < exact.size() && fits; ++i) {
    for (std::size_t j = 0; j < exact[i].size(); ++j) {
      const auto v = to_int64(exact[i][j]);
      if (!v) {
        fits = false;
        break;
      }
      small[i][j] = *v;
    }
  }
  if (fits) {
    try {
      return reduce_and_measure(std::move(small), pres.generator_count());
    } catch (const Overflow&) {
    }
  }
  return reduce_and_measure(exact, pres.generator_count());
}

std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  const std::size_t diag = std::min(rows, cols);
  std::vector<Integer> out;
  out.reserve(diag);

  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      Integer best;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < best)) {
            best = abs(m[i][j]);
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) {
        out.resize(diag, Integer(0));
        return out;
      }
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const Integer f = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= f * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const Integer f = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= f * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility condition: fold an offending row into the pivot row.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t c = t; c < cols; ++c) m[t][c] += m[i][c];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    out.push_back(abs(m[t][t]));
  }
  return out;
}

Integer cokernel_order(const std::vector<std::vector<Integer>>& m, std::size_t cols) {
  if (cols == 0) return 1;
  if (m.size() < cols) return 0;
  const auto inv = smith_invariants(m);
  Integer order = 1;
  std::size_t rank = 0;
  for (const auto& d : inv) {
    if (d == 0) continue;
    ++rank;
    order *= d;
  }
  return rank == cols ? order : Integer(0);
}

}  // namespace dehn
