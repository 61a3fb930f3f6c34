#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dehn/integer.hpp"

namespace dehn {

/// A finitely presented abelian group: generators 0..n-1 and relations given
/// as sparse integer rows. Used for first homology of pieces and of glued
/// manifolds.
class Presentation {
 public:
  using Row = std::vector<std::pair<std::size_t, Integer>>;

  std::size_t add_generator() { return generators_++; }
  std::size_t generator_count() const { return generators_; }

  /// Appends the relation sum(coeff * gen) = 0. Repeated generators accumulate.
  void add_relation(Row row) { relations_.push_back(std::move(row)); }
  const std::vector<Row>& relations() const { return relations_; }

  /// Dense relation matrix (rows = relations, columns = generators).
  std::vector<std::vector<Integer>> matrix() const;

 private:
  std::size_t generators_ = 0;
  std::vector<Row> relations_;
};

/// Order of the presented group, or 0 when the group is infinite.
///
/// Unit pivots are eliminated first (a Tietze reduction); the small remainder
/// goes through Smith reduction. Runs on checked 64-bit arithmetic and redoes
/// the computation with unbounded integers if anything overflows.
Integer group_order(const Presentation& pres);

/// Invariant factors d_1 | d_2 | ... of the matrix's Smith normal form,
/// zero factors included, one per min(rows, cols) diagonal position.
std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> m);

/// Order of the cokernel Z^cols / rowspace(m): product of the invariant
/// factors if the rank equals the column count, else 0.
Integer cokernel_order(const std::vector<std::vector<Integer>>& m, std::size_t cols);

}  // namespace dehn
