#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dehn/knot_expr.hpp"
#include "dehn/slope.hpp"

namespace dehn {

class AtlasError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AtlasIoError : public AtlasError {
 public:
  using AtlasError::AtlasError;
};

/// Enumeration bounds. Torus knots use 2 <= |r|, |s| <= max_rs; cables wrap
/// torus knots or cables with parameters in the same box (|r| >= 2,
/// 2 <= s <= max_rs) up to max_depth; sums combine 2..max_summands torus knots
/// (max_summands = 0 disables sums). Slopes are p/q with
/// min_q <= q <= max_q and |p| <= max_p.
struct AtlasConfig {
  std::int64_t max_rs = 5;
  int max_depth = 0;
  int max_summands = 0;
  std::int64_t max_p = 15;
  std::int64_t min_q = 1;
  std::int64_t max_q = 15;
  unsigned threads = 1;
};

/// Throws AtlasError for bounds outside the supported box.
void validate(const AtlasConfig& cfg);

/// Torus knots in canonical form, sorted by printed text.
std::vector<KnotExpr> atlas_torus_knots(std::int64_t max_rs);
/// Every expression in the box, sorted by printed text.
std::vector<KnotExpr> atlas_knots(const AtlasConfig& cfg);
/// Coprime slopes ordered by (q, p).
std::vector<Slope> atlas_slopes(const AtlasConfig& cfg);

/// One JSON record: the surgered manifold, its |H_1|, and the reduction chain.
Json atlas_record(const KnotExpr& e, const Slope& s);

struct AtlasRun {
  std::size_t total = 0;
  std::size_t skipped = 0;  // records already present when resuming
  std::size_t written = 0;
};

/// Writes one record per line in enumeration order. With `resume`, a trailing
/// partial line is dropped and enumeration restarts after the last complete
/// record. Threads evaluate records concurrently; lines are written in order.
AtlasRun run_atlas(const AtlasConfig& cfg, const std::filesystem::path& out, bool resume);

/// Reads an atlas file and reports record counts, h1 mismatches and the
/// coincidence classes: records sharing identical normalized closed Seifert
/// data with at least three exceptional fibers.
Json atlas_summary(const std::filesystem::path& atlas_file);

}  // namespace dehn
