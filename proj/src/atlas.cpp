#include "dehn/atlas.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <thread>

#include "dehn/jsj.hpp"
#include "dehn/seifert.hpp"

namespace dehn {

namespace {

std::vector<KnotExpr> sorted_unique(std::vector<KnotExpr> items) {
  std::map<std::string, KnotExpr> by_text;
  for (auto& e : items) by_text.emplace(print(e), std::move(e));
  std::vector<KnotExpr> out;
  out.reserve(by_text.size());
  for (auto& [text, e] : by_text) out.push_back(std::move(e));
  return out;
}

void add_multisets(const std::vector<KnotExpr>& base, std::size_t from, std::size_t size,
                   std::vector<KnotExpr>& current, std::vector<KnotExpr>& out) {
  if (current.size() == size) {
    out.push_back(canonicalize(KnotExpr::sum(current)));
    return;
  }
  for (std::size_t i = from; i < base.size(); ++i) {
    current.push_back(base[i]);
    add_multisets(base, i, size, current, out);
    current.pop_back();
  }
}

bool in_regime(const KnotExpr& e, const Slope& s) {
  if (abs(s.q()) < 9) return false;
  if (e.is<TorusKnot>() || e.is<Cable>()) return abs(s.p()) <= abs(s.q());
  return true;
}

Json chain_json(const std::vector<ReductionStep>& chain) {
  Json j = Json::array();
  for (const auto& step : chain) j.push_back(Json{{"knot", print(step.knot)}, {"slope", step.slope.to_string()}});
  return j;
}

std::size_t complete_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return 0;
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto last = data.rfind('\n');
  const std::size_t keep = last == std::string::npos ? 0 : last + 1;
  if (keep != data.size()) std::filesystem::resize_file(path, keep);
  return static_cast<std::size_t>(std::count(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(keep), '\n'));
}

}  // namespace

void validate(const AtlasConfig& cfg) {
  if (cfg.max_rs < 2 || cfg.max_rs > 50) throw AtlasError("atlas: max |r|,|s| must lie in [2, 50]");
  if (cfg.max_depth < 0 || cfg.max_depth > 3) throw AtlasError("atlas: max cable depth must lie in [0, 3]");
  if (cfg.max_summands != 0 && (cfg.max_summands < 2 || cfg.max_summands > 4))
    throw AtlasError("atlas: max summands must be 0 or lie in [2, 4]");
  if (cfg.max_p < 0) throw AtlasError("atlas: max |p| must be non-negative");
  if (cfg.min_q < 1 || cfg.max_q < cfg.min_q) throw AtlasError("atlas: need 1 <= min q <= max q");
  if (cfg.max_p > 100000 || cfg.max_q > 100000) throw AtlasError("atlas: slope bounds too large");
  if (cfg.threads < 1 || cfg.threads > 256) throw AtlasError("atlas: threads must lie in [1, 256]");
}

std::vector<KnotExpr> atlas_torus_knots(std::int64_t max_rs) {
  std::vector<KnotExpr> out;
  for (std::int64_t r = -max_rs; r <= max_rs; ++r) {
    for (std::int64_t s = 2; s <= max_rs; ++s) {
      if (std::abs(r) < 2 || std::gcd(std::abs(r), s) != 1) continue;
      out.push_back(canonicalize(KnotExpr::torus(r, s)));
    }
  }
  return sorted_unique(std::move(out));
}

std::vector<KnotExpr> atlas_knots(const AtlasConfig& cfg) {
  validate(cfg);
  const auto torus = atlas_torus_knots(cfg.max_rs);
  std::vector<KnotExpr> all = torus;
  std::vector<KnotExpr> layer = torus;
  for (int depth = 1; depth <= cfg.max_depth; ++depth) {
    std::vector<KnotExpr> next;
    for (const auto& companion : layer) {
      for (std::int64_t s = 2; s <= cfg.max_rs; ++s) {
        for (std::int64_t r = -cfg.max_rs; r <= cfg.max_rs; ++r) {
          if (std::abs(r) < 2 || std::gcd(std::abs(r), s) != 1) continue;
          next.push_back(KnotExpr::cable(r, s, companion));
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  for (int n = 2; n <= cfg.max_summands; ++n) {
    std::vector<KnotExpr> current;
    add_multisets(torus, 0, static_cast<std::size_t>(n), current, all);
  }
  return sorted_unique(std::move(all));
}

std::vector<Slope> atlas_slopes(const AtlasConfig& cfg) {
  validate(cfg);
  std::vector<Slope> out;
  for (std::int64_t q = cfg.min_q; q <= cfg.max_q; ++q) {
    for (std::int64_t p = -cfg.max_p; p <= cfg.max_p; ++p) {
      if (std::gcd(std::abs(p), q) != 1) continue;
      out.push_back(Slope::normalized(p, q));
    }
  }
  return out;
}

Json atlas_record(const KnotExpr& e, const Slope& s) {
  const SurgeredManifold m = surgered_manifold(e, s);
  Json j;
  j["schema"] = "dehn.atlas-record/1";
  j["knot"] = print(e);
  j["slope"] = s.to_string();
  j["in_regime"] = in_regime(e, s);
  if (m.reducible) {
    j["result"] = "reducible";
  } else if (m.closed_seifert) {
    j["result"] = "seifert";
  } else {
    const auto& outer = m.classification->pieces.front();
    j["result"] = std::holds_alternative<FilledHyperbolic>(outer) ? "hyperbolic-filling" : "graph-manifold";
  }
  j["seifert"] = m.closed_seifert ? to_json(*m.closed_seifert) : Json(nullptr);
  if (m.classification) {
    if (const auto* h = std::get_if<FilledHyperbolic>(&m.classification->pieces.front()))
      j["hyperbolic"] = h->certification;
  }
  j["h1_order"] = to_json(m.h1);
  j["h1_matches_p"] = m.h1 == abs(s.p());
  j["reduction_chain"] = chain_json(m.chain);
  return j;
}

AtlasRun run_atlas(const AtlasConfig& cfg, const std::filesystem::path& out, bool resume) {
  validate(cfg);
  const auto knots = atlas_knots(cfg);
  const auto slopes = atlas_slopes(cfg);
  AtlasRun run;
  run.total = knots.size() * slopes.size();

  if (out.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(out.parent_path(), ec);
  }
  if (resume) {
    run.skipped = std::min(complete_lines(out), run.total);
  }
  std::ofstream file(out, resume ? std::ios::app | std::ios::binary : std::ios::trunc | std::ios::binary);
  if (!file) throw AtlasIoError("atlas: cannot open '" + out.string() + "' for writing");

  const unsigned threads = std::max(1u, cfg.threads);
  const std::size_t batch = 256 * threads;
  std::vector<std::string> lines;
  for (std::size_t start = run.skipped; start < run.total; start += batch) {
    const std::size_t end = std::min(run.total, start + batch);
    lines.assign(end - start, std::string());
    auto work = [&](unsigned t) {
      for (std::size_t i = start + t; i < end; i += threads) {
        lines[i - start] = atlas_record(knots[i / slopes.size()], slopes[i % slopes.size()]).dump() + "\n";
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (const auto& line : lines) file << line;
    file.flush();
    if (!file) throw AtlasIoError("atlas: write to '" + out.string() + "' failed");
    run.written += end - start;
  }
  return run;
}

Json atlas_summary(const std::filesystem::path& atlas_file) {
  std::ifstream in(atlas_file);
  if (!in) throw AtlasIoError("atlas: cannot read '" + atlas_file.string() + "'");
  std::map<std::string, std::vector<Json>> classes;
  std::map<std::string, Json> data_of;
  std::size_t records = 0, mismatches = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json r = Json::parse(line);
    ++records;
    if (!r.at("h1_matches_p").get<bool>()) ++mismatches;
    const Json& sd = r.at("seifert");
    if (sd.is_null() || sd.at("exceptional").size() < 3) continue;
    const std::string key = sd.dump();
    data_of.emplace(key, sd);
    classes[key].push_back(Json{{"knot", r.at("knot")}, {"slope", r.at("slope")}});
  }
  Json list = Json::array();
  for (auto& [key, members] : classes) {
    if (members.size() < 2) continue;
    list.push_back(Json{{"seifert", data_of[key]}, {"members", members}});
  }
  Json j;
  j["schema"] = "dehn.atlas-summary/1";
  j["records"] = records;
  j["h1_mismatches"] = mismatches;
  j["coincidence_classes"] = list;
  return j;
}

}  // namespace dehn
