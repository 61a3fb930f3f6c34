#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dehn/atlas.hpp"
#include "dehn/certificate.hpp"
#include "dehn/geometry.hpp"
#include "dehn/jsj.hpp"

namespace fs = std::filesystem;
using namespace dehn;

namespace {

enum Exit { kOk = 0, kUsage = 1, kRefusal = 2, kIo = 3, kInvariant = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  bool json = false;
  bool pretty = false;
  std::string out;

  bool structured() const { return json || pretty; }

  void emit(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      return;
    }
    const fs::path path = out;
    if (path.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + out + "' for writing");
    f << text;
    if (!f) throw IoError("write to '" + out + "' failed");
  }

  void emit(const Json& j) const { emit(j.dump(pretty ? 2 : -1) + "\n"); }
};

std::string orders_text(const SeifertData& sd) {
  std::vector<Integer> orders;
  for (const auto& f : sd.exceptional) orders.push_back(f.alpha);
  std::sort(orders.begin(), orders.end());
  std::string s;
  for (const auto& o : orders) s += (s.empty() ? "" : ", ") + to_string(o);
  return s.empty() ? "none" : s;
}

std::string classification_text(const SurgeryClassification& c) {
  std::ostringstream os;
  os << "knot: " << print(c.knot) << "\nslope: " << c.slope.to_string() << "\n";
  for (std::size_t i = 0; i < c.pieces.size(); ++i) {
    os << "piece " << i << ": ";
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, FilledSeifert>) {
            os << "filled " << p.source_kind << ", exceptional fibers of orders " << orders_text(p.seifert);
          } else if constexpr (std::is_same_v<T, FilledHyperbolic>) {
            os << "filled hyperbolic " << p.name << " along " << p.link_slope.to_string() << " ("
               << (p.certified ? "certified" : "uncertified") << ")";
          } else {
            os << piece_kind(p);
            if (const auto* sd = seifert_of(p)) os << ", exceptional fibers of orders " << orders_text(*sd);
          }
        },
        c.pieces[i]);
    os << "\n";
  }
  for (const auto& e : c.jsj_tori)
    os << "torus: piece " << e.outer << " (" << e.outer_label << ") -- piece " << e.inner << " (K)\n";
  if (c.core.kind == SurgeryCore::Kind::short_geodesic) {
    os << "surgery core: short geodesic; " << c.core.certification << "\n";
  } else {
    os << "surgery core: fiber of order " << c.core.order << "\n";
  }
  os << "irreducible: " << c.irreducible_tag << "\n";
  os << "|H1|: " << h1_order(c) << "\n";
  return os.str();
}

std::string reduction_text(const ReductionResult& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.chain.size(); ++i)
    os << "stage " << i << ": " << print(r.chain[i].knot) << " at " << r.chain[i].slope.to_string() << "\n";
  os << "stop: " << r.stop_reason << "\n";
  if (r.essential_torus) os << "essential torus: yes\n";
  return os.str();
}

std::string certificate_text(const Certificate& c) {
  std::ostringstream os;
  os << "knot: " << print(c.knot) << "\nslope: " << c.slope.to_string() << "\nm: " << to_string(c.m_value) << "\n";
  for (const auto& k : c.checks) {
    os << k.id << " " << (k.holds ? "holds" : "fails") << (k.applicable ? "" : " (not applicable)") << ": "
       << k.description << " [" << k.value << "; " << k.threshold << "]\n";
  }
  if (!c.cited_theorem.empty()) os << "cited: " << c.cited_theorem << "\n";
  if (c.exceptions_not_computed) os << "exceptions: not computed\n";
  os << "verdict: " << c.verdict << "\n";
  return os.str();
}

fs::path default_atlas_path() {
  if (const char* dir = std::getenv("DEHN_OUTPUT_DIR"); dir && *dir) return fs::path(dir) / "atlas.jsonl";
  return "atlas.jsonl";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Json refusal_json(const RegimeRefusal& r, const std::string& knot, const std::string& slope) {
  return Json{{"schema", "dehn.refusal/1"},
              {"knot", knot},
              {"slope", slope},
              {"precondition", r.precondition()},
              {"message", r.what()}};
}

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_flag("--json", out.json, "Emit compact JSON");
  cmd->add_flag("--pretty", out.pretty, "Emit indented JSON");
  cmd->add_option("--out", out.out, "Write to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Dehn surgery calculator for splice-expression knots"};
  app.require_subcommand(1);

  Output out;
  std::string expr_text, slope_text;

  auto* classify = app.add_subcommand("classify", "Classify p/q surgery in the certified regime");
  auto* reduce = app.add_subcommand("reduce", "Reduce cable surgery to surgery on the companion");
  auto* certify = app.add_subcommand("certify", "Evaluate the characterising-slope thresholds");
  auto* homology = app.add_subcommand("homology", "Order of H1 of the surgered manifold (0 if infinite)");
  for (auto* cmd : {classify, reduce, certify, homology}) {
    cmd->add_option("expr", expr_text, "Knot expression, e.g. 'cable(13,2; torus(3,2))'")->required();
    cmd->add_option("slope", slope_text, "Slope p/q, an integer, or inf")->required();
    add_output_flags(cmd, out);
  }

  auto* lengths = app.add_subcommand("lengths", "Slope lengths and bounds on a cusp");
  std::string cusp_file;
  std::size_t cusp_index = 0;
  std::vector<std::string> length_slopes;
  lengths->add_option("slopes", length_slopes, "Slopes to measure")->required();
  lengths->add_option("--cusps", cusp_file, "Cusp shape file (plain text or JSON)");
  lengths->add_option("--cusp-index", cusp_index, "Which cusp of the file to use");
  add_output_flags(lengths, out);

  auto* atlas = app.add_subcommand("atlas", "Enumerate surgeries in a bounded box as JSON lines");
  AtlasConfig cfg;
  bool resume = false;
  std::string atlas_out;
  atlas->add_option("--max-rs", cfg.max_rs, "Bound on |r| and |s|")->capture_default_str();
  atlas->add_option("--max-depth", cfg.max_depth, "Maximum cable depth")->capture_default_str();
  atlas->add_option("--max-summands", cfg.max_summands, "Maximum number of sum summands (0 = none)")
      ->capture_default_str();
  atlas->add_option("--max-p", cfg.max_p, "Bound on |p|")->capture_default_str();
  atlas->add_option("--min-q", cfg.min_q, "Lower bound on q")->capture_default_str();
  atlas->add_option("--max-q", cfg.max_q, "Upper bound on q")->capture_default_str();
  atlas->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
  atlas->add_option("--out", atlas_out, "Output file (default $DEHN_OUTPUT_DIR/atlas.jsonl)");
  atlas->add_flag("--resume", resume, "Continue after the last complete record");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*atlas) {
      const fs::path path = atlas_out.empty() ? default_atlas_path() : fs::path(atlas_out);
      validate(cfg);
      const AtlasRun run = run_atlas(cfg, path, resume);
      const Json summary = atlas_summary(path);
      fs::path summary_path = path;
      summary_path += ".summary.json";
      std::ofstream f(summary_path, std::ios::binary | std::ios::trunc);
      if (!f) throw IoError("cannot open '" + summary_path.string() + "' for writing");
      f << summary.dump(2) << "\n";
      std::cout << Json{{"schema", "dehn.atlas-run/1"},
                        {"output", path.string()},
                        {"summary", summary_path.string()},
                        {"total", run.total},
                        {"skipped", run.skipped},
                        {"written", run.written},
                        {"h1_mismatches", summary["h1_mismatches"]},
                        {"coincidence_classes", summary["coincidence_classes"].size()}}
                       .dump()
                << "\n";
      return summary["h1_mismatches"].get<std::size_t>() == 0 ? kOk : kInvariant;
    }

    if (*lengths) {
      std::optional<CuspShape> cusp;
      if (!cusp_file.empty()) {
        const auto shapes = parse_cusp_file(read_file(cusp_file));
        if (cusp_index >= shapes.size())
          throw GeometryError("cusp index " + std::to_string(cusp_index) + " out of range");
        cusp = shapes[cusp_index];
      }
      Json reports = Json::array();
      std::string text;
      for (const auto& s : length_slopes) {
        const auto r = length_report(Slope::parse(s), cusp);
        reports.push_back(to_json(r));
        text += r.slope.to_string() + ": lower bound " + std::to_string(r.lower_bound);
        if (r.length) text += ", length " + std::to_string(*r.length);
        text += std::string(", > 2pi ") + (r.exceeds_2pi ? "yes" : "no") + ", > 6 " + (r.exceeds_6 ? "yes" : "no") + "\n";
      }
      if (out.structured()) {
        out.emit(Json{{"schema", "dehn.lengths/1"}, {"reports", reports}});
      } else {
        out.emit(text);
      }
      return kOk;
    }

    const KnotExpr expr = parse_knot(expr_text);
    const Slope slope = Slope::parse(slope_text);

    if (*classify) {
      try {
        const auto c = classify_surgery(expr, slope);
        if (out.structured()) {
          out.emit(to_json(c));
        } else {
          out.emit(classification_text(c));
        }
      } catch (const RegimeRefusal& r) {
        out.emit(refusal_json(r, print(expr), slope.to_string()));
        return kRefusal;
      }
    } else if (*reduce) {
      try {
        const auto r = reduce_to_companion(expr, slope);
        if (out.structured()) {
          out.emit(to_json(r));
        } else {
          out.emit(reduction_text(r));
        }
      } catch (const RegimeRefusal& r) {
        out.emit(refusal_json(r, print(expr), slope.to_string()));
        return kRefusal;
      }
    } else if (*certify) {
      const auto c = certify_characterising(expr, slope);
      if (out.structured()) {
        out.emit(to_json(c));
      } else {
        out.emit(certificate_text(c));
      }
    } else if (*homology) {
      const Integer h1 = h1_order_by_filling(jsj(expr), slope);
      if (out.structured()) {
        out.emit(Json{{"schema", "dehn.homology/1"},
                      {"knot", print(expr)},
                      {"slope", slope.to_string()},
                      {"h1_order", to_json(h1)}});
      } else {
        out.emit(to_string(h1) + "\n");
      }
    }
    return kOk;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const AtlasIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const AtlasError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "invalid expression (" << e.invariant() << "): " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
