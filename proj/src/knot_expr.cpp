#include "dehn/knot_expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cctype>
#include <numeric>

namespace dehn {

bool operator==(const Cable& a, const Cable& b) {
  if (a.r != b.r || a.s != b.s) return false;
  if (!a.companion || !b.companion) return a.companion == b.companion;
  return *a.companion == *b.companion;
}

bool operator==(const Sum& a, const Sum& b) { return a.summands == b.summands; }

KnotExpr KnotExpr::cable(std::int64_t r, std::int64_t s, KnotExpr companion) {
  return KnotExpr(Cable{r, s, std::make_shared<const KnotExpr>(std::move(companion))});
}

KnotExpr KnotExpr::hyp(std::string name, std::int64_t cusp_count, std::vector<CuspShape> cusps) {
  return KnotExpr(HypAtom{std::move(name), cusp_count, std::move(cusps)});
}

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at offset " + std::to_string(position) + ": " + message),
      position_(position) {}

ValidationError::ValidationError(std::string invariant, const std::string& message)
    : std::runtime_error("invalid knot expression [" + invariant + "]: " + message),
      invariant_(std::move(invariant)) {}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::int64_t iabs(std::int64_t x) { return x < 0 ? -x : x; }

std::string pair_text(std::int64_t r, std::int64_t s) {
  return "(" + std::to_string(r) + "," + std::to_string(s) + ")";
}

void validate_node(const KnotExpr& e, bool nested_in_sum) {
  std::visit(
      Overloaded{
          [](const Unknot&) {},
          [](const TorusKnot& t) {
            if (std::gcd(iabs(t.r), iabs(t.s)) != 1)
              throw ValidationError("torus.coprime", "torus" + pair_text(t.r, t.s) + ": gcd(r,s) != 1");
            if (iabs(t.r) < 2 || iabs(t.s) < 2)
              throw ValidationError("torus.nontrivial",
                                    "torus" + pair_text(t.r, t.s) + ": need |r| >= 2 and |s| >= 2");
          },
          [](const Cable& c) {
            if (!c.companion) throw ValidationError("cable.companion", "cable without companion");
            if (std::gcd(iabs(c.r), iabs(c.s)) != 1)
              throw ValidationError("cable.coprime", "cable" + pair_text(c.r, c.s) + ": gcd(r,s) != 1");
            if (iabs(c.s) < 2)
              throw ValidationError("cable.winding",
                                    "cable" + pair_text(c.r, c.s) + ": winding number |s| must be >= 2");
            if (c.companion->is<Unknot>())
              throw ValidationError("cable.companion-unknot",
                                    "a cable of the unknot must be written as a torus knot");
            validate_node(*c.companion, false);
          },
          [nested_in_sum](const Sum& s) {
            if (nested_in_sum) throw ValidationError("sum.flattened", "sum nested directly inside a sum");
            if (s.summands.size() < 2) throw ValidationError("sum.arity", "a sum needs at least two summands");
            for (const auto& k : s.summands) {
              if (k.is<Unknot>()) throw ValidationError("sum.trivial-summand", "unknot summand in a sum");
              validate_node(k, true);
            }
          },
          [](const HypAtom& h) {
            if (h.name.empty()) throw ValidationError("hyp.name", "hyperbolic atom needs a name");
            if (h.cusp_count < 1) throw ValidationError("hyp.cusp-count", "cusp count must be >= 1");
            if (!h.cusps.empty() && static_cast<std::int64_t>(h.cusps.size()) != h.cusp_count)
              throw ValidationError("hyp.cusp-data", "cusp data must be given for every cusp or none");
            for (const auto& c : h.cusps) {
              const double det = c.lattice_determinant();
              if (!std::isfinite(det) || det == 0.0)
                throw ValidationError("hyp.lattice", "cusp lattice vectors are linearly dependent");
            }
          },
      },
      e.node());
}

void flatten_into(const KnotExpr& e, std::vector<KnotExpr>& out) {
  if (const auto* s = e.as<Sum>()) {
    for (const auto& k : s->summands) flatten_into(k, out);
  } else {
    out.push_back(canonicalize(e));
  }
}

// ---------------------------------------------------------------------------
// Recursive-descent parser over the grammar
//   expr := "unknot" | "torus(" int "," int ")" | "cable(" int "," int ";" expr ")"
//         | "sum(" expr ("," expr)+ ")" | "hyp(" name "," int ["," real{4n}] ")"

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  KnotExpr parse_all() {
    KnotExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string keyword() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a knot expression");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = start;
      fail("expected an integer");
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("integer out of range");
    }
    return value;
  }

  double real() {
    skip_ws();
    const std::size_t start = pos_;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("expected a real number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    if (!std::isfinite(value)) {
      pos_ = start;
      fail("real number must be finite");
    }
    return value;
  }

  std::string quoted_name() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected a quoted name");
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string");
      const char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated escape");
        out.push_back(text_[pos_++]);
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  KnotExpr expr() {
    const std::size_t start = (skip_ws(), pos_);
    const std::string kw = keyword();
    if (kw == "unknot") return KnotExpr::unknot();
    if (kw == "torus") {
      expect('(');
      const auto r = integer();
      expect(',');
      const auto s = integer();
      expect(')');
      return KnotExpr::torus(r, s);
    }
    if (kw == "cable") {
      expect('(');
      const auto r = integer();
      expect(',');
      const auto s = integer();
      expect(';');
      KnotExpr companion = expr();
      expect(')');
      return KnotExpr::cable(r, s, std::move(companion));
    }
    if (kw == "sum") {
      expect('(');
      std::vector<KnotExpr> parts;
      parts.push_back(expr());
      while (peek(',')) {
        ++pos_;
        parts.push_back(expr());
      }
      expect(')');
      if (parts.size() < 2) fail("sum needs at least two summands");
      return KnotExpr::sum(std::move(parts));
    }
    if (kw == "hyp") {
      expect('(');
      std::string name = quoted_name();
      expect(',');
      const auto cusps = integer();
      std::vector<double> reals;
      while (peek(',')) {
        ++pos_;
        reals.push_back(real());
      }
      expect(')');
      if (reals.size() % 4 != 0) fail("cusp data must come in groups of four reals");
      std::vector<CuspShape> shapes;
      for (std::size_t i = 0; i < reals.size(); i += 4)
        shapes.push_back(CuspShape{{reals[i], reals[i + 1]}, {reals[i + 2], reals[i + 3]}});
      return KnotExpr::hyp(std::move(name), cusps, std::move(shapes));
    }
    pos_ = start;
    fail("unknown constructor '" + kw + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string quote(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

ExprKind base_kind(const KnotExpr& e) {
  return std::visit(Overloaded{
                        [](const Unknot&) { return ExprKind::unknot; },
                        [](const TorusKnot&) { return ExprKind::torus_knot; },
                        [](const Cable& c) { return base_kind(*c.companion); },
                        [](const Sum&) { return ExprKind::composite; },
                        [](const HypAtom&) { return ExprKind::hyperbolic; },
                    },
                    e.node());
}

Json cusp_json(const CuspShape& c) {
  return Json{{"meridian", {c.meridian[0], c.meridian[1]}}, {"longitude", {c.longitude[0], c.longitude[1]}}};
}

}  // namespace

void validate(const KnotExpr& e) { validate_node(e, false); }

KnotExpr canonicalize(const KnotExpr& e) {
  return std::visit(
      Overloaded{
          [](const Unknot&) { return KnotExpr::unknot(); },
          [](const TorusKnot& t) {
            std::int64_t r = t.r, s = t.s;
            if (iabs(r) < iabs(s)) std::swap(r, s);
            if (s < 0) {
              r = -r;
              s = -s;
            }
            return KnotExpr::torus(r, s);
          },
          [](const Cable& c) {
            std::int64_t r = c.r, s = c.s;
            if (s < 0) {
              r = -r;
              s = -s;
            }
            KnotExpr companion = c.companion ? canonicalize(*c.companion) : KnotExpr::unknot();
            if (companion.is<Unknot>() && iabs(r) >= 2 && s >= 2) return canonicalize(KnotExpr::torus(r, s));
            return KnotExpr::cable(r, s, std::move(companion));
          },
          [](const Sum& s) {
            std::vector<KnotExpr> parts;
            for (const auto& k : s.summands) flatten_into(k, parts);
            std::stable_sort(parts.begin(), parts.end(),
                             [](const KnotExpr& a, const KnotExpr& b) { return print(a) < print(b); });
            return KnotExpr::sum(std::move(parts));
          },
          [](const HypAtom& h) { return KnotExpr::hyp(h.name, h.cusp_count, h.cusps); },
      },
      e.node());
}

KnotExpr parse_knot(std::string_view text) {
  KnotExpr e = canonicalize(Parser(text).parse_all());
  validate(e);
  return e;
}

std::string print(const KnotExpr& e) {
  return std::visit(
      Overloaded{
          [](const Unknot&) { return std::string("unknot"); },
          [](const TorusKnot& t) { return "torus" + pair_text(t.r, t.s); },
          [](const Cable& c) {
            return "cable(" + std::to_string(c.r) + "," + std::to_string(c.s) + "; " + print(*c.companion) + ")";
          },
          [](const Sum& s) {
            std::string out = "sum(";
            for (std::size_t i = 0; i < s.summands.size(); ++i) {
              if (i) out += ", ";
              out += print(s.summands[i]);
            }
            return out + ")";
          },
          [](const HypAtom& h) {
            std::string out = "hyp(" + quote(h.name) + "," + std::to_string(h.cusp_count);
            for (const auto& c : h.cusps) {
              for (double x : {c.meridian[0], c.meridian[1], c.longitude[0], c.longitude[1]})
                out += "," + format_real(x);
            }
            return out + ")";
          },
      },
      e.node());
}

int cable_depth(const KnotExpr& e) {
  int depth = 0;
  const KnotExpr* cur = &e;
  while (const auto* c = cur->as<Cable>()) {
    ++depth;
    cur = c->companion.get();
  }
  return depth;
}

ExprClass classify_expr(const KnotExpr& e) {
  if (e.is<Cable>()) {
    ExprClass out;
    out.cable_depth = cable_depth(e);
    out.base = base_kind(e);
    out.kind = (out.cable_depth == 1 && out.base == ExprKind::hyperbolic) ? ExprKind::hyperbolic_companion_cable
                                                                          : ExprKind::iterated_cable;
    return out;
  }
  return ExprClass{base_kind(e), 0, std::nullopt};
}

std::string to_string(ExprKind kind) {
  switch (kind) {
    case ExprKind::unknot: return "unknot";
    case ExprKind::torus_knot: return "torus-knot";
    case ExprKind::iterated_cable: return "iterated-cable";
    case ExprKind::composite: return "composite";
    case ExprKind::hyperbolic: return "hyperbolic";
    case ExprKind::hyperbolic_companion_cable: return "hyperbolic-companion-cable";
  }
  return "unknown";
}

std::string describe(const ExprClass& c) {
  if (c.kind == ExprKind::iterated_cable || c.kind == ExprKind::hyperbolic_companion_cable)
    return to_string(c.kind) + "(depth " + std::to_string(c.cable_depth) + ", base " + to_string(*c.base) + ")";
  return to_string(c.kind);
}

Json to_json(const KnotExpr& e) {
  return std::visit(
      Overloaded{
          [](const Unknot&) { return Json{{"kind", "unknot"}}; },
          [](const TorusKnot& t) { return Json{{"kind", "torus"}, {"r", t.r}, {"s", t.s}}; },
          [](const Cable& c) {
            return Json{{"kind", "cable"}, {"r", c.r}, {"s", c.s}, {"companion", to_json(*c.companion)}};
          },
          [](const Sum& s) {
            Json parts = Json::array();
            for (const auto& k : s.summands) parts.push_back(to_json(k));
            return Json{{"kind", "sum"}, {"summands", parts}};
          },
          [](const HypAtom& h) {
            Json j{{"kind", "hyp"}, {"name", h.name}, {"cusps", h.cusp_count}};
            if (!h.cusps.empty()) {
              Json shapes = Json::array();
              for (const auto& c : h.cusps) shapes.push_back(cusp_json(c));
              j["cusp_shapes"] = shapes;
            }
            return j;
          },
      },
      e.node());
}

KnotExpr knot_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "unknot") return KnotExpr::unknot();
  if (kind == "torus") return KnotExpr::torus(j.at("r").get<std::int64_t>(), j.at("s").get<std::int64_t>());
  if (kind == "cable")
    return KnotExpr::cable(j.at("r").get<std::int64_t>(), j.at("s").get<std::int64_t>(),
                           knot_from_json(j.at("companion")));
  if (kind == "sum") {
    std::vector<KnotExpr> parts;
    for (const auto& k : j.at("summands")) parts.push_back(knot_from_json(k));
    return KnotExpr::sum(std::move(parts));
  }
  if (kind == "hyp") {
    std::vector<CuspShape> shapes;
    if (j.contains("cusp_shapes")) {
      for (const auto& c : j.at("cusp_shapes")) {
        CuspShape shape;
        shape.meridian = {c.at("meridian").at(0).get<double>(), c.at("meridian").at(1).get<double>()};
        shape.longitude = {c.at("longitude").at(0).get<double>(), c.at("longitude").at(1).get<double>()};
        shapes.push_back(shape);
      }
    }
    return KnotExpr::hyp(j.at("name").get<std::string>(), j.at("cusps").get<std::int64_t>(), std::move(shapes));
  }
  throw ValidationError("json.kind", "unknown knot kind '" + kind + "'");
}

}  // namespace dehn
