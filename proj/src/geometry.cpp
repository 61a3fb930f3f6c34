#include "dehn/geometry.hpp"

#include <cmath>
#include <sstream>

namespace dehn {

double slope_length(const CuspShape& cusp, const Slope& s) {
  const double scale = std::hypot(cusp.meridian[0], cusp.meridian[1]) * std::hypot(cusp.longitude[0], cusp.longitude[1]);
  if (!(scale > 0) || !std::isfinite(scale) || std::abs(cusp.lattice_determinant()) <= 1e-12 * scale)
    throw GeometryError("slope_length: degenerate cusp lattice");
  const double p = s.p().convert_to<double>();
  const double q = s.q().convert_to<double>();
  return std::hypot(p * cusp.meridian[0] + q * cusp.longitude[0], p * cusp.meridian[1] + q * cusp.longitude[1]);
}

double length_lower_bound(const Integer& delta) { return std::sqrt(3.0) / 6.0 * delta.convert_to<double>(); }

bool exceeds_2pi(double length) { return length > kTwoPi + kLengthTolerance; }
bool exceeds_6(double length) { return length > 6.0 + kLengthTolerance; }

VolumeBounds volume_bounds(double vol_x, double l_min) {
  if (!(vol_x > 0) || !std::isfinite(vol_x)) throw GeometryError("volume_bounds: volume must be positive");
  if (!(l_min > kTwoPi)) throw GeometryError("volume_bounds: requires l_min > 2*pi");
  const double ratio = kTwoPi / l_min;
  VolumeBounds v;
  v.factor = std::pow(1.0 - ratio * ratio, 1.5);
  v.low = v.factor * vol_x;
  v.high = vol_x;
  return v;
}

SixTheoremReport six_theorem_check(const std::vector<double>& lengths) {
  SixTheoremReport r;
  r.count = lengths.size();
  for (double l : lengths) {
    r.all_exceed_6 = r.all_exceed_6 && exceeds_6(l);
    r.all_exceed_2pi = r.all_exceed_2pi && exceeds_2pi(l);
  }
  return r;
}

LengthBoundReport length_report(const Slope& s, const std::optional<CuspShape>& cusp) {
  LengthBoundReport r;
  r.slope = s;
  r.lower_bound = length_lower_bound(distance(s, Slope::infinity()));
  if (cusp) r.length = slope_length(*cusp, s);
  const double measured = r.length.value_or(r.lower_bound);
  r.exceeds_2pi = exceeds_2pi(measured);
  r.exceeds_6 = exceeds_6(measured);
  return r;
}

std::vector<CuspShape> parse_cusp_text(const std::string& text) {
  std::vector<CuspShape> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<double> values;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || !std::isfinite(v))
        throw GeometryError("cusp file line " + std::to_string(number) + ": '" + token + "' is not a real number");
      values.push_back(v);
    }
    if (values.empty()) continue;
    if (values.size() != 4)
      throw GeometryError("cusp file line " + std::to_string(number) + ": expected 4 reals, found " +
                          std::to_string(values.size()));
    out.push_back(CuspShape{{values[0], values[1]}, {values[2], values[3]}});
  }
  return out;
}

std::vector<CuspShape> parse_cusp_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw GeometryError(std::string("cusp file: invalid JSON: ") + e.what());
  }
  if (j.is_object()) {
    if (!j.contains("cusps")) throw GeometryError("cusp file: object has no \"cusps\" member");
    j = j["cusps"];
  }
  if (!j.is_array()) throw GeometryError("cusp file: expected an array of cusps");
  auto vec = [](const Json& v, const char* what) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw GeometryError(std::string("cusp file: \"") + what + "\" must be a pair of numbers");
    return std::array<double, 2>{v[0].get<double>(), v[1].get<double>()};
  };
  std::vector<CuspShape> out;
  for (const auto& c : j) {
    if (!c.is_object() || !c.contains("meridian") || !c.contains("longitude"))
      throw GeometryError("cusp file: each cusp needs \"meridian\" and \"longitude\"");
    out.push_back(CuspShape{vec(c["meridian"], "meridian"), vec(c["longitude"], "longitude")});
  }
  return out;
}

std::vector<CuspShape> parse_cusp_file(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) return parse_cusp_json(text);
  return parse_cusp_text(text);
}

Json to_json(const LengthBoundReport& r) {
  Json j{{"slope", r.slope.to_string()}};
  j["length"] = r.length ? Json(*r.length) : Json(nullptr);
  j["lower_bound"] = r.lower_bound;
  j["exceeds_2pi"] = r.exceeds_2pi;
  j["exceeds_6"] = r.exceeds_6;
  return j;
}

Json to_json(const VolumeBounds& v) { return Json{{"factor", v.factor}, {"low", v.low}, {"high", v.high}}; }

}  // namespace dehn
