#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "billiard/error.hpp"
#include "billiard/experiments.hpp"

namespace billiard::experiments {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

double plain_number(const std::string& text) {
  if (text == "pi") return std::numbers::pi;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorKind::InvalidConfig, "not a number: '" + text + "'");
  return value;
}

Vector to_vector(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidConfig, std::string(what) + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

Matrix to_matrix(const Json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw Error(ErrorKind::InvalidConfig, std::string(what) + " must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols)
      throw Error(ErrorKind::DimensionMismatch, std::string(what) + " rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

Json vector_json(const Vector& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

double number(const Json& d, const char* key, double fallback) {
  if (!d.contains(key)) return fallback;
  const auto& v = d.at(key);
  return v.is_string() ? parse_real(v.get<std::string>()) : v.get<double>();
}

}  // namespace

double parse_real(const std::string& raw) {
  // [k*]pi[/m], or a plain number
  const std::string text = trim(raw);
  const auto pi = text.find("pi");
  if (pi == std::string::npos) return plain_number(text);
  double value = std::numbers::pi;
  const std::string head = trim(text.substr(0, pi));
  const std::string tail = trim(text.substr(pi + 2));
  if (!head.empty()) {
    if (head.back() != '*') throw Error(ErrorKind::InvalidConfig, "cannot parse '" + raw + "'");
    value *= plain_number(trim(head.substr(0, head.size() - 1)));
  }
  if (!tail.empty()) {
    if (tail.front() != '/') throw Error(ErrorKind::InvalidConfig, "cannot parse '" + raw + "'");
    value /= plain_number(trim(tail.substr(1)));
  }
  return value;
}

double Params::real(const std::string& key, double fallback) {
  used_.insert(key);
  const double value = has(key) ? parse_real(raw_.at(key)) : fallback;
  resolved_[key] = value;
  return value;
}

std::int64_t Params::integer(const std::string& key, std::int64_t fallback) {
  used_.insert(key);
  std::int64_t value = fallback;
  if (has(key)) {
    const double x = parse_real(raw_.at(key));
    if (x != std::floor(x) || std::abs(x) > 9.0e15)
      throw Error(ErrorKind::InvalidConfig, "parameter " + key + " must be an integer");
    value = static_cast<std::int64_t>(x);
  }
  resolved_[key] = value;
  return value;
}

std::string Params::text(const std::string& key, const std::string& fallback) {
  used_.insert(key);
  const std::string value = has(key) ? raw_.at(key) : fallback;
  resolved_[key] = value;
  return value;
}

std::vector<double> Params::reals(const std::string& key, const std::vector<double>& fallback) {
  used_.insert(key);
  std::vector<double> values;
  if (has(key)) {
    std::stringstream in(raw_.at(key));
    for (std::string item; std::getline(in, item, ',');) values.push_back(parse_real(item));
    if (values.empty()) throw Error(ErrorKind::InvalidConfig, "parameter " + key + " is empty");
  } else {
    values = fallback;
  }
  resolved_[key] = values;
  return values;
}

void Params::reject_unused() const {
  for (const auto& [key, value] : raw_)
    if (!used_.count(key)) throw Error(ErrorKind::InvalidConfig, "unknown parameter '" + key + "'");
}

Check near(std::string name, double value, double expected, double tolerance) {
  Check c{std::move(name), value, expected, expected - tolerance, expected + tolerance, false};
  c.passed = value >= c.lower && value <= c.upper;
  return c;
}

Check within(std::string name, double value, double lower, double upper) {
  Check c{std::move(name), value, std::nullopt, lower, upper, false};
  c.passed = value >= lower && value <= upper;
  return c;
}

bool RunReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::vector<std::string> body_types() {
  return {"polytope", "ball", "ellipsoid", "box", "cube", "simplex", "toroid", "strip", "orthant", "angle", "cusp",
          "truncated_ellipse"};
}

geometry::BodyDescriptor body_from_json(const Json& d) {
  using namespace geometry;
  if (!d.is_object() || !d.contains("type")) throw Error(ErrorKind::InvalidConfig, "body needs a \"type\" field");
  const std::string type = d.at("type").get<std::string>();
  const auto n = [&] {
    if (!d.contains("n")) throw Error(ErrorKind::InvalidConfig, type + " needs \"n\"");
    return d.at("n").get<int>();
  };
  try {
    if (type == "polytope") return PolytopeDesc{to_matrix(d.at("A"), "A"), to_vector(d.at("b"), "b")};
    if (type == "ball") return BallDesc{to_vector(d.at("center"), "center"), number(d, "radius", 1.0)};
    if (type == "ellipsoid") return EllipsoidDesc{to_matrix(d.at("A"), "A")};
    if (type == "box") return AxisBoxDesc{to_vector(d.at("lower"), "lower"), to_vector(d.at("upper"), "upper")};
    if (type == "cube") return UnitCubeDesc{n()};
    if (type == "simplex") return StandardSimplexDesc{n()};
    if (type == "toroid") return ToroidDesc{n(), number(d, "r", 1.0 / 3.0)};
    if (type == "strip") return StripDesc{number(d, "M", 1000.0)};
    if (type == "orthant") return OrthantDesc{n()};
    if (type == "angle") {
      const std::string profile = d.value("profile", std::string("geometric"));
      if (profile != "geometric" && profile != "literal")
        throw Error(ErrorKind::InvalidConfig, "angle profile must be geometric or literal");
      return AngleTriangleDesc{number(d, "alpha", std::numbers::pi / 2),
                               profile == "literal" ? AngleProfile::Literal : AngleProfile::Geometric,
                               number(d, "escape_height", 1.0)};
    }
    if (type == "cusp") return ConcaveCuspDesc{};
    if (type == "truncated_ellipse") {
      const std::string variant = d.value("variant", std::string("convex"));
      if (variant != "convex" && variant != "nonconvex")
        throw Error(ErrorKind::InvalidConfig, "truncated_ellipse variant must be convex or nonconvex");
      return TruncatedEllipseDesc{variant == "convex" ? TruncationVariant::Convex : TruncationVariant::Nonconvex};
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, type + " body: " + e.what());
  }
  throw Error(ErrorKind::InvalidConfig, "unknown body type '" + type + "'");
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, path.string() + ": " + e.what());
  }
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw Error(ErrorKind::InvalidConfig, "unknown format '" + name + "' (expected json or csv)");
}

Json to_json(const RunReport& report) {
  Json out;
  out["scenario"] = report.scenario;
  out["parameters"] = report.parameters;
  out["config"] = report.config;
  out["seed"] = report.seed;
  out["bo_calls"] = report.bo_calls;
  out["sample_count"] = report.samples.size();
  Json samples = Json::array();
  for (const auto& s : report.samples) samples.push_back(vector_json(s));
  out["samples"] = std::move(samples);
  out["reflections"] = report.reflections;
  out["diagnostics"] = report.diagnostics;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j{{"name", c.name}, {"value", c.value}, {"lower", c.lower}, {"upper", c.upper}, {"passed", c.passed}};
    if (c.expected) {
      j["expected"] = *c.expected;
      j["tolerance"] = 0.5 * (c.upper - c.lower);
    }
    checks.push_back(std::move(j));
  }
  out["checks"] = std::move(checks);
  out["passed"] = report.passed();
  out["wall_seconds"] = report.wall_seconds;
  return out;
}

std::string to_csv(const std::vector<Vector>& samples) {
  std::ostringstream out;
  out.precision(17);
  out << "index";
  const Eigen::Index dim = samples.empty() ? 0 : samples.front().size();
  for (Eigen::Index i = 0; i < dim; ++i) out << ",x" << i + 1;
  out << '\n';
  for (std::size_t k = 0; k < samples.size(); ++k) {
    out << k;
    for (Eigen::Index i = 0; i < samples[k].size(); ++i) out << ',' << samples[k][i];
    out << '\n';
  }
  return out.str();
}

void emit_report(const RunReport& report, Format format, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  if (format == Format::Json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << to_csv(report.samples);
  }
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

std::vector<Vector> read_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::string line;
  std::getline(in, line);  // header
  std::vector<Vector> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');  // index
    while (std::getline(fields, field, ',')) row.push_back(plain_number(field));
    samples.push_back(Eigen::Map<Vector>(row.data(), static_cast<Eigen::Index>(row.size())));
  }
  return samples;
}

}  // namespace billiard::experiments
