#include <cstdio>
#include <sstream>

#include "xqd/cli.hpp"

namespace xqd::cli {

namespace {

constexpr const char* kVariantKeys[] = {"x_state", "matrix", "classical", "werner"};

double number(const json& j, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw InputError(std::string("missing field '") + key + "'");
  }
  const json& v = j.at(key);
  if (!v.is_number()) throw InputError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Vec3 vec3(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 3)
    throw InputError(std::string("field '") + key + "' must be an array of 3 numbers");
  Vec3 out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number()) throw InputError(std::string("field '") + key + "' must be numeric");
    out[i] = v[i].get<double>();
  }
  return out;
}

XStateParams parse_x_fields(const json& j) {
  if (!j.is_object()) throw InputError("'x_state' must be an object");
  XStateParams p;
  p.a = number(j, "a");
  p.b = number(j, "b");
  p.c = number(j, "c");
  p.d = number(j, "d");
  p.x = {number(j, "x_re", 0.0), number(j, "x_im", 0.0)};
  p.y = {number(j, "y_re", 0.0), number(j, "y_im", 0.0)};
  return p;
}

json x_fields_to_json(const XStateParams& p) {
  return {{"a", p.a},           {"b", p.b},           {"c", p.c},
          {"d", p.d},           {"x_re", p.x.real()}, {"x_im", p.x.imag()},
          {"y_re", p.y.real()}, {"y_im", p.y.imag()}};
}

json vec3_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

void write_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  os << s;
}

void write(std::ostream& os, const json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        write(os, it.value(), depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      // numeric rows stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << (flat ? ", " : ",");
        first = false;
        if (!flat) os << "\n" << pad;
        write(os, e, depth + 1);
      }
      if (!flat) os << "\n" << close;
      os << "]";
      return;
    }
    case json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump(const json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

json matrix_to_json(const Matrix4& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    json rr = json::array();
    json ii = json::array();
    for (std::size_t k = 0; k < 4; ++k) {
      rr.push_back(m(i, k).real());
      ii.push_back(m(i, k).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"re", re}, {"im", im}};
}

Matrix4 matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re"))
    throw InputError("'matrix' must be an object with 're' (and optional 'im') 4x4 arrays");
  auto read = [](const json& a, const char* name) {
    if (!a.is_array() || a.size() != 4)
      throw InputError(std::string("matrix '") + name + "' must be a 4x4 array");
    std::array<std::array<double, 4>, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!a[i].is_array() || a[i].size() != 4)
        throw InputError(std::string("matrix '") + name + "' must be a 4x4 array");
      for (std::size_t k = 0; k < 4; ++k) {
        if (!a[i][k].is_number())
          throw InputError(std::string("matrix '") + name + "' entries must be numbers");
        out[i][k] = a[i][k].get<double>();
      }
    }
    return out;
  };
  const auto re = read(j.at("re"), "re");
  std::array<std::array<double, 4>, 4> im{};
  if (j.contains("im")) im = read(j.at("im"), "im");
  Matrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) m(i, k) = Complex(re[i][k], im[i][k]);
  return m;
}

StateSpec parse_state_spec(const json& j) {
  if (!j.is_object()) throw InputError("state spec must be a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw InputError("state spec needs a string field 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  int present = 0;
  for (const char* key : kVariantKeys) present += j.contains(key) ? 1 : 0;
  if (present != 1 || !j.contains(kind))
    throw InputError("state spec must populate exactly one variant, matching 'kind'");

  StateSpec s;
  const json& body = j.at(kind);
  if (kind == "x_state") {
    s.kind = StateKind::XState;
    s.x_state = parse_x_fields(body);
  } else if (kind == "matrix") {
    s.kind = StateKind::Matrix;
    s.matrix = matrix_from_json(body);
  } else if (kind == "classical") {
    s.kind = StateKind::Classical;
    if (!body.is_object()) throw InputError("'classical' must be an object");
    s.classical.p = number(body, "p");
    s.classical.r = vec3(body, "r");
    s.classical.s = vec3(body, "s");
    s.classical.t = vec3(body, "t");
  } else if (kind == "werner") {
    s.kind = StateKind::Werner;
    if (!body.is_object()) throw InputError("'werner' must be an object");
    s.werner = number(body, "w");
  } else {
    throw InputError("unknown state kind '" + kind + "'");
  }
  return s;
}

json to_json(const StateSpec& s) {
  switch (s.kind) {
    case StateKind::XState: return {{"kind", "x_state"}, {"x_state", x_fields_to_json(s.x_state)}};
    case StateKind::Matrix: return {{"kind", "matrix"}, {"matrix", matrix_to_json(s.matrix)}};
    case StateKind::Classical:
      return {{"kind", "classical"},
              {"classical",
               {{"p", s.classical.p},
                {"r", vec3_to_json(s.classical.r)},
                {"s", vec3_to_json(s.classical.s)},
                {"t", vec3_to_json(s.classical.t)}}}};
    case StateKind::Werner: return {{"kind", "werner"}, {"werner", {{"w", s.werner}}}};
  }
  return {};
}

Matrix4 StateSpec::density() const {
  switch (kind) {
    case StateKind::XState: return xqd::x_state(x_state);
    case StateKind::Matrix: validate_state(matrix); return matrix;
    case StateKind::Classical: return classical_state(classical);
    case StateKind::Werner: return xqd::x_state(werner_params(werner));
  }
  return {};
}

std::optional<XStateParams> StateSpec::x_params() const {
  switch (kind) {
    case StateKind::XState: x_state.validate(); return x_state;
    case StateKind::Werner: return werner_params(werner);
    default: break;
  }
  auto p = x_params_from_matrix(density());
  if (p) p->validate();
  return p;
}

SweepSpec parse_sweep_spec(const json& j) {
  if (!j.is_object()) throw InputError("sweep spec must be a JSON object");
  SweepSpec s;
  if (!j.contains("family") || !j.at("family").is_string())
    throw InputError("sweep spec needs a string field 'family'");
  s.family = j.at("family").get<std::string>();
  if (s.family == "werner") {
    s.from = number(j, "from", 0.0);
    s.to = number(j, "to", 1.0);
  } else if (s.family == "x_state") {
    if (!j.contains("base")) throw InputError("x_state sweep needs 'base'");
    s.base = parse_x_fields(j.at("base"));
    if (!j.contains("field") || !j.at("field").is_string())
      throw InputError("x_state sweep needs a string 'field'");
    s.field = j.at("field").get<std::string>();
    static const std::vector<std::string> fields{"a", "b", "c", "d", "x_re", "x_im", "y_re", "y_im"};
    if (std::find(fields.begin(), fields.end(), s.field) == fields.end())
      throw InputError("unknown sweep field '" + s.field + "'");
    s.from = number(j, "from");
    s.to = number(j, "to");
  } else {
    throw InputError("unknown sweep family '" + s.family + "'");
  }
  if (!j.contains("steps") || !j.at("steps").is_number_integer())
    throw InputError("sweep spec needs an integer 'steps'");
  s.steps = j.at("steps").get<int>();
  if (s.steps < 2) throw InputError("'steps' must be at least 2");
  if (j.contains("methods")) {
    const json& m = j.at("methods");
    if (!m.is_array() || m.empty()) throw InputError("'methods' must be a non-empty array");
    s.bruteforce = false;
    for (const auto& e : m) {
      const std::string name = e.is_string() ? e.get<std::string>() : "";
      if (name == "bruteforce") s.bruteforce = true;
      else if (name == "closed") s.closed = true;
      else if (name == "candidates") s.candidates = true;
      else if (name == "entropic") s.entropic = true;
      else throw InputError("unknown sweep method '" + name + "'");
    }
  }
  s.at(0).density();
  s.at(s.steps - 1).density();
  return s;
}

double SweepSpec::param(int i) const {
  return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

StateSpec SweepSpec::at(int i) const {
  const double v = param(i);
  StateSpec s;
  if (family == "werner") {
    s.kind = StateKind::Werner;
    s.werner = v;
    return s;
  }
  s.kind = StateKind::XState;
  s.x_state = base;
  XStateParams& p = s.x_state;
  if (field == "a") p.a = v;
  else if (field == "b") p.b = v;
  else if (field == "c") p.c = v;
  else if (field == "d") p.d = v;
  else if (field == "x_re") p.x.real(v);
  else if (field == "x_im") p.x.imag(v);
  else if (field == "y_re") p.y.real(v);
  else if (field == "y_im") p.y.imag(v);
  return s;
}

DiscordMethod parse_method(const std::string& name) {
  if (name == "auto") return DiscordMethod::Auto;
  if (name == "bruteforce") return DiscordMethod::Bruteforce;
  if (name == "closed") return DiscordMethod::Closed;
  if (name == "candidates") return DiscordMethod::Candidates;
  throw InputError("unknown method '" + name + "'");
}

}  // namespace xqd::cli
