#include <cmath>
#include <fstream>
#include <sstream>

#include "discflow/errors.hpp"
#include "discflow/field_io.hpp"
#include "discflow/pipeline.hpp"

namespace discflow {

namespace {

void emit(std::string& out, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  const std::string pad_in(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + Json(k).dump() + ": ";
        emit(out, v, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad_in;
        emit(out, j[i], indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::Config, "key '" + key + "': " + what);
}

class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) bad(path_.empty() ? "<root>" : path_, "expected an object");
  }
  ~Reader() = default;

  template <class T>
  void get(const char* key, T& out) {
    seen_.push_back(key);
    if (!j_.contains(key)) return;
    const Json& v = j_.at(key);
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) bad(full(key), "expected a number");
      } else if constexpr (std::is_same_v<T, int>) {
        if (!v.is_number_integer()) bad(full(key), "expected an integer");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) bad(full(key), "expected true or false");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) bad(full(key), "expected a string");
      } else if constexpr (std::is_same_v<T, std::vector<double>>) {
        if (!v.is_array()) bad(full(key), "expected an array of numbers");
        for (const auto& e : v)
          if (!e.is_number()) bad(full(key), "expected an array of numbers");
      } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
        if (!v.is_array()) bad(full(key), "expected an array of strings");
        for (const auto& e : v)
          if (!e.is_string()) bad(full(key), "expected an array of strings");
      }
      out = v.get<T>();
    } catch (const nlohmann::json::exception& e) {
      bad(full(key), e.what());
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  const Json& at(const char* key) {
    seen_.push_back(key);
    return j_.at(key);
  }
  std::string full(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      bool known = false;
      for (const auto& s : seen_) known = known || s == k;
      if (!known) bad(path_.empty() ? k : path_ + "." + k, "unknown key");
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::vector<std::string> seen_;
};

}  // namespace

std::string to_json_text(const Json& j) {
  std::string out;
  emit(out, j, 0);
  out += "\n";
  return out;
}

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::ConstructOnly: return "construct-only";
    case RunMode::FullSolve: return "full-solve";
    case RunMode::Sweep: return "sweep";
    case RunMode::RescaleLambda: return "rescale-lambda";
  }
  return "?";
}

RunMode parse_mode(const std::string& s) {
  for (RunMode m : {RunMode::ConstructOnly, RunMode::FullSolve, RunMode::Sweep, RunMode::RescaleLambda})
    if (s == to_string(m)) return m;
  throw Error(ErrorKind::Config,
              "unknown mode '" + s + "' (expected construct-only, full-solve, sweep or rescale-lambda)");
}

void RunConfig::validate() const {
  params.validate();
  auto positive = [](const char* key, double v) {
    if (!(v > 0.0)) bad(key, "must be positive");
  };
  auto fraction = [](const char* key, double v) {
    if (!(v > 0.0 && v < 1.0)) bad(key, "must lie in (0, 1)");
  };
  positive("grid.n_modes", n_modes);
  positive("grid.n_radial", n_radial);
  positive("grid.n_s", n_s);
  positive("grid.n_zeta", layer.n_zeta);
  positive("layer.max_iter", layer.max_iter);
  positive("picard.max_iter", picard.max_iter);
  if (!(r_max > 1.0)) bad("grid.r_max", "must exceed 1");
  positive("grid.z_max", layer.z_max);
  fraction("layer.tol", layer.tol);
  fraction("picard.tol", picard.tol);
  positive("layer.delta_max", layer.delta_max);
  positive("picard.eps_max", picard.eps_max);
  positive("picard.delta_max", picard.delta_max);
  if (params.f.max_mode() > n_modes) bad("params.f_cos", "boundary data has more modes than grid.n_modes");
  if (mode == RunMode::RescaleLambda && !params.lambda) bad("params.lambda", "required in rescale-lambda mode");
  if (mode == RunMode::Sweep) {
    if (sweep_axis != "epsilon" && sweep_axis != "delta") bad("sweep.axis", "expected epsilon or delta");
    if (sweep_values.empty()) bad("sweep.values", "needs at least one value");
    if (member_mode == RunMode::Sweep || member_mode == RunMode::RescaleLambda)
      bad("sweep.member_mode", "expected construct-only or full-solve");
  }
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  Reader root(j, "");
  std::string mode = to_string(c.mode);
  root.get("mode", mode);
  c.mode = parse_mode(mode);

  if (root.has("params")) {
    Reader p(root.at("params"), "params");
    p.get("omega", c.params.omega);
    p.get("delta", c.params.delta);
    p.get("epsilon", c.params.epsilon);
    p.get("order", c.params.order);
    p.get("f_cos", c.params.f.cos);
    p.get("f_sin", c.params.f.sin);
    if (p.has("lambda")) {
      const Json& l = p.at("lambda");
      if (l.is_number()) c.params.lambda = l.get<double>();
      else if (!l.is_null()) bad("params.lambda", "expected a number or null");
    }
    p.finish();
  }
  if (root.has("grid")) {
    Reader g(root.at("grid"), "grid");
    g.get("n_modes", c.n_modes);
    g.get("n_radial", c.n_radial);
    g.get("r_max", c.r_max);
    g.get("n_s", c.n_s);
    g.get("n_zeta", c.layer.n_zeta);
    g.get("z_max", c.layer.z_max);
    g.finish();
  }
  if (root.has("layer")) {
    Reader l(root.at("layer"), "layer");
    l.get("tol", c.layer.tol);
    l.get("max_iter", c.layer.max_iter);
    l.get("delta_max", c.layer.delta_max);
    std::string lift = Lift(c.layer.lift).name();
    l.get("lift", lift);
    c.layer.lift = parse_lift(lift);
    l.finish();
  }
  if (root.has("picard")) {
    Reader p(root.at("picard"), "picard");
    p.get("tol", c.picard.tol);
    p.get("max_iter", c.picard.max_iter);
    p.get("eps_max", c.picard.eps_max);
    p.get("delta_max", c.picard.delta_max);
    p.finish();
  }
  if (root.has("output")) {
    Reader o(root.at("output"), "output");
    o.get("dir", c.out_dir);
    o.get("write_fields", c.write_fields);
    o.get("report_timing", c.report_timing);
    o.finish();
  }
  root.get("gates", c.gates);
  if (root.has("sweep")) {
    Reader s(root.at("sweep"), "sweep");
    s.get("axis", c.sweep_axis);
    s.get("values", c.sweep_values);
    std::string mm = to_string(c.member_mode);
    s.get("member_mode", mm);
    c.member_mode = parse_mode(mm);
    s.finish();
  }
  root.finish();
  c.validate();
  return c;
}

RunConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::Config, "syntax error at line " + std::to_string(line) + ", column " +
                                       std::to_string(col) + ": " + e.what());
  }
  return config_from_json(j);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["mode"] = to_string(c.mode);
  Json p;
  p["omega"] = c.params.omega;
  p["delta"] = c.params.delta;
  p["epsilon"] = c.params.epsilon;
  p["lambda"] = c.params.lambda ? Json(*c.params.lambda) : Json(nullptr);
  p["f_cos"] = c.params.f.cos;
  p["f_sin"] = c.params.f.sin;
  p["order"] = c.params.order;
  j["params"] = p;
  j["grid"] = {{"n_modes", c.n_modes}, {"n_radial", c.n_radial}, {"r_max", c.r_max},
               {"n_s", c.n_s},         {"n_zeta", c.layer.n_zeta}, {"z_max", c.layer.z_max}};
  j["layer"] = {{"tol", c.layer.tol},
                {"max_iter", c.layer.max_iter},
                {"delta_max", c.layer.delta_max},
                {"lift", Lift(c.layer.lift).name()}};
  j["picard"] = {{"tol", c.picard.tol},
                 {"max_iter", c.picard.max_iter},
                 {"eps_max", c.picard.eps_max},
                 {"delta_max", c.picard.delta_max}};
  j["output"] = {{"dir", c.out_dir}, {"write_fields", c.write_fields}, {"report_timing", c.report_timing}};
  j["gates"] = c.gates;
  j["sweep"] = {{"axis", c.sweep_axis}, {"values", c.sweep_values}, {"member_mode", to_string(c.member_mode)}};
  return j;
}

}  // namespace discflow
