#include <fstream>
#include <set>
#include <sstream>

#include "btp/cli.hpp"
#include "btp/rootsys.hpp"

namespace btp::cli {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Reads typed fields out of one space object and remembers which keys were used,
// so that leftover keys can be reported as typos.
class FieldReader {
 public:
  FieldReader(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {}

  bool has(const std::string& key) {
    used_.insert(key);
    return obj_.contains(key);
  }

  const json& at(const std::string& key) {
    used_.insert(key);
    if (!obj_.contains(key)) fail("missing key '" + key + "'");
    return obj_.at(key);
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(where_ + ": " + msg); }

  std::string string_at(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) fail("'" + key + "' must be a string");
    return v.get<std::string>();
  }

  long integer(const json& v, const std::string& key) const {
    if (!v.is_number_integer()) fail("'" + key + "' must be an integer");
    return v.get<long>();
  }

  long integer_at(const std::string& key) { return integer(at(key), key); }

  Q rational(const json& v, const std::string& key) const {
    if (v.is_number_integer()) return Q(v.get<long>());
    if (!v.is_string()) fail("'" + key + "' must be an exact scalar string such as \"3/2\"");
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ScalarParseError& e) {
      fail("'" + key + "': " + e.what());
    }
  }

  GQ gaussian(const json& v, const std::string& key) const {
    if (v.is_number_integer()) return GQ(Q(v.get<long>()));
    if (!v.is_string()) fail("'" + key + "' must be an exact scalar string such as \"1/2-3i\"");
    try {
      return parse_gaussian(v.get<std::string>());
    } catch (const ScalarParseError& e) {
      fail("'" + key + "': " + e.what());
    }
  }

  Q rational_or(const std::string& key, const Q& fallback) {
    return has(key) ? rational(obj_.at(key), key) : fallback;
  }

  double real_or(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number()) fail("'" + key + "' must be a number");
    return v.get<double>();
  }

  std::vector<Q> rational_list(const json& v, const std::string& key) const {
    if (!v.is_array()) fail("'" + key + "' must be an array");
    std::vector<Q> out;
    for (const json& e : v) out.push_back(rational(e, key));
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items())
      if (!used_.count(key)) fail("unknown key '" + key + "'");
  }

 private:
  const json& obj_;
  std::string where_;
  std::set<std::string> used_;
};

const std::set<std::string> kVerdictNames = {
    "kahler", "balanced", "pluriclosed", "chern_flat", "bismut_flat", "btp", "bas", "naturally_reductive",
    "lck", "xi_identity", "bismut_parallel_chern_torsion", "closed_forms", "curvature_formula",
    "rb_ijk_lbar_zero", "rb_equals_chern_swapped", "rb_pair_symmetric"};

void check_cartan(FieldReader& r, const std::string& name) {
  try {
    (void)CartanType::parse(name);
  } catch (const std::exception& e) {
    r.fail(std::string("bad Cartan type: ") + e.what());
  }
}

json rational_array(const std::vector<Q>& v) {
  json a = json::array();
  for (const Q& q : v) a.push_back(to_string(q));
  return a;
}

}  // namespace

std::string SpaceSpec::type() const {
  return std::visit(Overloaded{[](const FlagSpace&) { return "flag"; },
                               [](const CanonicalSpace&) { return "canonical"; },
                               [](const SamelsonSpace&) { return "samelson"; },
                               [](const NilpotentSpace&) { return "nilpotent"; },
                               [](const M4Space&) { return "m4"; },
                               [](const CalabiEckmannSpace&) { return "calabi-eckmann"; },
                               [](const HopfSpace&) { return "hopf"; }},
                    data);
}

SpaceSpec parse_space(const json& j) {
  if (!j.is_object()) throw ConfigError("space entry must be a JSON object");
  std::string where = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "space";
  FieldReader r(j, where);
  SpaceSpec spec;
  std::string type = r.string_at("type");
  spec.name = r.has("name") ? r.string_at("name") : type;

  if (type == "flag") {
    FlagSpace s;
    s.cartan = r.string_at("cartan");
    check_cartan(r, s.cartan);
    if (r.has("isotropy")) {
      const json& iso = j.at("isotropy");
      if (!iso.is_array()) r.fail("'isotropy' must be an array of simple-root indices");
      for (const json& e : iso) s.isotropy.push_back(static_cast<int>(r.integer(e, "isotropy")));
    }
    if (r.has("metric")) {
      const json& m = j.at("metric");
      if (m.is_string()) {
        if (m.get<std::string>() != "killing") r.fail("'metric' must be \"killing\" or a list of values");
      } else {
        s.metric = r.rational_list(m, "metric");
      }
    }
    spec.data = s;
  } else if (type == "canonical") {
    CanonicalSpace s{r.string_at("cartan")};
    check_cartan(r, s.cartan);
    spec.data = s;
  } else if (type == "samelson") {
    SamelsonSpace s;
    const json& f = r.at("factors");
    if (!f.is_array() || f.empty()) r.fail("'factors' must be a nonempty array of Cartan types");
    for (const json& e : f) {
      if (!e.is_string()) r.fail("'factors' entries must be strings");
      s.factors.push_back(e.get<std::string>());
      check_cartan(r, s.factors.back());
    }
    if (r.has("root_values")) s.root_values = r.rational_list(j.at("root_values"), "root_values");
    if (r.has("torus_metric")) {
      std::string t = r.string_at("torus_metric");
      if (t != "killing" && t != "identity") r.fail("'torus_metric' must be \"killing\" or \"identity\"");
      s.killing_torus = t == "killing";
    }
    spec.data = s;
  } else if (type == "nilpotent") {
    NilpotentSpace s;
    s.n = static_cast<int>(r.integer_at("n"));
    s.r = static_cast<int>(r.integer_at("r"));
    if (s.r <= 0 || s.r >= s.n) r.fail("need 0 < r < n");
    const json& y = r.at("y");
    if (!y.is_array() || static_cast<int>(y.size()) != s.n - s.r) r.fail("'y' must have n - r rows");
    for (const json& row : y) {
      if (!row.is_array() || static_cast<int>(row.size()) != s.r) r.fail("each row of 'y' must have r entries");
      std::vector<GQ> vals;
      for (const json& e : row) vals.push_back(r.gaussian(e, "y"));
      s.y.push_back(vals);
    }
    spec.data = s;
  } else if (type == "m4") {
    M4Space s;
    s.a1 = r.integer_at("a1");
    s.a2 = r.integer_at("a2");
    spec.data = s;
  } else if (type == "calabi-eckmann") {
    CalabiEckmannSpace s;
    if (r.has("m1")) s.m1 = static_cast<int>(r.integer(j.at("m1"), "m1"));
    if (r.has("m2")) s.m2 = static_cast<int>(r.integer(j.at("m2"), "m2"));
    s.alpha = r.rational_or("alpha", s.alpha);
    s.beta = r.rational_or("beta", s.beta);
    s.c1 = r.rational_or("c1", s.c1);
    s.c2 = r.rational_or("c2", s.c2);
    s.q_scale = r.rational_or("q_scale", s.q_scale);
    if (s.m1 < 1 || s.m2 < 1) r.fail("sphere dimensions need m1, m2 >= 1");
    if (r.has("f")) {
      const json& f = j.at("f");
      if (!f.is_array() || f.size() != 2) r.fail("'f' must be a 2x2 array");
      std::vector<std::vector<Q>> rows;
      for (const json& row : f) {
        rows.push_back(r.rational_list(row, "f"));
        if (rows.back().size() != 2) r.fail("'f' must be a 2x2 array");
      }
      s.f = rows;
    }
    spec.data = s;
  } else if (type == "hopf") {
    HopfSpace s;
    s.n = static_cast<int>(r.integer_at("n"));
    if (r.has("points")) s.points = static_cast<int>(r.integer(j.at("points"), "points"));
    if (r.has("seed")) s.seed = static_cast<std::uint64_t>(r.integer(j.at("seed"), "seed"));
    s.step = r.real_or("step", s.step);
    s.perturbation = r.real_or("perturbation", s.perturbation);
    if (s.n < 2) r.fail("'n' must be at least 2");
    if (s.points < 1) r.fail("'points' must be positive");
    if (!(s.step > 0)) r.fail("'step' must be positive");
    spec.data = s;
  } else {
    r.fail("unknown space type '" + type + "'");
  }

  if (r.has("checks")) {
    const json& c = j.at("checks");
    if (!c.is_array()) r.fail("'checks' must be an array of verdict names");
    for (const json& e : c) {
      if (!e.is_string() || !kVerdictNames.count(e.get<std::string>())) r.fail("unknown check " + e.dump());
      spec.checks.push_back(e.get<std::string>());
    }
  }
  if (r.has("expect")) {
    const json& e = j.at("expect");
    if (!e.is_object()) r.fail("'expect' must map verdict names to booleans");
    for (const auto& [key, value] : e.items()) {
      if (!kVerdictNames.count(key)) r.fail("unknown verdict '" + key + "' in 'expect'");
      if (!value.is_boolean()) r.fail("expected value for '" + key + "' must be a boolean");
      spec.expect[key] = value.get<bool>();
    }
  }
  r.finish();
  return spec;
}

std::vector<SpaceSpec> parse_config(const json& j) {
  const json* list = &j;
  if (j.is_object() && j.contains("spaces")) {
    if (j.size() != 1) throw ConfigError("a config with 'spaces' may not carry other keys");
    list = &j.at("spaces");
  }
  std::vector<SpaceSpec> out;
  if (list->is_array()) {
    for (const json& e : *list) out.push_back(parse_space(e));
  } else {
    out.push_back(parse_space(*list));
  }
  if (out.empty()) throw ConfigError("config lists no spaces");
  return out;
}

std::vector<SpaceSpec> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const SpaceSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["type"] = spec.type();
  std::visit(Overloaded{[&](const FlagSpace& s) {
                          j["cartan"] = s.cartan;
                          j["isotropy"] = s.isotropy;
                          j["metric"] = s.metric ? rational_array(*s.metric) : json("killing");
                        },
                        [&](const CanonicalSpace& s) { j["cartan"] = s.cartan; },
                        [&](const SamelsonSpace& s) {
                          j["factors"] = s.factors;
                          if (s.root_values) j["root_values"] = rational_array(*s.root_values);
                          j["torus_metric"] = s.killing_torus ? "killing" : "identity";
                        },
                        [&](const NilpotentSpace& s) {
                          j["n"] = s.n;
                          j["r"] = s.r;
                          json y = json::array();
                          for (const auto& row : s.y) {
                            json jr = json::array();
                            for (const GQ& e : row) jr.push_back(to_string(e));
                            y.push_back(jr);
                          }
                          j["y"] = y;
                        },
                        [&](const M4Space& s) {
                          j["a1"] = s.a1;
                          j["a2"] = s.a2;
                        },
                        [&](const CalabiEckmannSpace& s) {
                          j["m1"] = s.m1;
                          j["m2"] = s.m2;
                          j["alpha"] = to_string(s.alpha);
                          j["beta"] = to_string(s.beta);
                          j["c1"] = to_string(s.c1);
                          j["c2"] = to_string(s.c2);
                          j["q_scale"] = to_string(s.q_scale);
                          if (s.f) {
                            json f = json::array();
                            for (const auto& row : *s.f) f.push_back(rational_array(row));
                            j["f"] = f;
                          }
                        },
                        [&](const HopfSpace& s) {
                          j["n"] = s.n;
                          j["points"] = s.points;
                          j["seed"] = s.seed;
                          j["step"] = s.step;
                          j["perturbation"] = s.perturbation;
                        }},
             spec.data);
  if (!spec.checks.empty()) j["checks"] = spec.checks;
  if (!spec.expect.empty()) j["expect"] = spec.expect;
  return j;
}

}  // namespace btp::cli
