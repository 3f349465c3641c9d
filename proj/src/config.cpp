#include "floq/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "floq/errors.hpp"

namespace floq {
namespace {

using nlohmann::json;

const std::set<std::string> kTasks{"adapt", "spectrum", "deflation", "observe", "oracle", "decompose", "build"};

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

/// Reads fields of one JSON object and rejects keys that were never asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json* get(const std::string& key) {
    seen_.insert(key);
    return has(key) ? &j_.at(key) : nullptr;
  }

  std::string path(const std::string& key) const { return join(path_, key); }

  double number(const std::string& key, double fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(path(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw ConfigError(path(key), "must be finite");
    return d;
  }

  long long integer(const std::string& key, long long fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(path(key), "expected an integer");
    return v->get<long long>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(path(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(path(key), "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_array()) throw ConfigError(path(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number()) throw ConfigError(path(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back((*v)[i].get<double>());
    }
    return out;
  }

  std::vector<std::string> strings(const std::string& key, std::vector<std::string> fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (v->is_string()) return {v->get<std::string>()};
    if (!v->is_array()) throw ConfigError(path(key), "expected a string or an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_string()) throw ConfigError(path(key) + "[" + std::to_string(i) + "]", "expected a string");
      out.push_back((*v)[i].get<std::string>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(path(key), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::array<double, 3> triple(ObjectReader& r, const std::string& key, std::array<double, 3> fallback) {
  const auto v = r.numbers(key, {fallback.begin(), fallback.end()});
  if (v.size() != 3) throw ConfigError(r.path(key), "expected exactly three values (x, y, z)");
  return {v[0], v[1], v[2]};
}

template <class Enum>
Enum parse_enum(ObjectReader& r, const std::string& key, Enum fallback,
                std::initializer_list<std::pair<const char*, Enum>> names) {
  std::string current;
  for (const auto& [n, e] : names) {
    if (e == fallback) current = n;
  }
  const std::string s = r.string(key, current);
  for (const auto& [n, e] : names) {
    if (s == n) return e;
  }
  throw ConfigError(r.path(key), "unrecognized value '" + s + "'");
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path, what);
}

}  // namespace

ExperimentConfig config_from_json(const json& root) {
  ExperimentConfig c;
  ObjectReader r(root, "");
  const long long version = r.integer("schema_version", kConfigSchemaVersion);
  require(version == kConfigSchemaVersion, "schema_version", "unsupported schema version");
  c.task = r.string("task", c.task);
  require(kTasks.count(c.task) > 0, "task", "unknown task '" + c.task + "'");
  c.label = r.string("label", c.label);
  c.omega = r.number("omega", c.omega);
  require(c.omega > 0.0, "omega", "must be positive");
  c.n_a = static_cast<int>(r.integer("n_a", c.n_a));
  require(c.n_a >= 1 && c.n_a <= 10, "n_a", "must be in [1, 10]");
  c.output = r.string("output", c.output);
  const long long seed = r.integer("seed", 0);
  require(seed >= 0, "seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.threads = static_cast<int>(r.integer("threads", c.threads));
  require(c.threads >= 1, "threads", "must be >= 1");
  c.references = r.strings("references", c.references);
  require(!c.references.empty(), "references", "needs at least one entry");

  if (const json* m = r.get("model")) {
    ObjectReader mr(*m, "model");
    c.model.type = mr.string("type", c.model.type);
    if (c.model.type == "xyz") {
      c.model.xyz.L = static_cast<int>(mr.integer("L", c.model.xyz.L));
      require(c.model.xyz.L >= 2 && c.model.xyz.L <= 16, mr.path("L"), "must be in [2, 16]");
      c.model.xyz.J_mean = triple(mr, "J_mean", c.model.xyz.J_mean);
      c.model.xyz.J_amp = triple(mr, "J_amp", c.model.xyz.J_amp);
      c.model.xyz.Bz_mean = mr.number("Bz_mean", c.model.xyz.Bz_mean);
      c.model.xyz.Bz_amp = mr.number("Bz_amp", c.model.xyz.Bz_amp);
      c.model.xyz.periodic = mr.boolean("periodic", c.model.xyz.periodic);
    } else if (c.model.type == "single_qubit") {
      c.model.d1 = mr.number("d1", c.model.d1);
      c.model.d2 = mr.number("d2", c.model.d2);
      c.model.d3 = mr.number("d3", c.model.d3);
    } else {
      throw ConfigError("model.type", "unknown model '" + c.model.type + "'");
    }
    mr.finish();
  }

  if (const json* a = r.get("adapt")) {
    ObjectReader ar(*a, "adapt");
    AdaptConfig& d = c.adapt;
    d.lambda = ar.number("lambda", d.lambda);
    d.epsilon = ar.number("epsilon", d.epsilon);
    require(d.epsilon > 0.0, ar.path("epsilon"), "must be positive");
    d.max_iterations = static_cast<int>(ar.integer("max_iterations", d.max_iterations));
    require(d.max_iterations >= 0, ar.path("max_iterations"), "must be non-negative");
    d.inner.gradient_tol = ar.number("inner_gradient_tol", d.inner.gradient_tol);
    require(d.inner.gradient_tol > 0.0, ar.path("inner_gradient_tol"), "must be positive");
    d.inner.max_iterations = static_cast<int>(ar.integer("inner_max_iterations", d.inner.max_iterations));
    d.inner.max_evaluations = static_cast<int>(ar.integer("inner_max_evaluations", d.inner.max_evaluations));
    require(d.inner.max_iterations >= 1, ar.path("inner_max_iterations"), "must be >= 1");
    require(d.inner.max_evaluations >= 1, ar.path("inner_max_evaluations"), "must be >= 1");
    d.cert_tol = ar.number("cert_tol", d.cert_tol);
    d.beta = ar.number("beta", d.beta);
    if (ar.has("beta")) require(d.beta > 0.0, ar.path("beta"), "must be positive");
    d.tie_break = parse_enum(ar, "tie_break", d.tie_break,
                             {{"lowest_index", TieBreak::LowestIndex}, {"highest_index", TieBreak::HighestIndex}});
    d.pool = parse_enum(ar, "pool", d.pool,
                        {{"mixed", PoolPreset::Mixed},
                         {"mixed_product", PoolPreset::MixedProduct},
                         {"two_local_total", PoolPreset::TwoLocalTotal}});
    d.pairing = parse_enum(ar, "pairing", d.pairing,
                           {{"all_pairs", Pairing::AllPairs}, {"nearest_neighbor", Pairing::NearestNeighbor}});
    d.tetris = ar.boolean("tetris", d.tetris);
    const long long limit = ar.integer("squared_term_limit", static_cast<long long>(d.squared_term_limit));
    require(limit >= 1, ar.path("squared_term_limit"), "must be >= 1");
    d.squared_term_limit = static_cast<std::size_t>(limit);
    ar.finish();
  }
  c.adapt.threads = c.threads;

  if (const json* s = r.get("spectrum")) {
    ObjectReader sr(*s, "spectrum");
    c.lambda_grid = sr.numbers("lambda_grid", c.lambda_grid);
    sr.finish();
  }
  if (const json* d = r.get("deflation")) {
    ObjectReader dr(*d, "deflation");
    c.k_states = static_cast<int>(dr.integer("k_states", c.k_states));
    require(c.k_states >= 1, dr.path("k_states"), "must be >= 1");
    c.shift = dr.number("shift", c.shift);
    require(c.shift > -c.omega / 2 && c.shift < c.omega / 2, dr.path("shift"),
            "must lie in (-omega/2, omega/2)");
    dr.finish();
  }
  if (const json* o = r.get("observe")) {
    ObjectReader orr(*o, "observe");
    c.observables = orr.strings("observables", c.observables);
    c.points = static_cast<int>(orr.integer("points", c.points));
    require(c.points >= 2, orr.path("points"), "must be >= 2");
    orr.finish();
  }
  if (const json* t = r.get("oracle")) {
    ObjectReader tr(*t, "oracle");
    c.trotter.steps_per_period = static_cast<int>(tr.integer("steps_per_period", c.trotter.steps_per_period));
    require(c.trotter.steps_per_period >= 1, tr.path("steps_per_period"), "must be >= 1");
    c.trotter.order = static_cast<int>(tr.integer("order", c.trotter.order));
    require(c.trotter.order == 1 || c.trotter.order == 2, tr.path("order"), "must be 1 or 2");
    tr.finish();
  }
  if (const json* d = r.get("decompose")) {
    ObjectReader dr(*d, "decompose");
    c.decompose_matrix = dr.string("matrix", c.decompose_matrix);
    const std::set<std::string> kinds{"diagonal", "shift", "asym", "symmetric", "observable"};
    require(kinds.count(c.decompose_matrix) > 0, dr.path("matrix"), "unknown matrix '" + c.decompose_matrix + "'");
    c.decompose_r = static_cast<int>(dr.integer("r", c.decompose_r));
    dr.finish();
  }
  r.finish();

  require(c.adapt.lambda > -c.omega / 2 && c.adapt.lambda <= c.omega / 2, "adapt.lambda",
          "must lie in (-omega/2, omega/2]");
  for (std::size_t i = 0; i < c.lambda_grid.size(); ++i) {
    const double l = c.lambda_grid[i];
    require(l > -c.omega / 2 && l <= c.omega / 2, "spectrum.lambda_grid[" + std::to_string(i) + "]",
            "must lie in (-omega/2, omega/2]");
  }
  const int L = physical_qubits(c);
  for (std::size_t i = 0; i < c.references.size(); ++i) {
    try {
      (void)make_reference(c, c.references[i]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("references[" + std::to_string(i) + "]", e.what());
    }
  }
  for (std::size_t i = 0; i < c.observables.size(); ++i) {
    try {
      (void)make_observable(c.observables[i], L);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("observe.observables[" + std::to_string(i) + "]", e.what());
    }
  }
  try {
    const DriveSpec d = make_drive(c);
    const int max_r = d.max_mode();
    require(max_r <= AuxSpec(c.n_a).cutoff() + 1, "n_a", "too small for the drive's Fourier modes");
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError("model", e.what());
  }
  return c;
}

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const ExperimentConfig& c) {
  json model;
  model["type"] = c.model.type;
  if (c.model.type == "xyz") {
    model["L"] = c.model.xyz.L;
    model["J_mean"] = c.model.xyz.J_mean;
    model["J_amp"] = c.model.xyz.J_amp;
    model["Bz_mean"] = c.model.xyz.Bz_mean;
    model["Bz_amp"] = c.model.xyz.Bz_amp;
    model["periodic"] = c.model.xyz.periodic;
  } else {
    model["d1"] = c.model.d1;
    model["d2"] = c.model.d2;
    model["d3"] = c.model.d3;
  }
  json adapt = to_json(c.adapt);
  adapt["squared_term_limit"] = c.adapt.squared_term_limit;
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["task"] = c.task;
  j["label"] = c.label;
  j["model"] = model;
  j["omega"] = c.omega;
  j["n_a"] = c.n_a;
  j["references"] = c.references;
  j["adapt"] = adapt;
  j["spectrum"] = {{"lambda_grid", c.lambda_grid}};
  j["deflation"] = {{"k_states", c.k_states}, {"shift", c.shift}};
  j["observe"] = {{"observables", c.observables}, {"points", c.points}};
  j["oracle"] = {{"steps_per_period", c.trotter.steps_per_period}, {"order", c.trotter.order}};
  j["decompose"] = {{"matrix", c.decompose_matrix}, {"r", c.decompose_r}};
  j["output"] = c.output;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j;
}

int physical_qubits(const ExperimentConfig& c) { return c.model.type == "xyz" ? c.model.xyz.L : 1; }

DriveSpec make_drive(const ExperimentConfig& c) {
  if (c.model.type == "xyz") return driven_xyz(c.model.xyz, c.omega);
  return single_qubit_example(c.model.d1, c.model.d2, c.model.d3, c.omega);
}

StateVector make_reference(const ExperimentConfig& c, const std::string& descriptor, std::uint64_t salt) {
  const int L = physical_qubits(c);
  const RegisterLayout layout{c.n_a, L};
  if (descriptor == "uniform") return uniform_superposition(layout);
  if (descriptor == "random") return random_state(layout, c.seed * 1000003ULL + salt);
  static const std::pair<const char*, char> words[] = {{"up", 'u'}, {"down", 'd'}, {"plus", '+'}, {"minus", '-'}};
  for (const auto& [w, ch] : words) {
    if (descriptor == w) return init_reference(layout, ProductState::uniform(L, ch));
  }
  return init_reference(layout, ProductState::parse(descriptor));
}

ObservableSpec make_observable(const std::string& name, int L) {
  if (name == "sum_z") return {name, total_z(L)};
  if (name == "sum_zz") return {name, total_zz(L)};
  const auto s = PauliString::from_letters(name);
  if (s.width() != L) throw std::invalid_argument("observable '" + name + "' has the wrong width");
  return {name, PauliSum(s, 1.0)};
}

}  // namespace floq
