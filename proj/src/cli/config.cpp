#include "probe/cli/config.hpp"

#include "probe/core/errors.hpp"
#include "probe/core/hashing.hpp"

#include <set>

namespace probe {

const BackendConfig& ProbeConfig::backend(const std::string& name) const {
  for (const auto& b : backends) {
    if (b.name == name) return b;
  }
  fail(ErrorCode::InvalidArgument, "no backend named " + name);
}

std::string canonical_config(const json& doc) {
  json copy = doc;
  if (copy.contains("paths") && copy["paths"].is_object()) {
    copy["paths"].erase("cache_dir");
    copy["paths"].erase("report_dir");
  }
  return copy.dump();
}

std::string config_hash(const json& doc) { return sha256_hex(canonical_config(doc)); }

namespace {

const std::set<std::string> kTopLevel = {"run_id",   "seed",      "paths",     "backends",
                                         "matrix",   "sampling",  "bootstrap", "prompt",
                                         "similarity_entities",   "timestamp"};

struct Collector {
  std::vector<Diagnostic> out;
  void add(std::string code, std::string subject, std::string message) {
    out.push_back({std::move(code), std::move(subject), std::move(message)});
  }
};

}  // namespace

ConfigLoad validate_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  ConfigLoad load;
  Collector diag;
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    load.diagnostics.push_back({"Io", path.string(), e.what()});
    return load;
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    load.diagnostics.push_back({"ParseError", path.string(),
                                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what()});
    return load;
  }
  if (!doc.is_object()) {
    load.diagnostics.push_back({"ParseError", path.string(), "config must be a JSON object"});
    return load;
  }
  if (seed_override) doc["seed"] = *seed_override;

  ProbeConfig cfg;
  cfg.source = path;
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  auto get_string = [&](const json& obj, const char* key, const std::string& subject) -> std::optional<std::string> {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj[key].is_string()) {
      diag.add("TypeError", subject, subject + " must be a string");
      return std::nullopt;
    }
    return obj[key].get<std::string>();
  };
  auto get_uint = [&](const json& obj, const char* key, const std::string& subject) -> std::optional<std::uint64_t> {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj[key].is_number_unsigned()) {
      diag.add("TypeError", subject, subject + " must be a non-negative integer");
      return std::nullopt;
    }
    return obj[key].get<std::uint64_t>();
  };

  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!kTopLevel.count(key)) diag.add("UnknownKey", key, "unknown top-level key " + key);
  }

  if (auto v = get_string(doc, "run_id", "run_id"); v && !v->empty()) cfg.run_id = *v;
  else diag.add("MissingKey", "run_id", "run_id is required");
  cfg.seed = get_uint(doc, "seed", "seed").value_or(0);

  // paths
  const json paths = doc.value("paths", json::object());
  if (!paths.is_object()) diag.add("TypeError", "paths", "paths must be an object");
  auto required_file = [&](const char* key, std::filesystem::path& dst) {
    const std::string subject = std::string("paths.") + key;
    auto v = paths.is_object() ? get_string(paths, key, subject) : std::nullopt;
    if (!v) {
      diag.add("MissingKey", subject, subject + " is required");
      return;
    }
    dst = resolve(*v);
    if (!std::filesystem::exists(dst)) diag.add("MissingPath", subject, subject + " does not exist: " + dst.string());
  };
  auto optional_file = [&](const char* key, std::optional<std::filesystem::path>& dst) {
    const std::string subject = std::string("paths.") + key;
    auto v = paths.is_object() ? get_string(paths, key, subject) : std::nullopt;
    if (!v) return;
    dst = resolve(*v);
    if (!std::filesystem::exists(*dst)) diag.add("MissingPath", subject, subject + " does not exist: " + dst->string());
  };
  required_file("entities", cfg.paths.entities);
  required_file("sentences", cfg.paths.sentences);
  optional_file("lexicon", cfg.paths.lexicon);
  optional_file("pivots", cfg.paths.pivots);
  optional_file("prompts", cfg.paths.prompts);
  const auto cache = paths.is_object() ? get_string(paths, "cache_dir", "paths.cache_dir") : std::nullopt;
  const auto reports = paths.is_object() ? get_string(paths, "report_dir", "paths.report_dir") : std::nullopt;
  cfg.paths.cache_dir = resolve(cache.value_or("cache"));
  cfg.paths.report_dir = resolve(reports.value_or("reports"));

  // backends
  std::set<std::string> names;
  if (!doc.contains("backends") || !doc["backends"].is_array() || doc["backends"].empty()) {
    diag.add("MissingKey", "backends", "backends must be a non-empty list");
  } else {
    for (std::size_t i = 0; i < doc["backends"].size(); ++i) {
      const std::string subject = "backends[" + std::to_string(i) + "]";
      try {
        BackendConfig b = backend_from_json(doc["backends"][i]);
        if (!names.insert(b.name).second) diag.add("DuplicateBackend", subject, "duplicate backend name " + b.name);
        for (const auto& p : validate_backend(b)) diag.add("InvalidBackend", subject, p);
        cfg.backends.push_back(std::move(b));
      } catch (const Error& e) {
        diag.add("InvalidBackend", subject, e.what());
      }
    }
  }

  // matrix
  const json matrix = doc.value("matrix", json::object());
  auto string_list = [&](const json& obj, const char* key, const std::string& subject) {
    std::vector<std::string> out;
    if (!obj.is_object() || !obj.contains(key)) return out;
    if (!obj[key].is_array()) {
      diag.add("TypeError", subject, subject + " must be a list of strings");
      return out;
    }
    for (const auto& v : obj[key]) {
      if (v.is_string()) out.push_back(v.get<std::string>());
      else diag.add("TypeError", subject, subject + " must be a list of strings");
    }
    return out;
  };
  cfg.models = string_list(matrix, "models", "matrix.models");
  if (cfg.models.empty()) diag.add("MissingKey", "matrix.models", "matrix.models must name at least one backend");
  for (const auto& m : cfg.models) {
    if (!names.count(m)) diag.add("UnknownModel", "matrix.models", "matrix.models references unknown backend " + m);
  }
  for (const auto& l : string_list(matrix, "languages", "matrix.languages")) {
    if (auto lang = parse_language(l)) cfg.languages.push_back(*lang);
    else diag.add("UnknownLanguage", "matrix.languages", "unknown language " + l);
  }
  if (cfg.languages.empty()) diag.add("MissingKey", "matrix.languages", "matrix.languages must list at least one language");
  const auto conds = string_list(matrix, "conditions", "matrix.conditions");
  for (const auto& c : conds) {
    if (auto cond = parse_condition(c)) cfg.conditions.push_back(*cond);
    else diag.add("UnknownCondition", "matrix.conditions", "unknown condition " + c);
  }
  if (conds.empty()) cfg.conditions = {Condition::real};

  // sampling
  if (doc.contains("sampling")) {
    const json& s = doc["sampling"];
    SamplingConfig sc;
    sc.countries = string_list(s, "countries", "sampling.countries");
    if (sc.countries.empty()) diag.add("MissingKey", "sampling.countries", "sampling needs a list of countries");
    if (s.is_object() && s.contains("quotas")) {
      try {
        sc.quotas = parse_quotas(s["quotas"].get<std::string>());
      } catch (const std::exception& e) {
        diag.add("InvalidQuotas", "sampling.quotas", e.what());
      }
    }
    cfg.sampling = std::move(sc);
  }

  // bootstrap and prompt
  const json boot = doc.value("bootstrap", json::object());
  cfg.bootstrap.n_resamples = get_uint(boot, "n_resamples", "bootstrap.n_resamples").value_or(1000);
  cfg.bootstrap.seed = get_uint(boot, "seed", "bootstrap.seed").value_or(hash_combine(cfg.seed, "bootstrap"));
  const json prompt = doc.value("prompt", json::object());
  cfg.shots = static_cast<int>(get_uint(prompt, "shots", "prompt.shots").value_or(9));
  if (cfg.shots != 0 && cfg.shots != 6 && cfg.shots != 9) diag.add("InvalidShots", "prompt.shots", "shots must be 0, 6 or 9");
  cfg.prompt_seed = get_uint(prompt, "seed", "prompt.seed").value_or(hash_combine(cfg.seed, "prompt"));

  cfg.similarity_entities = string_list(doc, "similarity_entities", "similarity_entities");
  cfg.timestamp = get_string(doc, "timestamp", "timestamp");
  cfg.hash = config_hash(doc);

  load.diagnostics = std::move(diag.out);
  if (load.diagnostics.empty()) load.config = std::move(cfg);
  return load;
}

ProbeConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  auto load = validate_config(path, seed_override);
  if (load.config) return std::move(*load.config);
  if (load.diagnostics.size() == 1 && load.diagnostics[0].code == "ParseError") {
    fail(ErrorCode::ParseError, load.diagnostics[0].message);
  }
  std::string msg = "invalid config " + path.string() + ":";
  for (const auto& d : load.diagnostics) msg += "\n  " + d.code + " " + d.subject + ": " + d.message;
  fail(ErrorCode::InvalidArgument, msg);
}

}  // namespace probe
