#include "probe/cli/config.hpp"
#include "probe/cli/pipeline.hpp"
#include "probe/core/errors.hpp"
#include "probe/report/bundle.hpp"

#include "../support/tree.hpp"
#include "../support/workspace.hpp"

#include <catch_amalgamated.hpp>

#include <map>

using namespace probe;

namespace {

std::map<std::string, int> codes(const ConfigLoad& l) {
  std::map<std::string, int> out;
  for (const auto& d : l.diagnostics) ++out[d.code];
  return out;
}

json read_json(const std::filesystem::path& p) { return json::parse(read_file(p)); }

}  // namespace

TEST_CASE("config diagnostics are collected together") {
  synth::TempDir dir("cfg");
  const auto path = synth::write_workspace(dir.path(), {});
  auto ok = validate_config(path);
  REQUIRE(ok.diagnostics.empty());
  REQUIRE(ok.config);
  CHECK(ok.config->models == std::vector<std::string>{"mock-a"});
  CHECK(ok.config->paths.entities == dir / "entities.jsonl");
  CHECK(ok.config->bootstrap.seed == hash_combine(42, "bootstrap"));

  write_file_atomic(dir / "bad.json", "{\n  \"run_id\": \"x\",\n  oops\n}");
  auto parse = validate_config(dir / "bad.json");
  REQUIRE(parse.diagnostics.size() == 1);
  CHECK(parse.diagnostics[0].code == "ParseError");
  CHECK(parse.diagnostics[0].message.find("line 3") != std::string::npos);

  auto doc = read_json(path);
  doc["colour"] = "blue";
  doc.erase("run_id");
  doc["paths"]["entities"] = "missing.jsonl";
  doc["matrix"]["models"] = {"mock-a", "ghost"};
  doc["matrix"]["languages"] = {"eng", "deu"};
  doc["matrix"]["conditions"] = {"imaginary"};
  doc["prompt"] = {{"shots", 5}};
  doc["backends"].push_back(doc["backends"][0]);
  write_file_atomic(dir / "many.json", doc.dump());
  auto many = codes(validate_config(dir / "many.json"));
  CHECK(many["UnknownKey"] == 1);
  CHECK(many["MissingKey"] == 1);
  CHECK(many["MissingPath"] == 1);
  CHECK(many["UnknownModel"] == 1);
  CHECK(many["UnknownLanguage"] == 1);
  CHECK(many["UnknownCondition"] == 1);
  CHECK(many["InvalidShots"] == 1);
  CHECK(many["DuplicateBackend"] == 1);
  CHECK_THROWS_AS(load_config(dir / "many.json"), Error);
  CHECK_FALSE(validate_config(dir / "absent.json").config);
}

TEST_CASE("config hash ignores formatting, key order and output locations") {
  synth::TempDir dir("hash");
  const auto path = synth::write_workspace(dir.path(), {});
  const auto base = load_config(path).hash;
  auto doc = read_json(path);
  write_file_atomic(dir / "compact.json", doc.dump());
  CHECK(load_config(dir / "compact.json").hash == base);
  doc["paths"]["report_dir"] = "elsewhere";
  doc["paths"]["cache_dir"] = "other-cache";
  write_file_atomic(dir / "moved.json", doc.dump(4));
  CHECK(load_config(dir / "moved.json").hash == base);
  CHECK(load_config(path, 7).hash != base);
  doc["seed"] = 43;
  write_file_atomic(dir / "seed.json", doc.dump());
  CHECK(load_config(dir / "seed.json").hash != base);
}

TEST_CASE("1x1 matrix produces a full bundle and reruns from cache") {
  synth::TempDir dir("matrix");
  synth::WorkspaceSpec spec;
  spec.conditions = {"real"};
  const auto cfg = load_config(synth::write_workspace(dir.path(), spec));
  const auto first = run_matrix(cfg);
  CHECK(first.exit_code == 0);
  REQUIRE(first.cells.size() == 1);
  CHECK(first.cells[0].status == CellStatus::ok);
  CHECK(first.cells[0].items == 6 * 24);
  const auto bundle = synth::read_tree(first.bundle_dir);
  for (const char* f : {"manifest.json", "summary.md", "tables/inconsistency.csv", "tables/profiles.csv",
                        "figures/accuracy_vs_ic.svg"}) {
    INFO(f);
    CHECK(bundle.count(f) == 1);
  }
  const auto manifest = json::parse(bundle.at("manifest.json"));
  CHECK(manifest["config_sha256"] == cfg.hash);
  CHECK(manifest["cells"][0]["status"] == "ok");
  CHECK(std::filesystem::exists(records_path(cfg, first.cells[0].cell_id)));

  const auto second = run_matrix(cfg);
  CHECK(second.cells[0].status == CellStatus::cached);
  CHECK(synth::read_tree(second.bundle_dir) == bundle);
  const auto status = read_json(cfg.paths.report_dir / "run-matrix-status.json");
  CHECK(status["cells"][0]["status"] == "cached");
}

TEST_CASE("dry run enumerates every cell without calling a backend") {
  synth::TempDir dir("dry");
  synth::WorkspaceSpec spec;
  spec.models = {"m1", "m2", "m3", "m4", "m5", "m6", "m7"};
  spec.languages = {"eng", "fra", "spa", "rus", "ara", "zho"};
  spec.conditions = {"real"};
  spec.sentences = 3;
  const auto cfg = load_config(synth::write_workspace(dir.path(), spec));
  MatrixOptions opts;
  opts.dry_run = true;
  opts.backend_factory = [](const BackendConfig&) -> std::unique_ptr<ChatBackend> {
    FAIL("backend constructed in dry run");
    return nullptr;
  };
  const auto out = run_matrix(cfg, opts);
  REQUIRE(out.cells.size() == 42);
  std::set<std::string> ids;
  for (const auto& c : out.cells) {
    CHECK(c.status == CellStatus::planned);
    CHECK(c.items == 3 * 24);
    ids.insert(c.cell_id);
  }
  CHECK(ids.size() == 42);
  CHECK_FALSE(std::filesystem::exists(cfg.paths.cache_dir / "cache.jsonl"));
}

TEST_CASE("a failing cell does not stop the others") {
  synth::TempDir dir("fail");
  synth::WorkspaceSpec spec;
  spec.models = {"good", "bad"};
  spec.conditions = {"real"};
  const auto cfg = load_config(synth::write_workspace(dir.path(), spec));
  MatrixOptions opts;
  opts.backend_factory = [](const BackendConfig& c) -> std::unique_ptr<ChatBackend> {
    if (c.name == "bad") fail(ErrorCode::InvalidArgument, "backend unavailable");
    return make_backend(c);
  };
  const auto out = run_matrix(cfg, opts);
  CHECK(out.exit_code == 1);
  REQUIRE(out.cells.size() == 2);
  CHECK(out.cells[0].status == CellStatus::ok);
  CHECK(out.cells[1].status == CellStatus::failed);
  const auto manifest = read_json(out.bundle_dir / "manifest.json");
  CHECK(manifest["cells"][1]["status"] == "failed");
}
