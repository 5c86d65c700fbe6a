// evchain: command-line front end for the story pipeline, evaluation and
// the HTTP service.

#include <algorithm>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evchain/evchain.hpp"
#include "evchain/http.hpp"

namespace fs = std::filesystem;
using namespace evchain;

namespace {

void write_output(const std::string& payload, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  f << payload;
  if (!f) throw Error("cannot write " + out);
}

std::optional<std::string> read_optional(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return detail::read_file(path);
}

PipelineConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return config_from_json(parse_json(detail::read_file(path), path));
}

std::string default_store() { return (fs::current_path() / "evchain-store").string(); }

json metrics_json(const MicroMacro& m) {
  json per_label = json::object();
  for (const auto& [label, prf] : m.per_label) {
    per_label[std::string(to_string(label))] = {{"precision", prf.precision},
                                                {"recall", prf.recall},
                                                {"f1", prf.f1},
                                                {"true_positives", prf.true_positives},
                                                {"predicted", prf.predicted},
                                                {"gold", prf.gold}};
  }
  return {{"micro_f1", m.micro},
          {"macro_f1", m.macro},
          {"scored", m.scored},
          {"dropped", m.dropped},
          {"per_label", per_label}};
}

httplib::Server* g_server = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Narrative event chains: extraction, ordering, statistics"};
  app.require_subcommand(1);

  // process
  auto* process = app.add_subcommand("process", "Run the full pipeline on a plain-text story");
  std::string in_file, bundle_file, config_file, out_file, store_dir, story_id;
  process->add_option("file", in_file, "Story text (UTF-8)")->required()->check(CLI::ExistingFile);
  process->add_option("--bundle", bundle_file, "Annotation bundle JSON")->check(CLI::ExistingFile);
  process->add_option("--config", config_file, "Pipeline config JSON")->check(CLI::ExistingFile);
  process->add_option("--out", out_file, "Output file (default stdout)");
  process->add_option("--store-dir", store_dir, "Also store the result here");
  process->add_option("--id", story_id, "Story id (default: file name stem)");

  // train-idf
  auto* train = app.add_subcommand("train-idf", "Train an idf dictionary from a directory of .txt files");
  std::string corpus_dir;
  train->add_option("dir", corpus_dir)->required()->check(CLI::ExistingDirectory);
  train->add_option("--out", out_file)->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Score temporal labels or judgment sheets");
  eval->require_subcommand(1);
  auto* eval_temporal = eval->add_subcommand("temporal", "Micro/macro F1 of predicted against gold labels");
  std::string gold_file, pred_file;
  bool all_labels = false;
  eval_temporal->add_option("--gold", gold_file)->required()->check(CLI::ExistingFile);
  eval_temporal->add_option("--pred", pred_file)->required()->check(CLI::ExistingFile);
  eval_temporal->add_flag("--all-labels", all_labels, "Score all four labels instead of BEFORE/AFTER");
  auto* eval_judgments = eval->add_subcommand("judgments", "Precision per dimension of a judgment CSV");
  std::string csv_file;
  eval_judgments->add_option("csv", csv_file)->required()->check(CLI::ExistingFile);

  // serve
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string ui_dir;
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--host", host);
  serve->add_option("--store-dir", store_dir);
  serve->add_option("--ui-dir", ui_dir, "Static web client to serve at /")->check(CLI::ExistingDirectory);

  // export
  auto* exporter = app.add_subcommand("export", "Print a stored story");
  std::string export_id, format = "json";
  exporter->add_option("id", export_id)->required();
  exporter->add_option("--format", format)->check(CLI::IsMember({"json"}));
  exporter->add_option("--store-dir", store_dir);
  exporter->add_option("--out", out_file);

  // stage
  auto* stage = app.add_subcommand("stage", "Run pipeline stages one at a time over a state file");
  stage->require_subcommand(1);
  auto* stage_init = stage->add_subcommand("init", "Create a state file for a story");
  stage_init->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  stage_init->add_option("--bundle", bundle_file)->check(CLI::ExistingFile);
  stage_init->add_option("--config", config_file)->check(CLI::ExistingFile);
  stage_init->add_option("--id", story_id);
  stage_init->add_option("--out", out_file)->required();
  auto* stage_run = stage->add_subcommand("run", "Run the named stage");
  std::string stage_name, state_file;
  stage_run->add_option("name", stage_name)->required()->check(CLI::IsMember(
      std::vector<std::string>(kStages.begin(), kStages.end())));
  stage_run->add_option("--state", state_file)->required()->check(CLI::ExistingFile);
  stage_run->add_option("--out", out_file, "Default: overwrite the state file");
  auto* stage_finish = stage->add_subcommand("finish", "Assemble the processed story");
  stage_finish->add_option("--state", state_file)->required()->check(CLI::ExistingFile);
  stage_finish->add_option("--out", out_file);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*process) {
      const auto id = story_id.empty() ? fs::path(in_file).stem().string() : story_id;
      const auto story = process_story(id, detail::read_file(in_file), read_optional(bundle_file),
                                       load_config(config_file));
      write_output(dump_story(story), out_file);
      if (!store_dir.empty()) {
        StoryStore store(store_dir);
        std::cerr << "stored as " << store.store(story) << "\n";
      }
    } else if (*train) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(corpus_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      std::vector<Document> docs;
      for (const auto& f : files) docs.push_back(segment_text(detail::read_file(f.string()), f.stem().string()));
      write_output(canonical_dump(train_idf(docs).to_json()), out_file);
    } else if (*eval_temporal) {
      const auto gold = parse_gold_labels(detail::read_file(gold_file));
      const auto pred = parse_predicted_labels(detail::read_file(pred_file));
      const auto pairs = align_labels(gold, pred);
      const auto m = all_labels ? micro_macro_f1(pairs, kAllRelations) : micro_macro_f1(pairs);
      write_output(canonical_dump(metrics_json(m)), "");
    } else if (*eval_judgments) {
      json out = json::object();
      for (const auto& sheet : parse_judgment_csv(detail::read_file(csv_file))) {
        const auto p = judgment_precision(sheet);
        out[std::string(to_string(sheet.dimension()))] = {
            {"precision", p.precision}, {"samples", p.samples}, {"correct", p.correct}};
      }
      write_output(canonical_dump(out), "");
    } else if (*serve) {
      StoryStore store(store_dir.empty() ? default_store() : store_dir);
      StoryService service(store);
      httplib::Server server;
      mount_api(server, service, ui_dir.empty() ? std::nullopt : std::optional<std::string>(ui_dir));
      g_server = &server;
      std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
      std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
      std::cerr << "listening on http://" << host << ":" << port << "\n";
      if (!server.listen(host, port)) throw Error("cannot listen on " + host + ":" + std::to_string(port));
    } else if (*exporter) {
      StoryStore store(store_dir.empty() ? default_store() : store_dir);
      write_output(store.load_raw(export_id), out_file);
    } else if (*stage_init) {
      const auto id = story_id.empty() ? fs::path(in_file).stem().string() : story_id;
      const auto state = begin_pipeline(id, detail::read_file(in_file), read_optional(bundle_file),
                                        load_config(config_file));
      write_output(canonical_dump(json(state)), out_file);
    } else if (*stage_run) {
      auto state = load_state(detail::read_file(state_file));
      run_stage(state, stage_name);
      write_output(canonical_dump(json(state)), out_file.empty() ? state_file : out_file);
    } else if (*stage_finish) {
      write_output(dump_story(finish_pipeline(load_state(detail::read_file(state_file)))), out_file);
    }
  } catch (const std::exception& e) {
    std::cerr << error_response(e).body.dump() << "\n";
    return 1;
  }
  return 0;
}
