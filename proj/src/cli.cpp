// Copyright 2026 The Speller Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "speller/cli.hpp"

#include <algorithm>
#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "speller/artifacts.hpp"
#include "speller/errors.hpp"
#include "speller/eval.hpp"
#include "speller/service.hpp"
#include "speller/text.hpp"
#include "speller/tsv.hpp"

namespace speller {
namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

struct BuildIndexArgs {
  std::string lexicon;
  std::vector<std::string> vocab;
  std::string stats;
  std::string locale = "en";
  std::string out;
  int prefix_length = DeleteIndex::kDefaultPrefixLength;
};

struct GenDataArgs {
  std::string in;
  std::string out;
  std::uint64_t seed = 0;
  double error_prob = 0.5;
  std::string locale = "en";
};

struct TrainArgs {
  std::string data;
  std::string artifacts;
  std::string dict;
  std::string out;
  std::string application = "stock";
  TrainHyper hyper;
};

struct CorrectArgs {
  std::string artifacts;
  std::string locale;
  std::string application;
  std::vector<std::string> queries;
};

struct EvalArgs {
  std::string data;
  std::string artifacts;
  std::string locale;
  std::string application;
  bool json = false;
};

struct ServeArgs {
  std::string config;
  std::string artifacts;
  std::string listen;
};

struct RefreshArgs {
  std::string artifacts;
  std::string log;
  std::uint64_t min_count = 100;
};

ServiceConfig config_for(const std::string& artifacts_dir) {
  ServiceConfig config = ServiceConfig::for_artifact_dir(
      artifacts_dir.empty() ? std::filesystem::path(".")
                            : std::filesystem::path(artifacts_dir));
  return config;
}

RequestContext context_for(const ServiceConfig& config, const std::string& locale,
                           const std::string& application) {
  return {locale.empty() ? config.default_locale : locale,
          application.empty() ? config.default_application : application};
}

void run_build_index(const BuildIndexArgs& a, std::ostream& out) {
  std::vector<std::filesystem::path> vocab(a.vocab.begin(), a.vocab.end());
  std::optional<std::filesystem::path> stats;
  if (!a.stats.empty()) stats = a.stats;
  const auto dict = load_dictionary(a.lexicon, vocab, stats, a.locale);
  const auto index = DeleteIndex::build(dict, DeleteIndex::kMaxEditDistance,
                                        a.prefix_length);
  write_index_artifacts(a.out, dict, index);
  out << "terms " << dict.size() << "  keys " << index.key_count()
      << "  postings " << index.posting_count() << "\n";
}

void run_gen_data(const GenDataArgs& a, std::ostream& out) {
  if (a.error_prob < 0 || a.error_prob > 1) {
    throw ArgumentError("--error-prob must be in [0, 1]");
  }
  std::ifstream in(a.in);
  if (!in) throw LoadError(a.in + ": cannot open");
  const TypoProfile& profile = typo_profile(a.locale);
  Rng rng(a.seed);
  std::ostringstream rows;
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::string query = line.substr(0, line.find('\t'));
    if (split_whitespace(query).empty()) continue;
    write_training_row(rows, inject_errors(query, rng, a.error_prob, profile));
    ++count;
  }
  write_file_atomic(a.out, rows.str());
  out << "rows " << count << "\n";
}

void run_train(const TrainArgs& a, std::ostream& out) {
  if (a.artifacts.empty() && a.dict.empty()) {
    throw ArgumentError("train needs --artifacts or --dict");
  }
  if (a.artifacts.empty() && a.out.empty()) {
    throw ArgumentError("train with --dict needs --out");
  }
  ServiceConfig config;
  if (!a.artifacts.empty()) config = config_for(a.artifacts);
  const auto dict = FrequencyDictionary::read_artifact(
      a.dict.empty() ? config.resolve(config.dictionary)
                     : std::filesystem::path(a.dict));
  const auto index = DeleteIndex::build(dict);
  const FeatureSchema schema;
  const RequestContext context{dict.locale(), a.application};
  schema.validate(context);
  const auto rows = load_training_rows(a.data);
  const auto set = build_training_set(rows, dict, index, context, schema);
  const MlpModel model = train(set.examples, a.hyper, schema);
  const std::filesystem::path target =
      a.out.empty() ? config.resolve(config.model) : std::filesystem::path(a.out);
  write_file_atomic(target, model_to_json(model));
  out << "rows " << set.stats.rows << "  groups " << set.stats.groups
      << "  examples " << set.examples.size() << "  real_word_errors "
      << set.stats.real_word_errors << "  dropped " << set.stats.dropped_no_gold
      << "\n";
}

void run_correct(const CorrectArgs& a, std::ostream& out, std::istream& in) {
  const ServiceConfig config = config_for(a.artifacts);
  const Artifacts artifacts = load_artifacts(config);
  const RequestContext context = context_for(config, a.locale, a.application);
  artifacts.model->schema.validate(context);
  auto emit = [&](const std::string& query) {
    const auto result = correct_query(query, context, artifacts);
    out << query << '\t' << result.corrected << '\t'
        << fixed4(result.confidence()) << '\n';
  };
  if (!a.queries.empty()) {
    for (const auto& q : a.queries) emit(q);
    return;
  }
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (split_whitespace(line).empty()) continue;
    emit(line);
  }
}

void run_eval(const EvalArgs& a, std::ostream& out) {
  const auto pairs = load_eval_pairs(a.data);
  std::optional<Artifacts> artifacts;
  RequestContext context;
  if (!a.artifacts.empty()) {
    const ServiceConfig config = config_for(a.artifacts);
    artifacts = load_artifacts(config);
    context = context_for(config, a.locale, a.application);
    artifacts->model->schema.validate(context);
  }
  std::vector<EvalRecord> records;
  records.reserve(pairs.size());
  for (const auto& p : pairs) {
    std::string predicted;
    if (artifacts) {
      predicted = correct_query(p.input, context, *artifacts).corrected;
    } else if (p.predicted) {
      predicted = *p.predicted;
    } else {
      throw ArgumentError(a.data +
                          ": rows lack a predicted column; pass --artifacts");
    }
    records.push_back(EvalRecord::make(p.input, p.gold, std::move(predicted)));
  }
  const auto metrics = evaluate(records);
  out << (a.json ? report_json(metrics) + "\n" : format_report(metrics));
}

std::atomic<bool> g_server_done{false};

void run_serve(const ServeArgs& a, std::ostream& out) {
  ServiceConfig config;
  if (!a.config.empty()) {
    config.apply_file(a.config);
    if (config.artifact_dir == ".") {
      config.artifact_dir = std::filesystem::path(a.config).parent_path();
    }
  }
  if (!a.artifacts.empty()) {
    ServiceConfig defaults = ServiceConfig::for_artifact_dir(a.artifacts);
    if (a.config.empty()) config = defaults;
    config.artifact_dir = a.artifacts;
  }
  config.apply_environment();
  if (!a.listen.empty()) config.listen = a.listen;

  SpellService service(config, load_artifacts(config));

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  g_server_done = false;
  std::exception_ptr failure;
  std::thread server([&] {
    try {
      service.serve();
    } catch (...) {
      failure = std::current_exception();
    }
    g_server_done = true;
  });
  if (service.wait_until_listening(std::chrono::seconds(5))) {
    out << "listening on " << config.listen << " (port "
        << service.bound_port() << ")" << std::endl;
  }
  const timespec tick{0, 100'000'000};
  while (!g_server_done) {
    if (sigtimedwait(&signals, nullptr, &tick) > 0) break;
  }
  service.stop();
  server.join();
  pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
  if (failure) std::rethrow_exception(failure);
}

void run_refresh(const RefreshArgs& a, std::ostream& out) {
  const ServiceConfig config = config_for(a.artifacts);
  const auto dict =
      FrequencyDictionary::read_artifact(config.resolve(config.dictionary));
  IndexManifest manifest;
  if (std::filesystem::exists(config.resolve(config.index_manifest))) {
    manifest = read_manifest(config.resolve(config.index_manifest));
  }
  const auto index = DeleteIndex::build(dict, manifest.max_edit_distance,
                                        manifest.prefix_length);
  RefreshOptions options;
  options.min_new_term_count = a.min_count;
  const auto result = refresh_behavioral_stats(a.log, dict, index, options);
  write_index_artifacts(config.artifact_dir, *result.dict, *result.index);
  out << "updated " << result.updated_terms << "  new " << result.new_terms
      << "  terms " << result.dict->size() << "\n";
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err, std::istream& in) {
  CLI::App app{"Query spelling correction toolkit", "speller"};
  app.require_subcommand(1);

  BuildIndexArgs build;
  auto* build_cmd = app.add_subcommand(
      "build-index", "Build dictionary and index artifacts from TSV inputs");
  build_cmd->add_option("--lexicon", build.lexicon, "term<TAB>word_count file")
      ->required();
  build_cmd->add_option("--vocab", build.vocab, "Custom vocabulary file(s)");
  build_cmd->add_option("--stats", build.stats,
                        "term<TAB>asset_frequency<TAB>download_count file");
  build_cmd->add_option("--locale", build.locale, "Dictionary locale");
  build_cmd->add_option("--out", build.out, "Artifact directory")->required();
  build_cmd->add_option("--prefix-length", build.prefix_length,
                        "Indexed prefix length")
      ->check(CLI::Range(1, 64));

  GenDataArgs gen;
  auto* gen_cmd =
      app.add_subcommand("gen-data", "Generate corrupted training queries");
  gen_cmd->add_option("--in", gen.in, "Queries, one per line")->required();
  gen_cmd->add_option("--out", gen.out, "Output TSV")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--error-prob", gen.error_prob,
                      "Per-token corruption probability");
  gen_cmd->add_option("--locale", gen.locale, "Keyboard locale");

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train the candidate ranker");
  train_cmd->add_option("--data", tr.data, "gen-data output")->required();
  train_cmd->add_option("--artifacts", tr.artifacts, "Artifact directory");
  train_cmd->add_option("--dict", tr.dict, "Dictionary artifact (dictionary.tsv)");
  train_cmd->add_option("--out", tr.out, "Model path (default <artifacts>/model.json)");
  train_cmd->add_option("--application", tr.application, "Application context");
  train_cmd->add_option("--seed", tr.hyper.seed, "Random seed");
  train_cmd->add_option("--epochs", tr.hyper.epochs, "Epochs")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--batch-size", tr.hyper.batch_size, "Mini-batch size");
  train_cmd->add_option("--learning-rate", tr.hyper.learning_rate, "Step size");

  CorrectArgs corr;
  auto* correct_cmd =
      app.add_subcommand("correct", "Correct queries from arguments or stdin");
  correct_cmd->add_option("--artifacts", corr.artifacts, "Artifact directory")
      ->required();
  correct_cmd->add_option("--locale", corr.locale, "Request locale");
  correct_cmd->add_option("--application", corr.application,
                          "Request application");
  correct_cmd->add_option("queries", corr.queries, "Queries");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Score corrections against gold");
  eval_cmd->add_option("--data", ev.data, "input<TAB>gold[<TAB>predicted]")
      ->required();
  eval_cmd->add_option("--artifacts", ev.artifacts,
                       "Artifact directory used to predict");
  eval_cmd->add_option("--locale", ev.locale, "Request locale");
  eval_cmd->add_option("--application", ev.application, "Request application");
  eval_cmd->add_flag("--json", ev.json, "Emit a JSON report");

  ServeArgs sv;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", sv.config, "Key-value config file");
  serve_cmd->add_option("--artifacts", sv.artifacts, "Artifact directory");
  serve_cmd->add_option("--listen", sv.listen, "host:port");

  RefreshArgs rf;
  auto* refresh_cmd = app.add_subcommand(
      "refresh", "Fold a query log into the dictionary artifacts");
  refresh_cmd->add_option("--artifacts", rf.artifacts, "Artifact directory")
      ->required();
  refresh_cmd->add_option("--log", rf.log, "query<TAB>count file")->required();
  refresh_cmd->add_option("--min-count", rf.min_count,
                          "Occurrences needed to admit a new term");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "speller: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty()
                              ? &app
                              : app.get_subcommands().front();
    err << sub->help();
    return 2;
  }

  try {
    if (*build_cmd) run_build_index(build, out);
    else if (*gen_cmd) run_gen_data(gen, out);
    else if (*train_cmd) run_train(tr, out);
    else if (*correct_cmd) run_correct(corr, out, in);
    else if (*eval_cmd) run_eval(ev, out);
    else if (*serve_cmd) run_serve(sv, out);
    else if (*refresh_cmd) run_refresh(rf, out);
  } catch (const std::exception& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "speller: " << message << "\n";
    return 1;
  }
  return 0;
}

}  // namespace speller
