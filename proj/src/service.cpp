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

#include "speller/service.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "speller/errors.hpp"
#include "speller/text.hpp"

namespace speller {
namespace {

using nlohmann::ordered_json;

ServiceResponse error_response(int status, std::string_view message) {
  ordered_json doc;
  doc["error"] = {{"status", status}, {"message", message}};
  return {status, doc.dump()};
}

std::int64_t now_us() {
  return std::chrono::duration_cast<std::chrono::microseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string optional_string(const nlohmann::json& doc, const char* key,
                            const std::string& fallback) {
  const auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return fallback;
  if (!it->is_string()) throw ArgumentError(std::string(key) + " must be a string");
  return it->get<std::string>();
}

}  // namespace

struct SpellService::Server {
  httplib::Server http;
};

SpellService::SpellService(ServiceConfig config, Artifacts artifacts)
    : config_(std::move(config)) {
  artifacts.validate();
  const FeatureSchema& schema = artifacts.model->schema;
  schema.validate({config_.default_locale, config_.default_application});
  snapshot_ = make_snapshot(std::move(artifacts));
}

std::shared_ptr<const Snapshot> SpellService::make_snapshot(Artifacts artifacts) {
  auto snap = std::make_shared<Snapshot>();
  snap->artifacts = std::move(artifacts);
  char fp[17];
  std::snprintf(fp, sizeof fp, "%016llx",
                static_cast<unsigned long long>(
                    snap->artifacts.index->fingerprint(*snap->artifacts.dict)));
  snap->index_fingerprint = fp;
  snap->generation = ++generation_;
  snap->timestamp_us = std::max(now_us(), last_timestamp_us_ + 1);
  last_timestamp_us_ = snap->timestamp_us;
  return snap;
}

std::shared_ptr<const Snapshot> SpellService::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

std::uint64_t SpellService::publish(Artifacts artifacts) {
  artifacts.validate();
  std::lock_guard refresh_lock(refresh_mutex_);
  auto snap = make_snapshot(std::move(artifacts));
  const auto generation = snap->generation;
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(snap);
  return generation;
}

RefreshResult SpellService::refresh(const std::filesystem::path& query_log) {
  std::lock_guard refresh_lock(refresh_mutex_);
  const auto current = snapshot();
  RefreshOptions options;
  options.min_new_term_count = config_.refresh_min_count;
  RefreshResult result = refresh_behavioral_stats(
      query_log, *current->artifacts.dict, *current->artifacts.index, options);
  Artifacts next = current->artifacts;
  next.dict = result.dict;
  next.index = result.index;
  next.validate();
  auto snap = make_snapshot(std::move(next));
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(snap);
  return result;
}

ServiceResponse SpellService::handle_correct(std::string_view body) const {
  nlohmann::json request;
  try {
    request = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    return error_response(400, "request body is not valid JSON");
  }
  if (!request.is_object()) return error_response(400, "request must be an object");
  const auto query_it = request.find("query");
  if (query_it == request.end() || !query_it->is_string()) {
    return error_response(400, "query must be a string");
  }
  const std::string query = query_it->get<std::string>();
  RequestContext context;
  std::size_t length = 0;
  try {
    length = codepoint_length(query);
    context.locale = optional_string(request, "locale", config_.default_locale);
    context.application =
        optional_string(request, "application", config_.default_application);
  } catch (const std::exception& e) {
    return error_response(400, e.what());
  }
  if (split_whitespace(query).empty()) return error_response(400, "query is empty");
  if (length > kMaxQueryCodepoints) {
    return error_response(400, "query exceeds 512 characters");
  }

  const auto snap = snapshot();
  try {
    snap->artifacts.model->schema.validate(context);
  } catch (const ArgumentError& e) {
    return error_response(400, e.what());
  }

  CorrectionResult result;
  try {
    result = correct_query(query, context, snap->artifacts);
  } catch (const std::exception& e) {
    return error_response(503, e.what());
  }

  ordered_json doc;
  doc["original"] = result.original;
  doc["corrected"] = result.corrected;
  doc["confidence"] = result.confidence();
  ordered_json tokens = ordered_json::array();
  for (const auto& t : result.tokens) {
    ordered_json candidates = ordered_json::array();
    for (const auto& c : t.candidates) {
      candidates.push_back({{"term", c.term()},
                            {"score", c.score.value_or(0.0)},
                            {"edit_distance", c.edit_distance}});
    }
    tokens.push_back({{"input", t.input},
                      {"output", t.output},
                      {"changed", t.changed},
                      {"confidence", t.confidence},
                      {"candidates", std::move(candidates)}});
  }
  doc["tokens"] = std::move(tokens);
  doc["locale"] = context.locale;
  doc["application"] = context.application;
  doc["latency_ms"] =
      std::chrono::duration<double, std::milli>(result.elapsed).count();
  return {200, doc.dump()};
}

ServiceResponse SpellService::handle_health() const {
  const auto snap = snapshot();
  const Artifacts& a = snap->artifacts;
  ordered_json doc;
  doc["status"] = "ok";
  doc["generation"] = snap->generation;
  doc["snapshot_timestamp_us"] = snap->timestamp_us;
  doc["versions"] = {
      {"dictionary_terms", a.dict->size()},
      {"dictionary_locale", a.dict->locale()},
      {"index_fingerprint", snap->index_fingerprint},
      {"model_format", "speller-mlp/1"},
      {"feature_dimension", a.model->schema.dimension()},
  };
  ordered_json mwe = ordered_json::object();
  for (const auto& [app, map] : a.mwe) mwe[app] = map.entries.size();
  doc["mwe_entries"] = std::move(mwe);
  return {200, doc.dump()};
}

void SpellService::serve() {
  auto server = std::make_shared<Server>();
  {
    std::lock_guard lock(server_mutex_);
    server_ = server;
  }
  auto& http = server->http;
  http.Post("/v1/correct", [this](const httplib::Request& req,
                                  httplib::Response& res) {
    const auto r = handle_correct(req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
  http.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
    const auto r = handle_health();
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });

  const auto colon = config_.listen.rfind(':');
  if (colon == std::string::npos) {
    throw ConfigError("listen address must be host:port, got '" +
                      config_.listen + "'");
  }
  const std::string host = config_.listen.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(config_.listen.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("bad port in listen address '" + config_.listen + "'");
  }
  if (port == 0) {
    port = http.bind_to_any_port(host);
  } else if (!http.bind_to_port(host, port)) {
    port = -1;
  }
  if (port < 0) throw ConfigError("cannot bind " + config_.listen);
  bound_port_ = port;

  std::jthread refresher;
  if (config_.refresh_log && config_.refresh_interval_seconds > 0) {
    const auto log = config_.resolve(*config_.refresh_log);
    const auto interval = std::chrono::duration<double>(config_.refresh_interval_seconds);
    refresher = std::jthread([this, log, interval](std::stop_token stop) {
      auto next = std::chrono::steady_clock::now() + interval;
      while (!stop.stop_requested()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
        if (std::chrono::steady_clock::now() < next) continue;
        next += std::chrono::duration_cast<std::chrono::steady_clock::duration>(interval);
        try {
          refresh(log);
        } catch (const std::exception&) {
          // Keep serving the previous snapshot.
        }
      }
    });
  }
  http.listen_after_bind();
  bound_port_ = 0;
}

void SpellService::stop() {
  std::shared_ptr<Server> server;
  {
    std::lock_guard lock(server_mutex_);
    server = server_;
  }
  if (server) server->http.stop();
}

bool SpellService::wait_until_listening(std::chrono::milliseconds timeout) const {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  while (std::chrono::steady_clock::now() < deadline) {
    if (bound_port_.load() > 0) {
      std::shared_ptr<Server> server;
      {
        std::lock_guard lock(server_mutex_);
        server = server_;
      }
      if (server && server->http.is_running()) return true;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  return false;
}

}  // namespace speller
