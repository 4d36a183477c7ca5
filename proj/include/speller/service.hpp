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

#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "speller/artifacts.hpp"

namespace speller {

inline constexpr std::size_t kMaxQueryCodepoints = 512;

struct ServiceResponse {
  int status = 200;
  std::string body;  // JSON
};

/// Published artifact set plus bookkeeping shown on /v1/health.
struct Snapshot {
  Artifacts artifacts;
  std::uint64_t generation = 0;
  std::int64_t timestamp_us = 0;  // publication time, strictly increasing
  std::string index_fingerprint;
};

/// Request handlers over an atomically replaceable snapshot. Handlers copy
/// the snapshot pointer once and never observe a partial swap.
class SpellService {
 public:
  SpellService(ServiceConfig config, Artifacts artifacts);

  const ServiceConfig& config() const { return config_; }
  std::shared_ptr<const Snapshot> snapshot() const;

  ServiceResponse handle_correct(std::string_view body) const;
  ServiceResponse handle_health() const;

  // Replaces the snapshot; returns the new generation.
  std::uint64_t publish(Artifacts artifacts);
  // Folds a query log into the current dictionary and publishes the result.
  // Serialized: concurrent callers wait for each other, readers never block.
  RefreshResult refresh(const std::filesystem::path& query_log);

  // Blocking HTTP server on `config().listen`. Returns when stop() is called.
  void serve();
  void stop();
  // Port actually bound (useful with port 0); 0 before serve() binds.
  int bound_port() const { return bound_port_.load(); }
  bool wait_until_listening(std::chrono::milliseconds timeout) const;

 private:
  std::shared_ptr<const Snapshot> make_snapshot(Artifacts artifacts);

  ServiceConfig config_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
  std::mutex refresh_mutex_;
  mutable std::mutex server_mutex_;
  std::uint64_t generation_ = 0;
  std::int64_t last_timestamp_us_ = 0;
  std::atomic<int> bound_port_{0};
  struct Server;
  std::shared_ptr<Server> server_;
};

}  // namespace speller
