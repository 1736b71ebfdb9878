// Copyright 2025 The Plagkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plagkit/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace plagkit::log {
namespace {

std::atomic<Level> g_level{Level::kWarning};
std::mutex g_mu;

void emit(Level at, std::string_view tag, std::string_view message) {
  if (static_cast<int>(g_level.load()) < static_cast<int>(at)) return;
  std::lock_guard lock(g_mu);
  std::cerr << "plagkit [" << tag << "] " << message << '\n';
}

}  // namespace

void set_level(Level level) { g_level.store(level); }
Level level() { return g_level.load(); }

void warning(std::string_view message) { emit(Level::kWarning, "warn", message); }
void info(std::string_view message) { emit(Level::kInfo, "info", message); }
void debug(std::string_view message) { emit(Level::kDebug, "debug", message); }

}  // namespace plagkit::log
