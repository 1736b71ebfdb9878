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

// Minimal thread-safe logging to standard error.

#pragma once

#include <string_view>

namespace plagkit::log {

enum class Level { kQuiet = 0, kWarning = 1, kInfo = 2, kDebug = 3 };

void set_level(Level level);
Level level();

void warning(std::string_view message);
void info(std::string_view message);
void debug(std::string_view message);

}  // namespace plagkit::log
