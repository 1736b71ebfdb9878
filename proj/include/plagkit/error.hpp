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

#pragma once

#include <stdexcept>
#include <string>

namespace plagkit {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file or directory could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Input data is malformed. The message carries the location (line, byte
// offset or record) where the problem was found.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent configuration / arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An external provider (paraphraser, HTTP endpoint) failed.
class ProviderError : public Error {
 public:
  using Error::Error;
};

}  // namespace plagkit
