// Copyright 2026 The viewbench Authors
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

#ifndef VIEWBENCH_ERRORS_HPP_
#define VIEWBENCH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace viewbench {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error { using Error::Error; };
class LookupError : public Error { using Error::Error; };
class ArgumentError : public Error { using Error::Error; };
class ConstructionError : public Error { using Error::Error; };
class SplitError : public Error { using Error::Error; };
class RenderError : public Error { using Error::Error; };
class MetricError : public Error { using Error::Error; };
class ModelError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };
class AuthError : public Error { using Error::Error; };
class ScoringError : public Error { using Error::Error; };

}  // namespace viewbench

#endif  // VIEWBENCH_ERRORS_HPP_
