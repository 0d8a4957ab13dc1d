// Copyright 2026 The RegretForge Authors
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

#include <stdexcept>
#include <string>

namespace regretforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands whose dimensions disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A learner or hint source was driven outside its predict/observe protocol,
// or fed an input that violates its declared bounds.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Invalid construction parameters or experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace regretforge
