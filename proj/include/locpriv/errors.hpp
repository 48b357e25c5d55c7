// Copyright 2026 The locpriv Authors
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

namespace locpriv {

/// Requested mean transmit power lies outside the open interval spanned by
/// the power levels; the constrained distribution does not exist.
class InfeasibleMean : public std::domain_error {
 public:
  explicit InfeasibleMean(const std::string& what) : std::domain_error(what) {}
};

/// A 1-D likelihood maximization ended on a bracket endpoint, so the true
/// maximizer may lie outside the search interval.
class BracketMiss : public std::runtime_error {
 public:
  explicit BracketMiss(const std::string& what) : std::runtime_error(what) {}
};

/// The Fisher information matrix is singular (or numerically indistinguishable
/// from singular) at the requested point; the variance bound is undefined.
class SingularFisher : public std::runtime_error {
 public:
  explicit SingularFisher(const std::string& what) : std::runtime_error(what) {}
};

/// Block partitioning of an observation set produced no blocks.
class EmptyBlocks : public std::invalid_argument {
 public:
  explicit EmptyBlocks(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed or contradictory run configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace locpriv
