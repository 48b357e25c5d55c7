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

#include <iosfwd>
#include <string>
#include <vector>

namespace locpriv::cli {

/// Entry point behind the locpriv binary; also callable in-process for tests.
/// Subcommands: optimize-dist, simulate, crlb, ratio-table.
///
/// Exit codes: 0 success, 1 usage or config error, 2 infeasible problem,
/// 3 runtime numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace locpriv::cli
