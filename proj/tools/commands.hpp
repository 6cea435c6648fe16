// Copyright 2026 The VSE-C Toolkit Authors.
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



#ifndef VSEC_TOOLS_COMMANDS_HPP_
#define VSEC_TOOLS_COMMANDS_HPP_

#include <functional>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli_support.hpp"

namespace vsec::cli {

using Action = std::function<void(RunContext&)>;

// Adds every subcommand to `app`; the returned map is keyed by subcommand
// name. Option storage lives inside the actions.
std::map<std::string, Action> register_commands(CLI::App& app);

}  // namespace vsec::cli

#endif  // VSEC_TOOLS_COMMANDS_HPP_
