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



#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cli_support.hpp"
#include "commands.hpp"
#include "vsec/error.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kNumeric = 3;

int fail(int code, const std::string& what) {
  spdlog::error("{}", what);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("vsec"));
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Contrastive adversarial evaluation of visual-semantic embeddings"};
  app.config_formatter(std::make_shared<vsec::cli::JsonConfig>());
  app.set_config("--config", "", "JSON configuration; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  vsec::cli::RunContext ctx;
  bool quiet = false;
  bool verbose = false;
  app.add_option("--seed", ctx.seed, "seed for all randomness")->capture_default_str();
  app.add_option("--out-dir", ctx.out_dir, "directory for reports and artifacts")
      ->capture_default_str();
  auto* q = app.add_flag("--quiet", quiet, "warnings and errors only");
  auto* v = app.add_flag("--verbose", verbose, "debug logging");
  q->excludes(v);

  const auto actions = vsec::cli::register_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (quiet) spdlog::set_level(spdlog::level::warn);
  if (verbose) spdlog::set_level(spdlog::level::debug);

  const CLI::App* sub = app.get_subcommands().front();
  ctx.command = sub->get_name();
  ctx.argv.assign(argv + 1, argv + argc);
  ctx.config = vsec::cli::resolved_options(app);

  try {
    actions.at(ctx.command)(ctx);
    ctx.write_repro();
  } catch (const vsec::NumericError& e) {
    return fail(kNumeric, e.what());
  } catch (const vsec::DataError& e) {
    return fail(kData, e.what());
  } catch (const vsec::ShapeError& e) {
    return fail(kData, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(kData, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kData, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kUsage, e.what());
  } catch (const std::exception& e) {
    return fail(kData, e.what());
  }
  return 0;
}
