// Copyright 2026 The armordb Authors
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


// armordb-server: config file, then ARMORDB_* environment, then flags.
// Exit codes: 0 clean shutdown, 1 config error, 2 bind failure.

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "armordb/server.hpp"

int main(int argc, char** argv) {
  CLI::App app{"armordb knowledge server"};
  std::string config_path, listen;
  std::optional<std::uint16_t> port;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--listen", listen, "listen address (overrides config)");
  app.add_option("--port", port, "port, 0 for ephemeral (overrides config)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  spdlog::set_default_logger(spdlog::stderr_color_mt("armordb"));

  // Signals go to a dedicated thread; block them before any thread starts.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::optional<armordb::Server> server;
  try {
    armordb::ServerConfig config = config_path.empty() ? armordb::ServerConfig{} : armordb::load_config(config_path);
    armordb::apply_environment(config, [](const char* name) { return std::getenv(name); });
    if (!listen.empty()) config.listen_address = listen;
    if (port) config.port = *port;
    server.emplace(config);
    server->bind();
  } catch (const armordb::ConfigError& e) {
    spdlog::error("config error: {}", e.what());
    return 1;
  } catch (const armordb::BindError& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
  // The bound port on stdout lets scripts start the server with --port 0.
  std::cout << "armordb-server listening on port " << server->port() << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    spdlog::info("received signal {}, shutting down", sig);
    server->stop();
  });
  server->run();
  // run() only returns after stop(); wake the waiter if stop came from elsewhere.
  if (waiter.joinable()) {
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  }
  return 0;
}
