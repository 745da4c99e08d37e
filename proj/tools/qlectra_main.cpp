// qlectra: experiment runner.
//
//   qlectra list
//   qlectra <experiment> [--seed N] [--out PATH] [--format json|csv|jsonl]
//                        [--param key=value ...]
//   qlectra run -f config.json [flag overrides]
//   qlectra apply-circuit --circuit FILE [--state FILE] [--out PATH]
//
// Exit codes: 0 success, 2 configuration error, 3 runtime numerical error.
// Errors are reported as a JSON object on stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "qlectra/experiments.hpp"

using namespace qlectra;

namespace {

void print_error(const std::string& kind, const std::string& what) {
  std::cerr << "{\"error\": \"" << cli::escape_json(kind) << "\", \"detail\": \""
            << cli::escape_json(what) << "\"}\n";
}

int usage() {
  std::cout << "usage:\n"
               "  qlectra list\n"
               "  qlectra <experiment> [--seed N] [--out PATH] [--format json|csv|jsonl]\n"
               "                       [--param key=value ...]\n"
               "  qlectra run -f config.json [same flags as overrides]\n"
               "  qlectra apply-circuit --circuit FILE [--state FILE] [--out PATH]\n";
  return 2;
}

bool config_error(errc c) {
  return c == errc::unknown_experiment || c == errc::schema_violation ||
         c == errc::bad_params;
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage();
  std::string cmd = argv[1];

  if (cmd == "list") {
    for (const auto& def : cli::registry()) {
      std::printf("%-18s %s\n", def.name.c_str(), def.description.c_str());
      for (const auto& spec : def.schema)
        std::printf("    --param %s=%s\n", spec.key.c_str(),
                    spec.default_value.empty() ? "<required>" : spec.default_value.c_str());
    }
    return 0;
  }
  if (cmd == "-h" || cmd == "--help" || cmd == "help") {
    usage();
    return 0;
  }

  if (cmd == "apply-circuit") {
    std::string circuit_path, state_path, out_path;
    for (int i = 2; i < argc; ++i) {
      std::string arg = argv[i];
      if (i + 1 >= argc) {
        print_error("config", "flag needs a value: " + arg);
        return 2;
      }
      if (arg == "--circuit") circuit_path = argv[++i];
      else if (arg == "--state") state_path = argv[++i];
      else if (arg == "--out") out_path = argv[++i];
      else {
        print_error("config", "unknown flag: " + arg);
        return 2;
      }
    }
    if (circuit_path.empty()) {
      print_error("config", "apply-circuit requires --circuit FILE");
      return 2;
    }
    try {
      std::ifstream in(circuit_path);
      if (!in.good()) {
        print_error("io", "cannot open circuit: " + circuit_path);
        return 2;
      }
      nlohmann::json j;
      in >> j;
      Circuit c = io::circuit_from_json(j);
      Ket psi = Ket::basis(c.dims, 0);
      if (!state_path.empty()) {
        std::ifstream sin(state_path);
        if (!sin.good()) {
          print_error("io", "cannot open state: " + state_path);
          return 2;
        }
        nlohmann::json sj;
        sin >> sj;
        psi = io::ket_from_json(sj);
      }
      std::string payload = io::ket_to_json(run(c, psi)).dump(2) + "\n";
      if (out_path.empty())
        std::cout << payload;
      else
        cli::write_atomic(out_path, payload);
      return 0;
    } catch (const nlohmann::json::exception& e) {
      print_error("config", e.what());
      return 2;
    } catch (const error& e) {
      print_error(config_error(e.code()) ? "config" : "runtime", e.what());
      return config_error(e.code()) ? 2 : 3;
    }
  }

  cli::ExperimentConfig cfg;
  std::string config_path;
  bool is_run = cmd == "run";
  if (!is_run) cfg.name = cmd;

  for (int i = 2; i < argc; ++i) {
    std::string arg = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        print_error("config", "flag needs a value: " + arg);
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "-f") {
      config_path = next();
    } else if (arg == "--seed") {
      cfg.seed = std::strtoull(next().c_str(), nullptr, 10);
    } else if (arg == "--out") {
      cfg.out_path = next();
    } else if (arg == "--format") {
      cfg.format = next();
    } else if (arg == "--param") {
      std::string kv = next();
      auto eq = kv.find('=');
      if (eq == std::string::npos) {
        print_error("config", "--param expects key=value, got: " + kv);
        return 2;
      }
      cfg.params.values[kv.substr(0, eq)] = kv.substr(eq + 1);
    } else {
      print_error("config", "unknown flag: " + arg);
      return 2;
    }
  }

  try {
    if (is_run) {
      if (config_path.empty()) {
        print_error("config", "run requires -f config.json");
        return 2;
      }
      std::ifstream in(config_path);
      if (!in.good()) {
        print_error("io", "cannot open config: " + config_path);
        return 2;
      }
      nlohmann::json j;
      in >> j;
      if (j.value("schema", 1) != 1) {
        print_error("config", "unsupported config schema version");
        return 2;
      }
      cfg.name = j.at("name").get<std::string>();
      if (cfg.seed == 0 && j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("params"))
        for (const auto& [k, v] : j["params"].items()) {
          if (cfg.params.values.count(k)) continue; // flags win over the file
          cfg.params.values[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
      if (cfg.out_path.empty() && j.contains("output")) {
        cfg.out_path = j["output"].value("path", "");
        cfg.format = j["output"].value("format", cfg.format);
      }
    }

    cli::Report rep = cli::run_experiment(cfg);
    std::string payload = cli::emit(rep, cfg.format);
    if (cfg.out_path.empty())
      std::cout << payload;
    else
      cli::write_atomic(cfg.out_path, payload);
    return 0;
  } catch (const nlohmann::json::exception& e) {
    print_error("config", e.what());
    return 2;
  } catch (const error& e) {
    if (config_error(e.code())) {
      print_error("config", e.what());
      return 2;
    }
    print_error("runtime", e.what());
    return 3;
  } catch (const std::exception& e) {
    print_error("runtime", e.what());
    return 3;
  }
}
