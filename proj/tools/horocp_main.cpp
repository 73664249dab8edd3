// horocp command-line front end. Talks to the library only through horocp.h.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "horocp/horocp.h"

namespace {

struct Sub {
  std::string name;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::string config_path;
  std::string output_path;
};

int run(int argc, char** argv) {
  CLI::App app{"horocp: word metrics, horofunctions and crossed-product quantum metric checks"};
  app.require_subcommand(1);
  std::vector<Sub> subs(horocp_command_count());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    Sub& s = subs[i];
    s.name = horocp_command_name(i);
    s.app = app.add_subcommand(s.name, horocp_command_help(i));
    for (std::size_t j = 0; j < horocp_command_option_count(i); ++j) {
      const std::string key = horocp_command_option(i, j, 0);
      const std::string def = horocp_command_option(i, j, 1);
      std::string help = horocp_command_option(i, j, 2);
      if (!def.empty()) help += " [default: " + def + "]";
      if (s.name == "verify" && key == "check") {
        s.app->add_option(key, s.values[key], help);
      } else {
        s.app->add_option("--" + key, s.values[key], help);
      }
    }
    s.app->add_option("--config", s.config_path, "key=value file; flags given on the command line win");
    s.app->add_option("-o,--output", s.output_path, "write the JSON document here instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (auto& s : subs) {
    if (!s.app->parsed()) continue;
    horocp_context* ctx = nullptr;
    if (horocp_context_create(&ctx) != HOROCP_OK) return 2;
    if (!s.config_path.empty()) {
      std::ifstream in(s.config_path);
      if (!in) {
        std::cerr << "cannot read config file " << s.config_path << "\n";
        horocp_context_destroy(ctx);
        return 2;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      if (horocp_context_load_config(ctx, buf.str().c_str()) != HOROCP_OK) {
        std::cerr << "config: " << horocp_context_last_error(ctx) << "\n";
        horocp_context_destroy(ctx);
        return 2;
      }
    }
    for (const auto& [key, value] : s.values) {
      const std::string flag = key == "check" ? key : "--" + key;
      if (s.app->count(flag) > 0) horocp_context_set(ctx, key.c_str(), value.c_str());
    }
    const auto t0 = std::chrono::steady_clock::now();
    int exit_code = 2;
    const horocp_status st = horocp_context_run(ctx, s.name.c_str(), &exit_code);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (st != HOROCP_OK) {
      std::cerr << s.name << ": " << horocp_status_string(st) << ": " << horocp_context_last_error(ctx) << "\n";
      horocp_context_destroy(ctx);
      return 2;
    }
    const std::string doc = horocp_context_output(ctx);
    if (s.output_path.empty()) {
      std::fwrite(doc.data(), 1, doc.size(), stdout);
    } else {
      std::ofstream out(s.output_path, std::ios::binary);
      out << doc;
      if (!out) {
        std::cerr << "cannot write " << s.output_path << "\n";
        exit_code = 2;
      }
    }
    std::fprintf(stderr, "%s: exit %d (%.2f s)\n", s.name.c_str(), exit_code, secs);
    horocp_context_destroy(ctx);
    return exit_code;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
