// Command-line front end: cosmic_cli <run2d|runseq|verify|export> [options]

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cosmic/commands.hpp"
#include "cosmic/config.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::string nmax, ncoords, kmax, schedule, seed, out, q, v, x0, op;
  std::vector<std::string> tol;
  std::vector<std::string> set;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "key = value settings file");
  sub->add_option("--operator", f.op, "paper2d | seqspace | translation");
  sub->add_option("--nmax", f.nmax, "truncation depth of the 2-D operator");
  sub->add_option("--ncoords", f.ncoords, "number of sequence coordinates");
  sub->add_option("--v", f.v, "translation vector, comma separated");
  sub->add_option("--kmax", f.kmax, "number of iterations");
  sub->add_option("--schedule", f.schedule, "geometric:RHO | levels | list:K1,K2,...");
  sub->add_option("--x0", f.x0, "start point, comma separated");
  sub->add_option("--seed", f.seed, "sampling seed");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--q", f.q, "directions to verify, e.g. 0.6,0.8;1,0");
  sub->add_option("--tol", f.tol, "tolerance override NAME=VALUE (repeatable)");
  sub->add_option("--set", f.set, "any config key, KEY=VALUE (repeatable)");
}

void assign(cosmic::Settings& s, const std::string& text, const std::string& prefix) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw cosmic::ConfigError("expected NAME=VALUE, got '" + text + "'");
  }
  s[prefix + text.substr(0, eq)] = text.substr(eq + 1);
}

cosmic::Settings collect(const Flags& f) {
  cosmic::Settings s;
  if (!f.config_path.empty()) s = cosmic::load_settings(f.config_path);
  for (const auto& kv : f.set) assign(s, kv, "");
  const std::pair<const char*, const std::string*> direct[] = {
      {"operator", &f.op}, {"n_max", &f.nmax},       {"n_coords", &f.ncoords},
      {"v", &f.v},         {"k_max", &f.kmax},       {"schedule", &f.schedule},
      {"x0", &f.x0},       {"seed", &f.seed},        {"out", &f.out},
      {"q", &f.q}};
  for (const auto& [key, value] : direct) {
    if (!value->empty()) s[key] = *value;
  }
  for (const auto& kv : f.tol) assign(s, kv, "tol.");
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-point iteration experiments for non-expansive operators"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, cosmic::Command> commands[] = {
      {"run2d", cosmic::Command::Run2d},
      {"runseq", cosmic::Command::RunSeq},
      {"verify", cosmic::Command::Verify},
      {"export", cosmic::Command::Export}};
  const char* help[] = {"iterate the planar prox operator and analyse directions",
                        "iterate the sequence-space gradient operator",
                        "run the sampling checks for one operator",
                        "write the operator description"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < 4; ++i) {
    subs.push_back(app.add_subcommand(commands[i].first, help[i]));
    add_flags(subs.back(), flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cosmic::kExitConfigError;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    cosmic::Settings settings;
    try {
      settings = collect(flags);
    } catch (const cosmic::ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return cosmic::kExitConfigError;
    }
    return cosmic::run_command(commands[i].second, settings, std::cout, std::cerr);
  }
  return cosmic::kExitConfigError;
}
