#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "nearcrit/config.hpp"
#include "nearcrit/experiments.hpp"

namespace {

struct Invocation {
  std::map<std::string, std::string> flags;  // experiment keys given on the command line
  std::string config_path;
  std::string seed, workers, output;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("NEARCRIT_SEED");
  if (env && *env) return nearcrit::parse_seed(env);
  return 1;
}

int run(const nearcrit::ExperimentSpec& spec, const Invocation& inv) {
  nearcrit::ExperimentConfig config;
  config.experiment = spec.name;
  config.seed = default_seed();

  std::map<std::string, std::string> values;
  if (!inv.config_path.empty()) values = nearcrit::load_config_file(inv.config_path);
  auto take = [&](const std::string& key, const std::string& flag) {
    std::string v;
    if (auto it = values.find(key); it != values.end()) {
      v = it->second;
      values.erase(it);
    }
    return flag.empty() ? v : flag;
  };
  if (auto e = take("experiment", ""); !e.empty() && e != spec.name)
    throw std::invalid_argument("config file is for experiment '" + e + "', not " + spec.name);
  if (auto s = take("seed", inv.seed); !s.empty()) config.seed = nearcrit::parse_seed(s);
  if (auto w = take("workers", inv.workers); !w.empty())
    config.workers = static_cast<int>(nearcrit::parse_int(w, "workers"));
  config.output = take("output", inv.output);
  for (const auto& [k, v] : inv.flags) values[k] = v;
  config.params = values;

  nearcrit::validate_config(config);
  const nearcrit::ExperimentResult result = nearcrit::run_experiment(config);
  nearcrit::write_outputs(config, result);
  std::printf("%s: %s [seed %llu, %.2fs]\n", spec.name.c_str(), result.summary.c_str(),
              static_cast<unsigned long long>(result.seed), result.wall_seconds);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangular-lattice percolation interface experiments"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every experiment");

  const auto& specs = nearcrit::experiment_specs();
  std::vector<Invocation> invocations(specs.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    Invocation& inv = invocations[i];
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--config", inv.config_path, "key = value configuration file");
    sub->add_option("--seed", inv.seed, "master seed (default $NEARCRIT_SEED or 1)");
    sub->add_option("--workers", inv.workers, "worker threads");
    sub->add_option("--output", inv.output, "CSV output file");
    for (const auto& key : spec.keys) {
      std::string desc = key.help;
      if (key.required) desc += " (required)";
      else if (!key.default_value.empty()) desc += " [" + key.default_value + "]";
      sub->add_option_function<std::string>(
          "--" + key.key, [&inv, k = key.key](const std::string& v) { inv.flags[k] = v; }, desc);
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      return run(specs[i], invocations[i]);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 1;
}
