#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "floq/errors.hpp"
#include "floq/runner.hpp"

namespace {

struct Common {
  std::string config_path;
  std::string out;
  int threads = 0;
  long long seed = -1;
  std::string label;
};

void add_common(CLI::App* app, Common& o) {
  app->add_option("-c,--config", o.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app->add_option("-o,--out", o.out, "output directory (default $FLOQ_ADAPT_OUT or floq_out)");
  app->add_option("-j,--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "seed for random reference states")->check(CLI::NonNegativeNumber);
  app->add_option("--label", o.label, "output file stem");
}

floq::ExperimentConfig load(const Common& o, const std::string& task) {
  floq::ExperimentConfig c;
  if (!o.config_path.empty()) {
    std::ifstream f(o.config_path);
    std::stringstream ss;
    ss << f.rdbuf();
    c = floq::parse_config(ss.str());
  }
  c.task = task;
  if (o.threads > 0) {
    c.threads = o.threads;
    c.adapt.threads = o.threads;
  }
  if (o.seed >= 0) c.seed = static_cast<std::uint64_t>(o.seed);
  if (!o.label.empty()) c.label = o.label;
  // Re-validate after overrides.
  return floq::config_from_json(floq::config_to_json(c));
}

std::string out_dir(const Common& o, const floq::ExperimentConfig& c) {
  if (!o.out.empty()) return o.out;
  if (!c.output.empty()) return c.output;
  return floq::default_output_dir();
}

void report(const floq::RunOutcome& r) {
  for (const auto& f : r.files) std::cout << f << '\n';
  if (r.exit_code == floq::kExitNotConverged) std::cerr << "warning: ADAPT did not converge\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet-ADAPT-VQE simulator"};
  app.set_version_flag("--version", floq::kToolVersion);
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* task;
    const char* help;
  };
  const Sub subs[] = {
      {"decompose", "decompose", "Pauli decomposition of an auxiliary matrix"},
      {"build", "build", "build the extended Floquet Hamiltonian"},
      {"adapt", "adapt", "run ADAPT-VQE at a single lambda"},
      {"spectrum", "spectrum", "lambda sweep over references"},
      {"deflate", "deflation", "sequential deflation"},
      {"observe", "observe", "time-dependent observables against the Trotter oracle"},
      {"oracle", "oracle", "exact quasienergies from the Trotterized propagator"},
  };

  Common common;
  std::string matrix;
  int r = 0;
  int n_a = 0;
  std::vector<std::pair<CLI::App*, const char*>> task_apps;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, common);
    if (std::string(s.name) == "decompose") {
      sub->add_option("--matrix", matrix, "diagonal|shift|asym|symmetric|observable");
      sub->add_option("--r", r, "Fourier index");
      sub->add_option("--n-a", n_a, "auxiliary qubits");
    }
    task_apps.push_back({sub, s.task});
  }

  std::string figure;
  CLI::App* rep = app.add_subcommand("reproduce", "run a bundled paper figure");
  rep->add_option("figure", figure, "figure id")->required()->check(CLI::IsMember(floq::figure_ids()));
  rep->add_option("-o,--out", common.out, "output directory");
  rep->add_option("-j,--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
  bool dump = false;
  rep->add_flag("--dump-configs", dump, "write the figure's configs to the output directory instead of running");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : floq::kExitParseError;
  }

  try {
    if (rep->parsed()) {
      const std::string dir = common.out.empty() ? floq::default_output_dir() : common.out;
      if (dump) {
        std::filesystem::create_directories(dir);
        for (const auto& c : floq::figure_configs(figure)) {
          const std::string path = dir + "/" + c.label + ".json";
          floq::write_file_atomic(path, floq::config_to_json(c).dump(2) + "\n");
          std::cout << path << '\n';
        }
        return floq::kExitOk;
      }
      int code = floq::kExitOk;
      for (const auto& o : floq::reproduce(figure, dir, common.threads > 0 ? common.threads : 1)) {
        report(o);
        if (o.exit_code != floq::kExitOk) code = o.exit_code;
      }
      std::cout << dir << "/" << figure << "_table.csv\n";
      return code;
    }
    for (const auto& [sub, task] : task_apps) {
      if (!sub->parsed()) continue;
      floq::ExperimentConfig c = load(common, task);
      if (!matrix.empty()) c.decompose_matrix = matrix;
      if (r != 0) c.decompose_r = r;
      if (n_a != 0) c.n_a = n_a;
      if (!matrix.empty() || r != 0 || n_a != 0) c = floq::config_from_json(floq::config_to_json(c));
      const floq::RunOutcome o = floq::run(c, out_dir(common, c));
      report(o);
      return o.exit_code;
    }
  } catch (const floq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return floq::kExitParseError;
  } catch (const floq::LimitError& e) {
    std::cerr << "limit: " << e.what() << '\n';
    return floq::kExitOracleLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return floq::kExitFailure;
  }
  return floq::kExitFailure;
}
