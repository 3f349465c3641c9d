#include "floq/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "floq/errors.hpp"
#include "floq/observables.hpp"
#include "floq/parallel.hpp"

namespace floq {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string run_name(const ExperimentConfig& c) { return c.label.empty() ? c.task : c.label; }

double circular_distance(double a, double b, double omega) {
  return std::abs(fold_quasienergy(a - b, omega));
}

/// Index of the value in eps closest to e modulo omega.
Eigen::Index nearest_level(const Eigen::VectorXd& eps, double e, double omega) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < eps.size(); ++i) {
    if (circular_distance(eps(i), e, omega) < circular_distance(eps(best), e, omega)) best = i;
  }
  return best;
}

class Output {
 public:
  Output(std::string dir, std::string name) : dir_(std::move(dir)), name_(std::move(name)) {
    fs::create_directories(dir_);
  }

  std::string write(const std::string& suffix, const std::string& text) {
    const std::string path = (fs::path(dir_) / (name_ + suffix)).string();
    write_file_atomic(path, text);
    files_.push_back(path);
    return path;
  }

  std::vector<std::string>& files() { return files_; }

 private:
  std::string dir_;
  std::string name_;
  std::vector<std::string> files_;
};

std::string trace_csv(const AdaptResult& r) {
  std::ostringstream os;
  os << "iteration,cost,max_gradient,selected\n";
  for (const auto& t : r.trace) {
    std::string sel;
    for (const auto& s : t.selected) sel += (sel.empty() ? "" : ";") + s;
    os << t.iteration << ',' << fmt("%.15g", t.cost) << ',' << fmt("%.6g", t.max_gradient) << ',' << sel << '\n';
  }
  return os.str();
}

PauliSum decompose_matrix(const ExperimentConfig& c) {
  const AuxSpec spec(c.n_a);
  const std::string& m = c.decompose_matrix;
  if (m == "diagonal") return a_diagonal(spec);
  if (m == "shift") return a_shift(c.decompose_r, spec);
  if (m == "asym") return a_asym(c.decompose_r, spec);
  if (m == "symmetric") return a_symmetric(c.decompose_r, spec);
  return a_observable(c.n_a);
}

struct ObserveSeries {
  std::string name;
  std::vector<TimeSample> floquet;
  std::vector<TimeSample> trotter;
  double max_difference = 0.0;
  double periodicity_error = 0.0;
};

std::vector<ObserveSeries> observe_series(const ExperimentConfig& c, const DriveSpec& drive,
                                          const AdaptResult& r, json& info) {
  const QuasienergySpectrum ed = exact_quasienergies(drive, c.trotter);
  const Eigen::Index level = nearest_level(ed.epsilons, r.energy, c.omega);
  info["oracle_level"] = level;
  info["oracle_quasienergy"] = ed.epsilons(level);
  const std::vector<DenseVector> traj = trotter_trajectory(drive, ed.vectors.col(level), c.points, c.trotter);
  std::vector<ObserveSeries> out;
  for (const auto& name : c.observables) {
    const ObservableSpec obs = make_observable(name, drive.L);
    ObserveSeries s;
    s.name = name;
    s.floquet = floquet_time_series(r.state, obs.op, c.omega, c.points);
    const DenseMatrix od = to_dense(obs.op, kTrotterQubitLimit);
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const double v = traj[k].dot(od * traj[k]).real();
      s.trotter.push_back({s.floquet[k].t_over_T, v, "trotter"});
      s.max_difference = std::max(s.max_difference, std::abs(v - s.floquet[k].value));
    }
    s.periodicity_error = std::abs(s.floquet.back().value - s.floquet.front().value);
    out.push_back(std::move(s));
  }
  return out;
}

json run_task(const ExperimentConfig& c, Output& out, int& exit_code) {
  json res;
  const std::string& task = c.task;
  if (task == "decompose") {
    const PauliSum op = decompose_matrix(c);
    res["matrix"] = c.decompose_matrix;
    res["r"] = c.decompose_r;
    res["terms"] = op.size();
    res["pauli_text"] = to_pauli_text(op);
    out.write("_pauli.txt", to_pauli_text(op));
    return res;
  }

  const DriveSpec drive = make_drive(c);
  if (task == "oracle") {
    const QuasienergySpectrum q = exact_quasienergies(drive, c.trotter);
    std::ostringstream os;
    write_quasienergy_csv(os, q.epsilons, c.omega);
    out.write("_quasienergies.csv", os.str());
    res["quasienergies"] = std::vector<double>(q.epsilons.data(), q.epsilons.data() + q.epsilons.size());
    return res;
  }

  const ExtendedFloquetHamiltonian h = build_extended(drive, c.n_a);
  res["warnings"] = h.warnings;
  if (task == "build") {
    std::ostringstream os;
    write_hamiltonian_text(os, h);
    out.write("_hamiltonian.txt", os.str());
    res["terms"] = h.op.size();
    res["width"] = h.op.width();
    return res;
  }

  std::vector<StateVector> refs;
  for (std::size_t i = 0; i < c.references.size(); ++i) refs.push_back(make_reference(c, c.references[i], i));

  if (task == "adapt" || task == "observe") {
    const AdaptResult r = run_adapt(h, c.adapt, refs.front());
    res["adapt"] = to_json(r);
    out.write("_trace.csv", trace_csv(r));
    if (!r.converged) exit_code = kExitNotConverged;
    if (task == "observe") {
      json info;
      const auto series = observe_series(c, drive, r, info);
      json obs = json::array();
      for (const auto& s : series) {
        std::ostringstream f, t;
        write_time_series_csv(f, s.floquet);
        write_time_series_csv(t, s.trotter);
        out.write("_" + s.name + "_floquet.csv", f.str());
        out.write("_" + s.name + "_trotter.csv", t.str());
        obs.push_back({{"observable", s.name},
                       {"max_difference", s.max_difference},
                       {"periodicity_error", s.periodicity_error}});
      }
      res["observe"] = obs;
      res["oracle"] = info;
    }
    return res;
  }

  if (task == "spectrum") {
    const std::vector<double> grid = c.lambda_grid.empty() ? default_lambda_grid(drive.L, c.omega) : c.lambda_grid;
    const SpectrumSweep sweep = spectrum_sweep(h, c.adapt, refs, grid);
    std::ostringstream os;
    os << "lambda,reference,quasienergy,cost,certified\n";
    json points = json::array();
    for (const auto& p : sweep.points) {
      os << fmt("%.12g", p.lambda) << ',' << c.references[static_cast<std::size_t>(p.reference)] << ','
         << fmt("%.12g", p.result.energy) << ',' << fmt("%.6e", p.result.cost) << ','
         << (p.result.certified ? 1 : 0) << '\n';
      json pj = to_json(p.result);
      pj["reference"] = c.references[static_cast<std::size_t>(p.reference)];
      points.push_back(std::move(pj));
    }
    out.write("_spectrum.csv", os.str());
    res["points"] = points;
    res["quasienergies"] = sweep.quasienergies;
    res["found"] = sweep.quasienergies.size();
    res["expected"] = sweep.expected;
    return res;
  }

  if (task == "deflation") {
    const auto found = run_deflation(h, c.adapt, c.k_states, c.shift, refs.front());
    std::ostringstream os;
    os << "index,quasienergy,cost,plain_cost,certified\n";
    json states = json::array();
    for (std::size_t i = 0; i < found.size(); ++i) {
      os << i << ',' << fmt("%.12g", found[i].energy) << ',' << fmt("%.6e", found[i].cost) << ','
         << fmt("%.6e", found[i].plain_cost) << ',' << (found[i].certified ? 1 : 0) << '\n';
      states.push_back(to_json(found[i]));
    }
    out.write("_deflation.csv", os.str());
    res["states"] = states;
    return res;
  }
  throw std::invalid_argument("unknown task '" + task + "'");
}

ExperimentConfig xyz_base(double omega, int n_a, int L) {
  ExperimentConfig c;
  c.model.type = "xyz";
  c.model.xyz.L = L;
  c.model.xyz.J_mean = {3.7, 2.8, 3.9};
  c.model.xyz.J_amp = {0.0, 0.0, 0.0};
  c.model.xyz.Bz_mean = 2.9;
  c.model.xyz.Bz_amp = 2.7;
  c.omega = omega;
  c.n_a = n_a;
  c.adapt.pairing = Pairing::NearestNeighbor;
  return c;
}

}  // namespace

std::string default_output_dir() {
  const char* env = std::getenv(kOutputEnvVar);
  return env && *env ? env : "floq_out";
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + tmp);
  }
  fs::rename(tmp, path);
}

RunOutcome run(const ExperimentConfig& c, const std::string& out_dir) {
  RunOutcome outcome;
  Output out(out_dir, run_name(c));
  const auto start = std::chrono::steady_clock::now();
  json record;
  record["schema_version"] = kConfigSchemaVersion;
  record["tool"] = "floq_adapt";
  record["version"] = kToolVersion;
  record["config"] = config_to_json(c);
  record["task"] = c.task;
  record["results"] = run_task(c, out, outcome.exit_code);
  record["timings"] = {{"wall_seconds",
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  record["status"] = outcome.exit_code == kExitOk ? "ok" : "not_converged";
  out.write(".json", record.dump(2) + "\n");
  outcome.record = std::move(record);
  outcome.files = out.files();
  return outcome;
}

std::vector<std::string> figure_ids() { return {"fig2", "fig3", "fig4", "fig5", "figD1"}; }

std::vector<ExperimentConfig> figure_configs(const std::string& figure) {
  std::vector<ExperimentConfig> out;
  if (figure == "fig2") {
    for (int n_a : {2, 3, 4, 5}) {
      ExperimentConfig c = xyz_base(5.0, n_a, 3);
      c.task = "adapt";
      c.label = "fig2_na" + std::to_string(n_a);
      c.references = {"ddd"};
      out.push_back(c);
    }
  } else if (figure == "fig3") {
    for (auto [omega, n_a] : {std::pair{5.0, 4}, std::pair{50.0, 3}}) {
      for (double dbz : {0.5, 1.5, 2.5}) {
        ExperimentConfig c = xyz_base(omega, n_a, 4);
        c.task = "adapt";
        c.model.xyz.Bz_amp = dbz;
        c.references = {"++++"};
        char buf[64];
        std::snprintf(buf, sizeof buf, "fig3_omega%g_dBz%g", omega, dbz);
        c.label = buf;
        out.push_back(c);
      }
    }
  } else if (figure == "fig4") {
    ExperimentConfig c = xyz_base(5.0, 4, 3);
    c.task = "spectrum";
    c.model.xyz.J_amp = {1.9, 1.1, 1.2};
    c.references = {"+++", "ddd"};
    c.label = "fig4_spectrum";
    out.push_back(c);
  } else if (figure == "fig5") {
    ExperimentConfig c = xyz_base(5.0, 4, 4);
    c.task = "observe";
    c.model.xyz.J_amp = {1.9, 1.1, 1.2};
    c.references = {"++++"};
    c.observables = {"sum_z", "sum_zz"};
    c.label = "fig5_observe";
    out.push_back(c);
  } else if (figure == "figD1") {
    ExperimentConfig c = xyz_base(5.0, 4, 3);
    c.task = "deflation";
    c.model.xyz.J_amp = {1.9, 1.1, 1.2};
    c.references = {"uniform"};
    c.adapt.pool = PoolPreset::TwoLocalTotal;
    c.shift = 0.6;
    c.adapt.lambda = 0.6;
    c.k_states = 8;
    c.label = "figD1_deflation";
    out.push_back(c);
  } else {
    throw std::invalid_argument("unknown figure '" + figure + "'");
  }
  return out;
}

std::vector<RunOutcome> reproduce(const std::string& figure, const std::string& out_dir, int threads) {
  std::vector<ExperimentConfig> configs = figure_configs(figure);
  const int inner = configs.size() > 1 ? 1 : threads;
  for (auto& c : configs) {
    c.threads = inner;
    c.adapt.threads = inner;
  }
  std::vector<RunOutcome> outcomes(configs.size());
  parallel_for(static_cast<int>(configs.size()), threads,
               [&](int i) { outcomes[static_cast<std::size_t>(i)] = run(configs[static_cast<std::size_t>(i)], out_dir); });

  std::ostringstream table;
  if (figure == "fig2") {
    table << "n_a,iteration,cost\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      for (const auto& t : outcomes[i].record["results"]["adapt"]["trace"]) {
        table << configs[i].n_a << ',' << t["iteration"].get<int>() << ',' << fmt("%.15g", t["cost"].get<double>()) << '\n';
      }
    }
  } else if (figure == "fig3" || figure == "fig5" || figure == "fig4" || figure == "figD1") {
    const DriveSpec drive = make_drive(configs.front());
    if (figure == "fig3") {
      table << "omega,n_a,dBz,epsilon_adapt,certified,epsilon_ed,rel_error\n";
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const QuasienergySpectrum ed = exact_quasienergies(make_drive(configs[i]), configs[i].trotter);
        const json& a = outcomes[i].record["results"]["adapt"];
        const double e = fold_quasienergy(a["quasienergy"].get<double>(), configs[i].omega);
        const double e0 = ed.epsilons(nearest_level(ed.epsilons, e, configs[i].omega));
        table << configs[i].omega << ',' << configs[i].n_a << ',' << configs[i].model.xyz.Bz_amp << ','
              << fmt("%.12g", e) << ',' << (a["certified"].get<bool>() ? 1 : 0) << ',' << fmt("%.12g", e0) << ','
              << fmt("%.6e", std::abs((e - e0) / e0)) << '\n';
      }
    } else if (figure == "fig5") {
      table << "observable,max_difference,periodicity_error\n";
      for (const auto& o : outcomes.front().record["results"]["observe"]) {
        table << o["observable"].get<std::string>() << ',' << fmt("%.6e", o["max_difference"].get<double>()) << ','
              << fmt("%.6e", o["periodicity_error"].get<double>()) << '\n';
      }
    } else {
      const ExperimentConfig& c = configs.front();
      const QuasienergySpectrum ed = exact_quasienergies(drive, c.trotter);
      std::vector<std::vector<double>> found(c.references.size());
      if (figure == "fig4") {
        for (const auto& p : outcomes.front().record["results"]["points"]) {
          if (!p["certified"].get<bool>()) continue;
          for (std::size_t r = 0; r < c.references.size(); ++r) {
            if (p["reference"] == c.references[r]) found[r].push_back(p["quasienergy"].get<double>());
          }
        }
      } else {
        found.assign(1, {});
        for (const auto& s : outcomes.front().record["results"]["states"]) {
          if (s["certified"].get<bool>()) found[0].push_back(s["quasienergy"].get<double>());
        }
      }
      table << "level,epsilon_ed";
      const std::vector<std::string> cols = figure == "fig4" ? c.references : std::vector<std::string>{"deflation"};
      for (const auto& name : cols) table << ",found_" << name;
      table << ",found_any\n";
      std::vector<int> hits(found.size() + 1, 0);
      for (Eigen::Index l = 0; l < ed.epsilons.size(); ++l) {
        table << l << ',' << fmt("%.12g", ed.epsilons(l));
        bool any = false;
        for (std::size_t r = 0; r < found.size(); ++r) {
          bool hit = false;
          for (double v : found[r]) hit = hit || circular_distance(v, ed.epsilons(l), c.omega) <= 1e-3 * c.omega;
          table << ',' << (hit ? 1 : 0);
          hits[r] += hit ? 1 : 0;
          any = any || hit;
        }
        hits.back() += any ? 1 : 0;
        table << ',' << (any ? 1 : 0) << '\n';
      }
      const auto levels = static_cast<int>(ed.epsilons.size());
      table << "found,";
      for (int h : hits) table << ',' << h;
      table << "\nmissing,";
      for (int h : hits) table << ',' << levels - h;
      table << '\n';
    }
  }
  write_file_atomic((fs::path(out_dir) / (figure + "_table.csv")).string(), table.str());
  return outcomes;
}

}  // namespace floq
