#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sympsim/circuit.hpp"
#include "sympsim/dynamics.hpp"
#include "sympsim/matrix_io.hpp"
#include "sympsim/rng.hpp"

using json = nlohmann::json;
using namespace sympsim;

namespace {

struct Options {
  std::string backend = "both";
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  bool emit_state = false;
  std::optional<double> dt_flag;
  std::optional<std::string> method_flag;
  std::string out = "json";
  std::string input_path;
  std::vector<int> bench_n = {2, 4, 6};
  std::vector<int> bench_depth = {10, 100};
  int warmup = 5;
  int iters = 20;
};

// Input-side failures (bad files, bad programs, bad intervals) exit 1;
// execution failures exit 2.
bool is_input_error(errc code) {
  switch (code) {
    case errc::syntax_error:
    case errc::unknown_gate:
    case errc::arity_mismatch:
    case errc::target_out_of_range:
    case errc::duplicate_target:
    case errc::mode_out_of_range:
    case errc::duplicate_mode:
    case errc::kind_mismatch:
    case errc::missing_header:
    case errc::invalid_interval:
    case errc::not_hermitian:
    case errc::io_error:
      return true;
    default:
      return false;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io_error, "cannot open input file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json counts_to_json(const MeasurementResult& result) {
  json counts = json::object();
  for (const auto& [outcome, count] : result.counts)
    counts[std::to_string(outcome)] = count;
  return counts;
}

json complex_state_to_json(const ComplexState& psi) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
    re.push_back(psi.amplitudes[i].real());
    im.push_back(psi.amplitudes[i].imag());
  }
  return json{{"re", re}, {"im", im}};
}

json phase_state_to_json(const PhaseState& phi) {
  json q = json::array(), p = json::array();
  for (Eigen::Index i = 0; i < phi.dim(); ++i) {
    q.push_back(phi.q[i]);
    p.push_back(phi.p[i]);
  }
  return json{{"q", q}, {"p", p}};
}

int cmd_run(const Options& opt) {
  const Circuit circuit = parse_circuit(read_file(opt.input_path));

  json out;
  out["backend"] = opt.backend;
  out["n_qubits"] = circuit.n_qubits;

  std::optional<ComplexState> complex_state;
  std::optional<PhaseState> real_state;
  if (opt.backend == "complex" || opt.backend == "both")
    complex_state = run_complex(circuit);
  if (opt.backend == "real" || opt.backend == "both")
    real_state = run_real(circuit);

  if (complex_state && real_state) {
    const ComplexState back = real_to_complex_state(*real_state);
    out["deviation"] =
        (back.amplitudes - complex_state->amplitudes).cwiseAbs().maxCoeff();
  }

  // Counts come from the canonical state (complex when available); the
  // circuit must end in `measure` and shots must be positive.
  json counts = json::object();
  double total_norm = complex_state ? complex_state->norm_squared()
                                    : real_state->norm_squared();
  std::uint64_t shots_used = 0;
  if (circuit.measure_at_end && opt.shots > 0) {
    const MeasurementResult result =
        complex_state ? measure(*complex_state, opt.shots, opt.seed)
                      : measure(*real_state, opt.shots, opt.seed);
    counts = counts_to_json(result);
    total_norm = result.total_norm;
    shots_used = result.shots;
  }
  out["counts"] = counts;
  out["total_norm"] = total_norm;
  out["shots"] = shots_used;
  out["seed"] = opt.seed;

  if (opt.emit_state) {
    if (complex_state)
      out["state"] = complex_state_to_json(*complex_state);
    else
      out["state"] = phase_state_to_json(*real_state);
    if (complex_state && real_state)
      out["state_real"] = phase_state_to_json(*real_state);
  }

  std::cout << io::dump_json_checked(out) << "\n";
  return 0;
}

int cmd_evolve(const Options& opt) {
  json input_json;
  try {
    input_json = json::parse(read_file(opt.input_path));
  } catch (const json::exception& e) {
    throw Error(errc::io_error, std::string("invalid JSON input: ") + e.what());
  }
  const io::EvolveInput input = io::evolve_input_from_json(input_json);

  IntegratorConfig cfg;
  cfg.dt = opt.dt_flag ? *opt.dt_flag : input.dt.value_or(1e-3);
  const std::string method = opt.method_flag.value_or("");
  if (method.empty())
    cfg.method = input.method.value_or(IntegratorMethod::ImplicitMidpoint);
  else if (method == "midpoint")
    cfg.method = IntegratorMethod::ImplicitMidpoint;
  else
    cfg.method = IntegratorMethod::StrangSplitting;

  const QuadraticHamiltonian hq = QuadraticHamiltonian::from_operator(input.h);
  const HamiltonianSampler sampler = [&hq](double) { return hq; };
  const auto trajectory =
      integrate(sampler, input.phi0, input.t0, input.t1, cfg);

  if (opt.out == "csv") {
    const int dim = input.phi0.dim();
    std::cout << "time";
    for (int i = 0; i < dim; ++i) std::cout << ",q" << i;
    for (int i = 0; i < dim; ++i) std::cout << ",p" << i;
    std::cout << ",hsym,norm\n";
    std::cout.precision(17);
    for (const auto& point : trajectory) {
      std::cout << point.t;
      for (int i = 0; i < dim; ++i) std::cout << ',' << point.state.q[i];
      for (int i = 0; i < dim; ++i) std::cout << ',' << point.state.p[i];
      std::cout << ',' << hsym(hq, point.state) << ','
                << point.state.norm_squared() << "\n";
    }
    return 0;
  }

  json out;
  json times = json::array(), qs = json::array(), ps = json::array();
  json hs = json::array(), norms = json::array();
  for (const auto& point : trajectory) {
    times.push_back(point.t);
    json q = json::array(), p = json::array();
    for (Eigen::Index i = 0; i < point.state.dim(); ++i) {
      q.push_back(point.state.q[i]);
      p.push_back(point.state.p[i]);
    }
    qs.push_back(std::move(q));
    ps.push_back(std::move(p));
    hs.push_back(hsym(hq, point.state));
    norms.push_back(point.state.norm_squared());
  }
  out["times"] = std::move(times);
  out["q"] = std::move(qs);
  out["p"] = std::move(ps);
  out["hsym"] = std::move(hs);
  out["norm"] = std::move(norms);
  std::cout << io::dump_json_checked(out) << "\n";
  return 0;
}

struct PropertyReport {
  std::string name;
  double max_deviation = 0.0;
  std::map<int, double> per_n;
  bool extra_checks_ok = true;
};

int cmd_verify(const Options& opt) {
  rng::Sequence gen(opt.seed);
  std::vector<PropertyReport> reports;

  {
    PropertyReport rep{"embedding_homomorphism", 0.0, {}, true};
    for (int dim = 1; dim <= 8; ++dim) {
      double worst = 0.0;
      for (int i = 0; i < 25; ++i) {
        const Eigen::MatrixXcd v1 = rng::haar_unitary(dim, gen);
        const Eigen::MatrixXcd v2 = rng::haar_unitary(dim, gen);
        const Eigen::MatrixXd lhs = real_embedding(v1 * v2);
        const Eigen::MatrixXd rhs = real_embedding(v1) * real_embedding(v2);
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      }
      rep.per_n[dim] = worst;
      rep.max_deviation = std::max(rep.max_deviation, worst);
    }
    reports.push_back(std::move(rep));
  }

  {
    PropertyReport rep{"embedding_image_membership", 0.0, {}, true};
    for (int dim = 1; dim <= 8; ++dim) {
      double worst = 0.0;
      for (int i = 0; i < 25; ++i) {
        const Eigen::MatrixXd s = real_embedding(rng::haar_unitary(dim, gen));
        worst = std::max(worst, is_symplectic(s).max_deviation);
        worst = std::max(worst, is_orthogonal(s).max_deviation);
      }
      rep.per_n[dim] = worst;
      rep.max_deviation = std::max(rep.max_deviation, worst);
    }
    reports.push_back(std::move(rep));
  }

  {
    PropertyReport rep{"intersection_roundtrip", 0.0, {}, true};
    for (int dim = 1; dim <= 8; ++dim) {
      double worst = 0.0;
      for (int i = 0; i < 12; ++i) {
        const Eigen::MatrixXcd v = rng::haar_unitary(dim, gen);
        const Eigen::MatrixXcd back =
            intersection_to_unitary(real_embedding(v));
        worst = std::max(worst, (back - v).cwiseAbs().maxCoeff());
      }
      rep.per_n[dim] = worst;
      rep.max_deviation = std::max(rep.max_deviation, worst);
    }
    // Non-members must be rejected.
    for (const Gate& gate : {gate_squeeze(1.0), gate_shear(0.5)}) {
      try {
        intersection_to_unitary(embed_symplectic(gate, {0}, 2).entries());
        rep.extra_checks_ok = false;
      } catch (const Error& e) {
        if (e.code() != errc::not_in_intersection) rep.extra_checks_ok = false;
      }
    }
    reports.push_back(std::move(rep));
  }

  {
    PropertyReport rep{"backend_equivalence", 0.0, {}, true};
    const Circuit bell = parse_circuit("qubits 2\ngate H 0\ngate CNOT 0 1\n");
    rep.max_deviation =
        equivalence_check(bell, 3, gen.next_u64()).max_state_deviation;
    for (int i = 0; i < 8; ++i) {
      const int n = gen.uniform_int(3, 5);
      const Circuit c = random_unitary_circuit(n, 30, gen);
      const double dev =
          equivalence_check(c, 3, gen.next_u64()).max_state_deviation;
      rep.per_n[n] = std::max(rep.per_n[n], dev);
      rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    reports.push_back(std::move(rep));
  }

  bool all_pass = true;
  json props = json::array();
  std::string first_failure;
  for (const auto& rep : reports) {
    const bool pass = rep.max_deviation <= opt.tol && rep.extra_checks_ok;
    if (!pass && first_failure.empty()) first_failure = rep.name;
    all_pass = all_pass && pass;
    json entry{{"name", rep.name},
               {"max_deviation", rep.max_deviation},
               {"pass", pass}};
    if (!rep.per_n.empty()) {
      json per_n = json::object();
      for (const auto& [n, dev] : rep.per_n) per_n[std::to_string(n)] = dev;
      entry["per_n"] = per_n;
    }
    props.push_back(std::move(entry));
  }

  const json out{{"seed", opt.seed},
                 {"tol", opt.tol},
                 {"pass", all_pass},
                 {"properties", props}};
  std::cout << io::dump_json_checked(out) << "\n";
  if (!all_pass) {
    std::cerr << "verify: property '" << first_failure
              << "' exceeded tolerance " << opt.tol << "\n";
    return 3;
  }
  return 0;
}

int cmd_bench(const Options& opt) {
  using clock = std::chrono::steady_clock;
  std::cout << "n,depth,backend,median_ns,p95_ns\n";
  int cell = 0;
  for (const int n : opt.bench_n) {
    for (const int depth : opt.bench_depth) {
      // One workload per cell, shared by both backends and pinned by the
      // seed, so the timings compare identical circuits.
      rng::Sequence gen(
          rng::stream_u64(opt.seed, static_cast<std::uint64_t>(cell++)));
      const Circuit circuit = random_unitary_circuit(n, depth, gen);

      for (const std::string backend : {"complex", "real"}) {
        auto run_once = [&] {
          if (backend == "complex")
            (void)run_complex(circuit);
          else
            (void)run_real(circuit);
        };
        for (int i = 0; i < opt.warmup; ++i) run_once();
        std::vector<double> samples;
        samples.reserve(static_cast<size_t>(opt.iters));
        for (int i = 0; i < opt.iters; ++i) {
          const auto start = clock::now();
          run_once();
          const auto stop = clock::now();
          samples.push_back(static_cast<double>(
              std::chrono::duration_cast<std::chrono::nanoseconds>(stop -
                                                                   start)
                  .count()));
        }
        std::sort(samples.begin(), samples.end());
        const double median = samples[samples.size() / 2];
        const size_t p95_index =
            std::min(samples.size() - 1,
                     static_cast<size_t>(
                         std::ceil(0.95 * static_cast<double>(samples.size()))) -
                         1);
        std::cout << n << ',' << depth << ',' << backend << ','
                  << static_cast<long long>(median) << ','
                  << static_cast<long long>(samples[p95_index]) << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sympsim: dual-backend circuit simulator (complex unitary and "
               "real symplectic) with symplectic integrators"};
  app.require_subcommand(1);

  Options opt;
  // SYMPSIM_SEED overrides the built-in default; an explicit --seed wins.
  if (const char* env_seed = std::getenv("SYMPSIM_SEED"))
    opt.seed = std::strtoull(env_seed, nullptr, 10);

  auto add_common = [&](CLI::App* sub, bool with_input) {
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--tol", opt.tol, "verification tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    if (with_input)
      sub->add_option("input", opt.input_path, "input file")->required();
  };

  CLI::App* run = app.add_subcommand("run", "execute a circuit file");
  add_common(run, true);
  run->add_option("--backend", opt.backend, "backend selection")
      ->check(CLI::IsMember({"complex", "real", "both"}));
  run->add_option("--shots", opt.shots, "measurement shots (0 disables)");
  run->add_flag("--emit-state", opt.emit_state, "include the final state");

  CLI::App* evolve = app.add_subcommand("evolve", "integrate a Hamiltonian");
  add_common(evolve, true);
  double dt_value = 0.0;
  std::string method_value;
  CLI::Option* dt_opt =
      evolve->add_option("--dt", dt_value, "integrator step size");
  CLI::Option* method_opt =
      evolve->add_option("--method", method_value, "integrator method")
          ->check(CLI::IsMember({"midpoint", "strang"}));

  CLI::App* verify =
      app.add_subcommand("verify", "run the randomized property battery");
  add_common(verify, false);

  CLI::App* bench =
      app.add_subcommand("bench", "time both backends over a circuit grid");
  add_common(bench, false);
  bench->add_option("--bench-n", opt.bench_n, "qubit counts");
  bench->add_option("--bench-depth", opt.bench_depth, "gate counts");
  bench->add_option("--warmup", opt.warmup, "warmup iterations per cell")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--iters", opt.iters, "measured iterations per cell")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  if (dt_opt->count() > 0) opt.dt_flag = dt_value;
  if (method_opt->count() > 0) opt.method_flag = method_value;

  try {
    if (run->parsed()) return cmd_run(opt);
    if (evolve->parsed()) return cmd_evolve(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (bench->parsed()) return cmd_bench(opt);
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return is_input_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
