#include "sympsim/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <thread>
#include <utility>

#include "sympsim/rng.hpp"

namespace sympsim {

namespace {

// Dense embedded-matrix execution is O(4^n) memory per gate; past this the
// simulator refuses rather than thrashing.
constexpr int kMaxRunQubits = 10;
// Parser-side bound keeping 2^n target-range arithmetic in int.
constexpr int kMaxParseQubits = 30;

bool is_name_start(char c) { return c >= 'A' && c <= 'Z'; }
bool is_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Single-line token scanner; columns are 1-based for diagnostics.
struct Scanner {
  const std::string& text;
  int line_no;
  size_t pos = 0;

  int col() const { return static_cast<int>(pos) + 1; }
  bool at_end() const { return pos >= text.size(); }
  char peek() const { return at_end() ? '\0' : text[pos]; }

  void skip_ws() {
    while (!at_end() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  [[noreturn]] void fail(errc code, const std::string& msg, int at_col = -1) {
    throw ParseError(code, line_no, at_col < 0 ? col() : at_col, msg);
  }

  std::string scan_word() {
    const size_t start = pos;
    while (!at_end() && text[pos] != ' ' && text[pos] != '\t') ++pos;
    return text.substr(start, pos - start);
  }

  std::string scan_name() {
    if (at_end() || !is_name_start(peek()))
      fail(errc::syntax_error,
           "expected a gate name ([A-Z][A-Z0-9_]*)");
    const size_t start = pos;
    while (!at_end() && is_name_char(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }

  int scan_int(const std::string& what) {
    const int at = col();
    if (at_end() || !is_digit(peek()))
      fail(errc::syntax_error, "expected " + what + " (unsigned integer)", at);
    const size_t start = pos;
    while (!at_end() && is_digit(text[pos])) ++pos;
    long long value = 0;
    const auto res =
        std::from_chars(text.data() + start, text.data() + pos, value);
    if (res.ec != std::errc{} || value > 2147483647LL)
      fail(errc::syntax_error, what + " is out of range", at);
    if (!at_end() && text[pos] != ' ' && text[pos] != '\t' && text[pos] != ',' &&
        text[pos] != ')')
      fail(errc::syntax_error, "malformed " + what, at);
    return static_cast<int>(value);
  }

  double scan_real() {
    const int at = col();
    size_t start = pos;
    if (!at_end() && (text[pos] == '+' || text[pos] == '-')) {
      // from_chars accepts '-' but never '+'; skip an explicit plus.
      if (text[pos] == '+') start = pos + 1;
      ++pos;
    }
    size_t digits = 0;
    while (!at_end() && is_digit(text[pos])) ++pos, ++digits;
    if (!at_end() && text[pos] == '.') {
      ++pos;
      while (!at_end() && is_digit(text[pos])) ++pos, ++digits;
    }
    if (digits == 0)
      fail(errc::syntax_error, "expected a decimal number", at);
    if (!at_end() && (text[pos] == 'e' || text[pos] == 'E')) {
      ++pos;
      if (!at_end() && (text[pos] == '+' || text[pos] == '-')) ++pos;
      size_t exp_digits = 0;
      while (!at_end() && is_digit(text[pos])) ++pos, ++exp_digits;
      if (exp_digits == 0)
        fail(errc::syntax_error, "malformed exponent in number", at);
    }
    double value = 0.0;
    const auto res =
        std::from_chars(text.data() + start, text.data() + pos, value);
    if (res.ec != std::errc{} || !std::isfinite(value))
      fail(errc::syntax_error, "number is out of range", at);
    return value;
  }

  // Optional "(REAL, REAL, ...)" immediately after a name; internal
  // whitespace tolerated.
  std::vector<double> scan_params() {
    std::vector<double> params;
    skip_ws();
    if (at_end() || peek() != '(') return params;
    const int open_col = col();
    ++pos;
    skip_ws();
    if (peek() == ')')
      fail(errc::syntax_error, "empty parameter list", open_col);
    while (true) {
      skip_ws();
      params.push_back(scan_real());
      skip_ws();
      if (peek() == ',') {
        ++pos;
        continue;
      }
      if (peek() == ')') {
        ++pos;
        return params;
      }
      fail(errc::syntax_error, "expected ',' or ')' in parameter list");
    }
  }
};

std::vector<int> scan_targets(Scanner& sc, const std::string& what) {
  std::vector<int> targets;
  while (true) {
    sc.skip_ws();
    if (sc.at_end()) break;
    targets.push_back(sc.scan_int(what));
  }
  if (targets.empty())
    sc.fail(errc::syntax_error, "statement requires at least one " + what);
  return targets;
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  Circuit circuit;
  bool seen_header = false;
  int measure_line = 0;
  const GateCatalog& catalog = GateCatalog::standard();

  int line_no = 0;
  size_t line_start = 0;
  while (line_start <= text.size()) {
    size_t line_end = text.find('\n', line_start);
    if (line_end == std::string::npos) line_end = text.size();
    std::string line = text.substr(line_start, line_end - line_start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    line_start = line_end + 1;
    ++line_no;
    if (line_end == text.size() && line.empty()) break;

    Scanner sc{line, line_no};
    sc.skip_ws();
    if (sc.at_end() || sc.peek() == '#') continue;  // blank or comment

    if (!seen_header) {
      const int kw_col = sc.col();
      const std::string word = sc.scan_word();
      if (word != "qubits")
        throw ParseError(errc::missing_header, line_no, kw_col,
                         "expected the 'qubits N' header, found '" + word +
                             "'");
      sc.skip_ws();
      const int count_col = sc.col();
      const int n = sc.scan_int("qubit count");
      if (n < 1)
        sc.fail(errc::syntax_error, "qubit count must be >= 1", count_col);
      if (n > kMaxParseQubits)
        sc.fail(errc::syntax_error,
                "qubit count exceeds the supported maximum of " +
                    std::to_string(kMaxParseQubits),
                count_col);
      sc.skip_ws();
      if (!sc.at_end())
        sc.fail(errc::syntax_error, "unexpected text after the header");
      circuit.n_qubits = n;
      seen_header = true;
      continue;
    }

    if (measure_line > 0) {
      sc.fail(errc::syntax_error,
              "no statements allowed after 'measure' (line " +
                  std::to_string(measure_line) + ")");
    }

    const int kw_col = sc.col();
    const std::string keyword = sc.scan_word();

    if (keyword == "measure") {
      sc.skip_ws();
      if (!sc.at_end())
        sc.fail(errc::syntax_error, "unexpected text after 'measure'");
      circuit.measure_at_end = true;
      measure_line = line_no;
      continue;
    }

    if (keyword != "gate" && keyword != "sgate")
      throw ParseError(errc::syntax_error, line_no, kw_col,
                       "expected 'gate', 'sgate' or 'measure', found '" +
                           keyword + "'");
    const TargetSpace space =
        keyword == "gate" ? TargetSpace::Qubit : TargetSpace::Mode;

    sc.skip_ws();
    const int name_col = sc.col();
    const std::string name = sc.scan_name();
    const GateDef* def = catalog.find(name);
    if (def == nullptr)
      throw ParseError(errc::unknown_gate, line_no, name_col,
                       "unknown gate '" + name + "'");
    if (def->space != space) {
      const char* hint = def->space == TargetSpace::Mode
                             ? "a mode gate; use 'sgate'"
                             : "a qubit gate; use 'gate'";
      throw ParseError(errc::kind_mismatch, line_no, name_col,
                       "gate " + name + " is " + hint);
    }

    const std::vector<double> params = sc.scan_params();
    if (static_cast<int>(params.size()) != def->param_count)
      throw ParseError(errc::arity_mismatch, line_no, name_col,
                       "gate " + name + " expects " +
                           std::to_string(def->param_count) +
                           " parameter(s), got " +
                           std::to_string(params.size()));

    const std::vector<int> targets =
        scan_targets(sc, space == TargetSpace::Qubit ? "qubit index"
                                                     : "mode index");
    if (static_cast<int>(targets.size()) != def->arity)
      throw ParseError(errc::arity_mismatch, line_no, name_col,
                       "gate " + name + " expects " +
                           std::to_string(def->arity) + " target(s), got " +
                           std::to_string(targets.size()));
    const int limit =
        space == TargetSpace::Qubit ? circuit.n_qubits : circuit.dim();
    std::vector<int> seen_targets;
    for (int t : targets) {
      if (t >= limit)
        throw ParseError(errc::target_out_of_range, line_no, name_col,
                         (space == TargetSpace::Qubit ? "qubit" : "mode") +
                             std::string(" target ") + std::to_string(t) +
                             " out of range [0, " + std::to_string(limit) +
                             ")");
      if (std::find(seen_targets.begin(), seen_targets.end(), t) !=
          seen_targets.end())
        throw ParseError(errc::duplicate_target, line_no, name_col,
                         "duplicate target " + std::to_string(t));
      seen_targets.push_back(t);
    }

    circuit.ops.push_back(PlacedGate{name, params, targets, space});
  }

  if (!seen_header)
    throw ParseError(errc::missing_header, std::max(line_no, 1), 1,
                     "missing 'qubits N' header");
  return circuit;
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.n_qubits << "\n";
  char buf[64];
  for (const PlacedGate& op : c.ops) {
    out << (op.target_space == TargetSpace::Qubit ? "gate " : "sgate ")
        << op.gate_name;
    if (!op.params.empty()) {
      out << '(';
      for (size_t i = 0; i < op.params.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", op.params[i]);
        out << (i ? "," : "") << buf;
      }
      out << ')';
    }
    for (int t : op.targets) out << ' ' << t;
    out << "\n";
  }
  if (c.measure_at_end) out << "measure\n";
  return out.str();
}

namespace {

void require_runnable_size(const Circuit& c) {
  if (c.n_qubits > kMaxRunQubits)
    throw Error(errc::dim_mismatch,
                "circuit has " + std::to_string(c.n_qubits) +
                    " qubits; dense execution is limited to " +
                    std::to_string(kMaxRunQubits));
}

}  // namespace

ComplexState run_complex(const Circuit& c) {
  return run_complex(c, ComplexState::ground(c.dim()));
}

ComplexState run_complex(const Circuit& c, const ComplexState& psi0) {
  require_runnable_size(c);
  if (psi0.dim() != c.dim())
    throw Error(errc::dim_mismatch,
                "initial state dimension " + std::to_string(psi0.dim()) +
                    " does not match circuit dimension " +
                    std::to_string(c.dim()));
  const GateCatalog& catalog = GateCatalog::standard();
  Eigen::VectorXcd v = psi0.amplitudes;
  for (size_t i = 0; i < c.ops.size(); ++i) {
    const PlacedGate& op = c.ops[i];
    const Gate g = catalog.build(op.gate_name, op.params);
    if (g.kind == GateKind::SymplecticOnly)
      throw Error(errc::symplectic_gate_on_complex_backend,
                  "gate " + op.gate_name + " (op " + std::to_string(i) +
                      ") has no complex-backend action");
    if (g.space == TargetSpace::Qubit)
      v = embed_unitary(g, op.targets, c.n_qubits) * v;
    else
      v = embed_mode_unitary(g, op.targets, c.dim()) * v;
  }
  return ComplexState(std::move(v));
}

PhaseState run_real(const Circuit& c, const RunOptions& opts) {
  return run_real(c, PhaseState::ground(c.dim()), opts);
}

PhaseState run_real(const Circuit& c, const PhaseState& phi0,
                    const RunOptions& opts) {
  require_runnable_size(c);
  if (phi0.dim() != c.dim())
    throw Error(errc::dim_mismatch,
                "initial state dimension " + std::to_string(phi0.dim()) +
                    " does not match circuit dimension " +
                    std::to_string(c.dim()));
  const GateCatalog& catalog = GateCatalog::standard();
  Eigen::VectorXd x = phi0.stacked();
  for (const PlacedGate& op : c.ops) {
    const Gate g = catalog.build(op.gate_name, op.params);
    Eigen::MatrixXd s;
    if (g.space == TargetSpace::Qubit)
      s = real_embedding(embed_unitary(g, op.targets, c.n_qubits));
    else
      s = embed_symplectic_raw(g, op.targets, c.dim());
    if (opts.check_each_step) {
      const PredicateResult res = is_symplectic(s, opts.step_check_tol);
      if (!res.ok)
        throw Error(errc::not_symplectic,
                    "gate " + op.gate_name +
                        " failed the per-step symplecticity check",
                    res.max_deviation);
    }
    x = s * x;
  }
  return PhaseState::from_stacked(x);
}

namespace {

MeasurementResult measure_weights(const Eigen::VectorXd& weights,
                                  std::uint64_t shots, std::uint64_t seed,
                                  int threads) {
  if (shots == 0)
    throw Error(errc::zero_shots, "measurement requires at least one shot");

  // Total mass and cumulative thresholds in fixed index order; outcomes then
  // depend only on (seed, shot index), never on shard boundaries.
  std::vector<double> cum(static_cast<size_t>(weights.size()));
  double total = 0.0;
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    total += weights[k];
    cum[static_cast<size_t>(k)] = total;
  }
  if (!(total > 0.0))
    throw Error(errc::zero_norm_state,
                "state has zero norm; no outcome distribution exists");

  auto draw = [&](std::uint64_t shot) {
    const double x = rng::stream_uniform01(seed, shot) * total;
    const auto it = std::upper_bound(cum.begin(), cum.end(), x);
    return static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cum.begin(), weights.size() - 1));
  };

  MeasurementResult result;
  result.total_norm = total;
  result.shots = shots;
  result.seed = seed;

  if (threads <= 1) {
    for (std::uint64_t shot = 0; shot < shots; ++shot) ++result.counts[draw(shot)];
    return result;
  }

  const int n_threads = std::min<std::uint64_t>(threads, shots);
  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(n_threads);
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  const std::uint64_t chunk = (shots + n_threads - 1) / n_threads;
  for (int w = 0; w < n_threads; ++w) {
    workers.emplace_back([&, w] {
      const std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
      const std::uint64_t end = std::min(shots, begin + chunk);
      for (std::uint64_t shot = begin; shot < end; ++shot)
        ++partial[w][draw(shot)];
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& m : partial)
    for (const auto& [outcome, count] : m) result.counts[outcome] += count;
  return result;
}

}  // namespace

MeasurementResult measure(const ComplexState& state, std::uint64_t shots,
                          std::uint64_t seed, int threads) {
  Eigen::VectorXd weights(state.dim());
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    const double re = state.amplitudes[k].real();
    const double im = state.amplitudes[k].imag();
    weights[k] = re * re + im * im;
  }
  return measure_weights(weights, shots, seed, threads);
}

MeasurementResult measure(const PhaseState& state, std::uint64_t shots,
                          std::uint64_t seed, int threads) {
  Eigen::VectorXd weights(state.dim());
  for (Eigen::Index k = 0; k < weights.size(); ++k)
    weights[k] = state.q[k] * state.q[k] + state.p[k] * state.p[k];
  return measure_weights(weights, shots, seed, threads);
}

Circuit random_unitary_circuit(int n_qubits, int n_gates, rng::Sequence& gen) {
  static const char* pool[] = {"H", "X", "RZ", "CNOT", "NOTP"};
  Circuit c;
  c.n_qubits = n_qubits;
  c.ops.reserve(static_cast<size_t>(n_gates));
  for (int i = 0; i < n_gates; ++i) {
    const std::string name = pool[gen.uniform_int(0, 4)];
    PlacedGate op;
    op.gate_name = name;
    op.target_space = TargetSpace::Qubit;
    const int a = gen.uniform_int(0, n_qubits - 1);
    if (name == "CNOT" && n_qubits >= 2) {
      int b = gen.uniform_int(0, n_qubits - 2);
      if (b >= a) ++b;
      op.targets = {a, b};
    } else if (name == "CNOT") {
      op.gate_name = "H";  // single-qubit fallback
      op.targets = {a};
    } else {
      op.targets = {a};
    }
    if (op.gate_name == "RZ") op.params = {6.28 * gen.uniform01() - 3.14};
    c.ops.push_back(std::move(op));
  }
  return c;
}

EquivalenceReport equivalence_check(const Circuit& c, int trials,
                                    std::uint64_t seed) {
  const GateCatalog& catalog = GateCatalog::standard();
  for (size_t i = 0; i < c.ops.size(); ++i) {
    const GateDef* def = catalog.find(c.ops[i].gate_name);
    if (def != nullptr && def->kind == GateKind::SymplecticOnly)
      throw Error(errc::symplectic_gate_on_complex_backend,
                  "gate " + c.ops[i].gate_name + " (op " + std::to_string(i) +
                      ") has no complex-backend action");
  }

  rng::Sequence gen(seed);
  EquivalenceReport report;
  report.per_trial.reserve(static_cast<size_t>(trials));
  for (int trial = 0; trial < trials; ++trial) {
    const ComplexState psi0(rng::random_unit_state(c.dim(), gen));
    const ComplexState via_complex = run_complex(c, psi0);
    const PhaseState via_real = run_real(c, complex_to_real_state(psi0));
    const ComplexState back = real_to_complex_state(via_real);
    const double dev =
        (back.amplitudes - via_complex.amplitudes).cwiseAbs().maxCoeff();
    report.per_trial.push_back(dev);
    report.max_state_deviation = std::max(report.max_state_deviation, dev);
  }
  return report;
}

}  // namespace sympsim
