#pragma once

// JSON/CSV front end shared by the xqd executable, its tests and the Python
// bindings. Commands return JSON documents; `run_cli` maps errors to exit
// codes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "xqd/closed_forms.hpp"

namespace xqd::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInvalidInput = 2, kIoFailure = 3 };

/// Input problem outside the library's own error kinds (malformed JSON,
/// missing fields, unknown names).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StateKind { XState, Matrix, Classical, Werner };

struct StateSpec {
  StateKind kind = StateKind::XState;
  XStateParams x_state;
  Matrix4 matrix;
  ClassicalStateParams classical;
  double werner = 0.0;

  /// Validated density matrix.
  Matrix4 density() const;
  /// X-state parameters when the state has X structure (exactly, for
  /// x_state/werner; within 1e-12 for matrix/classical inputs).
  std::optional<XStateParams> x_params() const;
};

StateSpec parse_state_spec(const json& j);
json to_json(const StateSpec& spec);

json matrix_to_json(const Matrix4& m);
Matrix4 matrix_from_json(const json& j);

/// Compact JSON with every double written with 17 significant digits.
std::string dump(const json& j);

enum class DiscordMethod { Auto, Bruteforce, Closed, Candidates };
DiscordMethod parse_method(const std::string& name);

json cmd_discord(const StateSpec& spec, DiscordMethod method, const GridConfig& grid);

struct CcsOptions {
  std::optional<MeasurementDirection> direction;
  std::optional<double> r;
};

json cmd_ccs(const StateSpec& spec, const CcsOptions& options, const GridConfig& grid);

json cmd_classical(const StateSpec& spec);

struct SweepSpec {
  std::string family;  // "werner" or "x_state"
  XStateParams base;
  std::string field;   // a, b, c, d, x_re, x_im, y_re, y_im
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  bool bruteforce = true;
  bool closed = false;
  bool candidates = false;
  bool entropic = false;

  /// The state at step i; validated.
  StateSpec at(int i) const;
  double param(int i) const;
};

SweepSpec parse_sweep_spec(const json& j);

/// CSV text, header included.
std::string cmd_sweep(const SweepSpec& spec, const GridConfig& grid);

struct VerifyOptions {
  std::uint64_t seed = 42;
  int samples = 40;
  /// Replaces every suite tolerance when set.
  std::optional<double> tolerance;
  GridConfig grid;
};

struct SuiteReport {
  std::string name;
  int samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

std::vector<SuiteReport> run_verify(const VerifyOptions& options);
json to_json(const std::vector<SuiteReport>& suites);

/// Full command-line entry point: parses argv, reads `--input` (path or "-"
/// for `in`), writes results to `--out` or `out`, errors as JSON to `err`.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace xqd::cli
