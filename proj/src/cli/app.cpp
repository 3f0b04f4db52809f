#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "xqd/cli.hpp"

namespace xqd::cli {

namespace {

struct Flags {
  std::string input;
  std::string method = "auto";
  std::string out;
  GridConfig grid;
  std::uint64_t seed = 42;
  int samples = VerifyOptions{}.samples;
  std::optional<double> tolerance;
  std::optional<double> theta;
  std::optional<double> psi;
  std::optional<double> r;
};

void add_grid_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--grid-theta", f.grid.n_theta, "polar grid points (>= 32)")->capture_default_str();
  cmd->add_option("--grid-psi", f.grid.n_psi, "azimuthal grid points (>= 64)")->capture_default_str();
  cmd->add_option("--refine-iters", f.grid.refine_iters, "Nelder-Mead iteration cap")
      ->capture_default_str();
}

void add_io_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--input", f.input, "JSON input file, or - for stdin")->required();
  cmd->add_option("--out", f.out, "output file (default: stdout)");
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw IoError("cannot read input file '" + path + "'");
    buf << file.rdbuf();
  }
  return buf.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot write output file '" + path + "'");
  file << text;
  if (!file) throw IoError("failed writing output file '" + path + "'");
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << dump(json{{"error", {{"kind", std::string(kind)}, {"message", message}}}});
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Bures geometric discord and closest classical states for two-qubit states"};
  app.require_subcommand(1);
  Flags f;

  auto* discord = app.add_subcommand("discord", "fidelity, discord and optimal measurement");
  add_io_flags(discord, f);
  add_grid_flags(discord, f);
  discord->add_option("--method", f.method, "auto | bruteforce | closed | candidates")
      ->capture_default_str();

  auto* ccs = app.add_subcommand("ccs", "closest A-classical state");
  add_io_flags(ccs, f);
  add_grid_flags(ccs, f);
  ccs->add_option("--theta", f.theta, "measurement polar angle override");
  ccs->add_option("--psi", f.psi, "measurement azimuth override");
  ccs->add_option("--r", f.r, "parameter of the Bell-diagonal CCS family, in [-1, 1]");

  auto* sweep = app.add_subcommand("sweep", "CSV table over a one-parameter family");
  add_io_flags(sweep, f);
  add_grid_flags(sweep, f);

  auto* verify = app.add_subcommand("verify", "randomised oracle and property suites");
  add_grid_flags(verify, f);
  verify->add_option("--seed", f.seed, "sampling seed")->capture_default_str();
  verify->add_option("--samples", f.samples, "samples per suite")->capture_default_str();
  verify->add_option("--tolerance", f.tolerance, "override every suite tolerance");
  verify->add_option("--out", f.out, "write the JSON summary here");

  auto* classical = app.add_subcommand("classical", "geometric classical correlation");
  add_io_flags(classical, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    report_error(err, "UsageError", e.what());
    return kInvalidInput;
  }

  try {
    if (verify->parsed()) {
      VerifyOptions o;
      o.seed = f.seed;
      o.samples = f.samples;
      o.tolerance = f.tolerance;
      o.grid = f.grid;
      const auto suites = run_verify(o);
      bool ok = true;
      for (const auto& s : suites) {
        char line[200];
        std::snprintf(line, sizeof line, "%-22s %-4s max_dev=%.3e tol=%.1e n=%d\n", s.name.c_str(),
                      s.passed ? "ok" : "FAIL", s.max_deviation, s.tolerance, s.samples);
        out << line;
        ok = ok && s.passed;
      }
      const std::string summary = dump(to_json(suites));
      if (f.out.empty())
        out << summary;
      else
        emit(summary, f.out, out);
      return ok ? kOk : kVerifyFailed;
    }

    f.grid.validate();
    const json input = parse_json(read_input(f.input, in));
    if (sweep->parsed()) {
      emit(cmd_sweep(parse_sweep_spec(input), f.grid), f.out, out);
      return kOk;
    }
    const StateSpec spec = parse_state_spec(input);
    json result;
    if (discord->parsed()) {
      result = cmd_discord(spec, parse_method(f.method), f.grid);
    } else if (ccs->parsed()) {
      CcsOptions o;
      if (f.theta.has_value() != f.psi.has_value())
        throw InputError("--theta and --psi must be given together");
      if (f.theta) o.direction = MeasurementDirection::from_angles(*f.theta, *f.psi);
      o.r = f.r;
      result = cmd_ccs(spec, o, f.grid);
    } else {
      result = cmd_classical(spec);
    }
    emit(dump(result), f.out, out);
    return kOk;
  } catch (const IoError& e) {
    report_error(err, "IoError", e.what());
    return kIoFailure;
  } catch (const InputError& e) {
    report_error(err, "InvalidInput", e.what());
    return kInvalidInput;
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return kInvalidInput;
  } catch (const json::exception& e) {
    report_error(err, "InvalidInput", e.what());
    return kInvalidInput;
  }
}

}  // namespace xqd::cli
