#include <cmath>
#include <functional>

#include "xqd/cli.hpp"
#include "xqd/sampling.hpp"

namespace xqd::cli {

namespace {

struct Suite {
  const char* name;
  double tolerance;
  int samples;
  // returns the deviation of one sample
  std::function<double(Rng&)> sample;
};

double vieta_deviation(const XStateParams& p, double m, double psi) {
  const CharPolyCoeffs t = char_poly_coeffs(p, m, psi);
  const auto ev = herm_eigenvalues(lambda_matrix(x_state(p), MeasurementDirection::from_angles(std::acos(m), psi)));
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = ev[0] * ev[1] * ev[2] * ev[3];
  for (int i = 0; i < 4; ++i) {
    e1 += ev[i];
    for (int j = i + 1; j < 4; ++j) {
      e2 += ev[i] * ev[j];
      for (int k = j + 1; k < 4; ++k) e3 += ev[i] * ev[j] * ev[k];
    }
  }
  return std::max({std::abs(t.t3 + e1), std::abs(t.t2 - e2), std::abs(t.t1 + e3),
                   std::abs(t.t0 - e4)});
}

double profile_regression_deviation() {
  XStateParams p;
  p.a = p.b = 1.0 / 3.0;
  p.c = p.d = 1.0 / 6.0;
  p.x = p.y = 1.0 / 6.0;
  const TableOptimum t = table_m_opt(p);
  const double m_opt = t.m.front();
  double dev = std::abs(profile_g(p) + 4.0 / 9.0);
  dev = std::max(dev, std::abs(profile_delta(p) + 1.0 / 3.0));
  dev = std::max(dev, std::abs(m_opt - std::sqrt(0.3)));
  dev = std::max(dev, std::abs(lambda1_profile(p, 0.0).lambda1 - 1.0 / std::sqrt(6.0)));
  dev = std::max(dev, std::abs(lambda1_profile(p, 1.0).lambda1 - (std::sqrt(2.0) + 1.0) / 6.0));
  dev = std::max(dev, std::abs(lambda1_profile(p, m_opt).lambda1 - std::sqrt(5.0 / 24.0)));
  return dev;
}

}  // namespace

std::vector<SuiteReport> run_verify(const VerifyOptions& o) {
  if (o.samples < 1) throw InputError("--samples must be at least 1");
  o.grid.validate();
  const GridConfig& grid = o.grid;
  const int n = o.samples;

  const std::vector<Suite> suites{
      {"symmetric_oracle", 2e-6, n,
       [&](Rng& rng) {
         const XStateParams p = random_symmetric_state(rng);
         return std::abs(symmetric_fidelity(p).result.fidelity -
                         max_fidelity_bruteforce(x_state(p), grid).fidelity);
       }},
      {"candidate_bound", 1e-9, n,
       [&](Rng& rng) {
         const XStateParams p = random_x_state(rng);
         const double brute = max_fidelity_bruteforce(x_state(p), grid).fidelity;
         return std::max(0.0, x_candidate_discord(p).result.fidelity - brute);
       }},
      {"upper_bound", 2e-6, n,
       [&](Rng& rng) {
         const XStateParams p = random_x_state(rng);
         const double brute = max_fidelity_bruteforce(x_state(p), grid).discord;
         return std::max(0.0, brute - discord_upper_bound(p).d_upper);
       }},
      {"local_unitary", 2e-6, n,
       [&](Rng& rng) {
         const Matrix4 rho = x_state(random_x_state(rng));
         const Matrix4 moved = local_unitary(rho, random_unitary(rng), random_unitary(rng));
         return std::abs(max_fidelity_bruteforce(rho, grid).fidelity -
                         max_fidelity_bruteforce(moved, grid).fidelity);
       }},
      {"bridge", 1e-9, 10 * n,
       [&](Rng& rng) {
         const int rank = 1 + static_cast<int>(rng() % 4);
         const Matrix4 rho = random_density_matrix(rng, rank);
         const auto u = MeasurementDirection::normalized(random_unit_vector(rng));
         return std::abs(helstrom_success(induced_ensemble(rho, u)) - fidelity_at_direction(rho, u));
       }},
      {"full_rank_trace_norm", 1e-9, 10 * n,
       [&](Rng& rng) {
         const Matrix4 rho = random_density_matrix(rng, 4);
         const auto u = MeasurementDirection::normalized(random_unit_vector(rng));
         return std::abs(fidelity_at_direction(rho, u) -
                         0.5 * (1.0 + trace_norm(lambda_matrix(rho, u))));
       }},
      {"zero_discord", 1e-6, n,
       [&](Rng& rng) {
         return max_fidelity_bruteforce(classical_state(random_classical_params(rng)), grid).discord;
       }},
      {"bell_discord", 2e-6, 1,
       [&](Rng&) {
         XStateParams bell;
         bell.a = bell.d = 0.5;
         bell.b = bell.c = 0.0;
         bell.y = 0.5;
         return std::abs(max_fidelity_bruteforce(x_state(bell), grid).discord - (2.0 - std::sqrt(2.0)));
       }},
      {"char_poly", 1e-10, 10 * n,
       [&](Rng& rng) {
         const XStateParams p = random_x_state(rng);
         const double m = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
         const double psi = std::uniform_real_distribution<double>(0.0, 6.283185307179586)(rng);
         return vieta_deviation(p, m, psi);
       }},
      {"degenerate_formula", 1e-6, n,
       [&](Rng& rng) {
         const XStateParams p = random_degenerate_x_state(rng);
         return std::abs(degenerate_fidelity(p).fidelity -
                         max_fidelity_bruteforce(x_state(p), grid).fidelity);
       }},
      {"ccs_validity", 1e-6, n,
       [&](Rng& rng) {
         const Matrix4 rho = x_state(random_x_state(rng));
         const DiscordResult best = max_fidelity_bruteforce(rho, grid);
         const CcsResult c = ccs_from_measurement(rho, best.optimal_directions.front());
         const double trace_dev = std::abs(c.ccs.trace().real() - 1.0);
         return std::max({std::abs(c.fidelity_check - best.fidelity), trace_dev,
                          max_fidelity_bruteforce(c.ccs, grid).discord});
       }},
      {"profile_regression", 1e-12, 1, [&](Rng&) { return profile_regression_deviation(); }},
  };

  std::vector<SuiteReport> out;
  std::uint64_t index = 0;
  for (const Suite& s : suites) {
    Rng rng(o.seed + 1000003ULL * index++);
    SuiteReport r;
    r.name = s.name;
    r.samples = s.samples;
    r.tolerance = o.tolerance.value_or(s.tolerance);
    for (int i = 0; i < s.samples; ++i) r.max_deviation = std::max(r.max_deviation, s.sample(rng));
    r.passed = r.max_deviation <= r.tolerance;
    out.push_back(r);
  }
  return out;
}

json to_json(const std::vector<SuiteReport>& suites) {
  json arr = json::array();
  bool all = true;
  for (const auto& s : suites) {
    all = all && s.passed;
    arr.push_back({{"name", s.name},
                   {"samples", s.samples},
                   {"max_deviation", s.max_deviation},
                   {"tolerance", s.tolerance},
                   {"passed", s.passed}});
  }
  return {{"passed", all}, {"suites", arr}};
}

}  // namespace xqd::cli
