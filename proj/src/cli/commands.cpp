#include <cstdio>
#include <sstream>

#include "xqd/cli.hpp"

namespace xqd::cli {

namespace {

constexpr double kZeroDiscordTol = 1e-6;

json direction_json(const MeasurementDirection& d) {
  const Vec3& u = d.vector();
  return {{"theta", d.theta()}, {"psi", d.psi()}, {"u", json::array({u[0], u[1], u[2]})}};
}

json result_json(const DiscordResult& r) {
  json dirs = json::array();
  for (const auto& d : r.optimal_directions) dirs.push_back(direction_json(d));
  return {{"fidelity", r.fidelity},
          {"discord", r.discord},
          {"method", std::string(to_string(r.method))},
          {"optimal_directions", dirs},
          {"degenerate_family", std::string(to_string(r.degenerate_family))}};
}

json breakdown_json(const CandidateBreakdown& b) {
  return {{"f_axial", b.f_axial}, {"f_equatorial", b.f_equatorial},
          {"h_max", b.h_max},     {"k", b.k},
          {"tau", b.tau},         {"kappa", b.kappa},
          {"chosen", b.chosen == Candidate::Axial ? "axial" : "equatorial"}};
}

json conditions_json(const DegeneracyConditions& c) {
  return {{"ad_eq_y2_and_bc_eq_x2", c.both_blocks_singular},
          {"a_eq_d_eq_abs_y", c.outer_block_flat},
          {"b_eq_c_eq_abs_x", c.inner_block_flat}};
}

json branch_json(const SymmetricBranch& b) {
  return {{"case", std::string(to_string(b.kind))},
          {"xy_zero", b.xy_zero},
          {"phi", b.phi},
          {"f_axial", b.f_axial},
          {"f_equatorial", b.f_equatorial}};
}

DiscordResult degenerate_result(const DegenerateSolution& d) {
  return make_result(d.fidelity, d.directions, Method::Degenerate);
}

json degenerate_json(const DegenerateSolution& d) {
  return {{"conditions", conditions_json(d.conditions)},
          {"m_opt", d.m_opt},
          {"table_regime", std::string(to_string(d.table.regime))},
          {"table_m_opt", d.table.m}};
}

void merge(json& into, const json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
  return buf;
}

}  // namespace

json cmd_discord(const StateSpec& spec, DiscordMethod method, const GridConfig& grid) {
  const Matrix4 rho = spec.density();
  const auto xp = spec.x_params();
  json report{{"input", to_json(spec)}};

  auto require_x = [&](const char* what) {
    if (!xp) throw Error(ErrorKind::InvalidParams, std::string(what) + " needs an X-state input");
  };

  switch (method) {
    case DiscordMethod::Bruteforce:
      merge(report, result_json(max_fidelity_bruteforce(rho, grid)));
      return report;

    case DiscordMethod::Candidates: {
      require_x("method 'candidates'");
      const CandidateSolution c = x_candidate_discord(*xp);
      merge(report, result_json(c.result));
      report["candidates"] = breakdown_json(c.breakdown);
      report["discord_upper_bound"] = discord_upper_bound(*xp).d_upper;
      return report;
    }

    case DiscordMethod::Closed: {
      require_x("method 'closed'");
      if (xp->is_symmetric_family()) {
        const SymmetricSolution s = symmetric_fidelity(*xp);
        merge(report, result_json(s.result));
        report["symmetric_branch"] = branch_json(s.branch);
      } else if (degeneracy_conditions(*xp).any()) {
        const DegenerateSolution d = degenerate_fidelity(*xp);
        merge(report, result_json(degenerate_result(d)));
        report["degenerate"] = degenerate_json(d);
      } else {
        throw Error(ErrorKind::PreconditionNotMet,
                    "no exact closed form: state is outside the a = d, b = c family and the "
                    "rank-deficient conditions fail; use --method auto or candidates");
      }
      return report;
    }

    case DiscordMethod::Auto: break;
  }

  json trace = json::array();
  if (xp && xp->is_symmetric_family()) {
    trace.push_back("a = d, b = c family: exact closed form");
    const SymmetricSolution s = symmetric_fidelity(*xp);
    merge(report, result_json(s.result));
    report["symmetric_branch"] = branch_json(s.branch);
  } else if (xp && degeneracy_conditions(*xp).any()) {
    trace.push_back("not in the a = d, b = c family");
    trace.push_back("rank-deficient conditions hold: exact degenerate formula");
    const DegenerateSolution d = degenerate_fidelity(*xp);
    merge(report, result_json(degenerate_result(d)));
    report["degenerate"] = degenerate_json(d);
  } else {
    const DiscordResult brute = max_fidelity_bruteforce(rho, grid);
    if (xp) {
      trace.push_back("not in the a = d, b = c family");
      trace.push_back("rank-deficient conditions fail");
      trace.push_back("axial and equatorial candidates evaluated");
      const CandidateSolution c = x_candidate_discord(*xp);
      report["candidates"] = breakdown_json(c.breakdown);
      report["candidate_gap"] = brute.fidelity - c.result.fidelity;
    } else {
      trace.push_back("not an X-state");
    }
    trace.push_back("brute-force sphere search is authoritative");
    merge(report, result_json(brute));
  }
  report["dispatch"] = trace;
  return report;
}

json cmd_ccs(const StateSpec& spec, const CcsOptions& options, const GridConfig& grid) {
  const Matrix4 rho = spec.density();
  const auto xp = spec.x_params();
  json report{{"input", to_json(spec)}};

  Matrix4 ccs;
  double claimed = 0.0;
  bool degenerate_projector = false;
  std::string construction;

  auto from_measurement = [&](const MeasurementDirection& d) {
    const CcsResult c = ccs_from_measurement(rho, d);
    ccs = c.ccs;
    degenerate_projector = c.degenerate_projector;
    construction = "measurement";
    report["direction"] = direction_json(d);
  };

  if (options.direction) {
    from_measurement(*options.direction);
    claimed = fidelity_at_direction(rho, *options.direction);
  } else if (xp && xp->is_symmetric_family()) {
    const SymmetricSolution sol = symmetric_fidelity(*xp);
    const SymmetricCcs s = symmetric_ccs(*xp, options.r);
    ccs = s.ccs;
    claimed = sol.result.fidelity;
    construction = options.r && !s.branch_not_printed ? "bell_diagonal_family" : "measurement";
    report["bd_branch"] = std::string(to_string(s.branch));
    report["branch_not_printed"] = s.branch_not_printed;
    if (construction == "measurement") {
      const auto& d = sol.result.optimal_directions.front();
      degenerate_projector = ccs_from_measurement(rho, d).degenerate_projector;
      report["direction"] = direction_json(d);
    }
  } else {
    const DiscordResult brute = max_fidelity_bruteforce(rho, grid);
    claimed = brute.fidelity;
    bool axial = false;
    if (xp) {
      const CandidateSolution c = x_candidate_discord(*xp);
      axial = c.breakdown.chosen == Candidate::Axial && c.result.optimal_directions.size() == 1 &&
              std::abs(brute.fidelity - c.breakdown.f_axial) <= kZeroDiscordTol;
    }
    if (axial) {
      ccs = x_ccs_z(*xp);
      construction = "axial_diagonal";
      report["direction"] = direction_json(MeasurementDirection(Vec3{0.0, 0.0, 1.0}));
    } else {
      from_measurement(brute.optimal_directions.front());
    }
  }

  const double check = fidelity(rho, ccs);
  const DiscordResult residual = max_fidelity_bruteforce(ccs, grid);
  report["construction"] = construction;
  report["ccs"] = matrix_to_json(ccs);
  report["claimed_fidelity"] = claimed;
  report["fidelity_check"] = check;
  report["degenerate_projector"] = degenerate_projector;
  report["a_classical"] = {{"discord", residual.discord},
                           {"passed", residual.discord <= kZeroDiscordTol}};
  return report;
}

json cmd_classical(const StateSpec& spec) {
  const Matrix4 rho = spec.density();
  const auto xp = spec.x_params();
  if (!xp || !xp->is_symmetric_family())
    throw Error(ErrorKind::NotSymmetricFamily,
                "classical correlation needs an X-state with a = d, b = c");
  const ClassicalCorrelation c = classical_correlation_symmetric(*xp);
  return {{"input", to_json(spec)},
          {"c_bu", c.c_bu},
          {"closest_product", matrix_to_json(c.closest_product)},
          {"bures_sq_to_closest_product", bures_distance_sq(rho, c.closest_product)}};
}

std::string cmd_sweep(const SweepSpec& spec, const GridConfig& grid) {
  std::ostringstream os;
  os << "param_value,fidelity,discord,theta_opt,psi_opt,method,candidate_gap,classical_corr,"
        "entropic_discord\n";
  for (int i = 0; i < spec.steps; ++i) {
    const StateSpec s = spec.at(i);
    const Matrix4 rho = s.density();
    const auto xp = s.x_params();

    std::optional<DiscordResult> r;
    if (spec.closed && xp) {
      if (xp->is_symmetric_family())
        r = symmetric_fidelity(*xp).result;
      else if (degeneracy_conditions(*xp).any())
        r = degenerate_result(degenerate_fidelity(*xp));
    }
    if (spec.bruteforce) r = max_fidelity_bruteforce(rho, grid);
    std::optional<CandidateSolution> cand;
    if (xp) cand = x_candidate_discord(*xp);
    if (!r && spec.candidates && cand) r = cand->result;
    if (!r) r = max_fidelity_bruteforce(rho, grid);

    const auto& d = r->optimal_directions.front();
    os << csv_number(spec.param(i)) << ',' << csv_number(r->fidelity) << ','
       << csv_number(r->discord) << ',' << csv_number(d.theta()) << ',' << csv_number(d.psi())
       << ',' << to_string(r->method) << ',';
    if (cand) os << csv_number(r->fidelity - cand->result.fidelity);
    os << ',';
    if (xp && xp->is_symmetric_family()) os << csv_number(classical_correlation_symmetric(*xp).c_bu);
    os << ',';
    if (spec.entropic) os << csv_number(entropic_discord(rho, grid).discord);
    os << '\n';
  }
  return os.str();
}

}  // namespace xqd::cli
