#include "mlb_cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mlb/moment_dynamics.hpp"

namespace mlb::cli {

bool VerifyReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
}

double rate_relative_error(double a, double b, double magnitude) {
  const double diff = std::abs(a - b);
  const double scale = std::max({std::abs(a), std::abs(b), magnitude});
  if (scale == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / scale;
}

double matching_error(const MomentSet& moments, const SpeciesSet& species, const MixtureCoefficients& coefficients) {
  const auto d = static_cast<double>(moments.dim());
  double worst = 0.0;
  for (std::size_t i = 0; i < moments.size(); ++i) {
    for (std::size_t j = 0; j < moments.size(); ++j) {
      if (i == j) continue;
      const auto model = model_relaxation_rates(moments, coefficients, i, j);
      const auto exact = boltzc_relaxation_rates(moments, species, i, j);
      const auto& p = coefficients.at(i, j);
      const double mi = moments.mass(i);
      const double mj = moments.mass(j);
      const auto ui = moments.velocity(i);
      const auto uj = moments.velocity(j);
      double du2 = 0.0;
      for (std::size_t a = 0; a < model.momentum.size(); ++a) {
        const double du = uj[a] - ui[a];
        du2 += du * du;
        worst = std::max(worst, rate_relative_error(model.momentum[a], exact.momentum[a],
                                                    p.xi * (mi + mj) * std::abs(du)));
      }
      const double dt = std::abs(moments.temperature(j) - moments.temperature(i));
      const double w = moments.density(i) * p.lambda * (1.0 - p.beta);
      const double friction = 2.0 * moments.density(i) * p.lambda * p.gamma - p.delta;
      const double magnitude =
          std::max(p.xi * (d * dt + 0.5 * std::abs(mj - mi) * du2), 2.0 * d * w * dt + std::abs(friction) * du2);
      worst = std::max(worst, rate_relative_error(model.thermal, exact.thermal, magnitude));
    }
  }
  return worst;
}

VerifyReport verify_coefficients(const MomentSet& moments, const SpeciesSet& species,
                                 const MixtureCoefficients& coefficients) {
  VerifyReport report;

  for (const auto& r : verify_symmetries(coefficients)) {
    const double rel = r.max_relative();
    report.rows.push_back({fmt::format("symmetry ({},{})", r.i + 1, r.j + 1), rel <= kVerifyTolerance, rel,
                           fmt::format("momentum {:.2e}, thermal {:.2e}, friction {:.2e} (absolute)", r.momentum,
                                       r.thermal, r.friction)});
  }

  const double match = matching_error(moments, species, coefficients);
  report.rows.push_back({"matching rates", match <= kVerifyTolerance, match,
                         "model vs binary Coulomb momentum and temperature relaxation"});

  const auto a1 = check_assumption1(coefficients);
  std::string detail = a1.holds ? "0 <= alpha, beta <= 1 and gamma >= 0 for all pairs" : "";
  for (const auto& v : a1.violations) {
    if (!detail.empty()) detail += "; ";
    detail += fmt::format("{}({},{}) = {:.6g}", v.parameter, v.i + 1, v.j + 1, v.value);
  }
  report.rows.push_back({"weight bounds", a1.holds, static_cast<double>(a1.violations.size()), detail});

  if (coefficients.size() == 2) {
    const auto p = check_pirner(coefficients);
    std::string premises;
    for (std::size_t k = 0; k < p.conditions.size(); ++k) {
      if (!premises.empty()) premises += ", ";
      premises += fmt::format("[{}] {}", p.conditions[k] ? "x" : " ", PirnerReport::kNames[k]);
    }
    const char* verdict = p.all_conditions()
                              ? (p.assumption1.holds ? "premises hold, weight bounds confirmed" : "premises hold, "
                                                                                                 "weight bounds FAIL")
                              : "premises not all met (vacuous)";
    report.rows.push_back({"two-species sufficient conditions", p.implication_holds(), p.epsilon,
                           fmt::format("eps = {:.6g}; {}; {}", p.epsilon, premises, verdict)});
  }
  return report;
}

VerifyReport verify_config(const SimConfig& config) {
  config.validate();
  const auto species = config.species_set();
  const auto kappa = config.kappa_table();
  const auto moments =
      config.mode == Mode::Grid ? config.initial_distributions().moments(species.masses()) : config.analytic_moments();
  const auto coefficients = assemble_coefficients(species, kappa, moments);
  return verify_coefficients(moments, species, coefficients);
}

void print_report(std::ostream& out, const VerifyReport& report) {
  std::size_t width = 5;
  for (const auto& r : report.rows) width = std::max(width, r.name.size());
  fmt::print(out, "{:<{}}  {:<6}  {:<10}  {}\n", "check", width, "result", "value", "detail");
  for (const auto& r : report.rows) {
    fmt::print(out, "{:<{}}  {:<6}  {:<10.3e}  {}\n", r.name, width, r.passed ? "PASS" : "FAIL", r.residual, r.detail);
  }
  fmt::print(out, "{}\n", report.passed() ? "all checks passed" : "verification FAILED");
}

}  // namespace mlb::cli
