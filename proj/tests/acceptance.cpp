// Acceptance checks: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cvtele/cli.hpp"
#include "cvtele/localization.hpp"
#include "cvtele/montecarlo.hpp"
#include "cvtele/optimizer.hpp"
#include "cvtele/teleportation.hpp"

using namespace cvtele;

namespace {

struct Outcome
{
  bool passed;
  std::string detail;
};

struct Criterion
{
  int id;
  std::string title;
  double time_limit_s;
  std::function<Outcome()> check;
};

const std::vector<int> kSizes{2, 3, 4, 8, 20, 50};
const std::vector<double> kNoises{1.0, 1.5, 2.0};

std::vector<double> rbar_grid()
{
  std::vector<double> r;
  for (int k = 0; k <= 8; ++k)
    r.push_back(0.25 * k);
  return r;
}

std::string fmt(const char* pattern, double a, double b = 0.0)
{
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

Outcome classical_bound()
{
  double worst = 0.0;
  for (int n = 2; n <= 50; ++n) {
    const ResourceFamily family{n, 1.0, 1.0, 0.0};
    const auto best = optimal_fidelity(family);
    const double f = fidelity_network(family.at(best.d_opt), {0, 1, best.g_opt}).fidelity;
    worst = std::max(worst, std::abs(f - 0.5));
  }
  return {worst <= 1e-12, fmt("max |F - 1/2| = %.3g (tol 1e-12)", worst)};
}

Outcome two_mode_closed_form()
{
  double worst = 0.0;
  for (double n1 : kNoises)
    for (double n2 : kNoises)
      for (double rbar : rbar_grid()) {
        const ResourceSpec spec{2, n1, n2, rbar, d_opt_two_mode(n1, n2)};
        const double f = fidelity_network(spec, {}, BiasMode::unconstrained).fidelity;
        const double expected = 1.0 / (1.0 + std::sqrt(n1 * n2) * std::exp(-2.0 * rbar));
        worst = std::max(worst, std::abs(f - expected));
      }
  return {worst <= 1e-10, fmt("max deviation %.3g (tol 1e-10)", worst)};
}

Outcome network_closed_form()
{
  double worst = 0.0;
  for (int n : kSizes)
    for (double n1 : kNoises)
      for (double n2 : kNoises)
        for (double rbar : rbar_grid()) {
          const ResourceSpec spec{n, n1, n2, rbar, d_N_opt(n, n1, n2, rbar)};
          const double g = g_N_opt(n, n1, n2, rbar);
          const double f = fidelity_network(spec, {0, 1, g}, BiasMode::unconstrained).fidelity;
          worst = std::max(worst, std::abs(f - 1.0 / (1.0 + eta_generalized(spec))));
        }
  return {worst <= 1e-10, fmt("max deviation %.3g (tol 1e-10)", worst)};
}

Outcome optimizer_oracle()
{
  double arg_dev = 0.0;
  double gain_spread = 0.0;
  for (int n : kSizes)
    for (double n1 : kNoises)
      for (double n2 : kNoises)
        for (double rbar : rbar_grid()) {
          const ResourceFamily family{n, n1, n2, rbar};
          // unconstrained bias against the raw closed forms
          const auto free = numerical_optimum(family, {-rbar - 5.0, rbar + 5.0});
          arg_dev = std::max(arg_dev, std::abs(free.d_opt - d_N_opt(n, n1, n2, rbar)));
          arg_dev = std::max(arg_dev, std::abs(free.g_opt - g_N_opt(n, n1, n2, rbar)));
          // bias restricted to [-rbar, rbar] against the clamped closed form
          const auto boxed = numerical_optimum(family, {-rbar, rbar});
          arg_dev = std::max(arg_dev, std::abs(boxed.d_opt - optimal_fidelity(family).d_opt));
          if (n > 2) {
            const auto phi = closed_form_phi(family);
            for (double d : {-rbar / 2, 0.0, rbar / 2})
              gain_spread = std::max(
                  gain_spread, std::abs(minimize_gain(phi, d, default_gain_bounds(n)) - g_N_opt(n, n1, n2, rbar)));
          }
        }
  return {arg_dev <= 1e-8 && gain_spread <= 1e-8,
          fmt("argument deviation %.3g, gain spread over d %.3g (tol 1e-8)", arg_dev, gain_spread)};
}

Outcome localization_check()
{
  double worst = 0.0;
  for (int n : {3, 4, 8})
    for (double n1 : {1.0, 1.5})
      for (double n2 : {1.0, 1.5})
        for (double rbar : {0.25, 0.5, 1.0}) {
          const ResourceSpec spec{n, n1, n2, rbar, d_N_opt(n, n1, n2, rbar)};
          worst = std::max(worst, std::abs(localizable_eta(spec, BiasMode::unconstrained) - eta_generalized(spec)));
        }
  return {worst <= 1e-9, fmt("max |eta_loc - eta_N| = %.3g (tol 1e-9)", worst)};
}

Outcome monotone_figure()
{
  cli::SweepConfig config;
  const auto rows = cli::sweep(config);
  const auto steps = static_cast<std::size_t>(config.steps);
  int violations = 0;
  double min_excess = 1.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.rbar > 0.0) {
      min_excess = std::min(min_excess, row.f_opt - 0.5);
      violations += !(row.f_opt > 0.5);
      // strictly increasing in rbar
      violations += !(row.f_opt > rows[i - 1].f_opt);
      // strictly decreasing in N
      if (i >= steps)
        violations += !(row.f_opt < rows[i - steps].f_opt);
    }
  }
  return {violations == 0, fmt("%.0f violations, min F_opt - 1/2 over rbar > 0 = %.3g", violations, min_excess)};
}

// Lowest equal-squeezer fidelity over rbar in (0, 5]: dense scan, then a
// golden-section refinement around the best grid point.
double equal_squeezer_minimum(int n)
{
  const auto f = [n](double rbar) { return fidelity_network_closed_form({n, 1.0, 1.0, rbar, 0.0}).fidelity; };
  const double step = 1e-3;
  double best_r = step;
  double best = f(step);
  for (int k = 2; k <= 5000; ++k) {
    const double v = f(k * step);
    if (v < best) {
      best = v;
      best_r = k * step;
    }
  }
  const double r = minimize_convex(f, {std::max(step, best_r - step), std::min(5.0, best_r + step)});
  return std::min(best, f(r));
}

Outcome equal_squeezer_window()
{
  int n_star = 0;
  bool consistent = true;
  for (int n = 2; n <= 50; ++n) {
    const bool dips = equal_squeezer_minimum(n) < 0.5 - 1e-9;
    if (dips && n_star == 0)
      n_star = n;
    if (!dips && n_star != 0)
      consistent = false;
    if (dips && n <= 20)
      consistent = false;
  }
  const bool ok = consistent && n_star >= 28 && n_star <= 32;
  return {ok, fmt("N* = %.0f (window [28, 32]); F_min(N*) = %.6f", n_star, n_star ? equal_squeezer_minimum(n_star) : 0.0)};
}

Outcome worst_case_asymptotes()
{
  double worst = 0.0;
  bool branch_ok = true;
  for (int n : kSizes)
    for (double noise : {1.0, 1.5, 2.0, 4.0}) {
      const ResourceFamily family{n, noise, noise, 6.0};
      const auto w = worst_case(family);
      const double r1_zero = fidelity_network_closed_form(family.at(-6.0)).fidelity;
      branch_ok = branch_ok && std::abs(w.fidelity_worst - r1_zero) <= 1e-15;
      worst = std::max(worst, std::abs(w.fidelity_worst - 1.0 / std::sqrt(1.0 + n * noise / 2.0)));
    }
  double excess = -1.0;
  for (double n : {1.5, 2.0, 4.0})
    for (double other : {1.0, 1.5, 2.0, 4.0})
      for (double rbar : {0.0, 0.5, 1.0, 2.0, 6.0})
        for (const auto& [n1, n2] : {std::pair{n, other}, std::pair{other, n}}) {
          const auto w = worst_case({2, n1, n2, rbar});
          excess = std::max(excess, w.fidelity_worst - 1.0 / std::sqrt(std::max(n1, n2)));
        }
  return {branch_ok && worst <= 1e-3 && excess <= 0.0,
          fmt("max |F_worst - 1/sqrt(1+Nn/2)| = %.3g (tol 1e-3); max F_worst - 1/sqrt(max n) = %.3g", worst, excess)};
}

Outcome measure_consistency()
{
  double worst = 0.0;
  for (int n : {2, 3, 4, 8})
    for (double n1 : {1.0, 1.5})
      for (double n2 : {1.0, 1.5})
        for (double rbar : {0.0, 0.25, 0.5, 1.0}) {
          const ResourceSpec spec{n, n1, n2, rbar, d_N_opt(n, n1, n2, rbar)};
          const double e_t = entanglement_of_teleportation(eta_generalized(spec));
          const double from_loc = eof_symmetric(localizable_eta(spec, BiasMode::unconstrained));
          worst = std::max(worst, std::abs(eof_localizable(e_t) - from_loc));
        }
  bool increasing = contangle_from_ET(0.0) == 0.0;
  double previous = 0.0;
  for (int k = 1; k <= 999; ++k) {
    const double value = contangle_from_ET(k / 1000.0);
    increasing = increasing && value > previous;
    previous = value;
  }
  const double ratio = contangle_from_ET(1.0 - 1e-6) / contangle_from_ET(0.9);
  return {worst <= 1e-9 && increasing && ratio >= 10.0,
          fmt("max |E_F^loc deviation| = %.3g (tol 1e-9); tau(1-1e-6)/tau(0.9) = %.1f", worst, ratio)};
}

Outcome monte_carlo()
{
  const std::vector<ResourceFamily> families{
      {2, 1.0, 1.0, 0.5}, {3, 1.0, 1.0, 0.5}, {4, 1.5, 1.0, 0.8}, {8, 1.0, 1.5, 1.0}, {20, 2.0, 1.2, 0.3}};
  int worst_hits = 10;
  for (const auto& family : families) {
    const auto best = optimal_fidelity(family);
    const auto spec = family.at(best.d_opt);
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      McConfig config;
      config.samples = 1'000'000;
      config.seed = seed;
      config.spec = spec;
      const auto estimate = simulate(config);
      hits += std::abs(estimate.fidelity_mean - best.fidelity_opt) < 3.0 * estimate.std_error;
    }
    worst_hits = std::min(worst_hits, hits);
  }
  return {worst_hits >= 9, fmt("fewest runs within 3 SE over 5 specs: %.0f/10 (need 9)", worst_hits)};
}

Outcome denominator_adjudication()
{
  double dev_n = 0.0;
  double dev_4 = 0.0;
  for (double n1 : kNoises)
    for (double n2 : kNoises)
      for (double rbar : rbar_grid())
        for (double d : {-rbar, 0.0, rbar}) {
          const ResourceSpec spec{2, n1, n2, rbar, d};
          const double pipeline = teleported_variances(build_resource(spec), {0, 1, 1.0}).p_tot;
          const double two_mode_expected = 2.0 * n1 * std::exp(-2.0 * spec.r1());
          const double over_n = variances_closed_form_network(spec, 1.0).p_tot;
          const double over_4 = over_n * 2.0 / 4.0;
          dev_n = std::max(dev_n, std::abs(pipeline - two_mode_expected) / two_mode_expected);
          dev_n = std::max(dev_n, std::abs(over_n - two_mode_expected) / two_mode_expected);
          dev_4 = std::max(dev_4, std::abs(over_4 - two_mode_expected) / two_mode_expected);
        }
  return {dev_n <= 1e-10 && dev_4 > 1e-10,
          fmt("divisor N: rel deviation %.3g (tol 1e-10); divisor 4: %.3g (must fail)", dev_n, dev_4)};
}

} // namespace

int main()
{
  const std::vector<Criterion> criteria{
      {1, "classical bound at zero squeezing", 1.0, classical_bound},
      {2, "two-mode closed form", 1.0, two_mode_closed_form},
      {3, "network closed form", 5.0, network_closed_form},
      {4, "optimizer oracle", 30.0, optimizer_oracle},
      {5, "localization equals eta_N", 5.0, localization_check},
      {6, "monotone optimal fidelity", 5.0, monotone_figure},
      {7, "equal-squeezer sub-classical window", 10.0, equal_squeezer_window},
      {8, "worst-case asymptotes", 1.0, worst_case_asymptotes},
      {9, "measure consistency", 1.0, measure_consistency},
      {10, "Monte Carlo agreement", 60.0, monte_carlo},
      {11, "momentum-variance divisor", 1.0, denominator_adjudication},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.time_limit_s;
    const bool passed = outcome.passed && in_time;
    failures += !passed;
    std::printf("%s [%2d] %s: %s; %.2f s (limit %.0f s)%s\n", passed ? "PASS" : "FAIL", c.id, c.title.c_str(),
                outcome.detail.c_str(), seconds, c.time_limit_s, in_time ? "" : " TIMEOUT");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
