#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cvtele/cli.hpp"
#include "cvtele/localization.hpp"
#include "cvtele/montecarlo.hpp"
#include "cvtele/optimizer.hpp"
#include "cvtele/teleportation.hpp"

namespace cvtele::cli {

namespace {

const std::vector<int> kNetworkSizes{2, 3, 4, 8, 20, 50};
const std::vector<double> kNoises{1.0, 1.5, 2.0};

std::vector<double> rbar_grid()
{
  std::vector<double> r;
  for (int i = 0; i <= 8; ++i)
    r.push_back(0.25 * i);
  return r;
}

std::string point(const ResourceSpec& s, std::optional<double> g = std::nullopt)
{
  std::ostringstream os;
  os << "N=" << s.modes << " n1=" << s.n1 << " n2=" << s.n2 << " rbar=" << s.rbar << " d=" << s.d;
  if (g)
    os << " g=" << *g;
  return os.str();
}

class Tracker
{
public:
  Tracker(std::string name, double tolerance) : result_{std::move(name), 0.0, tolerance, true, {}} {}

  void record(double deviation, const std::string& where)
  {
    if (!(deviation <= result_.max_deviation) || std::isnan(deviation)) {
      result_.max_deviation = std::isnan(deviation) ? INFINITY : deviation;
      result_.worst_point = where;
    }
  }

  SuiteResult finish()
  {
    result_.passed = result_.max_deviation <= result_.tolerance;
    return result_;
  }

private:
  SuiteResult result_;
};

double relative(double a, double b)
{
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

SuiteResult closed_form_vs_pipeline(bool inject_fault)
{
  Tracker t("variances: closed form vs covariance matrix", 1e-10);
  for (int n : kNetworkSizes)
    for (double n1 : kNoises)
      for (double n2 : kNoises)
        for (double rbar : rbar_grid())
          for (double d : {-rbar / 2, 0.0, rbar / 2}) {
            const ResourceSpec spec{n, n1, n2, rbar, d};
            const auto sigma = build_resource(spec);
            for (double g : {0.0, 0.5, 1.0}) {
              const auto cm = teleported_variances(sigma, {0, n - 1, g});
              auto cf = variances_closed_form_network(spec, g);
              if (inject_fault && n == 3 && rbar == 1.0)
                cf.p_tot += 1e-6;
              t.record(std::max(relative(cf.x_rel, cm.x_rel), relative(cf.p_tot, cm.p_tot)), point(spec, g));
            }
          }
  return t.finish();
}

SuiteResult optimum_vs_eta(void)
{
  Tracker t("optimal fidelity: pipeline vs 1/(1+eta_N)", 1e-10);
  for (int n : kNetworkSizes)
    for (double n1 : kNoises)
      for (double n2 : kNoises)
        for (double rbar : rbar_grid()) {
          const ResourceFamily family{n, n1, n2, rbar};
          const auto best = optimal_fidelity(family, BiasMode::unconstrained);
          const auto spec = family.at(best.d_opt);
          const auto outcome = fidelity_network(spec, {0, 1, best.g_opt}, BiasMode::unconstrained);
          t.record(std::abs(outcome.fidelity - 1.0 / (1.0 + eta_generalized(spec))), point(spec));
        }
  return t.finish();
}

SuiteResult numerical_vs_closed_form()
{
  Tracker t("optimizer: numerical (d, g) vs closed form", 1e-8);
  for (int n : kNetworkSizes)
    for (double n1 : kNoises)
      for (double n2 : kNoises)
        for (double rbar : rbar_grid()) {
          const ResourceFamily family{n, n1, n2, rbar};
          const auto closed = optimal_fidelity(family, BiasMode::unconstrained);
          const auto numeric = numerical_optimum(family, {-rbar - 4.0, rbar + 4.0});
          double dev = std::abs(numeric.d_opt - closed.d_opt);
          if (n > 2)
            dev = std::max(dev, std::abs(numeric.g_opt - closed.g_opt));
          dev = std::max(dev, std::abs(numeric.fidelity_opt - closed.fidelity_opt));
          t.record(dev, point(family.at(closed.d_opt)));
        }
  return t.finish();
}

SuiteResult localization_vs_eta()
{
  Tracker t("localization: localized eta vs eta_N", 1e-9);
  for (int n : {3, 4, 8})
    for (double n1 : {1.0, 1.5})
      for (double n2 : {1.0, 1.5})
        for (double rbar : {0.25, 0.5, 1.0}) {
          const ResourceFamily family{n, n1, n2, rbar};
          const auto best = optimal_fidelity(family);
          const auto spec = family.at(best.d_opt);
          t.record(std::abs(localizable_eta(spec) - eta_generalized(spec)), point(spec));
        }
  return t.finish();
}

SuiteResult two_mode_denominator()
{
  Tracker t("two-mode p variance equals 2 n1 e^{-2 r1}", 1e-10);
  for (double n1 : kNoises)
    for (double n2 : kNoises)
      for (double rbar : rbar_grid())
        for (double d : {-rbar, 0.0, rbar}) {
          const ResourceSpec spec{2, n1, n2, rbar, d};
          const auto v = teleported_variances(build_resource(spec), {0, 1, 1.0});
          t.record(relative(v.p_tot, 2.0 * n1 * std::exp(-2.0 * spec.r1())), point(spec));
        }
  return t.finish();
}

SuiteResult monte_carlo(const VerifyConfig& config)
{
  Tracker t("Monte Carlo: |F_mc - F| in standard errors", 3.0);
  const std::vector<ResourceFamily> families{
      {2, 1.0, 1.0, 0.5}, {3, 1.0, 1.0, 0.5}, {4, 1.5, 1.0, 0.8}, {8, 1.0, 1.5, 1.0}, {3, 2.0, 1.2, 0.3}};
  std::uint64_t k = 0;
  for (const auto& family : families) {
    const auto best = optimal_fidelity(family);
    const auto spec = family.at(best.d_opt);
    McConfig mc;
    mc.samples = config.samples;
    mc.seed = config.seed + 1000 * k++;
    mc.spec = spec;
    const auto est = simulate(mc);
    const double analytic = fidelity_network(spec).fidelity;
    t.record(std::abs(est.fidelity_mean - analytic) / est.std_error, point(spec));
  }
  return t.finish();
}

} // namespace

std::vector<SuiteResult> verify(const VerifyConfig& config)
{
  return {closed_form_vs_pipeline(config.inject_fault),
          optimum_vs_eta(),
          numerical_vs_closed_form(),
          localization_vs_eta(),
          two_mode_denominator(),
          monte_carlo(config)};
}

} // namespace cvtele::cli
