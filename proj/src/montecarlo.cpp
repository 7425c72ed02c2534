#include "cvtele/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "cvtele/errors.hpp"
#include "cvtele/optimizer.hpp"

namespace cvtele {

namespace {

struct ShardMoments
{
  std::uint64_t count = 0;
  std::vector<double> sum_sq; // one per linear form
};

class NormalStream
{
public:
  NormalStream(std::uint64_t seed, std::uint64_t shard)
  {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32)};
    engine_.seed(seq);
  }

  // Box-Muller; fills `out` (even length) with independent unit normals.
  void fill(Vector& out)
  {
    for (Eigen::Index i = 0; i + 1 < out.size(); i += 2) {
      const double u1 = uniform_open_closed();
      const double u2 = uniform_open_closed();
      const double radius = std::sqrt(-2.0 * std::log(u1));
      const double angle = 2.0 * std::numbers::pi * u2;
      out(i) = radius * std::cos(angle);
      out(i + 1) = radius * std::sin(angle);
    }
  }

private:
  // 53 random bits mapped to (0, 1]
  double uniform_open_closed() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  std::mt19937_64 engine_;
};

Vector input_scales(const ResourceSpec& spec)
{
  const int n = spec.modes;
  Vector scale(2 * n);
  scale(0) = std::sqrt(spec.n1) * std::exp(spec.r1());
  scale(1) = std::sqrt(spec.n1) * std::exp(-spec.r1());
  for (int m = 1; m < n; ++m) {
    scale(2 * m) = std::sqrt(spec.n2) * std::exp(-spec.r2());
    scale(2 * m + 1) = std::sqrt(spec.n2) * std::exp(spec.r2());
  }
  return scale;
}

std::vector<ShardMoments> sample_forms(const ResourceSpec& spec, const Matrix& forms, std::uint64_t samples,
                                       std::uint64_t seed, unsigned shards, unsigned threads)
{
  if (samples < 2)
    throw InvalidArgument("Monte Carlo: need at least 2 samples");
  const unsigned n_shards = static_cast<unsigned>(std::min<std::uint64_t>(std::max(shards, 2u), samples));
  // forms act on the splitter output, so fold the splitter in once
  const Matrix on_inputs = forms * n_splitter(spec.modes).matrix();
  const Vector scale = input_scales(spec);
  const auto n_forms = forms.rows();

  std::vector<ShardMoments> result(n_shards);
  std::atomic<unsigned> next{0};

  const auto worker = [&]() {
    const auto dim = on_inputs.cols();
    Vector z(dim);
    Vector in(dim);
    Vector values(n_forms);
    for (unsigned s = next++; s < n_shards; s = next++) {
      const std::uint64_t count = samples / n_shards + (s < samples % n_shards ? 1 : 0);
      NormalStream stream(seed, s);
      std::vector<double> acc(static_cast<std::size_t>(n_forms), 0.0);
      for (std::uint64_t i = 0; i < count; ++i) {
        stream.fill(z);
        in = scale.cwiseProduct(z);
        values.noalias() = on_inputs * in;
        for (Eigen::Index f = 0; f < n_forms; ++f)
          acc[static_cast<std::size_t>(f)] += values(f) * values(f);
      }
      result[s] = {count, std::move(acc)};
    }
  };

  unsigned n_threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  n_threads = std::min(n_threads, n_shards);
  {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t)
      pool.emplace_back(worker);
  }
  return result;
}

// Leave-one-shard-out estimates of `statistic(second moments)`.
template <class Statistic>
std::pair<double, double> jackknife(const std::vector<ShardMoments>& shards, Statistic&& statistic)
{
  const std::size_t n_forms = shards.front().sum_sq.size();
  std::vector<double> total(n_forms, 0.0);
  std::uint64_t count = 0;
  for (const auto& s : shards) {
    count += s.count;
    for (std::size_t f = 0; f < n_forms; ++f)
      total[f] += s.sum_sq[f];
  }
  std::vector<double> moments(n_forms);
  for (std::size_t f = 0; f < n_forms; ++f)
    moments[f] = total[f] / static_cast<double>(count);
  const double full = statistic(moments);

  const double b = static_cast<double>(shards.size());
  std::vector<double> partial;
  partial.reserve(shards.size());
  for (const auto& s : shards) {
    for (std::size_t f = 0; f < n_forms; ++f)
      moments[f] = (total[f] - s.sum_sq[f]) / static_cast<double>(count - s.count);
    partial.push_back(statistic(moments));
  }
  double mean = 0.0;
  for (double p : partial)
    mean += p;
  mean /= b;
  double spread = 0.0;
  for (double p : partial)
    spread += (p - mean) * (p - mean);
  return {full, std::sqrt((b - 1.0) / b * spread)};
}

} // namespace

McEstimate simulate(const McConfig& config)
{
  const auto& spec = config.spec;
  validate(spec, config.mode);
  const auto& params = config.params;
  const int n = spec.modes;
  if (params.sender < 0 || params.sender >= n || params.receiver < 0 || params.receiver >= n ||
      params.sender == params.receiver)
    throw InvalidArgument("simulate: invalid sender/receiver");
  const double g = params.gain ? *params.gain : g_N_opt(n, spec.n1, spec.n2, spec.rbar);

  Matrix forms = Matrix::Zero(2, 2 * n);
  forms(0, 2 * params.sender) = 1.0;
  forms(0, 2 * params.receiver) = -1.0;
  for (int j = 0; j < n; ++j)
    forms(1, 2 * j + 1) = (j == params.sender || j == params.receiver) ? 1.0 : g;

  const auto shards = sample_forms(spec, forms, config.samples, config.seed, config.shards, config.threads);
  const auto [fidelity, error] = jackknife(shards, [](const std::vector<double>& m) {
    return fidelity_from_variances(m[0], m[1]);
  });
  const double vx = jackknife(shards, [](const std::vector<double>& m) { return m[0]; }).first;
  const double vp = jackknife(shards, [](const std::vector<double>& m) { return m[1]; }).first;
  return {fidelity, error, vx, vp};
}

VarianceEstimate variance_of_form(const Vector& coefficients, const ResourceSpec& spec, std::uint64_t samples,
                                  std::uint64_t seed, BiasMode mode, unsigned shards)
{
  validate(spec, mode);
  if (coefficients.size() != 2 * spec.modes)
    throw DimensionMismatch("variance_of_form: need one coefficient per output quadrature");
  const Matrix forms = coefficients.transpose();
  const auto moments = sample_forms(spec, forms, samples, seed, shards, 0);
  const auto [value, error] = jackknife(moments, [](const std::vector<double>& m) { return m[0]; });
  return {value, error};
}

} // namespace cvtele
