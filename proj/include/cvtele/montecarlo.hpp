#pragma once

#include <cstdint>

#include "cvtele/gaussian.hpp"
#include "cvtele/teleportation.hpp"

namespace cvtele {

// Sampling estimator of the teleportation variances. Vacuum quadratures are
// drawn as unit normals, scaled by the squeezing and noise of each input,
// and pushed through the N-splitter; x_rel and p_tot are then formed per
// sample. Means are zero by construction, so variances are estimated by raw
// second moments.
//
// Samples are split into independent shards. Shard s draws from an
// mt19937_64 seeded with seed_seq{seed, s}; normals come from Box-Muller.
// Shards run in parallel and are merged in index order, so results depend
// on (seed, samples, shards) only, never on the thread count.

struct McConfig
{
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  ResourceSpec spec;
  ProtocolParams params; //!< gain nullopt selects g_N^opt
  BiasMode mode = BiasMode::clamped;
  unsigned shards = 64;  //!< reduced to `samples` when fewer
  unsigned threads = 0;  //!< 0: hardware concurrency
};

struct McEstimate
{
  double fidelity_mean;
  double std_error;      //!< delete-one-shard jackknife
  double var_x_rel_hat;
  double var_p_tot_hat;
};

McEstimate simulate(const McConfig& config);

struct VarianceEstimate
{
  double value;
  double std_error; //!< from the spread of the per-shard means
};

//! Sampled u^T sigma u for the built resource; `coefficients` has one entry
//! per output quadrature (x1, p1, ..., xN, pN).
VarianceEstimate variance_of_form(const Vector& coefficients, const ResourceSpec& spec, std::uint64_t samples,
                                  std::uint64_t seed, BiasMode mode = BiasMode::clamped, unsigned shards = 64);

} // namespace cvtele
