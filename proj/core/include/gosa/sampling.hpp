#pragma once

#include <Eigen/Core>

#include "gosa/problem.hpp"
#include "gosa/rng.hpp"

namespace gosa {

/// N x d matrix of independent uniforms over the box. Deterministic
/// given the seed.
Eigen::MatrixXd uniform_sample(const BoxDomain& domain, Eigen::Index n, Seed seed);

/// Latin hypercube design with maximin improvement: one point per
/// axis-aligned stratum of width (upper-lower)/N in every dimension,
/// followed by opt_iters random within-column pair swaps accepted only
/// when they strictly increase the minimum pairwise distance (measured
/// in the unit hypercube, so wide dimensions do not dominate).
Eigen::MatrixXd lhs_maximin(const BoxDomain& domain, Eigen::Index n, Seed seed,
                            int opt_iters = 1000);

/// The ceil(alpha*n)-th order statistic: the smallest v such that at
/// least ceil(alpha*n) entries are <= v. Pure order statistic, no
/// interpolation, so it commutes exactly with monotone transforms.
double empirical_quantile(const Eigen::VectorXd& values, double alpha);

} // namespace gosa
