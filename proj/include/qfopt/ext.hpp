#pragma once

#include "qfopt/types.hpp"

namespace qfopt {

// Augmented Mincer-Zarnowitz test: per (tau, h) regression of y on
// (1, forecast, z) with moments alpha, beta-1, and each gamma component.
TestResult amz_test(const AugmentedSample& sample, const MbbConfig& cfg);

// Multivariate Mincer-Zarnowitz test across G series; contributions are
// additionally keyed by series. Bootstrap resamples whole multivariate rows.
TestResult mmz_test(const MultiSeriesSample& sample, const MbbConfig& cfg);

// Stacked moment vectors, level-major per (k,h): (alpha, beta-1, gamma...)
// for the augmented test and per-series (alpha, beta-1) for the multivariate
// test.
Vector amz_moment_vector(const AugmentedSample& sample);
Vector mmz_moment_vector(const MultiSeriesSample& sample);

}  // namespace qfopt
