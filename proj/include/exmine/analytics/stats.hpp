#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace exmine {

struct StatTestResult {
  std::string group_a;
  std::string group_b;
  size_t n_a = 0;
  size_t n_b = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
};

// Welch's unequal-variance t statistic with Welch-Satterthwaite degrees of
// freedom and a two-sided p-value. Requires >= 2 observations per sample.
// When both sample variances are zero the test degenerates: p = 1 for equal
// means, p = 0 (t = +/-inf) otherwise, with df = n_a + n_b - 2.
StatTestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b,
                            const std::string& name_a = "a", const std::string& name_b = "b");

struct KappaResult {
  double observed_agreement = 0.0;
  double expected_agreement = 0.0;
  double kappa = 0.0;
};

// Cohen's kappa over two equal-length categorical label lists; expected
// agreement from the raters' marginal frequencies. The fully degenerate
// p_e = 1 structure (both raters constant on one shared category) yields
// kappa = 1.
KappaResult cohens_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace exmine
