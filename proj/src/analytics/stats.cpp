#include "exmine/analytics/stats.hpp"

#include <cmath>
#include <limits>
#include <map>

#include <boost/math/distributions/students_t.hpp>

#include "exmine/util/error.hpp"

namespace exmine {
namespace {

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// unbiased (n-1) sample variance
double variance(const std::vector<double>& v, double m) {
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

StatTestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b,
                            const std::string& name_a, const std::string& name_b) {
  if (a.size() < 2 || b.size() < 2)
    throw ValidationError("welch_t_test requires at least 2 observations per sample");

  StatTestResult r;
  r.group_a = name_a;
  r.group_b = name_b;
  r.n_a = a.size();
  r.n_b = b.size();
  r.mean_a = mean(a);
  r.mean_b = mean(b);

  double na = static_cast<double>(a.size());
  double nb = static_cast<double>(b.size());
  double va = variance(a, r.mean_a);
  double vb = variance(b, r.mean_b);

  if (va == 0.0 && vb == 0.0) {
    r.df = na + nb - 2.0;
    if (r.mean_a == r.mean_b) {
      r.t = 0.0;
      r.p_value = 1.0;
    } else {
      r.t = std::copysign(std::numeric_limits<double>::infinity(), r.mean_a - r.mean_b);
      r.p_value = 0.0;
    }
    return r;
  }

  double sa = va / na;
  double sb = vb / nb;
  r.t = (r.mean_a - r.mean_b) / std::sqrt(sa + sb);
  r.df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));

  boost::math::students_t dist(r.df);
  r.p_value = 2.0 * boost::math::cdf(dist, -std::fabs(r.t));
  return r;
}

KappaResult cohens_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size()) throw ValidationError("cohens_kappa requires equal-length lists");
  if (a.empty()) throw ValidationError("cohens_kappa requires at least one item");

  double n = static_cast<double>(a.size());
  size_t agree = 0;
  std::map<std::string, size_t> count_a, count_b;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) ++agree;
    count_a[a[i]]++;
    count_b[b[i]]++;
  }

  KappaResult r;
  r.observed_agreement = static_cast<double>(agree) / n;
  for (const auto& [cat, ca] : count_a) {
    auto it = count_b.find(cat);
    if (it == count_b.end()) continue;
    r.expected_agreement += (static_cast<double>(ca) / n) * (static_cast<double>(it->second) / n);
  }
  if (r.expected_agreement == 1.0) {
    r.kappa = 1.0;
    return r;
  }
  r.kappa = (r.observed_agreement - r.expected_agreement) / (1.0 - r.expected_agreement);
  return r;
}

}  // namespace exmine
