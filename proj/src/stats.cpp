#include "hdpcg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hdpcg {

namespace {

// Average ranks (1-based) over the pooled sample.
std::vector<double> average_ranks(const std::vector<double>& v) {
  std::size_t n = v.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    double r = 0.5 * (i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double normal_sf(double z) {  // P(Z > z)
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

}  // namespace

MannWhitneyResult mann_whitney_u(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw DomainError("mann_whitney_u: empty sample");
  std::size_t n = a.size(), m = b.size();
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  auto ranks = average_ranks(pooled);
  double ra = 0.0;
  for (std::size_t i = 0; i < n; ++i) ra += ranks[i];
  double u = ra - n * (n + 1) / 2.0;

  // tie correction for the variance
  std::vector<double> sorted(pooled);
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  std::size_t i = 0, nm = n + m;
  while (i < nm) {
    std::size_t j = i;
    while (j + 1 < nm && sorted[j + 1] == sorted[i]) ++j;
    double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  double mu = n * static_cast<double>(m) / 2.0;
  double var = n * static_cast<double>(m) / 12.0 *
               (nm + 1 - tie_term / (static_cast<double>(nm) * (nm - 1)));
  MannWhitneyResult res;
  res.u = u;
  if (var <= 0.0) {
    res.p_two_sided = 1.0;  // all values tied
    return res;
  }
  double z = (u - mu) / std::sqrt(var);
  // continuity correction toward the mean
  double zc = (std::abs(u - mu) - 0.5) / std::sqrt(var);
  if (zc < 0) zc = 0;
  (void)z;
  res.p_two_sided = std::min(1.0, 2.0 * normal_sf(zc));
  return res;
}

std::string delta_magnitude(double delta) {
  double d = std::abs(delta);
  if (d < 0.11) return "negligible";
  if (d < 0.28) return "small";
  if (d < 0.43) return "medium";
  return "large";
}

CliffsDelta cliffs_delta(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw DomainError("cliffs_delta: empty sample");
  // dominance via sorted b with binary searches: O((n+m) log m)
  std::vector<double> sb(b);
  std::sort(sb.begin(), sb.end());
  long long dominance = 0;
  for (double x : a) {
    auto lo = std::lower_bound(sb.begin(), sb.end(), x) - sb.begin();
    auto hi = std::upper_bound(sb.begin(), sb.end(), x) - sb.begin();
    dominance += lo;                                      // x > b_j
    dominance -= static_cast<long long>(sb.size()) - hi;  // x < b_j
  }
  CliffsDelta res;
  res.delta = static_cast<double>(dominance) /
              (static_cast<double>(a.size()) * b.size());
  res.magnitude = delta_magnitude(res.delta);
  return res;
}

std::vector<double> holm_bonferroni(const std::vector<double>& pvalues) {
  std::size_t k = pvalues.size();
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return pvalues[a] < pvalues[b];
  });
  std::vector<double> adj(k);
  double running = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double v = std::min(1.0, (k - i) * pvalues[idx[i]]);
    running = std::max(running, v);  // enforce monotonicity in step-down order
    adj[idx[i]] = running;
  }
  return adj;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DomainError("spearman: length mismatch");
  std::size_t n = x.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace hdpcg
