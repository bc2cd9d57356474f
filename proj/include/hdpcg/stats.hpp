#pragma once
// Nonparametric statistics for cross-method comparison: Mann-Whitney U with
// tie correction, Cliff's delta with magnitude labels, Holm-Bonferroni
// step-down adjustment, and Spearman rank correlation.

#include <string>
#include <vector>

#include "hdpcg/core.hpp"

namespace hdpcg {

struct MannWhitneyResult {
  double u = 0.0;
  double p_two_sided = 1.0;  // normal approximation with tie correction
};

MannWhitneyResult mann_whitney_u(const std::vector<double>& a,
                                 const std::vector<double>& b);

struct CliffsDelta {
  double delta = 0.0;
  std::string magnitude;  // negligible | small | medium | large
};

CliffsDelta cliffs_delta(const std::vector<double>& a,
                         const std::vector<double>& b);
std::string delta_magnitude(double delta);

// Holm step-down adjustment; output order matches the input order.
std::vector<double> holm_bonferroni(const std::vector<double>& pvalues);

// Spearman rank correlation with average ranks for ties; NaN for < 2 points.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hdpcg
