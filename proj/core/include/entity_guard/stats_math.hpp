// Numeric building blocks for the analytics module: moments, average
// ranks, the product-moment coefficient, and two-sided p-values from the
// Student t distribution via the regularized incomplete beta function.
#pragma once

#include <span>
#include <vector>

namespace entity_guard::stats {

double mean(std::span<const double> xs);
double stddev_population(std::span<const double> xs);  // divide by N
double stddev_sample(std::span<const double> xs);      // divide by N-1

// Average ranks, 1-based; ties share the mean of their rank positions.
std::vector<double> average_ranks(std::span<const double> xs);

// Product-moment coefficient. Requires nonzero variance on both sides;
// callers guard (see analytics::correlate).
double pearson(std::span<const double> xs, std::span<const double> ys);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// Two-sided tail probability of |T| >= |t| for T ~ Student-t(df).
double student_t_two_sided_p(double t, double df);

// p-value of a correlation coefficient under the t transform
// t = r * sqrt((n-2) / (1-r^2)) with n-2 degrees of freedom.
double correlation_p_value(double r, std::size_t n);

}  // namespace entity_guard::stats
