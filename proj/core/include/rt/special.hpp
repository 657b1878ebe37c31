#pragma once

namespace rt {

/// log(erfc(x)) for x >= 0 without underflow. erfc itself becomes subnormal
/// near x = 26.5; the log-survival transform needs finite, ordered values for
/// arguments well beyond that.
double log_erfc(double x);

/// Regularized lower incomplete gamma P(a, x). Series for x < a + 1,
/// continued fraction otherwise.
double reg_lower_gamma(double a, double x);

/// Standard normal density and CDF helpers.
double normal_pdf(double x, double mean, double sigma);
double log_normal_pdf(double x, double mean, double sigma);

}  // namespace rt
