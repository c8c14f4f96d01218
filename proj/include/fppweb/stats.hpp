#pragma once

#include <functional>
#include <span>

namespace fppweb {

/// sup |F_a - F_b| between the two empirical CDFs. Both samples nonempty.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// sup |F_emp - cdf| for a continuous reference CDF.
double ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);

double standard_normal_cdf(double x);

}  // namespace fppweb
