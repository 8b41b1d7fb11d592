#pragma once

namespace rsloss {

double normal_pdf(double z);
double normal_cdf(double z);
/// Phi^{-1}(p) for 0 < p < 1.
double normal_quantile(double p);
/// z_alpha = Phi^{-1}(1 - alpha), the one-sided upper quantile.
double normal_upper_quantile(double alpha);

}  // namespace rsloss
