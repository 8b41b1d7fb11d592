#include "rsloss/special.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rsloss/errors.hpp"

namespace rsloss {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream os;
        os << "normal_quantile: probability must lie in (0, 1), got " << p;
        throw DomainError(os.str());
    }
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double normal_upper_quantile(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "normal_upper_quantile: alpha must lie in (0, 1), got " << alpha;
        throw DomainError(os.str());
    }
    return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * alpha);
}

}  // namespace rsloss
