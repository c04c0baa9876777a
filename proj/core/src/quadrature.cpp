#include "levy/quadrature.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "levy/errors.hpp"

namespace levy {

double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol) {
    if (lo == hi) {
        return 0.0;
    }
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    constexpr double kRelTol = 1e-10;
    double error = 0.0;
    // one panel first: boost only knows relative tolerances and recurses to
    // full depth on integrals that are zero up to rounding
    double value = GK::integrate(f, lo, hi, 0, kRelTol, &error);
    if (!(error <= abs_tol + kRelTol * std::abs(value))) {
        constexpr unsigned kMaxDepth = 15;
        value = GK::integrate(f, lo, hi, kMaxDepth, kRelTol, &error);
    }
    if (!std::isfinite(value) || error > abs_tol + kRelTol * std::abs(value)) {
        std::ostringstream msg;
        msg << "quadrature did not converge on [" << lo << ", " << hi << "]: error estimate "
            << error << ", value " << value;
        throw NumericFailure(msg.str(), lo, hi, error);
    }
    return value;
}

}  // namespace levy
