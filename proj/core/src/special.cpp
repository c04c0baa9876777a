#include "levy/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace levy {

namespace {

constexpr double kShift = 10.0;

void require_positive(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument("digamma-type functions need a finite x > 0");
    }
}

// log(x) - digamma(x) - 1/(2x) for x >= kShift
double digamma_tail(double x) {
    const double z = 1.0 / (x * x);
    return z * (1.0 / 12.0 -
                z * (1.0 / 120.0 -
                     z * (1.0 / 252.0 -
                          z * (1.0 / 240.0 -
                               z * (1.0 / 132.0 - z * (691.0 / 32760.0 - z * (1.0 / 12.0)))))));
}

// trigamma(x) - 1/x for x >= kShift
double trigamma_tail(double x) {
    const double r = 1.0 / x;
    const double z = r * r;
    return z * (0.5 +
                r * (1.0 / 6.0 -
                     z * (1.0 / 30.0 -
                          z * (1.0 / 42.0 -
                               z * (1.0 / 30.0 -
                                    z * (5.0 / 66.0 - z * (691.0 / 2730.0 - z * (7.0 / 6.0))))))));
}

}  // namespace

double digamma(double x) {
    require_positive(x);
    double acc = 0.0;
    while (x < kShift) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    return acc + std::log(x) - 0.5 / x - digamma_tail(x);
}

double trigamma(double x) {
    require_positive(x);
    double acc = 0.0;
    while (x < kShift) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    return acc + 1.0 / x + trigamma_tail(x);
}

double log_minus_digamma(double x) {
    require_positive(x);
    if (x >= kShift) {
        return 0.5 / x + digamma_tail(x);
    }
    // log x - psi(x) = log(x / y) + sum_{j<n} 1/(x+j) + (log y - psi(y)), y = x + n
    double y = x;
    double harmonic = 0.0;
    while (y < kShift) {
        harmonic += 1.0 / y;
        y += 1.0;
    }
    return std::log(x / y) + harmonic + 0.5 / y + digamma_tail(y);
}

double log_minus_digamma_derivative(double x) {
    require_positive(x);
    if (x >= kShift) {
        return -trigamma_tail(x);
    }
    double y = x;
    double squares = 0.0;
    while (y < kShift) {
        squares += 1.0 / (y * y);
        y += 1.0;
    }
    return (1.0 / x - 1.0 / y) - squares - trigamma_tail(y);
}

}  // namespace levy
