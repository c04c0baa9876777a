#include "levy/process.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/expint.hpp>

namespace levy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double gamma_tail_primitive(double alpha, double beta, double x) {
    // d/dx [-alpha E1(x / beta)] = (alpha / x) exp(-x / beta)
    return -alpha * boost::math::expint(1, x / beta);
}

}  // namespace

void PiecewiseConstantLevy::validate() const {
    if (cuts.size() < 2 || rates.size() != cuts.size() - 1) {
        throw std::invalid_argument("piecewise Levy density needs k+1 cutpoints for k rates");
    }
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        if (!(cuts[i] > cuts[i - 1]) || !std::isfinite(cuts[i])) {
            throw std::invalid_argument("piecewise Levy density cutpoints must increase");
        }
    }
    if (cuts.front() < 0.0 && cuts.back() > 0.0) {
        throw std::invalid_argument("piecewise Levy density must stay on one side of 0");
    }
    for (double r : rates) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw std::invalid_argument("piecewise Levy density rates must be finite and >= 0");
        }
    }
}

void validate(const ProcessSpec& process) {
    std::visit([](const auto& p) { p.validate(); }, process);
}

std::string describe(const ProcessSpec& process) {
    std::ostringstream out;
    out.precision(17);
    std::visit(overloaded{
                   [&](const GammaParams& p) { out << "gamma(alpha=" << p.alpha << ", beta=" << p.beta << ")"; },
                   [&](const VGParams& p) {
                       out << "vg(theta=" << p.theta << ", sigma=" << p.sigma << ", nu=" << p.nu << ")";
                   },
                   [&](const PiecewiseConstantLevy& p) { out << "piecewise(" << p.rates.size() << " bins)"; },
               },
               process);
    return out.str();
}

double levy_density(const ProcessSpec& process, double x) {
    return std::visit(
        overloaded{
            [&](const GammaParams& p) { return x > 0.0 ? p.alpha / x * std::exp(-x / p.beta) : 0.0; },
            [&](const VGParams& p) {
                const GammaPair g = vg_to_gamma_pair(p);
                if (x > 0.0) {
                    return g.alpha / x * std::exp(-x / g.beta_plus);
                }
                if (x < 0.0) {
                    return g.alpha / -x * std::exp(x / g.beta_minus);
                }
                return 0.0;
            },
            [&](const PiecewiseConstantLevy& p) {
                if (x < p.cuts.front() || x >= p.cuts.back()) {
                    return 0.0;
                }
                for (std::size_t i = 0; i + 1 < p.cuts.size(); ++i) {
                    if (x < p.cuts[i + 1]) {
                        return p.rates[i];
                    }
                }
                return 0.0;
            },
        },
        process);
}

double levy_antiderivative(const ProcessSpec& process, double x) {
    return std::visit(overloaded{
                          [&](const GammaParams& p) {
                              if (!(x > 0.0)) {
                                  throw std::invalid_argument("Gamma Levy mass is defined for x > 0");
                              }
                              return gamma_tail_primitive(p.alpha, p.beta, x);
                          },
                          [&](const VGParams& p) {
                              const GammaPair g = vg_to_gamma_pair(p);
                              if (x > 0.0) {
                                  return gamma_tail_primitive(g.alpha, g.beta_plus, x);
                              }
                              if (x < 0.0) {
                                  return -gamma_tail_primitive(g.alpha, g.beta_minus, -x);
                              }
                              throw std::invalid_argument("VG Levy mass is infinite near 0");
                          },
                          [&](const PiecewiseConstantLevy& p) {
                              double acc = 0.0;
                              for (std::size_t i = 0; i + 1 < p.cuts.size(); ++i) {
                                  const double lo = p.cuts[i];
                                  const double hi = std::min(p.cuts[i + 1], x);
                                  if (hi <= lo) {
                                      break;
                                  }
                                  acc += p.rates[i] * (hi - lo);
                              }
                              return acc;
                          },
                      },
                      process);
}

DensitySpec truth_density(const ProcessSpec& process, const ReferenceMeasure& measure) {
    validate(process);
    DensitySpec out;
    if (measure.kind() == ReferenceMeasure::Kind::Lebesgue) {
        out.value = [process](double x) { return levy_density(process, x); };
    } else {
        out.value = [process, measure](double x) { return levy_density(process, x) / measure.density(x); };
    }
    out.levy_antiderivative = [process](double x) { return levy_antiderivative(process, x); };
    return out;
}

namespace {

JumpSet simulate_piecewise(const PiecewiseConstantLevy& p, double horizon, RngStream rng) {
    JumpSet out;
    out.horizon = horizon;
    for (std::size_t i = 0; i < p.rates.size(); ++i) {
        const double lo = p.cuts[i];
        const double width = p.cuts[i + 1] - lo;
        const double rate = p.rates[i] * width;
        if (rate <= 0.0) {
            continue;
        }
        double t = rng.exponential() / rate;
        while (t <= horizon) {
            out.jumps.push_back({t, lo + width * rng.uniform()});
            t += rng.exponential() / rate;
        }
    }
    return out;
}

}  // namespace

JumpSet simulate_jumps(const ProcessSpec& process, double horizon, std::size_t n_terms, RngStream rng) {
    validate(process);
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("horizon must be positive");
    }
    return std::visit(overloaded{
                          [&](const GammaParams& p) { return simulate_gamma_jumps(p, horizon, n_terms, rng); },
                          [&](const VGParams& p) { return simulate_vg_difference(p, horizon, n_terms, rng); },
                          [&](const PiecewiseConstantLevy& p) { return simulate_piecewise(p, horizon, rng); },
                      },
                      process);
}

IncrementSeries simulate_increments(const ProcessSpec& process, double horizon, std::size_t n,
                                    RngStream rng) {
    validate(process);
    return std::visit(
        overloaded{
            [&](const GammaParams& p) { return simulate_gamma_skeleton(p, horizon, n, rng); },
            [&](const VGParams& p) { return simulate_vg_timechange(p, horizon, n, rng); },
            [&](const PiecewiseConstantLevy& p) {
                if (!(horizon > 0.0)) {
                    throw std::invalid_argument("horizon must be positive");
                }
                return jumps_to_increments(simulate_piecewise(p, horizon, rng), n);
            },
        },
        process);
}

}  // namespace levy
