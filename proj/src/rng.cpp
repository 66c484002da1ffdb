#include "besovlab/rng.hpp"

#include <numbers>

namespace besovlab {

std::uint64_t Xoshiro256::poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) {
        // Knuth product method.
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        return k;
    }
    // Split recursively; counts stay modest in this project.
    const double half = mean / 2.0;
    return poisson(half) + poisson(mean - half);
}

double sample_positive_stable(double alpha, Xoshiro256& rng) {
    // Kanter: for alpha in (0,1), theta ~ U(0,pi), E ~ Exp(1),
    //   A(theta) = sin(alpha theta)^{alpha/(1-alpha)} sin((1-alpha) theta)
    //              / sin(theta)^{1/(1-alpha)},
    //   W = (A/E)^{(1-alpha)/alpha} has E exp(-l W) = exp(-l^alpha).
    const double theta = rng.uniform() * std::numbers::pi;
    const double e = rng.exponential();
    const double one_m = 1.0 - alpha;
    const double log_a = (alpha / one_m) * std::log(std::sin(alpha * theta)) +
                         std::log(std::sin(one_m * theta)) -
                         (1.0 / one_m) * std::log(std::sin(theta));
    return std::exp((one_m / alpha) * (log_a - std::log(e)));
}

double sample_sym_stable(double alpha, Xoshiro256& rng) {
    const double theta = rng.uniform(-0.5, 0.5) * std::numbers::pi;
    const double e = rng.exponential();
    if (std::abs(alpha - 1.0) < 1e-12) {
        return std::tan(theta);  // standard Cauchy
    }
    const double at = alpha * theta;
    return (std::sin(at) / std::pow(std::cos(theta), 1.0 / alpha)) *
           std::pow(std::cos(theta - at) / e, (1.0 - alpha) / alpha);
}

}  // namespace besovlab
