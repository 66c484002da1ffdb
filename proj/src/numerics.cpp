#include "besovlab/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace besovlab {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size() && x.size() >= 2, "fit_line: need >= 2 points");
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit fit;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, int max_depth) {
    QuadratureResult out;
    out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, max_depth, rel_tol, &out.error);
    return out;
}

QuadratureResult integrate_to_inf(const std::function<double(double)>& f, double a,
                                  double rel_tol) {
    // t = a + u/(1-u), dt = du/(1-u)^2
    auto g = [&](double u) {
        const double om = 1.0 - u;
        const double t = a + u / om;
        return f(t) / (om * om);
    };
    QuadratureResult out;
    out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        g, 0.0, 1.0, 15, rel_tol, &out.error);
    return out;
}

}  // namespace besovlab
