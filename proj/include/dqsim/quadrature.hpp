#pragma once

// Small numerical toolbox: compensated summation, Gauss-Legendre node
// generation, and an adaptive Gauss-Kronrod integrator.

#include <cmath>
#include <functional>
#include <vector>

namespace dqsim {

// Neumaier variant of Kahan summation; keeps reductions stable to ~1 ulp so
// seeded runs reproduce bit-identically.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) noexcept {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const noexcept { return sum + carry; }
};

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Newton iteration on the Legendre recurrence; symmetry is exact by
// construction. Throws std::invalid_argument for n < 1.
GaussLegendreRule gauss_legendre(int n);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Globally adaptive Gauss(7)/Kronrod(15) integration of f over [a, b].
// Bisects the interval with the largest error estimate until
// |error| <= max(abs_tol, rel_tol * |value|) or the interval budget runs
// out, in which case an AccuracyError carrying the best estimate is thrown.
QuadratureResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_intervals = 4000);

} // namespace dqsim
