#pragma once

#include <functional>

namespace heis {

struct QuadResult {
    double value = 0;
    double error = 0;
    long evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7,15) integration on [a, b].
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_intervals = 20000);

}  // namespace heis
