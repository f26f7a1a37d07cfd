#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace hcat {

struct LimitEstimate {
    double value = 0.0;
    double error_bound = 0.0;
    std::vector<double> steps_used;
    std::optional<double> closed_form;  // exact value when the space provides one
};

struct LimitOptions {
    int halvings = 6;        // geometric steps h0, h0/2, ..., h0/2^halvings
    int max_halvings = 16;   // keep halving while the extrapolants disagree
    int first_order = 1;     // error expansion h^p, h^(p+q), ...
    int order_step = 1;
    int max_depth = 4;
    double rel_tol = 1e-9;
    // Absolute rounding error of the quantity whose difference quotient is
    // sampled; the acceptance test never asks for more than 64 noise / h.
    double noise = 0.0;
};

// Estimates lim_{h->0+} sample(h) by Richardson extrapolation on a
// geometric sequence of steps. Throws NoConvergence when the last two
// extrapolants still disagree after max_halvings.
LimitEstimate richardson_limit(const std::function<double(double)>& sample, double h0,
                               const LimitOptions& opts = {});

}  // namespace hcat
