#include "hcat/limits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hcat/error.hpp"

namespace hcat {

LimitEstimate richardson_limit(const std::function<double(double)>& sample, double h0,
                               const LimitOptions& opts) {
    if (!(h0 > 0.0) || !std::isfinite(h0)) fail(ErrorCode::InvalidArgument, "limit step must be positive");
    std::vector<std::vector<double>> table;
    std::vector<double> steps;
    std::vector<double> diag;
    double h = h0;
    for (int level = 0; level <= opts.max_halvings; ++level, h *= 0.5) {
        double a = sample(h);
        if (!std::isfinite(a)) fail(ErrorCode::NoConvergence, "non-finite sample in limit");
        steps.push_back(h);
        std::vector<double> row{a};
        int depth = std::min<int>(level, opts.max_depth);
        for (int j = 1; j <= depth; ++j) {
            double p = opts.first_order + (j - 1) * opts.order_step;
            double f = std::pow(2.0, p);
            row.push_back(row[j - 1] + (row[j - 1] - table.back()[j - 1]) / (f - 1.0));
        }
        table.push_back(row);
        diag.push_back(row.back());
        if (level < opts.halvings) continue;
        double last = diag[diag.size() - 1];
        double prev = diag[diag.size() - 2];
        double gap = std::fabs(last - prev);
        double tol = std::max(opts.rel_tol * (1.0 + std::fabs(last)), 64.0 * opts.noise / steps.back());
        if (gap < tol) {
            LimitEstimate out;
            out.value = last;
            out.error_bound = std::max(gap, 1e-15 * (1.0 + std::fabs(last)));
            out.steps_used = steps;
            return out;
        }
    }
    std::ostringstream msg;
    msg << "extrapolants disagree after " << steps.size() << " steps (last "
        << diag.back() << ", previous " << diag[diag.size() - 2] << ")";
    fail(ErrorCode::NoConvergence, msg.str());
}

}  // namespace hcat
