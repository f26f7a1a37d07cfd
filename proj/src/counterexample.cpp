#include "hcat/counterexample.hpp"

#include <algorithm>
#include <cmath>

namespace hcat {

double lip_at_zero(double (*f)(double), int levels) {
    double best = 0;
    double f0 = f(0.0);
    for (int k = 1; k <= levels; ++k) {
        double h = std::ldexp(1.0, -k);
        best = std::max({best, std::fabs(f(h) - f0) / h, std::fabs(f(-h) - f0) / h});
    }
    return best;
}

LipCounterexample lip_counterexample() {
    LipCounterexample r;
    r.lip_f = lip_at_zero([](double x) { return std::fabs(x); });
    r.lip_g = lip_at_zero([](double x) { return x; });
    r.lip_sum = lip_at_zero([](double x) { return std::fabs(x) + x; });
    r.lip_diff = lip_at_zero([](double x) { return std::fabs(x) - x; });
    r.lhs = r.lip_sum * r.lip_sum + r.lip_diff * r.lip_diff;
    r.rhs = 2 * (r.lip_f * r.lip_f + r.lip_g * r.lip_g);
    return r;
}

}  // namespace hcat
