#pragma once

namespace hcat {

// lip-based quadratic form on (R, |.|, delta_0) with f = |x|, g = x.
struct LipCounterexample {
    double lip_f = 0;
    double lip_g = 0;
    double lip_sum = 0;   // lip (f + g)(0)
    double lip_diff = 0;  // lip (f - g)(0)
    double lhs = 0;       // lip(f+g)^2 + lip(f-g)^2
    double rhs = 0;       // 2 (lip f^2 + lip g^2)
    // Same identity for the derivation norm: every derivation on delta_0
    // vanishes, so both sides are 0.
    double derivation_lhs = 0;
    double derivation_rhs = 0;
};

// Local Lipschitz constant at 0 as the sup of |f(h) - f(0)| / |h| over
// dyadic h = +-2^-k, k = 1..levels.
double lip_at_zero(double (*f)(double), int levels = 40);

LipCounterexample lip_counterexample();

}  // namespace hcat
