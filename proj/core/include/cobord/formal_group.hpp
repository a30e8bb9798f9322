#ifndef COBORD_FORMAL_GROUP_HPP
#define COBORD_FORMAL_GROUP_HPP

#include "cobord/hopf.hpp"
#include "cobord/series.hpp"

#include <map>
#include <utility>

namespace cobord {

// Coefficient table of a formal group law f(x1,x2) = x1 + x2 + sum
// alpha_ij x1^i x2^j. Entries are stored for i <= j (the law is
// commutative); complete for all i + j - 1 <= truncation.
struct FglTable {
    VarTablePtr coeff_table; // ring the alpha_ij live in
    int truncation = 0;
    std::map<std::pair<int, int>, GradedSeries> entries;

    GradedSeries entry(int i, int j) const;
    int max_index_sum() const { return truncation + 1; } // largest usable i+j
};

// The universal law over S*: coefficients computed from the operator
// S_t = sum s_w t^w acting on geometric elements (phi_t(y) = y + sum t_k
// y^{k+1}), reverted and recombined; t-coefficients transported to S*
// through the dual basis.
FglTable universal_fgl(int max_weight);

// g^{-1}(t) = t + sum s*_k t^{k+1} and its reversion g, both univariate in
// "t" over the star generators.
struct LogPair {
    GradedSeries exp; // g^{-1}
    GradedSeries log; // g
};
LogPair log_pair(int max_weight);

// The same law extracted from f = g^{-1}(g(x1) + g(x2)); must agree with
// universal_fgl entry for entry.
FglTable fgl_from_log(int max_weight);

// f = x + y - a x y over the single coefficient variable "a" (weight 1).
FglTable multiplicative_fgl(int max_weight);
// f = x + y.
FglTable additive_fgl(int max_weight);

// Materialize f(x1,x2) as a series over `target` (which must contain the
// two named variables and the coefficient variables).
GradedSeries fgl_series(const FglTable& t, const std::string& x1, const std::string& x2,
                        const VarTablePtr& target, int truncation);

// f(u, v) for series arguments with zero constant term.
GradedSeries fgl_sum(const FglTable& t, const GradedSeries& u, const GradedSeries& v);

// The inverse series iota with f(x, iota(x)) = 0, solved coefficient by
// coefficient; univariate in `var` over the coefficient variables.
GradedSeries inverse_series(const FglTable& t, const std::string& var, int truncation);

// f(x, iota(y)) over variables "x", "y"; lowest part x - y.
GradedSeries difference_kernel(const FglTable& t, int truncation);

// [CP^m] = (m+1) * (coefficient of t^{m+1} in the logarithm), a dual
// element of weight m normalized so that r_star(s_(m), .) = -(m+1).
DualElement cp_class(int m, int k_max);

// Greedy rewrite of an even series p(x) as a series in u = x * iota(x).
struct SymmetricReduction {
    bool ok = false;
    int failed_power = -1;                              // offending x-power when !ok
    std::vector<std::pair<int, GradedSeries>> coeffs;   // (k, c_k) with p = sum c_k u^k
};
SymmetricReduction symmetric_reduction(const GradedSeries& p, const FglTable& t,
                                       const std::string& var);

} // namespace cobord

#endif
