#ifndef COBORD_DIVDIFF_HPP
#define COBORD_DIVDIFF_HPP

#include "cobord/formal_group.hpp"
#include "cobord/milnor.hpp"
#include "cobord/series.hpp"

#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace cobord {

// A commutative carrier ring of truncated series together with the
// variables the monomial test sets range over. Operators on carriers with
// star coefficients are not K-linear over the stars, so those carriers
// list the star variables among the test variables.
struct Carrier {
    std::string name;
    VarTablePtr table;
    int truncation = 0;
    std::vector<std::size_t> test_vars;
};

// Monomials over the carrier's test variables with total weight <= W,
// constant 1 included, in graded-lex order.
std::vector<GradedSeries> monomial_test_set(const Carrier& c, int max_weight);

using RingOp = std::function<GradedSeries(const GradedSeries&)>;

struct MilnorOpData;

// A divided difference operator packaged with its companion element alpha
// and the multiplicative operator pi = 1 - alpha * partial.
struct DivDiffOp {
    std::string name;
    std::map<std::string, std::string> params;
    Carrier carrier;
    GradedSeries alpha = GradedSeries::zero(VarTable::make({}), 0);
    RingOp partial;
    RingOp pi;
    long denom_base = 0; // when nonzero, denominators must be powers of this
    std::shared_ptr<const MilnorOpData> milnor;
};

using OpFactory = std::function<DivDiffOp(int /*truncation*/)>;

struct CheckReport {
    std::string name;
    int weight = 0;
    bool pass = false;
    std::string detail;
};

// partial is not identically trivial on the test set.
bool nontrivial_on_test_set(const DivDiffOp& op, int max_weight);

// partial(xy) = (partial x) y + x (partial y) - alpha (partial x)(partial y)
// on all ordered monomial pairs, plus partial(1) = 0.
CheckReport check_divdiff(const DivDiffOp& op, int max_weight);

// pi(xy) = pi(x) pi(y); throws if the verdict ever disagrees with
// check_divdiff (the two predicates are equivalent).
CheckReport pi_multiplicativity(const DivDiffOp& op, int max_weight);

// partial(alpha) = 1, cross-checked against partial(alpha * x) = x on the
// test set; a disagreement between the criteria is an internal fault.
bool is_division(const DivDiffOp& op, int cross_check_weight = 4);

struct GammaReport {
    bool applicable = false;   // partial^2 = gamma * partial on the test set
    bool alpha_scaling = false;       // (1 - alpha gamma) partial(alpha) = 2 - alpha gamma
    bool pi_involution = false;// pi^2 = 1 on the test set
    bool pi_alpha = false;     // pi(alpha)(1 - alpha gamma) = -alpha
    std::string detail;
};
GammaReport gamma_predicates(const DivDiffOp& op, const GradedSeries& gamma, int max_weight);

// gamma with partial^2 = gamma * partial extracted by exact division and
// verified on the test set; nullopt when no ring element works.
std::optional<GradedSeries> solve_gamma(const DivDiffOp& op, int max_weight);

struct KernelReport {
    bool kernel_nontrivial = false;
    bool division = false;
    bool pi_projector = false;
    bool equivalent = false;
    int weight = 0;
    std::string detail; // records the internal truncation used
};
// ker(pi) on the weight <= W subspace by exact linear algebra; the
// operator is rebuilt at `internal_truncation` (default: doubled) so
// truncation artifacts do not masquerade as kernel elements. For
// weight-preserving pi the internal truncation may equal max_weight.
KernelReport kernel_division_equivalence(const OpFactory& factory, int max_weight,
                                         int internal_truncation = -1);

struct ComposeResult {
    DivDiffOp op;       // pi = pi1 pi2, partial from the composition law
    bool law_holds = false; // 1 - alpha * partial = pi1 pi2 on the test set
    std::string witness;
};
ComposeResult compose_divdiff(const DivDiffOp& op1, const DivDiffOp& op2, int max_weight);

// delta(ab) = phi(a) delta(b) + delta(a) b on ordered pairs.
bool ore_check(const RingOp& delta, const RingOp& phi, const Carrier& c, int max_weight);

// -- catalogue -------------------------------------------------------------

// (1) translation of the argument on K[[x]]: alpha(0) = 0,
//     pi p = p(x - alpha psi), partial p = (p - pi p)/alpha.
DivDiffOp translation_op(const GradedSeries& alpha, const GradedSeries& psi, int truncation);

// evaluation at zero on K[[x]]: alpha = x, pi p = p(0).
DivDiffOp evaluation_op(int truncation);

// (2) the Newton operator on K[[x,y]]: partial p = (p(x,y)-p(y,x))/(x-y).
DivDiffOp newton_op(int truncation);

// the same swap numerator divided by f(x, ybar) for a formal group law.
DivDiffOp fgl_diff_op(const FglTable& law, int truncation);

// reflection operators for alpha = <x, xi>: variant (i) is a division
// operator / projector, variant (ii) an involution with partial^2 = 0.
DivDiffOp reflection_op(const std::vector<Rat>& xi, bool involution, int truncation);

// division operator on the one-variable module over the ring localized
// at m: partial x = (1/m) x^{n+1} + sum a_i x^{n+i+1} with free parameters
// a_i; requires r_star(s_(n), alpha) = m.
DivDiffOp localized_division_op(int n, long m, const DualElement& alpha,
                     const std::vector<DualElement>& a_params, int k_max, int truncation);

// involution from root extraction: pi(x) = x (1 + alpha x^n)^{-1/n},
// requires r_star(s_(n), alpha) = 2n; satisfies pi^2 = 1 and partial^2 = 0.
DivDiffOp root_involution_op(int n, const DualElement& alpha, int k_max, int truncation);

// carrier + operator series backing the module operators (exposed for
// product constructions over the same carrier); per-monomial values are
// cached since every check sweeps the same monomial test sets
struct MilnorOpData {
    MilnorCarrier carrier;
    OperatorSeries pi_series;
    OperatorSeries partial_series;

    mutable std::shared_mutex mutex;
    mutable std::map<Exponents, GradedSeries> pi_cache;
    mutable std::map<Exponents, GradedSeries> partial_cache;
};

} // namespace cobord

#endif
