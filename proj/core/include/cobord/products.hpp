#ifndef COBORD_PRODUCTS_HPP
#define COBORD_PRODUCTS_HPP

#include "cobord/divdiff.hpp"

namespace cobord {

// A bilinear product on a carrier, with its construction recorded.
struct ProductStructure {
    std::string name;
    Carrier carrier;
    std::function<GradedSeries(const GradedSeries&, const GradedSeries&)> eval;
};

struct AssocReport {
    bool associative = true;
    bool has_witness = false;
    std::string witness; // lexicographically first failing triple
    int weight = 0;
};

// (x o y) o z = x o (y o z) over all monomial triples of total weight <= W,
// in graded-lex order; the first failure is reported.
AssocReport associativity_check(const ProductStructure& mu, int max_total_weight);

struct CommReport {
    bool commutative = true;
    std::string witness;
};
CommReport commutativity_check(const ProductStructure& mu, int max_total_weight);

// mu1(x, y) = pi1(x) pi2(y)
ProductStructure mu1(const DivDiffOp& op1, const DivDiffOp& op2);

// the expanded four-term right side of the product formula agrees with
// pi1(x) pi2(y) (single-minus reading of the printed sign)
bool expanded_form_matches(const DivDiffOp& op1, const DivDiffOp& op2, int max_weight);

struct ProjectorProductReport {
    bool division1 = false, division2 = false, commute = false;
    bool associative = false, commutative = false, pis_equal = false;
    bool biconditional_ok = false;   // associative <=> (divisions && commute)
    bool commutativity_iff = false;  // commutative <=> pi1 = pi2
    std::string assoc_witness;
};
ProjectorProductReport projector_product_certificate(const DivDiffOp& op1, const DivDiffOp& op2, int max_weight);

// mu2(x, y) = x y + beta partial(x) partial(y)
ProductStructure mu2(const DivDiffOp& op, const GradedSeries& beta);

struct DeformationReport {
    int branch = 0; // 1: division & pi(beta)=0; 2: not division & cross condition; 0: neither
    bool division = false;
    bool pi_beta_zero = false;
    bool cross_condition = false; // partial^2 x partial y = partial x partial^2 y
    bool associative = false;
    std::string witness;
};
DeformationReport deformation_certificate(const DivDiffOp& op, const GradedSeries& beta,
                                    int max_weight);

// mu3(x, y) = Pi(Pi(x) Pi(y))
using LinOp = RingOp;
ProductStructure mu3(const LinOp& Pi, const Carrier& carrier);

struct ProjectorPairReport {
    bool proj = false;        // Pi^2 = Pi
    bool delta_pi = false;    // delta Pi = delta
    bool cond2 = false;
    bool cond3 = false;
    std::string detail;
    bool all() const { return proj && delta_pi && cond2 && cond3; }
};
ProjectorPairReport projector_pair_hypotheses(const LinOp& Pi, const LinOp& delta,
                                   const GradedSeries& alpha, const GradedSeries& beta,
                                   const Carrier& c, int max_weight);

struct SolveResult {
    bool ok = false;
    GradedSeries value;
    std::string detail;
    SolveResult() : value(VarTable::make({}), 0) {}
};
// the unique beta with Pi(Pi x Pi y) = Pi x Pi y + beta delta x delta y on
// the test set, by exact division on the first spanning pair
SolveResult solve_beta(const LinOp& Pi, const LinOp& delta, const Carrier& c, int max_weight);
// same for alpha in condition (2)
SolveResult solve_alpha(const LinOp& Pi, const LinOp& delta, const Carrier& c, int max_weight);

// Algebraic model of the Conner-Floyd projector pair on Thom monomials:
// a monomial M = x_1^{a_1}..x_k^{a_k} carries c(M) = formal-group sum of
// its factors and ebar(M) = inverse of c(M); then delta(M) = M ebar(M) and
// Pi(M) = M (1 + sum_{i>=2} alpha_{i1} ebar(M)^i), extended linearly.
struct ConnerFloydModel {
    MilnorCarrier milnor;
    Carrier carrier;      // test variables: the geometric (Thom) variables
    LinOp Pi;
    LinOp delta;
};
ConnerFloydModel conner_floyd_model(int line_factors, int max_weight);

} // namespace cobord

#endif
