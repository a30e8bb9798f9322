#ifndef COBORD_MILNOR_HPP
#define COBORD_MILNOR_HPP

#include "cobord/hopf.hpp"

#include <functional>

namespace cobord {

// Carrier module Lambda'[[x_1..x_g]]: series over geometric variables
// (weight 1) with S*-coefficients. The S-action distributes the parts of
// each s_w over the coefficient (through r_star) and the geometric
// factors (through the geometric-element rule).
struct MilnorCarrier {
    VarTablePtr table;
    std::vector<std::size_t> geom; // indices of the geometric variables
    int k_max = 0;                 // star generators s1..s{k_max} present
    int truncation = 0;

    GradedSeries zero() const { return GradedSeries::zero(table, truncation); }
    GradedSeries one() const { return GradedSeries::constant(table, truncation, Rat(1)); }
    GradedSeries var(const std::string& name) const
    {
        return GradedSeries::variable(table, truncation, name);
    }
    GradedSeries embed(const DualElement& d) const
    {
        return d.with_table(table).truncate_to(truncation);
    }
};

MilnorCarrier make_milnor_carrier(const std::vector<std::string>& geom_names, int k_max,
                                  int truncation);

// The action of s_w (resp. a general element of S) on a carrier element.
GradedSeries act(const MultiIndex& w, const GradedSeries& e, const MilnorCarrier& carrier);
GradedSeries act(const SElement& a, const GradedSeries& e, const MilnorCarrier& carrier);

// Element of the completion A^U = (Lambda S)^: sum lambda_w s_w with
// dual-element coefficients.
struct OperatorSeries {
    std::map<MultiIndex, DualElement> terms;
    int k_max = 0;
    int truncation = 0;
};

GradedSeries act(const OperatorSeries& op, const GradedSeries& e, const MilnorCarrier& carrier);
// Action on a pure coefficient (no geometric part).
DualElement act_dual(const OperatorSeries& op, const DualElement& d);

// The multiplicative operator phi with phi(x) = x + sum phi_i x^{i+1}:
// phi = sum_w phi_w s_w with phi_w the product of the phi_{k_i}.
// Each phi_i must be homogeneous of weight i (or zero).
OperatorSeries operator_from_series(const std::vector<DualElement>& phi, int k_max,
                                    int truncation);

// phi^2 = phi holds iff phi(phi_i) = 0 for every i.
bool is_multiplicative_projector(const std::vector<DualElement>& phi, int k_max, int truncation);

// -- the one-dimensional representation -----------------------------------
// s_(1) acts as u^2 d/du, s_(n) = 0 for n >= 2; general s_w through its
// expansion over ordered products of the primitives (solved exactly).

// rho(s_w) applied to a polynomial in "u" (weight-1 variable).
GradedSeries one_dim_rep(const SElement& a, const GradedSeries& p);
// Cross-check route: extend the single-u values by the Milnor rule.
GradedSeries one_dim_rep_milnor_route(const MultiIndex& w, int u_power, int truncation);
// The PBW expansion coefficient of s_w over products of primitives;
// exposed for tests.
Rat one_dim_rep_leading_coeff(const MultiIndex& w);

// -- stable product series ------------------------------------------------

struct PhiSeries {
    // (w_i, w_j) -> lambda_ij, homogeneous of weight |w_i| + |w_j|
    std::map<std::pair<MultiIndex, MultiIndex>, DualElement> terms;
    int k_max = 0;
    int truncation = 0; // indices range over weight <= truncation
};

// u o v = sum lambda_ij s_{w_i}(u) s_{w_j}(v)
GradedSeries stable_product_eval(const PhiSeries& phi, const GradedSeries& u,
                                 const GradedSeries& v, const MilnorCarrier& carrier);
DualElement stable_product_eval_dual(const PhiSeries& phi, const DualElement& u,
                                     const DualElement& v);

struct RecoverError : std::runtime_error {
    int failing_weight;
    RecoverError(const std::string& msg, int w) : std::runtime_error(msg), failing_weight(w) {}
};

// Recover the coefficients lambda_ij from the products on the coefficient
// ring alone, by induction on weight; validates the result against the
// oracle and throws RecoverError if no Phi-series fits.
using ProductOracle = std::function<DualElement(const DualElement&, const DualElement&)>;
PhiSeries recover_phi(const ProductOracle& oracle, int max_weight, int k_max);

} // namespace cobord

#endif
