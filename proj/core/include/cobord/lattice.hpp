#ifndef COBORD_LATTICE_HPP
#define COBORD_LATTICE_HPP

#include "cobord/formal_group.hpp"
#include "cobord/hopf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cobord {

// Row-style Hermite normal form over Z: H = U * A with U unimodular.
struct HnfResult {
    std::vector<std::vector<Int>> h; // nonzero rows only
    std::vector<std::vector<Int>> u; // transform rows matching h
    std::vector<std::size_t> pivot_cols;
};
HnfResult hermite_normal_form(std::vector<std::vector<Int>> rows);

struct MembershipResult {
    bool member = false;
    // smallest positive q with q*d in the lattice; 1 when member, 0 when
    // d is not even in the rational span
    Int multiplier = 0;
    // on membership: integer coordinates over the generating products
    std::vector<std::pair<std::string, Int>> certificate;
};

// The coefficient ring Lambda inside S*: per weight n, the Z-span of all
// monomials in the formal group coefficients alpha_ij of weight n,
// held as a Hermite basis over the weight-n star-monomial coordinates.
class LambdaLattice {
public:
    LambdaLattice(const FglTable& table, int max_weight);

    int max_weight() const { return max_weight_; }
    int rank(int weight) const;

    // d must be homogeneous of weight 1..max_weight (weight-0 rationals are
    // handled separately: integers are members).
    MembershipResult membership(const DualElement& d) const;

    // A deterministic pseudo-random integer combination of the weight-n
    // generating products; `scale` divides the result (for localized
    // parameter vectors).
    DualElement sample_element(int weight, unsigned& state, const Rat& scale = Rat(1)) const;

private:
    struct WeightData {
        std::vector<std::string> gen_names;          // product descriptions
        std::vector<std::vector<Int>> gen_rows;      // coordinates over star monomials
        HnfResult hnf;
        std::vector<MultiIndex> monomials;           // coordinate order
    };
    int k_max_;
    int max_weight_;
    std::vector<WeightData> per_weight_; // index 1..max_weight
};

} // namespace cobord

#endif
