#ifndef COBORD_HOPF_HPP
#define COBORD_HOPF_HPP

#include "cobord/multi_index.hpp"
#include "cobord/series.hpp"

#include <functional>
#include <map>

namespace cobord {

struct HopfError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite linear combination of basis elements s_w with exact rational
// coefficients.
class SElement {
public:
    SElement() = default;
    static SElement one() { return basis(MultiIndex{}); }
    static SElement basis(const MultiIndex& w);

    const std::map<MultiIndex, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rat coeff(const MultiIndex& w) const;
    SElement& add(const MultiIndex& w, const Rat& c);

    SElement operator-() const;
    friend SElement operator+(const SElement& a, const SElement& b);
    friend SElement operator-(const SElement& a, const SElement& b);
    friend SElement operator*(const Rat& c, const SElement& a);
    bool operator==(const SElement& other) const = default;

private:
    std::map<MultiIndex, Rat> terms_;
};

// Element of S (x) S: mapping (w', w'') -> coefficient.
using TensorSquare = std::map<std::pair<MultiIndex, MultiIndex>, Rat>;

// Delta s_w = sum over ordered pairs (w', w'') with w' (+) w'' = w, each
// pair exactly once with coefficient 1.
TensorSquare coproduct(const MultiIndex& w);
TensorSquare coproduct(const SElement& a);

// Coefficient of s_0 (the augmentation on S).
Rat counit(const SElement& a);

// -- geometric representation ------------------------------------------

// x1..xN, each of weight 1
VarTablePtr geometric_table(int n);

// Action of s_w on the monomial with the given exponents over a table of
// geometric (weight-1) variables with scalar coefficients: s_(k) raises a
// single factor to the (k+1)-st power, longer indices kill single factors,
// products distribute through the iterated coproduct.
GradedSeries act_geometric(const MultiIndex& w, const VarTablePtr& table, const Exponents& mono,
                           int truncation);
GradedSeries act_geometric(const SElement& a, const VarTablePtr& table, const Exponents& mono,
                           int truncation);
// Linear extension to a polynomial with scalar coefficients.
GradedSeries act_geometric(const SElement& a, const GradedSeries& poly);

// -- product ------------------------------------------------------------

// Product in S computed through the asymptotically faithful representation
// on x_1...x_N, N = length(a) + length(b); the composed action decomposes
// uniquely over distinguished monomials. Memoized on basis pairs.
SElement multiply(const SElement& a, const SElement& b);
SElement multiply_basis(const MultiIndex& a, const MultiIndex& b);

// -- dual algebra --------------------------------------------------------

// S* is the polynomial ring on generators s*_k of weight k. A DualElement
// is a GradedSeries over the star table below (or any table containing it).
using DualElement = GradedSeries;

VarTablePtr star_table(int k_max);
GradedSeries star_one(int k_max, int truncation);
GradedSeries star_gen(int k, int k_max, int truncation);
GradedSeries star_monomial(const MultiIndex& w, int k_max, int truncation);

// Recover the multiset (e_1 copies of 1, e_2 copies of 2, ...) from an
// exponent vector over a pure star table.
MultiIndex star_exponents_to_index(const VarTable& table, const Exponents& exp);

// <(s*)-monomial, s_w> computed through the iterated coproduct: the value
// is the number of ordered decompositions of w into the singleton factors.
Rat pairing(const MultiIndex& mono, const MultiIndex& w);
Rat pairing(const DualElement& p, const SElement& a);

// True iff the pairing matrix between star monomials and {s_w} is the
// identity through the given weight.
bool dual_basis_check(int max_weight);

// R*_a: the adjoint of right multiplication, <R*_a(u), s'> = <u, s' a>.
// Lowers weight by weight(a); the result is re-expressed in dual-basis
// coordinates. Computed through the composition series gamma(t) = t +
// sum s*_j t^{j+1}: generators satisfy s_(k)(s*_n) = [t^{n+1}] gamma^{k+1}
// and vanish under longer indices; products distribute by the Milnor rule.
// Memoized on (basis, monomial) pairs.
DualElement r_star(const MultiIndex& a, const DualElement& u);
DualElement r_star(const SElement& a, const DualElement& u);

// The defining formula evaluated literally through structure constants:
// sum over w' of <u, s_{w'} a> (s*)^{w'}. Slow; the oracle r_star is
// checked against.
DualElement r_star_definitional(const MultiIndex& a, const DualElement& u);

// Multinomial count of multiset-injective assignments of the parts of w
// into `slots` distinct factors.
Rat injective_assignments(const MultiIndex& w, int slots);

// Enumerate ordered decompositions of w into `slots` labeled submultisets
// (the iterated coproduct support), invoking f once per decomposition.
void for_each_decomposition(const MultiIndex& w, int slots,
                            const std::function<void(const std::vector<MultiIndex>&)>& f);

} // namespace cobord

#endif
