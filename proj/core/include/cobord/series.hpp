#ifndef COBORD_SERIES_HPP
#define COBORD_SERIES_HPP

#include "cobord/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cobord {

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A named variable with a positive weight. The weight is half the
// topological degree: a geometric variable has weight 1, the dual
// generator s*_k has weight k.
struct Variable {
    std::string name;
    int weight = 1;
};

// Immutable ordered list of variables. Series sharing a table (or tables
// that agree name-for-name) are compatible; tables merge by name, and a
// weight mismatch for a shared name is an error.
class VarTable {
public:
    explicit VarTable(std::vector<Variable> vars);

    std::size_t size() const { return vars_.size(); }
    const Variable& at(std::size_t i) const { return vars_.at(i); }
    const std::vector<Variable>& vars() const { return vars_; }
    std::optional<std::size_t> index_of(const std::string& name) const;
    bool same_as(const VarTable& other) const;

    static std::shared_ptr<const VarTable> make(std::vector<Variable> vars);
    static std::shared_ptr<const VarTable> merge(const std::shared_ptr<const VarTable>& a,
                                                 const std::shared_ptr<const VarTable>& b);

private:
    std::vector<Variable> vars_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;
using Exponents = std::vector<int>;

// Graded-lexicographic order: first by total weight, ties broken
// lexicographically on the exponent vector. This is the canonical order
// for term storage and serialization.
struct GradedLexLess {
    VarTablePtr table;
    bool operator()(const Exponents& a, const Exponents& b) const;
};

long weight_of(const VarTable& table, const Exponents& exp);

// Truncated multivariate power series with exact rational coefficients
// over weighted variables. Invariants: every stored exponent vector has
// total weight <= truncation, and no stored coefficient is zero.
// Values are immutable in spirit: all operations are pure functions.
class GradedSeries {
public:
    using TermMap = std::map<Exponents, Rat, GradedLexLess>;

    GradedSeries(VarTablePtr table, int truncation);

    static GradedSeries zero(VarTablePtr table, int truncation);
    static GradedSeries constant(VarTablePtr table, int truncation, const Rat& c);
    static GradedSeries monomial(VarTablePtr table, int truncation, const Exponents& exp,
                                 const Rat& c = Rat(1));
    static GradedSeries variable(VarTablePtr table, int truncation, const std::string& name);

    const VarTablePtr& table() const { return table_; }
    int truncation() const { return trunc_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rat coeff(const Exponents& exp) const;
    Rat constant_term() const;

    // Largest total weight among stored terms, 0 if zero.
    long max_term_weight() const;
    // Smallest total weight among nonzero terms; nullopt if zero.
    std::optional<long> min_term_weight() const;

    // Degree in a single variable (max exponent), 0 if absent.
    int degree_in(std::size_t var) const;
    bool involves(std::size_t var) const;

    // Collapses the series to the coefficient of var^k: returns a series
    // over the same table with the exponent of `var` zeroed out.
    GradedSeries coeff_of_power(std::size_t var, int k) const;
    // The homogeneous part of the given total weight.
    GradedSeries weight_part(long w) const;

    GradedSeries truncate_to(int new_trunc) const;
    // Re-express over `target` (which must contain all variables this
    // series involves, matching weights by name).
    GradedSeries with_table(const VarTablePtr& target) const;

    GradedSeries operator-() const;
    GradedSeries& add_term(const Exponents& exp, const Rat& c); // builder; drops over-weight terms

    bool is_integral() const;                  // all denominators 1
    bool denominators_power_of(long m) const;  // all denominators divide a power of m

    friend GradedSeries operator+(const GradedSeries& a, const GradedSeries& b);
    friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b);
    friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
    friend GradedSeries operator*(const Rat& c, const GradedSeries& a);
    friend bool operator==(const GradedSeries& a, const GradedSeries& b);

private:
    VarTablePtr table_;
    int trunc_;
    TermMap terms_;
};

GradedSeries mul(const GradedSeries& a, const GradedSeries& b);
GradedSeries pow(const GradedSeries& a, int n);

// Substitute `inner` for the named variable of `outer`; all other
// variables pass through. `inner` must have zero constant term and its
// lowest term weight must be >= the weight of the substituted variable.
GradedSeries substitute(const GradedSeries& outer, const std::string& var,
                        const GradedSeries& inner);

// Univariate convenience: `outer` must involve exactly one variable.
GradedSeries substitute(const GradedSeries& outer, const GradedSeries& inner);

// Simultaneous substitution var -> series. Variables absent from the map
// pass through unchanged.
GradedSeries substitute_map(const GradedSeries& outer,
                            const std::vector<std::pair<std::string, GradedSeries>>& images,
                            VarTablePtr target, int truncation);

// Rename a variable (weights must match).
GradedSeries rename_variable(const GradedSeries& s, const std::string& from,
                             const std::string& to);

// Compositional inverse of s = t + (higher order) in the named variable:
// returns r with substitute(s, var, r) = t = substitute(r, var, s).
GradedSeries revert(const GradedSeries& s, const std::string& var);
GradedSeries revert(const GradedSeries& s); // unique-variable convenience

// r with r^n = s, for s with constant term 1, via the binomial series.
GradedSeries nth_root(const GradedSeries& s, int n);

// Reciprocal of a series whose constant term is a nonzero rational.
GradedSeries invert_unit(const GradedSeries& s);

// Exact division of num by (var - z), where z does not involve var.
// Throws SeriesError if the division leaves a remainder.
GradedSeries divide_by_linear(const GradedSeries& num, const std::string& var,
                              const GradedSeries& z);

// Exact division by var^k (every term must carry at least var^k).
GradedSeries divide_by_power(const GradedSeries& num, const std::string& var, int k);

// General exact division: num = q * den termwise from the graded-lex
// bottom up. Returns nullopt when a leading term fails to divide; the
// quotient's truncation drops by the weight of den's lowest term.
std::optional<GradedSeries> try_exact_div(const GradedSeries& num, const GradedSeries& den);
GradedSeries exact_div(const GradedSeries& num, const GradedSeries& den);

} // namespace cobord

#endif
