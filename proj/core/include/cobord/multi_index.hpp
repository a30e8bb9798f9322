#ifndef COBORD_MULTI_INDEX_HPP
#define COBORD_MULTI_INDEX_HPP

#include <compare>
#include <string>
#include <vector>

namespace cobord {

// An unordered multiset w = (k_1,...,k_l) of positive integers, the index
// of the basis element s_w. Canonical form: parts stored descending.
// The empty index stands for s_0 = 1. Weight is the sum of the parts
// (half the topological degree 2*sum k_q).
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> parts);
    static MultiIndex single(int k);

    const std::vector<int>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    int length() const { return static_cast<int>(parts_.size()); }
    long weight() const;

    // distinct values with multiplicities, descending by value
    std::vector<std::pair<int, int>> multiplicities() const;

    // multiset union / difference (other must be contained for minus)
    MultiIndex plus(const MultiIndex& other) const;
    MultiIndex minus(const MultiIndex& other) const;
    bool contains(const MultiIndex& sub) const;

    std::string str() const; // "(3,1,1)" or "()"

    // canonical total order: weight, then length, then parts lex
    std::strong_ordering operator<=>(const MultiIndex& other) const;
    bool operator==(const MultiIndex& other) const = default;

private:
    std::vector<int> parts_; // descending
};

// All multi-indices of weight <= W (partitions of 0..W), in canonical order.
std::vector<MultiIndex> basis_up_to(int max_weight);
// All multi-indices of weight exactly n, in canonical order.
std::vector<MultiIndex> partitions_of(int n);

// Every submultiset of w, each exactly once (2^distinct at most,
// multiplicity-aware); includes the empty index and w itself.
std::vector<MultiIndex> submultisets(const MultiIndex& w);

} // namespace cobord

#endif
