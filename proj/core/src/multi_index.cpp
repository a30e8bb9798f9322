#include "cobord/multi_index.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace cobord {

MultiIndex::MultiIndex(std::vector<int> parts) : parts_(std::move(parts))
{
    for (int k : parts_)
        if (k <= 0)
            throw std::invalid_argument("MultiIndex parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
}

MultiIndex MultiIndex::single(int k)
{
    return MultiIndex(std::vector<int>{k});
}

long MultiIndex::weight() const
{
    return std::accumulate(parts_.begin(), parts_.end(), 0L);
}

std::vector<std::pair<int, int>> MultiIndex::multiplicities() const
{
    std::vector<std::pair<int, int>> out;
    for (int k : parts_) {
        if (!out.empty() && out.back().first == k)
            ++out.back().second;
        else
            out.emplace_back(k, 1);
    }
    return out;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const
{
    std::vector<int> merged = parts_;
    merged.insert(merged.end(), other.parts_.begin(), other.parts_.end());
    return MultiIndex(std::move(merged));
}

bool MultiIndex::contains(const MultiIndex& sub) const
{
    auto have = multiplicities();
    for (auto [k, m] : sub.multiplicities()) {
        auto it = std::find_if(have.begin(), have.end(), [k](auto p) { return p.first == k; });
        if (it == have.end() || it->second < m)
            return false;
    }
    return true;
}

MultiIndex MultiIndex::minus(const MultiIndex& other) const
{
    std::vector<int> rest = parts_;
    for (int k : other.parts_) {
        auto it = std::find(rest.begin(), rest.end(), k);
        if (it == rest.end())
            throw std::invalid_argument("MultiIndex::minus: not a submultiset");
        rest.erase(it);
    }
    return MultiIndex(std::move(rest));
}

std::string MultiIndex::str() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const
{
    if (auto c = weight() <=> other.weight(); c != 0)
        return c;
    if (auto c = parts_.size() <=> other.parts_.size(); c != 0)
        return c;
    for (std::size_t i = 0; i < parts_.size(); ++i)
        if (auto c = parts_[i] <=> other.parts_[i]; c != 0)
            return c;
    return std::strong_ordering::equal;
}

std::vector<MultiIndex> partitions_of(int n)
{
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int k = std::min(rest, max_part); k >= 1; --k) {
            cur.push_back(k);
            rec(rest - k, k);
            cur.pop_back();
        }
    };
    if (n >= 0)
        rec(n, n == 0 ? 1 : n);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MultiIndex> basis_up_to(int max_weight)
{
    std::vector<MultiIndex> out;
    for (int n = 0; n <= max_weight; ++n) {
        auto ps = partitions_of(n);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    return out;
}

std::vector<MultiIndex> submultisets(const MultiIndex& w)
{
    auto mult = w.multiplicities();
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == mult.size()) {
            out.emplace_back(cur);
            return;
        }
        auto [k, m] = mult[i];
        for (int take = 0; take <= m; ++take) {
            for (int j = 0; j < take; ++j)
                cur.push_back(k);
            rec(i + 1);
            for (int j = 0; j < take; ++j)
                cur.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cobord
