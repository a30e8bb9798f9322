#include "cobord/lattice.hpp"

#include <functional>

namespace cobord {

HnfResult hermite_normal_form(std::vector<std::vector<Int>> a)
{
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::vector<Int>> u(rows, std::vector<Int>(rows, 0));
    for (std::size_t i = 0; i < rows; ++i)
        u[i][i] = 1;

    auto row_combine = [&](std::size_t i, std::size_t j, const Int& p, const Int& q,
                           const Int& r, const Int& s) {
        // (row_i, row_j) <- (p*row_i + q*row_j, r*row_i + s*row_j)
        for (std::size_t c = 0; c < cols; ++c) {
            Int ai = a[i][c], aj = a[j][c];
            a[i][c] = p * ai + q * aj;
            a[j][c] = r * ai + s * aj;
        }
        for (std::size_t c = 0; c < rows; ++c) {
            Int ui = u[i][c], uj = u[j][c];
            u[i][c] = p * ui + q * uj;
            u[j][c] = r * ui + s * uj;
        }
    };

    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        // clear below using extended gcd steps
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][col] == 0)
                continue;
            if (a[r][col] == 0) {
                std::swap(a[r], a[i]);
                std::swap(u[r], u[i]);
                continue;
            }
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[r][col].get_mpz_t(),
                       a[i][col].get_mpz_t());
            Int p = a[r][col] / g, q = a[i][col] / g;
            // new row_r = s*row_r + t*row_i has entry g; new row_i gets 0
            row_combine(r, i, s, t, -q, p);
        }
        if (a[r][col] == 0)
            continue;
        if (a[r][col] < 0) {
            for (auto& v : a[r])
                v = -v;
            for (auto& v : u[r])
                v = -v;
        }
        // reduce entries above the pivot into [0, pivot)
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
            if (q == 0)
                continue;
            for (std::size_t c = 0; c < cols; ++c)
                a[i][c] -= q * a[r][c];
            for (std::size_t c = 0; c < rows; ++c)
                u[i][c] -= q * u[r][c];
        }
        pivots.push_back(col);
        ++r;
    }
    HnfResult out;
    out.h.assign(a.begin(), a.begin() + r);
    out.u.assign(u.begin(), u.begin() + r);
    out.pivot_cols = pivots;
    return out;
}

namespace {

// all multisets of generator pairs (i,j), i<=j, with weights i+j-1 summing
// to n; enumerated in a fixed deterministic order
void enumerate_products(int n, const std::vector<std::pair<int, int>>& gens, std::size_t from,
                        std::vector<std::pair<int, int>>& cur,
                        const std::function<void(const std::vector<std::pair<int, int>>&)>& f)
{
    if (n == 0) {
        f(cur);
        return;
    }
    for (std::size_t g = from; g < gens.size(); ++g) {
        int w = gens[g].first + gens[g].second - 1;
        if (w > n)
            continue;
        cur.push_back(gens[g]);
        enumerate_products(n - w, gens, g, cur, f);
        cur.pop_back();
    }
}

} // namespace

LambdaLattice::LambdaLattice(const FglTable& table, int max_weight)
    : k_max_(max_weight), max_weight_(max_weight)
{
    if (table.truncation < max_weight)
        throw SeriesError("LambdaLattice: table truncation too small");
    // generator pairs ordered by weight then (i,j)
    std::vector<std::pair<int, int>> gens;
    for (int w = 1; w <= max_weight; ++w)
        for (int i = 1; i <= (w + 1) / 2; ++i)
            gens.emplace_back(i, w + 1 - i);

    per_weight_.resize(max_weight + 1);
    for (int n = 1; n <= max_weight; ++n) {
        WeightData data;
        data.monomials = partitions_of(n);
        std::vector<std::pair<int, int>> cur;
        enumerate_products(n, gens, 0, cur, [&](const std::vector<std::pair<int, int>>& prod) {
            GradedSeries p = star_one(k_max_, n);
            std::string name;
            for (auto [i, j] : prod) {
                p = mul(p, table.entry(i, j).with_table(p.table()).truncate_to(n));
                if (!name.empty())
                    name += "*";
                name += "a" + std::to_string(i) + std::to_string(j);
            }
            std::vector<Int> row(data.monomials.size(), 0);
            for (std::size_t c = 0; c < data.monomials.size(); ++c) {
                Rat v = p.coeff(star_monomial(data.monomials[c], k_max_, n).terms().begin()->first);
                if (!is_integer(v))
                    throw SeriesError("LambdaLattice: non-integral generator product");
                row[c] = v.get_num();
            }
            data.gen_names.push_back(name.empty() ? "1" : name);
            data.gen_rows.push_back(std::move(row));
        });
        data.hnf = hermite_normal_form(data.gen_rows);
        per_weight_[n] = std::move(data);
    }
}

int LambdaLattice::rank(int weight) const
{
    if (weight < 1 || weight > max_weight_)
        throw SeriesError("LambdaLattice::rank: weight out of range");
    return static_cast<int>(per_weight_[weight].hnf.h.size());
}

MembershipResult LambdaLattice::membership(const DualElement& d) const
{
    MembershipResult out;
    auto min_w = d.min_term_weight();
    if (!min_w) { // zero element
        out.member = true;
        out.multiplier = 1;
        return out;
    }
    long n = *min_w;
    if (n != d.max_term_weight())
        throw SeriesError("lambda_membership: element not homogeneous");
    if (n < 1 || n > max_weight_)
        throw SeriesError("lambda_membership: weight exceeds lattice data");
    const WeightData& data = per_weight_[n];

    // coordinates of d over the weight-n star monomials
    std::vector<Rat> v(data.monomials.size(), Rat(0));
    for (const auto& [e, c] : d.terms()) {
        MultiIndex mono = star_exponents_to_index(*d.table(), e);
        auto it = std::find(data.monomials.begin(), data.monomials.end(), mono);
        if (it == data.monomials.end())
            throw SeriesError("lambda_membership: unexpected monomial");
        v[it - data.monomials.begin()] = c;
    }

    // reduce against the Hermite rows
    std::vector<Rat> y(data.hnf.h.size(), Rat(0));
    for (std::size_t r = 0; r < data.hnf.h.size(); ++r) {
        std::size_t col = data.hnf.pivot_cols[r];
        if (v[col] == 0)
            continue;
        Rat q = v[col] / Rat(data.hnf.h[r][col]);
        y[r] = q;
        for (std::size_t c = 0; c < v.size(); ++c)
            v[c] -= q * Rat(data.hnf.h[r][c]);
    }
    for (const auto& rest : v)
        if (rest != 0)
            return out; // not in the rational span: multiplier stays 0

    Int lcm_den = 1;
    bool integral = true;
    for (const auto& q : y) {
        if (!is_integer(q))
            integral = false;
        Int den = q.get_den();
        Int g = gcd(lcm_den, den);
        lcm_den = lcm_den / g * den;
    }
    if (!integral) {
        out.member = false;
        out.multiplier = lcm_den;
        return out;
    }
    out.member = true;
    out.multiplier = 1;
    // certificate z = y * U over the original generator products
    std::vector<Int> z(data.gen_rows.size(), 0);
    for (std::size_t r = 0; r < y.size(); ++r) {
        Int yi = y[r].get_num();
        if (yi == 0)
            continue;
        for (std::size_t g = 0; g < z.size(); ++g)
            z[g] += yi * data.hnf.u[r][g];
    }
    for (std::size_t g = 0; g < z.size(); ++g)
        if (z[g] != 0)
            out.certificate.emplace_back(data.gen_names[g], z[g]);
    return out;
}

DualElement LambdaLattice::sample_element(int weight, unsigned& state, const Rat& scale) const
{
    if (weight < 1 || weight > max_weight_)
        throw SeriesError("sample_element: weight out of range");
    const WeightData& data = per_weight_[weight];
    auto next = [&state]() {
        // xorshift32: deterministic across platforms
        state ^= state << 13;
        state ^= state >> 17;
        state ^= state << 5;
        return state;
    };
    GradedSeries out(star_table(k_max_), weight);
    for (std::size_t g = 0; g < data.gen_rows.size(); ++g) {
        long c = static_cast<long>(next() % 7) - 3; // small coefficients in [-3, 3]
        if (c == 0)
            continue;
        for (std::size_t m = 0; m < data.monomials.size(); ++m) {
            Rat v = scale * Rat(c) * Rat(data.gen_rows[g][m]);
            if (v == 0)
                continue;
            Exponents e = star_monomial(data.monomials[m], k_max_, weight).terms().begin()->first;
            out.add_term(e, v);
        }
    }
    return out;
}

} // namespace cobord
