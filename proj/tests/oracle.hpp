#pragma once

// Brute-force reference computations for small instances. Nothing here calls
// into the library's linear algebra; everything is plain enumeration.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<std::uint64_t>;
using Mat = std::vector<std::vector<std::uint64_t>>;  // row-major

// All vectors with coordinate i in [0, orders[i]).
inline std::vector<Vec> all_vectors(const std::vector<std::uint64_t>& orders) {
    std::vector<Vec> out;
    Vec x(orders.size(), 0);
    while (true) {
        out.push_back(x);
        std::size_t i = orders.size();
        while (i > 0) {
            --i;
            if (++x[i] < orders[i]) break;
            x[i] = 0;
            if (i == 0) return out;
        }
        if (orders.empty()) return out;
    }
}

inline std::vector<Vec> all_vectors(std::uint64_t m, std::size_t n) {
    return all_vectors(std::vector<std::uint64_t>(n, m));
}

inline Vec apply(const Mat& a, const Vec& x, std::uint64_t m) {
    Vec y(a.size(), 0);
    for (std::size_t r = 0; r < a.size(); ++r) {
        std::uint64_t s = 0;
        for (std::size_t c = 0; c < x.size(); ++c) s = (s + a[r][c] * x[c]) % m;
        y[r] = s;
    }
    return y;
}

inline Vec reduce(Vec x, const std::vector<std::uint64_t>& orders) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] %= orders[i];
    return x;
}

// Closure of a set of generators under addition inside the group with the
// given coordinate orders (so also closed under negation and scaling).
inline std::set<Vec> span(const std::vector<Vec>& gens, const std::vector<std::uint64_t>& orders) {
    std::set<Vec> seen;
    std::vector<Vec> frontier{Vec(orders.size(), 0)};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& v : frontier)
            for (const auto& g : gens) {
                Vec w(v.size());
                for (std::size_t i = 0; i < v.size(); ++i) w[i] = (v[i] + g[i]) % orders[i];
                if (seen.insert(w).second) next.push_back(w);
            }
        frontier.swap(next);
    }
    return seen;
}

inline std::set<Vec> span(const std::vector<Vec>& gens, std::uint64_t m, std::size_t n) {
    return span(gens, std::vector<std::uint64_t>(n, m));
}

// Invariant factors of a finite abelian group given by its element list and
// addition, via counting elements killed by each divisor of the exponent.
// For a group Z/d1 + ... + Z/dk, #{x : e x = 0} = prod gcd(e, di).
inline std::vector<std::uint64_t> invariant_factors_by_counting(
    std::uint64_t m, const std::function<std::uint64_t(std::uint64_t)>& killed_by) {
    // Recover the multiset of cyclic factors from the counts for every
    // divisor e of m. Works because m has few divisors at desk scale.
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t e = 1; e <= m; ++e)
        if (m % e == 0) divisors.push_back(e);
    // Brute force over nondecreasing chains of divisors (>= 2) dividing m,
    // bounded by log2 of the group size.
    const std::uint64_t size = killed_by(m);
    std::vector<std::uint64_t> best;
    bool found = false;
    std::vector<std::uint64_t> chain;
    std::function<void(std::uint64_t)> rec = [&](std::uint64_t prod) {
        if (found) return;
        if (prod == size) {
            bool ok = true;
            for (const auto e : divisors) {
                std::uint64_t c = 1;
                for (const auto d : chain) c *= std::gcd(e, d);
                if (c != killed_by(e)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                best = chain;
                found = true;
            }
            return;
        }
        for (const auto d : divisors) {
            if (d < 2) continue;
            if (!chain.empty() && d % chain.back() != 0) continue;
            if (size % (prod * d) != 0) continue;
            chain.push_back(d);
            rec(prod * d);
            chain.pop_back();
        }
    };
    rec(1);
    return best;
}

// Invariant factors of an explicit subgroup (element set) of a group with
// the given coordinate orders.
inline std::vector<std::uint64_t> factors_of_set(const std::set<Vec>& elems, std::uint64_t m,
                                                 const std::vector<std::uint64_t>& orders) {
    return invariant_factors_by_counting(m, [&](std::uint64_t e) {
        std::uint64_t c = 0;
        for (const auto& v : elems) {
            bool z = true;
            for (std::size_t i = 0; i < v.size(); ++i) z = z && (v[i] * e) % orders[i] == 0;
            c += z;
        }
        return c;
    });
}

// Invariant factors of a quotient group: elements of `orders`-group modulo
// the subgroup `sub`, counted as cosets.
inline std::vector<std::uint64_t> factors_of_quotient(const std::set<Vec>& sub, std::uint64_t m,
                                                      const std::vector<std::uint64_t>& orders) {
    const auto all = all_vectors(orders);
    return invariant_factors_by_counting(m, [&](std::uint64_t e) {
        // Cosets x + sub with e x in sub.
        std::uint64_t c = 0;
        for (const auto& x : all) {
            Vec ex(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) ex[i] = (x[i] * e) % orders[i];
            c += sub.count(ex);
        }
        return c / sub.size();
    });
}

inline Mat random_matrix(std::mt19937_64& rng, std::uint64_t m, std::size_t rows, std::size_t cols) {
    Mat a(rows, Vec(cols));
    for (auto& r : a)
        for (auto& v : r) v = rng() % m;
    return a;
}

}  // namespace oracle
