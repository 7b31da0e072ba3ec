#pragma once

// Dense reference implementations used only by the tests. They share nothing
// with the library beyond plain edge lists: operators are read off their
// truth-table digits, the transition matrix is materialized, classes come
// from a transitive closure and absorption from Gaussian elimination.

#include <algorithm>
#include <bitset>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Edges = std::vector<std::pair<int, int>>;  // 0-indexed

// Truth table of operator k: the hex digit written in binary is
// f(0,0) f(0,1) f(1,0) f(1,1), most significant first.
inline int apply(int k, int a, int b) {
    static const char* const tables[16] = {"0000", "0001", "0010", "0011", "0100", "0101", "0110", "0111",
                                           "1000", "1001", "1010", "1011", "1100", "1101", "1110", "1111"};
    return tables[k][a * 2 + b] - '0';
}

struct Dense {
    int n = 0;
    int size = 0;
    std::vector<std::vector<double>> p;  // p[s][t]
};

// When drop_swaps is set, outcomes in which both endpoints change value are
// turned into self-loops. Only used to diagnose where the class
// structure comes from; the real chain keeps them.
inline Dense build(int n, const Edges& edges, const std::vector<int>& ops, const std::vector<double>& probs,
                   const std::vector<double>& weights = {}, bool drop_swaps = false) {
    Dense d;
    d.n = n;
    d.size = 1 << n;
    d.p.assign(static_cast<std::size_t>(d.size), std::vector<double>(static_cast<std::size_t>(d.size), 0.0));
    const double uniform = 1.0 / static_cast<double>(edges.size());
    for (int s = 0; s < d.size; ++s) {
        auto& row = d.p[static_cast<std::size_t>(s)];
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto [i, j] = edges[e];
            const int xi = (s >> i) & 1;
            const int xj = (s >> j) & 1;
            const double w = weights.empty() ? uniform : weights[e];
            for (std::size_t k = 0; k < ops.size(); ++k) {
                for (std::size_t l = 0; l < ops.size(); ++l) {
                    const int yi = apply(ops[k], xi, xj);
                    const int yj = apply(ops[l], xj, xi);
                    int t = s;
                    t = yi ? (t | (1 << i)) : (t & ~(1 << i));
                    t = yj ? (t | (1 << j)) : (t & ~(1 << j));
                    if (drop_swaps && yi != xi && yj != xj) t = s;
                    row[static_cast<std::size_t>(t)] += w * probs[k] * probs[l];
                }
            }
        }
    }
    return d;
}

inline Dense build_uniform(int n, const Edges& edges, const std::vector<int>& ops, bool drop_swaps = false) {
    return build(n, edges, ops, std::vector<double>(ops.size(), 1.0 / static_cast<double>(ops.size())), {},
                 drop_swaps);
}

struct Classes {
    std::set<std::set<int>> partition;
    std::vector<int> absorbing;
    bool absorbing_chain = false;
};

inline Classes classes(const Dense& d) {
    constexpr int cap = 1 << 10;
    if (d.size > cap) throw std::length_error("oracle closure limited to 10 nodes");
    std::vector<std::bitset<cap>> reach(static_cast<std::size_t>(d.size));
    for (int s = 0; s < d.size; ++s) {
        reach[static_cast<std::size_t>(s)].set(static_cast<std::size_t>(s));
        for (int t = 0; t < d.size; ++t)
            if (d.p[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] > 0.0)
                reach[static_cast<std::size_t>(s)].set(static_cast<std::size_t>(t));
    }
    for (int k = 0; k < d.size; ++k)
        for (int i = 0; i < d.size; ++i)
            if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
                reach[static_cast<std::size_t>(i)] |= reach[static_cast<std::size_t>(k)];

    Classes out;
    for (int s = 0; s < d.size; ++s) {
        std::set<int> cls;
        for (int t = 0; t < d.size; ++t)
            if (reach[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] &&
                reach[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)])
                cls.insert(t);
        out.partition.insert(cls);
        if (d.p[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] > 1.0 - 1e-12) out.absorbing.push_back(s);
    }
    out.absorbing_chain = !out.absorbing.empty();
    for (int s = 0; s < d.size && out.absorbing_chain; ++s) {
        bool hits = false;
        for (int a : out.absorbing) hits = hits || reach[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
        out.absorbing_chain = hits;
    }
    return out;
}

// Absorption probabilities from `start` by solving (I - Q) B = R with
// partial-pivoting elimination over all transient states.
inline std::map<int, double> absorption(const Dense& d, int start) {
    std::vector<int> transient;
    std::vector<int> absorbing;
    for (int s = 0; s < d.size; ++s)
        (d.p[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] > 1.0 - 1e-12 ? absorbing : transient).push_back(s);
    const auto m = transient.size();
    const auto r = absorbing.size();
    std::vector<std::vector<double>> a(m, std::vector<double>(m + r, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            a[i][j] = (i == j ? 1.0 : 0.0) - d.p[static_cast<std::size_t>(transient[i])][static_cast<std::size_t>(transient[j])];
        for (std::size_t j = 0; j < r; ++j)
            a[i][m + j] = d.p[static_cast<std::size_t>(transient[i])][static_cast<std::size_t>(absorbing[j])];
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < m; ++i)
            if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
        if (std::abs(a[piv][c]) < 1e-300) throw std::runtime_error("singular system: chain is not absorbing");
        std::swap(a[c], a[piv]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == c || a[i][c] == 0.0) continue;
            const double f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < m + r; ++j) a[i][j] -= f * a[c][j];
        }
    }
    const auto row = static_cast<std::size_t>(std::find(transient.begin(), transient.end(), start) - transient.begin());
    if (row == m) throw std::invalid_argument("start is absorbing");
    std::map<int, double> out;
    for (std::size_t j = 0; j < r; ++j) {
        const double v = a[row][m + j] / a[row][row];
        if (v > 0.0) out[absorbing[j]] = v;
    }
    return out;
}

}  // namespace oracle
