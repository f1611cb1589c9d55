#pragma once

#include <cstdlib>
#include <tuple>
#include <vector>

#include "qtoda/algebra.hpp"
#include "qtoda/words.hpp"

namespace qtoda::oracle {

using Matrix = std::vector<std::vector<CommutativeLaurent>>;

inline Matrix identity(const ContextPtr& ctx, int m) {
    Matrix r(m, std::vector<CommutativeLaurent>(m, CommutativeLaurent(ctx)));
    for (int i = 0; i < m; ++i) r[i][i] = CommutativeLaurent::constant(ctx, 1);
    return r;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    const auto& ctx = a[0][0].context();
    const std::size_t m = a.size();
    Matrix r(m, std::vector<CommutativeLaurent>(m, CommutativeLaurent(ctx)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k)
            if (!a[i][k].is_zero())
                for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

// Product of the chip matrices of the word (negative letters, D, positive letters).
// Rows are 1-based from the bottom; entry (i,j) collects paths from source i to sink j.
inline Matrix chip_product(DynkinType type, const DoubleWord& w, const ContextPtr& ctx) {
    const int n = w.n;
    const int rows = type == DynkinType::A ? n + 1 : 2 * n;
    auto t = [&](int j) { return CommutativeLaurent::generator(ctx, static_cast<std::size_t>(j - 1)); };
    auto tinv = [&](int j) { return CommutativeLaurent::generator(ctx, static_cast<std::size_t>(j - 1), -1); };
    auto c = [&](int j) { return CommutativeLaurent::generator(ctx, static_cast<std::size_t>(n + j - 1)); };
    auto one = CommutativeLaurent::constant(ctx, 1);
    auto slant = [&](std::vector<std::tuple<int, int, CommutativeLaurent>> es) {
        Matrix m = identity(ctx, rows);
        for (auto& [from, to, wt] : es) m[from - 1][to - 1] = wt;
        return m;
    };
    auto chip = [&](int letter) {
        const int k = std::abs(letter);
        std::vector<std::tuple<int, int, CommutativeLaurent>> es;
        if (letter < 0) {
            es.emplace_back(k + 1, k, one);
            if (type == DynkinType::C && k < n) es.emplace_back(2 * n + 1 - k, 2 * n - k, one);
        } else {
            es.emplace_back(k, k + 1, c(k));
            if (type == DynkinType::C && k < n) es.emplace_back(2 * n - k, 2 * n + 1 - k, c(k));
        }
        return slant(es);
    };
    Matrix d = identity(ctx, rows);
    if (type == DynkinType::A) {
        for (int r = 1; r <= n + 1; ++r) {
            CommutativeLaurent v = one;
            if (r <= n) v = v * t(r);
            if (r >= 2) v = v * tinv(r - 1);
            d[r - 1][r - 1] = v;
        }
    } else {
        for (int r = 1; r <= n; ++r) d[r - 1][r - 1] = r == 1 ? t(1) : tinv(r - 1) * t(r);
        for (int r = 1; r <= n; ++r) d[2 * n - r][2 * n - r] = r == 1 ? tinv(1) : t(r - 1) * tinv(r);
    }
    Matrix m = identity(ctx, rows);
    for (int l : w.letters)
        if (l < 0) m = multiply(m, chip(l));
    m = multiply(m, d);
    for (int l : w.letters)
        if (l > 0) m = multiply(m, chip(l));
    return m;
}

}  // namespace qtoda::oracle
