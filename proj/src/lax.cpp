#include "qtoda/lax.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace qtoda {

namespace {

ZLaurent Z(const TorusElement& c, int doubled) { return ZLaurent::term(c, doubled); }

void check_k(int k) {
    if (k < -1 || k > 1) throw std::invalid_argument("Lax index must be -1, 0 or 1");
}

// 2 * S_m for the prefixes m = 0..N of k.
std::vector<int> doubled_prefix_sums(const IndexVector& k) {
    const int n = static_cast<int>(k.size());
    std::vector<int> s(n + 1, 0);
    for (int m = 1; m <= n; ++m) s[m] = s[m - 1] + k_entry(k, m) - 1;
    return s;
}

int k_product(const IndexVector& k, int from, int to) {
    int p = 1;
    for (int l = from; l <= to; ++l) p *= k_entry(k, l);
    return p;
}

TorusElement sigma(const LaxContext& ctx, const IndexVector& k, int from, int to) {
    TorusElement r = ctx.one();
    for (int l = from; l <= to; ++l) r = r * ctx.w(l, -k_entry(k, l));
    return r;
}

// H[m][j-1] is H_j for the prefix (k_m, ..., k_1).
using PrefixTable = std::vector<std::vector<TorusElement>>;

TorusElement table_get(const PrefixTable& h, int m, int j, const ContextPtr& ctx) {
    if (m < 0 || j < 1 || j > m + 1) return TorusElement(ctx);
    return h[m][j - 1];
}

PrefixTable recursive_table_A(const LaxContext& ctx, const IndexVector& k) {
    const int total = static_cast<int>(k.size());
    if (total > ctx.n) throw std::invalid_argument("index vector longer than the Lax context");
    auto S2 = doubled_prefix_sums(k);
    PrefixTable h(total + 1);
    h[0] = {ctx.one()};
    for (int n = 0; n < total; ++n) {
        for (int i = 1; i <= n + 2; ++i) {
            TorusElement v = -(ctx.w(n + 1) * table_get(h, n, i, ctx.torus)) +
                             ctx.w(n + 1, -1) * table_get(h, n, i - 1, ctx.torus);
            for (int m = 0; m <= n - 1; ++m) {
                int kk = k_product(k, m + 2, n);
                if (kk == 0) continue;
                int shift2 = 2 * (i - 1) + S2[n] - S2[m + 1];
                if (shift2 % 2 != 0) throw std::logic_error("non-integral recursion index");
                int sign = ((n - m) % 2 == 0) ? 1 : -1;
                TorusElement coeff = sigma(ctx, k, m + 1, n + 1) * ctx.D(m + 1) * ctx.D(n + 1, -1);
                v += (coeff * table_get(h, m, shift2 / 2, ctx.torus)).scaled(QPoly::constant(sign * kk));
            }
            h[n + 1].push_back(v);
        }
    }
    return h;
}

using BiTerms = std::map<std::pair<int, int>, TorusElement>;

void bi_add(BiTerms& t, std::pair<int, int> key, const TorusElement& c) {
    if (c.is_zero()) return;
    auto it = t.find(key);
    if (it == t.end()) {
        t.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
}

}  // namespace

LaxContext::LaxContext(int rank) : n(rank) {
    if (rank < 0) throw std::invalid_argument("negative rank");
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("w" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("D" + std::to_string(i));
    SkewMatrix s = zero_skew(2 * n);
    for (int i = 0; i < n; ++i) {
        s[n + i][i] = QExponent(1, 2);
        s[i][n + i] = QExponent(-1, 2);
    }
    torus = make_context(std::move(names), std::move(s));
}

TorusElement LaxContext::w(int i, int power) const {
    if (i < 1 || i > n) throw std::out_of_range("w index");
    return TorusElement::generator(torus, w_index(i), power);
}

TorusElement LaxContext::D(int i, int power) const {
    if (i < 1 || i > n) throw std::out_of_range("D index");
    return TorusElement::generator(torus, D_index(i), power);
}

LaxMatrix LaxMatrix::identity(const ContextPtr& ctx) {
    LaxMatrix m(ctx);
    m.e[0][0] = ZLaurent::constant(TorusElement::one(ctx));
    m.e[1][1] = ZLaurent::constant(TorusElement::one(ctx));
    return m;
}

LaxMatrix LaxMatrix::inverted_transpose() const {
    LaxMatrix r(context());
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) r.e[a][b] = e[b][a].inverted();
    return r;
}

LaxMatrix LaxMatrix::negated() const {
    LaxMatrix r(context());
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) r.e[a][b] = -e[a][b];
    return r;
}

LaxMatrix operator*(const LaxMatrix& a, const LaxMatrix& b) {
    LaxMatrix r(a.context());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.e[i][j] = a.e[i][0] * b.e[0][j] + a.e[i][1] * b.e[1][j];
    return r;
}

bool operator==(const LaxMatrix& a, const LaxMatrix& b) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (a.e[i][j] != b.e[i][j]) return false;
    return true;
}

nlohmann::json LaxMatrix::to_json() const {
    return {{e[0][0].to_json(), e[0][1].to_json()}, {e[1][0].to_json(), e[1][1].to_json()}};
}

LaxMatrix local_lax(const LaxContext& ctx, int i, int k, bool barred) {
    check_k(k);
    // The barred family is the unbarred one with w_i and D_i inverted.
    const int f = barred ? -1 : 1;
    auto w = [&](int p) { return ctx.w(i, f * p); };
    auto D = [&](int p) { return ctx.D(i, f * p); };
    LaxMatrix m(ctx.torus);
    switch (k) {
        case 0:
            m.e[0][0] = Z(w(-1), 1) - Z(w(1), -1);
            m.e[0][1] = Z(D(-1), 1);
            m.e[1][0] = -Z(D(1), -1);
            break;
        case -1:
            m.e[0][0] = Z(w(-1), 0) - Z(w(1), -2);
            m.e[0][1] = Z(w(1) * D(-1), 0);
            m.e[1][0] = -Z(w(1) * D(1), -2);
            m.e[1][1] = Z(w(1), 0);
            break;
        default:
            m.e[0][0] = Z(w(-1), 2) - Z(w(1), 0);
            m.e[0][1] = Z(w(-1) * D(-1), 2);
            m.e[1][0] = -Z(w(-1) * D(1), 0);
            m.e[1][1] = -Z(w(-1), 0);
            break;
    }
    return m;
}

LaxMatrix local_lax_general(const LaxContext& ctx, int i, int k) {
    check_k(k);
    const int s2 = k - 1;
    LaxMatrix m(ctx.torus);
    m.e[0][0] = Z(ctx.w(i, -1), s2 + 2) - Z(ctx.w(i), s2);
    m.e[0][1] = Z(ctx.w(i, -k) * ctx.D(i, -1), s2 + 2);
    m.e[1][0] = -Z(ctx.w(i, -k) * ctx.D(i), s2);
    if (k != 0) m.e[1][1] = Z(ctx.w(i, -k).scaled(QPoly::constant(-k)), 0);
    return m;
}

LaxMatrix monodromy(const LaxContext& ctx, const IndexVector& k) {
    const int n = static_cast<int>(k.size());
    if (n > ctx.n) throw std::invalid_argument("index vector longer than the Lax context");
    LaxMatrix t = LaxMatrix::identity(ctx.torus);
    for (int i = n; i >= 1; --i) t = t * local_lax(ctx, i, k_entry(k, i));
    return t;
}

LaxMatrix double_monodromy(const LaxContext& ctx, const IndexVector& k) {
    const int n = static_cast<int>(k.size());
    LaxMatrix t = LaxMatrix::identity(ctx.torus);
    for (int i = 1; i <= n; ++i) t = t * local_lax(ctx, i, -k_entry(k, i), true);
    return t * monodromy(ctx, k);
}

LaxMatrix double_monodromy_via_transpose(const LaxContext& ctx, const IndexVector& k) {
    LaxMatrix t = monodromy(ctx, k);
    LaxMatrix left = t.inverted_transpose();
    if (k.size() % 2 == 1) left = left.negated();
    return left * t;
}

int doubled_sigma(const IndexVector& k) { return doubled_prefix_sums(k).back(); }

std::vector<TorusElement> extract_hamiltonians_A(const ZLaurent& m11, const IndexVector& k) {
    const int n = static_cast<int>(k.size());
    const int base = doubled_sigma(k);
    std::vector<TorusElement> out;
    for (int i = 1; i <= n + 1; ++i) out.push_back(m11.coefficient(base + 2 * (i - 1)));
    for (const auto& [e, c] : m11.terms()) {
        int off = e - base;
        if (off < 0 || off % 2 != 0 || off / 2 > n)
            throw std::domain_error("monodromy entry has z^(" + QExponent(e, 2).pretty() + ") outside the window");
    }
    return out;
}

std::vector<TorusElement> extract_hamiltonians_C(const ZLaurent& m11, int n) {
    std::vector<TorusElement> out;
    for (int i = 1; i <= 2 * n + 1; ++i) out.push_back(m11.coefficient(-2 * n + 2 * (i - 1)));
    for (const auto& [e, c] : m11.terms()) {
        int off = e + 2 * n;
        if (off < 0 || off % 2 != 0 || off / 2 > 2 * n)
            throw std::domain_error("double monodromy entry has z^(" + QExponent(e, 2).pretty() + ") outside the window");
    }
    return out;
}

std::vector<TorusElement> lax_hamiltonians_A(const LaxContext& ctx, const IndexVector& k) {
    return extract_hamiltonians_A(monodromy(ctx, k).e[0][0], k);
}

std::vector<TorusElement> lax_hamiltonians_C(const LaxContext& ctx, const IndexVector& k) {
    return extract_hamiltonians_C(double_monodromy(ctx, k).e[0][0], static_cast<int>(k.size()));
}

int lax_sign_A(int factors, int i) { return ((factors + 1 - i) % 2 == 0) ? 1 : -1; }

int lax_sign_C(int n, int i) {
    (void)n;
    return (i % 2 == 1) ? 1 : -1;
}

std::vector<TorusElement> normalized_A(const std::vector<TorusElement>& hs) {
    std::vector<TorusElement> r;
    const int factors = static_cast<int>(hs.size()) - 1;
    for (std::size_t i = 0; i < hs.size(); ++i)
        r.push_back(lax_sign_A(factors, static_cast<int>(i) + 1) > 0 ? hs[i] : -hs[i]);
    return r;
}

std::vector<TorusElement> normalized_C(const std::vector<TorusElement>& hs) {
    std::vector<TorusElement> r;
    const int n = (static_cast<int>(hs.size()) - 1) / 2;
    for (std::size_t i = 0; i < hs.size(); ++i) r.push_back(lax_sign_C(n, static_cast<int>(i) + 1) > 0 ? hs[i] : -hs[i]);
    return r;
}

TorusElement hamiltonian_recursive_A(const LaxContext& ctx, const IndexVector& k, int i) {
    auto h = recursive_table_A(ctx, k);
    return table_get(h, static_cast<int>(k.size()), i, ctx.torus);
}

TorusElement hamiltonian_recursive_C(const LaxContext& ctx, const IndexVector& k, int i) {
    const int n = static_cast<int>(k.size());
    if (i < 1 || i > 2 * n + 1) return TorusElement(ctx.torus);
    auto h = recursive_table_A(ctx, k);
    auto S2 = doubled_prefix_sums(k);
    TorusElement r(ctx.torus);
    // Upper-left block: H_{n+1+j-i} H_j.
    for (int j = 1; j <= n + 1; ++j) r += table_get(h, n, n + 1 + j - i, ctx.torus) * table_get(h, n, j, ctx.torus);
    // Lower-left entries of T(z^{-1}) and T(z), expanded over the prefixes m.
    for (int mp = 0; mp <= n - 1; ++mp) {
        int cp = k_product(k, mp + 2, n);
        if (cp == 0) continue;
        TorusElement left = sigma(ctx, k, mp + 1, n) * ctx.D(mp + 1);
        for (int m = 0; m <= n - 1; ++m) {
            int c = k_product(k, m + 2, n);
            if (c == 0) continue;
            TorusElement right = sigma(ctx, k, m + 1, n) * ctx.D(m + 1);
            int sign = ((2 * n - m - mp) % 2 == 0 ? 1 : -1) * cp * c;
            int diff2 = S2[m + 1] - S2[mp + 1];
            if (diff2 % 2 != 0) throw std::logic_error("non-integral recursion index");
            for (int j = 1; j <= m + 1; ++j) {
                int jp = j + diff2 / 2 + n + 1 - i;
                TorusElement hp = table_get(h, mp, jp, ctx.torus);
                if (hp.is_zero()) continue;
                r += (left * hp * right * table_get(h, m, j, ctx.torus)).scaled(QPoly::constant(sign));
            }
        }
    }
    return n % 2 == 0 ? r : -r;
}

TorusElement bar(const LaxContext& ctx, const TorusElement& h) {
    TorusElement r(h.context());
    for (const auto& [e, c] : h.terms()) {
        ExpVec f = e;
        for (int i = 1; i <= ctx.n; ++i) f[ctx.w_index(i)] = -f[ctx.w_index(i)];
        QPoly inv;
        for (const auto& [qe, qc] : c.terms()) inv.add(-qe, qc);
        r.add_term(f, inv);
    }
    return r;
}

bool check_rtt(const LaxMatrix& t) {
    const ContextPtr& ctx = t.context();
    using Bi = BiTerms;
    auto scalar = [&](std::initializer_list<std::tuple<int, int, int>> terms) {
        // (v power, z doubled, w doubled)
        Bi b;
        for (auto [vp, dz, dw] : terms)
            bi_add(b, {dz, dw}, TorusElement::one(ctx).q_shifted(QExponent(vp)));
        return b;
    };
    auto neg = [&](Bi b) {
        for (auto& [k, c] : b) c = -c;
        return b;
    };
    // w * R~(z/w), indices (a,b) -> 2a+b.
    std::vector<std::vector<Bi>> R(4, std::vector<Bi>(4));
    Bi diag = scalar({{1, 2, 0}});
    for (auto& [k, c] : neg(scalar({{-1, 0, 2}}))) bi_add(diag, k, c);
    R[0][0] = diag;
    R[3][3] = diag;
    Bi mid = scalar({{0, 2, 0}});
    for (auto& [k, c] : neg(scalar({{0, 0, 2}}))) bi_add(mid, k, c);
    R[1][1] = mid;
    R[2][2] = mid;
    Bi up = scalar({{1, 2, 0}});
    for (auto& [k, c] : neg(scalar({{-1, 2, 0}}))) bi_add(up, k, c);
    R[1][2] = up;
    Bi low = scalar({{1, 0, 2}});
    for (auto& [k, c] : neg(scalar({{-1, 0, 2}}))) bi_add(low, k, c);
    R[2][1] = low;

    std::vector<std::vector<Bi>> T12(4, std::vector<Bi>(4)), T21(4, std::vector<Bi>(4));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    for (const auto& [ez, cz] : t.e[a][c].terms())
                        for (const auto& [ew, cw] : t.e[b][d].terms()) {
                            bi_add(T12[2 * a + b][2 * c + d], {ez, ew}, cz * cw);
                            bi_add(T21[2 * a + b][2 * c + d], {ez, ew}, cw * cz);
                        }
    auto mul = [&](const std::vector<std::vector<Bi>>& x, const std::vector<std::vector<Bi>>& y) {
        std::vector<std::vector<Bi>> r(4, std::vector<Bi>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int l = 0; l < 4; ++l)
                    for (const auto& [kx, cx] : x[i][l])
                        for (const auto& [ky, cy] : y[l][j])
                            bi_add(r[i][j], {kx.first + ky.first, kx.second + ky.second}, cx * cy);
        return r;
    };
    return mul(R, T12) == mul(T21, R);
}

nlohmann::json hamiltonians_to_json(const IndexVector& k, const std::vector<TorusElement>& hs) {
    nlohmann::json list = nlohmann::json::array();
    for (std::size_t i = 0; i < hs.size(); ++i) list.push_back({{"i", i + 1}, {"value", hs[i].to_json()}});
    return {{"index_vector", k}, {"hamiltonians", list}};
}

std::string hamiltonians_to_latex(const IndexVector& k, const std::vector<TorusElement>& hs, const std::string& symbol) {
    std::ostringstream os;
    std::string key;
    for (std::size_t i = 0; i < k.size(); ++i) key += (i ? "," : "") + std::to_string(k[i]);
    os << "\\begin{align*}\n";
    for (std::size_t i = 0; i < hs.size(); ++i)
        os << "  " << symbol << "_{" << i + 1 << "}^{(" << key << ")} &= " << hs[i].to_latex() << " \\\\\n";
    os << "\\end{align*}\n";
    return os.str();
}

}  // namespace qtoda
