#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qtoda/algebra.hpp"
#include "qtoda/words.hpp"

namespace qtoda {

// Generators w1..wN, D1..DN with D_i w_i = v w_i D_i; v is the torus q.
struct LaxContext {
    int n = 0;
    ContextPtr torus;

    explicit LaxContext(int n);
    TorusElement w(int i, int power = 1) const;
    TorusElement D(int i, int power = 1) const;
    TorusElement one() const { return TorusElement::one(torus); }
    std::size_t w_index(int i) const { return static_cast<std::size_t>(i - 1); }
    std::size_t D_index(int i) const { return static_cast<std::size_t>(n + i - 1); }
};

struct LaxMatrix {
    ZLaurent e[2][2];

    explicit LaxMatrix(const ContextPtr& ctx) : e{{ZLaurent(ctx), ZLaurent(ctx)}, {ZLaurent(ctx), ZLaurent(ctx)}} {}
    static LaxMatrix identity(const ContextPtr& ctx);
    const ContextPtr& context() const { return e[0][0].context(); }

    // Entry-wise z -> z^{-1} followed by transposition.
    LaxMatrix inverted_transpose() const;
    LaxMatrix negated() const;

    friend LaxMatrix operator*(const LaxMatrix& a, const LaxMatrix& b);
    friend bool operator==(const LaxMatrix& a, const LaxMatrix& b);
    friend bool operator!=(const LaxMatrix& a, const LaxMatrix& b) { return !(a == b); }

    nlohmann::json to_json() const;
};

// The displayed L_i^{v,k} or, with barred set, \bar L_i^{v,k}.
LaxMatrix local_lax(const LaxContext& ctx, int i, int k, bool barred = false);
// Closed form in terms of s = (k-1)/2, valid for every k in {-1,0,1}.
LaxMatrix local_lax_general(const LaxContext& ctx, int i, int k);

// L_n^{k_n} ... L_1^{k_1}; k in display order (k_n, ..., k_1).
LaxMatrix monodromy(const LaxContext& ctx, const IndexVector& k);
// \bar L_1^{-k_1} ... \bar L_n^{-k_n} L_n^{k_n} ... L_1^{k_1}.
LaxMatrix double_monodromy(const LaxContext& ctx, const IndexVector& k);
// (-1)^n [T(z^{-1})]^T T(z).
LaxMatrix double_monodromy_via_transpose(const LaxContext& ctx, const IndexVector& k);

// 2 * sigma_n for the index vector.
int doubled_sigma(const IndexVector& k);

// H_1..H_{n+1}: coefficient of z^{sigma_n + i - 1}.
std::vector<TorusElement> extract_hamiltonians_A(const ZLaurent& m11, const IndexVector& k);
// H_1..H_{2n+1}: coefficient of z^{-n + i - 1}.
std::vector<TorusElement> extract_hamiltonians_C(const ZLaurent& m11, int n);

std::vector<TorusElement> lax_hamiltonians_A(const LaxContext& ctx, const IndexVector& k);
std::vector<TorusElement> lax_hamiltonians_C(const LaxContext& ctx, const IndexVector& k);

// Uniform sign carried by every term of the extracted H_i (type A, N factors).
int lax_sign_A(int factors, int i);
// Uniform sign carried by every term of the extracted type C H_i.
int lax_sign_C(int n, int i);
std::vector<TorusElement> normalized_A(const std::vector<TorusElement>& hs);
std::vector<TorusElement> normalized_C(const std::vector<TorusElement>& hs);

// Recursions through the type A Hamiltonians of the prefixes of k.
TorusElement hamiltonian_recursive_A(const LaxContext& ctx, const IndexVector& k, int i);
TorusElement hamiltonian_recursive_C(const LaxContext& ctx, const IndexVector& k, int i);

// w_i -> w_i^{-1}, v -> v^{-1} on the Weyl basis (an algebra automorphism).
TorusElement bar(const LaxContext& ctx, const TorusElement& h);

// R~(z/w) T1(z) T2(w) = T2(w) T1(z) R~(z/w) with the cleared R-matrix.
bool check_rtt(const LaxMatrix& t);

nlohmann::json hamiltonians_to_json(const IndexVector& k, const std::vector<TorusElement>& hs);
std::string hamiltonians_to_latex(const IndexVector& k, const std::vector<TorusElement>& hs, const std::string& symbol);

}  // namespace qtoda
