#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtoda/algebra.hpp"
#include "qtoda/network.hpp"
#include "qtoda/words.hpp"

namespace qtoda {

using RationalMatrix = std::vector<std::vector<mpq_class>>;

// Vertices are identified by name; Coxeter seeds use "-n".."-1","1".."n".
struct Seed {
    std::vector<std::string> names;
    std::vector<bool> frozen;
    std::vector<int> d;
    RationalMatrix eps;  // exchange matrix; eps[i][j] d_j is skew-symmetric

    std::size_t size() const { return names.size(); }
    std::optional<std::size_t> index_of(const std::string& name) const;
    std::size_t require(const std::string& name) const;

    // omega_ij = eps_ij d_j: the edge weight drawn on the quiver and the
    // skew form of the X-torus.
    mpq_class omega(std::size_t i, std::size_t j) const { return eps[i][j] * d[j]; }

    bool skew_symmetrizable() const;
    // Integral wherever i or j is mutable.
    bool integral() const;

    nlohmann::json to_json() const;
    std::string to_dot() const;
    friend bool operator==(const Seed& a, const Seed& b);
};

std::string signed_name(int index);

// Seed with the given names, no arrows, none frozen.
Seed empty_seed(std::vector<std::string> names, std::vector<int> d);

// Glue seeds along shared frozen vertex names; glued vertices stay frozen
// only when frozen in both inputs and keep_frozen is set.
Seed amalgamate(const Seed& a, const Seed& b, const std::vector<std::string>& shared, bool keep_frozen = true);
// Identify pairs of frozen vertices inside one seed (first name survives).
Seed glue(const Seed& s, const std::vector<std::pair<std::string, std::string>>& pairs);

// Faces of the bottom levels as vertices, arrows from the chip rules.
// Boundary faces are frozen and named "L<k>"/"R<k>"; inner faces "-k".
Seed open_quiver(DynkinType type, const DoubleWord& w);
// The cylinder seed: open quiver with L<k> and R<k> amalgamated into "k".
Seed quiver_from_word(DynkinType type, const DoubleWord& w);
Seed quiver_from_network(const Network& net);

Seed mutate_seed(const Seed& s, std::size_t k);
Seed mutate_seed(const Seed& s, const std::string& k);
// Swap the names -k and k.
Seed sigma(const Seed& s, int k);
// mu_{-k} after sigma_k.
Seed tau(const Seed& s, int k);

// Smallest adjacency encoding over d- and frozen-preserving relabelings.
std::vector<mpq_class> canonical_encoding(const Seed& s);
bool isomorphic(const Seed& a, const Seed& b);

struct MutationSearchResult {
    bool found = false;
    std::vector<std::string> moves;  // "mu(-2)", "tau(1)", ...
    std::size_t explored = 0;
};

MutationSearchResult mutation_equivalent(const Seed& from, const Seed& to, int max_depth);
Seed apply_moves(const Seed& s, const std::vector<std::string>& moves);

// X-torus (skew omega) and commutative A-torus on the seed's names.
ContextPtr x_torus(const Seed& s);
ContextPtr a_torus(const Seed& s);
// p^*(X_i) = prod_j A_j^{eps_ji}.
MonomialMap ensemble_map(const Seed& s);

// Commutative rational function num/den.
class RationalFunction {
public:
    explicit RationalFunction(const ContextPtr& ctx);
    RationalFunction(CommutativeLaurent num, CommutativeLaurent den);
    static RationalFunction constant(const ContextPtr& ctx, const mpq_class& c);
    static RationalFunction generator(const ContextPtr& ctx, std::size_t i);
    static RationalFunction from_laurent(const CommutativeLaurent& p);

    const CommutativeLaurent& num() const { return num_; }
    const CommutativeLaurent& den() const { return den_; }
    RationalFunction inverse() const;
    RationalFunction pow(int e) const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }
    std::string to_string() const;

private:
    CommutativeLaurent num_;
    CommutativeLaurent den_;
};

using Assignment = std::vector<RationalFunction>;

// Generators of the context as rational functions.
Assignment identity_assignment(const ContextPtr& ctx);
Assignment mutate_X_classical(const Assignment& x, const Seed& s, std::size_t k);
Assignment mutate_A_classical(const Assignment& a, const Seed& s, std::size_t k);
// X_i evaluated through p^* on the given A-values.
Assignment ensemble_pullback(const Assignment& a, const Seed& s);
// mu_k^X o p_Sigma == p_{mu_k Sigma} o mu_k^A on generic A-variables.
bool ensemble_naturality_holds(const Seed& s, std::size_t k);

struct MutationFactor {
    bool binomial = false;
    QExponent qpow;  // binomial: 1 + q^{qpow} E(exponent)
    ExpVec exponent;
    int power = 1;   // +-1
};

struct FactoredExpression {
    ContextPtr torus;
    std::vector<MutationFactor> factors;
    // q -> 1 and expand commutatively.
    RationalFunction specialize_classical() const;
    nlohmann::json to_json() const;
    std::string to_string() const;
};

// mu_k^q(X_i') as factors over the X-torus of s.
FactoredExpression quantum_mutate(const Seed& s, std::size_t k, std::size_t i);

}  // namespace qtoda
