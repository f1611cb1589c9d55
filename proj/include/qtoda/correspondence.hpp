#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtoda/algebra.hpp"
#include "qtoda/lax.hpp"
#include "qtoda/network.hpp"
#include "qtoda/words.hpp"

namespace qtoda {

// Quantum torus on path labels X_{i,j}; generator order follows `labels`.
struct PathLabelContext {
    DynkinType type = DynkinType::A;
    int n = 0;
    QuiverVector Q;
    std::vector<PathLabel> labels;
    ContextPtr torus;

    std::optional<std::size_t> index_of(const PathLabel& l) const;
    std::size_t require(const PathLabel& l) const;
    TorusElement generator(const PathLabel& l, int power = 1) const;
};

// q-exponent A in X_{i,j} X_{l,m} = q^A X_{l,m} X_{i,j} from the type A table
// (i <= j, l <= m). The torus skew is A/2.
int table_exponent(const PathLabel& a, const PathLabel& b);

// All X_{i,j}, 1 <= i <= j <= n+1, with skew from table_exponent.
PathLabelContext table_label_context(int n, const QuiverVector& Q);
// The labels of the network's paths with the skew their quantized weights induce.
PathLabelContext network_label_context(const Network& net, const std::vector<LabeledPath>& paths);

struct AlphaMap {
    PathLabelContext source;
    LaxContext lax;
    MonomialMap map;
    // alpha(X) as a product of Lax generators in written order.
    TorusElement image(const PathLabel& l) const;
};

// Single-term element as q^c E(a).
MonomialTarget as_monomial(const TorusElement& e);

// Image of one label under alpha; throws std::domain_error for labels the
// type C table does not cover.
TorusElement alpha_image(DynkinType type, const LaxContext& lax, const QuiverVector& Q, const PathLabel& l);

// Type A uses the table context; type C uses the network context of the word of Q.
AlphaMap build_alpha(DynkinType type, int n, const QuiverVector& Q);
// alpha on an explicit source context (e.g. the network labels of a type A word).
AlphaMap build_alpha_on(const PathLabelContext& source);

struct AlphaPairCheck {
    PathLabel a;
    PathLabel b;
    QExponent expected;  // source skew
    QExponent actual;    // skew of the images
    bool cooccur = false;  // a and b appear together in some path family
    bool ok() const { return expected == actual; }
};

struct AlphaReport {
    DynkinType type = DynkinType::A;
    int n = 0;
    QuiverVector Q;
    std::vector<AlphaPairCheck> pairs;
    std::size_t failures() const;
    std::size_t cooccurring_failures() const;
    bool ok() const { return failures() == 0; }
    nlohmann::json to_json() const;
    std::string to_text() const;
};

AlphaReport verify_alpha_homomorphism(DynkinType type, int n, const QuiverVector& Q);
AlphaReport verify_alpha_map(const AlphaMap& alpha, const std::vector<std::vector<PathLabel>>& families = {});

// Label families of the network for index i, each in descending source order.
std::vector<std::vector<PathLabel>> label_families(const Network& net, const std::vector<LabeledPath>& paths, int i);

// Sum over families of the ordered product of alpha-images.
TorusElement network_hamiltonian_in_lax(const Network& net, const LaxContext& lax, const QuiverVector& Q, int i);
TorusElement network_hamiltonian_in_lax(DynkinType type, const DoubleWord& w, int i);

struct EquivalenceCheck {
    std::string name;  // "H_1", "rows 1..2 H_1", ...
    TorusElement network;
    TorusElement lax;
    bool ok() const { return network == lax; }
    nlohmann::json to_json() const;
};

struct EquivalenceReport {
    DynkinType type = DynkinType::A;
    DoubleWord word;
    QuiverVector Q;
    std::vector<EquivalenceCheck> checks;
    bool ok() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

// H_i^net against (w_1^{-1}...w_{n+1}^{-1}) H_{i+1}^{(0,Q,0)}, prefactor on the left.
EquivalenceReport verify_equivalence_A(const DoubleWord& w);
// Full network against H_{i+1}^{(Q,0)}, plus the bottom and top subnetwork identities.
EquivalenceReport verify_equivalence_C(const DoubleWord& w, bool include_subnetworks = true);

// First Weyl term on which two elements differ, for reports.
std::string first_difference(const TorusElement& a, const TorusElement& b);

}  // namespace qtoda
