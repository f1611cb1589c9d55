#include <gtest/gtest.h>

#include <random>

#include "qtoda/cluster.hpp"

using namespace qtoda;

namespace {

RationalMatrix int_matrix(const std::vector<std::vector<int>>& m) {
    RationalMatrix r;
    for (const auto& row : m) r.emplace_back(row.begin(), row.end());
    return r;
}

// Cartan matrices written out; type C has the long root last.
std::vector<std::vector<int>> cartan_literal(DynkinType t, int n) {
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        c[i][i] = 2;
        if (i + 1 < n) c[i][i + 1] = c[i + 1][i] = -1;
    }
    if (t == DynkinType::C && n >= 2) c[n - 1][n - 2] = -2;
    return c;
}

// Quiver block templates on (-k, -(k+1), k, k+1), rows and columns in that order.
const std::vector<std::vector<int>>& block_template(int q) {
    static const std::vector<std::vector<int>> zero{{0, 0, 2, -1}, {0, 0, -1, 2}, {-2, 1, 0, 0}, {1, -2, 0, 0}};
    static const std::vector<std::vector<int>> plus{{0, -1, 2, 0}, {1, 0, -2, 2}, {-2, 2, 0, -1}, {0, -2, 1, 0}};
    static const std::vector<std::vector<int>> minus{{0, 1, 2, -2}, {-1, 0, 0, 2}, {-2, 0, 0, 1}, {2, -2, -1, 0}};
    return q == 0 ? zero : q == 1 ? plus : minus;
}

Seed random_seed(std::mt19937& rng, std::size_t m) {
    std::uniform_int_distribution<int> e(-2, 2), dd(1, 2);
    std::vector<std::string> names;
    std::vector<int> d;
    for (std::size_t i = 0; i < m; ++i) {
        names.push_back("v" + std::to_string(i));
        d.push_back(dd(rng));
    }
    Seed s = empty_seed(names, d);
    // eps_ij = S_ij d_i with S skew, so eps_ij d_j is skew.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const int x = e(rng);
            s.eps[i][j] = x * d[i];
            s.eps[j][i] = -x * d[j];
        }
    return s;
}

Seed a2_seed() { return quiver_from_word(DynkinType::A, standard_word(2)); }

// Swap adjacent letters that commute across the two parts.
std::vector<DoubleWord> mixed_neighbours(const DoubleWord& w) {
    std::vector<DoubleWord> out;
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
        const int a = w.letters[i], b = w.letters[i + 1];
        if ((a > 0) == (b > 0) || std::abs(a) == std::abs(b)) continue;
        DoubleWord v = w;
        std::swap(v.letters[i], v.letters[i + 1]);
        out.push_back(v);
    }
    return out;
}

}  // namespace

TEST(StandardSeed, BlockCartanForBothTypes) {
    for (auto t : {DynkinType::A, DynkinType::C})
        for (int n = 1; n <= 4; ++n) {
            auto s = quiver_from_word(t, standard_word(n));
            ASSERT_EQ(s.size(), static_cast<std::size_t>(2 * n));
            auto c = cartan_literal(t, n);
            std::vector<std::vector<int>> want(2 * n, std::vector<int>(2 * n, 0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    want[i][n + j] = c[i][j];
                    want[n + i][j] = -c[i][j];
                }
            EXPECT_EQ(s.eps, int_matrix(want)) << "n=" << n;
            EXPECT_TRUE(s.skew_symmetrizable());
            for (int k = 1; k <= n; ++k) {
                EXPECT_EQ(s.names[k - 1], std::to_string(-k));
                EXPECT_EQ(s.names[n + k - 1], std::to_string(k));
            }
        }
}

TEST(StandardSeed, TypeCTopBlockWeights) {
    for (int n = 2; n <= 4; ++n) {
        auto s = quiver_from_word(DynkinType::C, standard_word(n));
        auto at = [&](int a, int b) { return s.omega(s.require(std::to_string(a)), s.require(std::to_string(b))); };
        EXPECT_EQ(at(-n, n), 4);
        EXPECT_EQ(at(n - 1, -n), 2);
        EXPECT_EQ(at(n, -(n - 1)), 2);
        EXPECT_EQ(at(-1, 1), 2);
        EXPECT_EQ(s.d[s.require(std::to_string(n))], 2);
    }
}

TEST(QuiverBlocks, EveryWordMatchesTemplates) {
    for (int n = 2; n <= 4; ++n)
        for (const auto& w : enumerate_double_coxeter(n)) {
            auto s = quiver_from_network(build_network(DynkinType::A, w));
            auto Q = quiver_vector_of(w);
            auto idx = [&](int v) { return s.require(std::to_string(v)); };
            for (int k = 1; k < n; ++k) {
                const auto& t = block_template(q_entry(Q, k));
                const int vs[4] = {-k, -(k + 1), k, k + 1};
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        EXPECT_EQ(s.eps[idx(vs[a])][idx(vs[b])], t[a][b]) << to_string(w) << " block " << k;
            }
            // Nothing between levels more than one apart.
            for (int a = 1; a <= n; ++a)
                for (int b = a + 2; b <= n; ++b)
                    for (int sa : {-1, 1})
                        for (int sb : {-1, 1}) EXPECT_EQ(s.eps[idx(sa * a)][idx(sb * b)], 0);
        }
}

TEST(QuiverBlocks, HalfArrowsCloseUpForEveryWord) {
    for (auto t : {DynkinType::A, DynkinType::C})
        for (int n = 1; n <= 4; ++n)
            for (const auto& w : enumerate_double_coxeter(n)) {
                auto s = quiver_from_word(t, w);
                EXPECT_TRUE(s.integral()) << to_string(w);
                EXPECT_TRUE(s.skew_symmetrizable());
            }
    // The open quiver still carries halves.
    auto open = open_quiver(DynkinType::A, standard_word(2));
    EXPECT_FALSE(open.integral() && open.eps == quiver_from_word(DynkinType::A, standard_word(2)).eps);
    bool half = false;
    for (const auto& row : open.eps)
        for (const auto& x : row) half = half || x.get_den() == 2;
    EXPECT_TRUE(half);
}

TEST(QuiverBlocks, CommutingLettersGiveSameSeed) {
    for (auto t : {DynkinType::A, DynkinType::C})
        for (int n = 2; n <= 4; ++n)
            for (const auto& w : enumerate_double_coxeter(n)) {
                auto s = quiver_from_word(t, w);
                for (const auto& v : mixed_neighbours(w)) EXPECT_EQ(quiver_from_word(t, v), s) << to_string(v);
                EXPECT_EQ(quiver_from_word(t, unmixed_form(w)), s);
            }
}

TEST(Amalgamate, EmptyGluingIsBlockDiagonal) {
    std::mt19937 rng(1);
    auto a = random_seed(rng, 3);
    auto b = random_seed(rng, 2);
    for (std::size_t i = 0; i < b.size(); ++i) b.names[i] = "w" + std::to_string(i);
    auto r = amalgamate(a, b, {});
    ASSERT_EQ(r.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            mpq_class want = 0;
            if (i < 3 && j < 3) want = a.eps[i][j];
            if (i >= 3 && j >= 3) want = b.eps[i - 3][j - 3];
            EXPECT_EQ(r.eps[i][j], want);
        }
}

TEST(Amalgamate, SharedPairSums) {
    Seed a = empty_seed({"x", "i", "j"}, {1, 1, 1});
    Seed b = empty_seed({"i", "j", "y"}, {1, 1, 1});
    a.frozen = {false, true, true};
    b.frozen = {true, true, false};
    a.eps = int_matrix({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
    b.eps = int_matrix({{0, 2, -1}, {-2, 0, 0}, {1, 0, 0}});
    auto r = amalgamate(a, b, {"i", "j"});
    const auto i = r.require("i"), j = r.require("j"), x = r.require("x"), y = r.require("y");
    EXPECT_EQ(r.eps[i][j], 3);
    EXPECT_EQ(r.eps[j][i], -3);
    EXPECT_EQ(r.eps[x][i], 1);
    EXPECT_EQ(r.eps[i][y], -1);
    EXPECT_EQ(r.eps[x][y], 0);
    EXPECT_TRUE(r.frozen[i]);
    EXPECT_FALSE(amalgamate(a, b, {"i", "j"}, false).frozen[i]);
    EXPECT_TRUE(r.skew_symmetrizable());
}

TEST(Amalgamate, RejectsUnfrozenOrUnshared) {
    Seed a = empty_seed({"x", "i"}, {1, 1});
    Seed b = empty_seed({"i", "y"}, {1, 1});
    EXPECT_THROW(amalgamate(a, b, {"i"}), std::invalid_argument);
    a.frozen[1] = b.frozen[0] = true;
    EXPECT_THROW(amalgamate(a, b, {}), std::invalid_argument);
    EXPECT_NO_THROW(amalgamate(a, b, {"i"}));
}

TEST(Amalgamate, OpenQuiverBoundaryGluedByHand) {
    for (auto t : {DynkinType::A, DynkinType::C})
        for (int n = 1; n <= 3; ++n)
            for (const auto& w : enumerate_double_coxeter(n)) {
                auto open = open_quiver(t, w);
                // Fold R<k> into L<k> and read off in -1..-n, 1..n order.
                auto vertex = [&](int v) -> std::vector<std::size_t> {
                    if (v < 0) return {open.require(std::to_string(v))};
                    return {open.require("L" + std::to_string(v)), open.require("R" + std::to_string(v))};
                };
                std::vector<int> order;
                for (int k = 1; k <= n; ++k) order.push_back(-k);
                for (int k = 1; k <= n; ++k) order.push_back(k);
                auto cyl = quiver_from_network(build_network(t, w));
                for (std::size_t a = 0; a < order.size(); ++a)
                    for (std::size_t b = 0; b < order.size(); ++b) {
                        mpq_class sum = 0;
                        if (a != b)
                            for (auto x : vertex(order[a]))
                                for (auto y : vertex(order[b])) sum += open.eps[x][y];
                        EXPECT_EQ(cyl.eps[a][b], sum) << to_string(w);
                    }
            }
}

TEST(Mutation, SignFlip) {
    Seed s = empty_seed({"1", "2"}, {1, 1});
    s.eps = int_matrix({{0, 2}, {-2, 0}});
    EXPECT_EQ(mutate_seed(s, 0).eps, int_matrix({{0, -2}, {2, 0}}));
}

TEST(Mutation, RankThreeSecondBranch) {
    Seed s = empty_seed({"1", "2", "3"}, {1, 1, 1});
    s.eps = int_matrix({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
    auto r = mutate_seed(s, 1);
    EXPECT_EQ(r.eps[0][2], 1);
    EXPECT_EQ(r.eps[2][0], -1);
    EXPECT_EQ(r.eps[0][1], -1);
}

TEST(Mutation, InvolutionOnRandomSeeds) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::size_t> size(2, 6);
    for (int trial = 0; trial < 1000; ++trial) {
        auto s = random_seed(rng, size(rng));
        std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
        const auto k = pick(rng);
        auto once = mutate_seed(s, k);
        EXPECT_TRUE(once.skew_symmetrizable());
        EXPECT_EQ(mutate_seed(once, k), s);
    }
}

TEST(Mutation, FrozenVertexRejected) {
    Seed s = empty_seed({"1", "2"}, {1, 1});
    s.frozen[0] = true;
    EXPECT_THROW(mutate_seed(s, 0), std::invalid_argument);
    EXPECT_THROW(quantum_mutate(s, 0, 1), std::invalid_argument);
}

TEST(Tau, SigmaOnlyTouchesItsPair) {
    auto s = quiver_from_word(DynkinType::A, standard_word(3));
    auto r = sigma(s, 2);
    EXPECT_EQ(r.eps, s.eps);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.names[i] == "-2") EXPECT_EQ(r.names[i], "2");
        else if (s.names[i] == "2") EXPECT_EQ(r.names[i], "-2");
        else EXPECT_EQ(r.names[i], s.names[i]);
    }
}

TEST(Tau, InverseIsSwapAfterMutation) {
    for (auto t : {DynkinType::A, DynkinType::C})
        for (int n = 1; n <= 3; ++n)
            for (const auto& w : enumerate_double_coxeter(n)) {
                auto s = quiver_from_word(t, w);
                for (int k = 1; k <= n; ++k)
                    EXPECT_EQ(sigma(mutate_seed(tau(s, k), std::to_string(-k)), k), s) << to_string(w) << " k=" << k;
            }
}

TEST(Tau, TwiceMutatesBothVerticesOfTheLevel) {
    // tau_k tau_k = mu_{-k} mu_k up to names, so it is not an involution.
    auto s = a2_seed();
    auto tt = tau(tau(s, 1), 1);
    EXPECT_EQ(tt.names, s.names);
    EXPECT_EQ(tt, mutate_seed(mutate_seed(s, "1"), "-1"));
    EXPECT_EQ(tt.eps[1][2], -3);
    EXPECT_FALSE(isomorphic(tt, s));
}

TEST(Tau, MissingIndexThrows) {
    EXPECT_THROW(tau(a2_seed(), 3), std::out_of_range);
    EXPECT_THROW(apply_moves(a2_seed(), {"mu(7)"}), std::out_of_range);
    EXPECT_THROW(apply_moves(a2_seed(), {"nu(1)"}), std::invalid_argument);
}

TEST(Search, SameSeedIsEmptySequence) {
    auto r = mutation_equivalent(a2_seed(), a2_seed(), 3);
    EXPECT_TRUE(r.found);
    EXPECT_TRUE(r.moves.empty());
}

TEST(Search, A2ZeroToPlusByWitness) {
    auto from = quiver_from_word(DynkinType::A, word_of_quiver_vector(2, {0}));
    auto to = quiver_from_word(DynkinType::A, word_of_quiver_vector(2, {1}));
    EXPECT_FALSE(isomorphic(from, to));
    auto r = mutation_equivalent(from, to, 4);
    ASSERT_TRUE(r.found);
    EXPECT_TRUE(isomorphic(apply_moves(from, r.moves), to));
}

TEST(Search, A2PairwiseWithinDepthFour) {
    auto ws = enumerate_double_coxeter(2);
    for (const auto& a : ws)
        for (const auto& b : ws) {
            auto r = mutation_equivalent(quiver_from_word(DynkinType::A, a), quiver_from_word(DynkinType::A, b), 4);
            ASSERT_TRUE(r.found) << to_string(a) << " " << to_string(b);
            EXPECT_TRUE(isomorphic(apply_moves(quiver_from_word(DynkinType::A, a), r.moves), quiver_from_word(DynkinType::A, b)));
        }
}

TEST(Search, RankThreeAndTypeCReachStandard) {
    // Depth 6 suffices for A_3, C_2 and C_3.
    for (auto [t, n] : {std::pair{DynkinType::A, 3}, std::pair{DynkinType::C, 2}, std::pair{DynkinType::C, 3}}) {
        auto target = quiver_from_word(t, standard_word(n));
        for (const auto& w : enumerate_double_coxeter(n)) {
            auto from = quiver_from_word(t, w);
            auto r = mutation_equivalent(from, target, 6);
            ASSERT_TRUE(r.found) << to_string(w);
            EXPECT_TRUE(isomorphic(apply_moves(from, r.moves), target));
        }
    }
}

TEST(Search, DifferentSymmetrizersNeverMatch) {
    auto a = quiver_from_word(DynkinType::A, standard_word(2));
    auto c = quiver_from_word(DynkinType::C, standard_word(2));
    EXPECT_FALSE(isomorphic(a, c));
    EXPECT_FALSE(mutation_equivalent(a, c, 3).found);
}

TEST(Ensemble, RankOneNoArrows) {
    auto s = empty_seed({"1"}, {1});
    auto m = ensemble_map(s);
    EXPECT_EQ(m.images()[0].exponent, ExpVec{0});
}

TEST(Ensemble, ColumnsOfStandardA2) {
    auto s = a2_seed();
    auto m = ensemble_map(s);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) EXPECT_EQ(m.images()[i].exponent[j], s.eps[j][i]);
    // X_{-1} -> A_1^{-2} A_2
    EXPECT_EQ(m.images()[0].exponent, (ExpVec{0, 0, -2, 1}));
}

TEST(Ensemble, NaturalityOnA2AndA3Seeds) {
    for (int n = 2; n <= 3; ++n)
        for (const auto& w : enumerate_double_coxeter(n)) {
            auto s = quiver_from_word(DynkinType::A, w);
            for (std::size_t k = 0; k < s.size(); ++k) EXPECT_TRUE(ensemble_naturality_holds(s, k)) << to_string(w) << " k=" << k;
        }
}

TEST(Ensemble, NaturalityByHandOnA2) {
    // mu_k^X(p^*) against p^*_{mu_k} of mu_k^A, written out with the classical formulas.
    auto s = a2_seed();
    auto actx = a_torus(s);
    auto a = identity_assignment(actx);
    for (std::size_t k = 0; k < s.size(); ++k) {
        auto lhs = mutate_X_classical(ensemble_pullback(a, s), s, k);
        auto rhs = ensemble_pullback(mutate_A_classical(a, s, k), mutate_seed(s, k));
        for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(lhs[i], rhs[i]) << "k=" << k << " i=" << i;
    }
}

TEST(ClassicalX, MutatedVertexInverts) {
    auto s = a2_seed();
    auto x = identity_assignment(x_torus(s));
    for (std::size_t k = 0; k < s.size(); ++k) EXPECT_EQ(mutate_X_classical(x, s, k)[k], x[k].inverse());
}

TEST(ClassicalX, UnlinkedVertexUnchanged) {
    auto s = a2_seed();
    auto x = identity_assignment(x_torus(s));
    for (std::size_t k = 0; k < s.size(); ++k) {
        auto y = mutate_X_classical(x, s, k);
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != k && s.eps[k][i] == 0) {
                EXPECT_EQ(y[i], x[i]);
            }
    }
}

TEST(ClassicalX, SingleArrowFormula) {
    // eps_{-1,2} = -1: X_2' = X_2 (1 + X_{-1}).
    auto s = a2_seed();
    auto ctx = x_torus(s);
    auto x = identity_assignment(ctx);
    auto y = mutate_X_classical(x, s, 0);
    EXPECT_EQ(y[3], x[3] * (RationalFunction::constant(ctx, 1) + x[0]));
    // eps_{-1,1} = 2: X_1' = X_1 X_{-1}^2 (1 + X_{-1})^{-2}.
    EXPECT_EQ(y[2], x[2] * x[0].pow(2) * (RationalFunction::constant(ctx, 1) + x[0]).pow(-2));
}

TEST(ClassicalX, DoubleMutationRestores) {
    auto s = a2_seed();
    auto x = identity_assignment(x_torus(s));
    for (std::size_t k = 0; k < s.size(); ++k) {
        auto y = mutate_X_classical(mutate_X_classical(x, s, k), mutate_seed(s, k), k);
        for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(y[i], x[i]);
    }
}

TEST(ClassicalA, ExchangeRelation) {
    // A_{-1} A_{-1}' = A_2 + A_1^2 on the standard A_2 seed.
    auto s = a2_seed();
    auto ctx = a_torus(s);
    auto a = identity_assignment(ctx);
    auto b = mutate_A_classical(a, s, 0);
    EXPECT_EQ(a[0] * b[0], a[3] + a[2].pow(2));
    EXPECT_EQ(b[1], a[1]);
}

TEST(QuantumMutation, MutatedVertex) {
    auto s = a2_seed();
    auto fe = quantum_mutate(s, 1, 1);
    ASSERT_EQ(fe.factors.size(), 1u);
    EXPECT_FALSE(fe.factors[0].binomial);
    EXPECT_EQ(fe.factors[0].power, -1);
    EXPECT_EQ(fe.factors[0].exponent, (ExpVec{0, 1, 0, 0}));
}

TEST(QuantumMutation, UnlinkedVertex) {
    auto s = a2_seed();
    auto fe = quantum_mutate(s, 0, 1);  // eps_{-1,-2} = 0
    ASSERT_EQ(fe.factors.size(), 1u);
    EXPECT_EQ(fe.factors[0].exponent, (ExpVec{0, 1, 0, 0}));
    EXPECT_EQ(fe.factors[0].power, 1);
}

TEST(QuantumMutation, BinomialPowersUseSymmetrizer) {
    auto s = quiver_from_word(DynkinType::C, standard_word(2));
    // eps_{1,-2} = 1 with d_{-2} = 2; eps_{-1,1} = 2 with d_1 = 1.
    auto fe = quantum_mutate(s, s.require("1"), s.require("-2"));
    ASSERT_EQ(fe.factors.size(), 2u);
    EXPECT_TRUE(fe.factors[1].binomial);
    EXPECT_EQ(fe.factors[1].qpow, QExponent(2));
    EXPECT_EQ(fe.factors[1].power, -1);
    auto fe2 = quantum_mutate(s, s.require("-1"), s.require("1"));
    ASSERT_EQ(fe2.factors.size(), 3u);
    EXPECT_EQ(fe2.factors[1].qpow, QExponent(1));
    EXPECT_EQ(fe2.factors[2].qpow, QExponent(3));
}

TEST(QuantumMutation, SpecializesToClassical) {
    for (auto t : {DynkinType::A, DynkinType::C}) {
        auto s = quiver_from_word(t, standard_word(2));
        for (std::size_t k = 0; k < s.size(); ++k)
            for (std::size_t i = 0; i < s.size(); ++i) {
                auto fe = quantum_mutate(s, k, i);
                auto y = mutate_X_classical(identity_assignment(fe.torus), s, k);
                EXPECT_EQ(fe.specialize_classical(), y[i]) << "k=" << k << " i=" << i;
            }
    }
}

TEST(Emitters, JsonAndDot) {
    auto s = quiver_from_word(DynkinType::C, standard_word(2));
    auto j = s.to_json();
    EXPECT_EQ(j["d"], (nlohmann::json{1, 2, 1, 2}));
    EXPECT_EQ(j["vertices"].size(), 4u);
    auto dot = s.to_dot();
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("4"), std::string::npos);
    EXPECT_NE(open_quiver(DynkinType::A, standard_word(2)).to_dot().find("dashed"), std::string::npos);
}
