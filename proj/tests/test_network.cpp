#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "chip_oracle.hpp"
#include "qtoda/network.hpp"

using namespace qtoda;
using oracle::chip_product;

namespace {

// Events along one row in column order: "w:<token>" for weighted horizontal
// edges, "out<r>" / "in<r>" for slanted edges (with ":<token>" when weighted).
std::vector<std::string> row_events(const Network& net, int row) {
    std::vector<std::pair<int, std::string>> ev;
    for (const auto& e : net.edges()) {
        const auto& a = net.vertices()[e.from];
        const auto& b = net.vertices()[e.to];
        std::string tag = e.token == "1" ? "" : ":" + e.token;
        if (!e.slanted) {
            if (a.row == row && e.token != "1") ev.emplace_back(a.column, "w" + tag);
            continue;
        }
        if (a.row == row) ev.emplace_back(a.column, "out" + std::to_string(b.row) + tag);
        if (b.row == row) ev.emplace_back(b.column, "in" + std::to_string(a.row) + tag);
    }
    std::stable_sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::string> out;
    for (const auto& [c, s] : ev) out.push_back(s);
    return out;
}

std::set<std::pair<int, int>> label_set(const Network& net) {
    std::set<std::pair<int, int>> s;
    for (const auto& p : enumerate_labeled_paths(net)) s.emplace(p.label.low, p.label.source);
    return s;
}

}  // namespace

TEST(BuildNetwork, StandardA3Layout) {
    auto net = build_network(DynkinType::A, standard_word(3));
    using V = std::vector<std::string>;
    EXPECT_EQ(row_events(net, 1), (V{"in2", "w:t1", "out2:c1"}));
    EXPECT_EQ(row_events(net, 2), (V{"out1", "in3", "w:t1^-1 t2", "in1:c1", "out3:c2"}));
    EXPECT_EQ(row_events(net, 3), (V{"out2", "in4", "w:t2^-1 t3", "in2:c2", "out4:c3"}));
    EXPECT_EQ(row_events(net, 4), (V{"out3", "w:t3^-1", "in3:c3"}));
}

TEST(BuildNetwork, StandardC2Layout) {
    auto net = build_network(DynkinType::C, standard_word(2));
    using V = std::vector<std::string>;
    EXPECT_EQ(row_events(net, 1), (V{"in2", "w:t1", "out2:c1"}));
    EXPECT_EQ(row_events(net, 2), (V{"out1", "in3", "w:t1^-1 t2", "in1:c1", "out3:c2"}));
    EXPECT_EQ(row_events(net, 3), (V{"in4", "out2", "w:t1 t2^-1", "out4:c1", "in2:c2"}));
    EXPECT_EQ(row_events(net, 4), (V{"out3", "w:t1^-1", "in3:c1"}));
}

TEST(BuildNetwork, RankOneTypeA) {
    auto net = build_network(DynkinType::A, standard_word(1));
    EXPECT_EQ(net.row_count(), 2);
    using V = std::vector<std::string>;
    EXPECT_EQ(row_events(net, 1), (V{"in2", "w:t1", "out2:c1"}));
    EXPECT_EQ(row_events(net, 2), (V{"out1", "w:t1^-1", "in1:c1"}));
}

TEST(BuildNetwork, AcyclicWithSourcesLeftAndSinksRight) {
    for (auto type : {DynkinType::A, DynkinType::C})
        for (int n = 1; n <= 3; ++n)
            for (const auto& w : enumerate_double_coxeter(n)) {
                auto net = build_network(type, w);
                for (const auto& e : net.edges()) EXPECT_LT(net.vertices()[e.from].column, net.vertices()[e.to].column);
                for (int r = 1; r <= net.row_count(); ++r) {
                    EXPECT_EQ(net.vertices()[net.source(r)].role, VertexRole::Source);
                    EXPECT_EQ(net.vertices()[net.sink(r)].role, VertexRole::Sink);
                    EXPECT_TRUE(net.out_edges(net.sink(r)).empty());
                }
            }
}

TEST(ClassicalMatrix, RankOneOpenRow) {
    auto net = build_network(DynkinType::A, standard_word(1));
    auto m = classical_matrix(net);
    const auto& ctx = net.torus();
    auto t = CommutativeLaurent::generator(ctx, 0), ti = CommutativeLaurent::generator(ctx, 0, -1);
    auto c = CommutativeLaurent::generator(ctx, 1);
    EXPECT_EQ(m[0][0], t);
    EXPECT_EQ(m[0][1], t * c);
    EXPECT_EQ(m[1][0], t);
    EXPECT_EQ(m[1][1], t * c + ti);
}

TEST(ClassicalMatrix, EqualsChipProduct) {
    for (auto type : {DynkinType::A, DynkinType::C})
        for (int n = 1; n <= 4; ++n)
            for (const auto& w : enumerate_double_coxeter(n)) {
                auto net = build_network(type, w);
                EXPECT_EQ(classical_matrix(net), chip_product(type, w, net.torus())) << type_name(type) << to_string(w);
            }
}

TEST(ClassicalMatrix, ZeroWithoutPath) {
    // From row 4 of the standard A_3 word only one down-slant is reachable.
    auto m = classical_matrix(build_network(DynkinType::A, standard_word(3)));
    EXPECT_TRUE(m[3][0].is_zero());
    EXPECT_TRUE(m[3][1].is_zero());
    EXPECT_FALSE(m[3][2].is_zero());
    auto r = classical_matrix(build_network(DynkinType::A, parse_word(3, "(-3,-2,-1,1,2,3)")));
    EXPECT_FALSE(r[3][0].is_zero());
}

TEST(LabeledPaths, RankOneLabels) {
    auto net = build_network(DynkinType::A, standard_word(1));
    EXPECT_EQ(label_set(net), (std::set<std::pair<int, int>>{{1, 1}, {2, 2}, {1, 2}}));
}

TEST(LabeledPaths, RankTwoWords) {
    auto a = build_network(DynkinType::A, parse_word(2, "(-1,-2,1,2)"));
    EXPECT_EQ(label_set(a), (std::set<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 3}}));
    auto b = build_network(DynkinType::A, parse_word(2, "(-2,-1,1,2)"));
    EXPECT_EQ(label_set(b), (std::set<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 3}, {1, 3}}));
}

TEST(LabeledPaths, LabelsUniqueAndOrdered) {
    for (auto type : {DynkinType::A, DynkinType::C})
        for (int n = 1; n <= (type == DynkinType::A ? 4 : 3); ++n)
            for (const auto& w : enumerate_double_coxeter(n)) {
                auto net = build_network(type, w);
                std::vector<LabeledPath> paths;
                ASSERT_NO_THROW(paths = enumerate_labeled_paths(net));
                for (const auto& p : paths) EXPECT_LE(p.label.low, p.label.source);
                for (int r = 1; r <= net.row_count(); ++r) EXPECT_TRUE(label_set(net).count({r, r}));
            }
}

TEST(QuantizedWeight, DiagonalPathRankOne) {
    auto net = build_network(DynkinType::A, standard_word(1));
    for (const auto& p : enumerate_labeled_paths(net))
        if (p.label == PathLabel{1, 1}) {
            EXPECT_EQ(quantized_path_weight(net, p), TorusElement::generator(net.torus(), "t1"));
        }
}

TEST(QuantizedWeight, UnitPath) {
    // The bottom-row diagonal path of a subnetwork with no weighted edges on row 1.
    auto net = build_network(DynkinType::A, standard_word(2));
    for (const auto& p : enumerate_labeled_paths(net)) {
        auto e = quantized_path_weight(net, p);
        ASSERT_EQ(e.size(), 1u);
        EXPECT_EQ(e.terms().begin()->first, p.weight);
    }
}

TEST(Families, FullFamilyIsAllDiagonals) {
    for (auto type : {DynkinType::A, DynkinType::C})
        for (int n = 1; n <= 3; ++n)
            for (const auto& w : enumerate_double_coxeter(n)) {
                auto net = build_network(type, w);
                auto paths = enumerate_labeled_paths(net);
                auto fs = enumerate_families(net, paths, net.row_count());
                ASSERT_EQ(fs.size(), 1u);
                for (std::size_t m : fs[0].members) EXPECT_EQ(paths[m].label.low, paths[m].label.source);
            }
}

TEST(Families, VertexDisjoint) {
    auto net = build_network(DynkinType::C, standard_word(2));
    auto paths = enumerate_labeled_paths(net);
    for (int i = 1; i <= net.row_count(); ++i)
        for (const auto& f : enumerate_families(net, paths, i)) {
            std::set<std::size_t> seen;
            for (std::size_t m : f.members)
                for (std::size_t v : paths[m].vertices) EXPECT_TRUE(seen.insert(v).second);
            EXPECT_EQ(static_cast<int>(f.rows.size()), i);
        }
}

TEST(Families, CapIsEnforced) {
    auto net = build_network(DynkinType::A, standard_word(3));
    auto paths = enumerate_labeled_paths(net);
    setenv("QTODA_MAX_FAMILIES", "2", 1);
    EXPECT_THROW(enumerate_families(net, paths, 2), std::length_error);
    unsetenv("QTODA_MAX_FAMILIES");
    EXPECT_NO_THROW(enumerate_families(net, paths, 2));
}

TEST(NetworkHamiltonians, CommuteForEveryWord) {
    for (auto type : {DynkinType::A, DynkinType::C})
        for (int n = 1; n <= 3; ++n)
            for (const auto& w : enumerate_double_coxeter(n)) {
                auto net = build_network(type, w);
                std::vector<TorusElement> hs;
                for (int i = 1; i <= net.row_count(); ++i) hs.push_back(network_hamiltonian(net, i));
                for (std::size_t a = 0; a < hs.size(); ++a)
                    for (std::size_t b = a + 1; b < hs.size(); ++b)
                        EXPECT_TRUE(commutes(hs[a], hs[b])) << type_name(type) << to_string(w) << " " << a + 1 << "," << b + 1;
            }
}

TEST(NetworkHamiltonians, SpecializeToMinorSums) {
    // At q = 1 the sum over families of size 1 is the trace of the path matrix restricted to cycles.
    for (const auto& w : enumerate_double_coxeter(3)) {
        auto net = build_network(DynkinType::A, w);
        auto m = classical_matrix(net);
        CommutativeLaurent trace(net.torus());
        for (std::size_t i = 0; i < m.size(); ++i) trace += m[i][i];
        EXPECT_EQ(specialize_classical(network_hamiltonian(net, 1)), trace);
    }
}

TEST(Subnetwork, FullRangeIsIdentity) {
    auto net = build_network(DynkinType::C, standard_word(2));
    auto sub = subnetwork(net, 1, net.row_count());
    EXPECT_EQ(sub.edges().size(), net.edges().size());
    EXPECT_EQ(classical_matrix(sub), classical_matrix(net));
}

TEST(Subnetwork, BottomRowsOfC2LookLikeA1) {
    auto sub = subnetwork(build_network(DynkinType::C, standard_word(2)), 1, 2);
    auto a1 = build_network(DynkinType::A, standard_word(1));
    for (int r = 1; r <= 2; ++r) {
        auto se = row_events(sub, r), ae = row_events(a1, r);
        auto strip = [](std::vector<std::string> v) {
            for (auto& s : v)
                if (s[0] == 'w') s = "w";
            return v;
        };
        EXPECT_EQ(strip(se), strip(ae)) << "row " << r;
    }
    EXPECT_EQ(label_set(sub), label_set(a1));
}

TEST(Network, DotAndJsonEmit) {
    auto net = build_network(DynkinType::A, standard_word(2));
    EXPECT_NE(net.to_dot().find("digraph"), std::string::npos);
    auto j = net.to_json();
    EXPECT_EQ(j["rank"], 2);
    EXPECT_EQ(j["edges"].size(), net.edges().size());
}
