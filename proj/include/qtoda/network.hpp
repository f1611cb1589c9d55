#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtoda/algebra.hpp"
#include "qtoda/words.hpp"

namespace qtoda {

enum class VertexRole { Source, Sink, Internal };
// Orange marks the tail of a slanted edge, black its head; Plain is used for
// boundary and diagonal-chip vertices.
enum class VertexColour { Plain, Orange, Black };

struct NetVertex {
    std::size_t id = 0;
    int row = 0;
    int column = 0;
    VertexRole role = VertexRole::Internal;
    VertexColour colour = VertexColour::Plain;
};

struct NetEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::string token;  // "1", "t1", "t1^-1 t2", "c2", ...
    ExpVec weight;      // exponents over (t1..tn, c1..cn)
    bool slanted = false;
};

class Network {
public:
    DynkinType type() const { return type_; }
    int rank() const { return n_; }
    const DoubleWord& word() const { return word_; }
    int row_count() const { return type_ == DynkinType::A ? n_ + 1 : 2 * n_; }
    int row_lo() const { return lo_; }
    int row_hi() const { return hi_; }
    const std::vector<NetVertex>& vertices() const { return vertices_; }
    const std::vector<NetEdge>& edges() const { return edges_; }
    const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_.at(v); }
    std::size_t source(int row) const { return sources_.at(row); }
    std::size_t sink(int row) const { return sinks_.at(row); }
    // Torus of edge weights, generators t1..tn, c1..cn.
    const ContextPtr& torus() const { return torus_; }

    nlohmann::json to_json() const;
    std::string to_dot() const;

private:
    friend Network build_network(DynkinType type, const DoubleWord& w);
    friend Network subnetwork(const Network& net, int lo, int hi);

    std::size_t add_vertex(int row, int column, VertexRole role, VertexColour colour);
    void add_edge(std::size_t from, std::size_t to, std::string token, ExpVec weight, bool slanted);

    DynkinType type_ = DynkinType::A;
    int n_ = 0;
    int lo_ = 1;
    int hi_ = 0;
    DoubleWord word_;
    std::vector<NetVertex> vertices_;
    std::vector<NetEdge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::size_t> sources_;  // indexed by row, slot 0 unused
    std::vector<std::size_t> sinks_;
    ContextPtr torus_;
};

// Commutation data of the edge weights for the given word.
ContextPtr network_torus(DynkinType type, const DoubleWord& w);

Network build_network(DynkinType type, const DoubleWord& w);
// Rows lo..hi with every edge leaving the range removed.
Network subnetwork(const Network& net, int lo, int hi);

using LaurentMatrix = std::vector<std::vector<CommutativeLaurent>>;
// Entry (i,j), 0-based, is the sum of path weights from source row i+1 to sink row j+1.
LaurentMatrix classical_matrix(const Network& net);

struct PathLabel {
    int low = 0;     // lowest visited row
    int source = 0;  // source row (= sink row)
    friend bool operator==(const PathLabel& a, const PathLabel& b) { return a.low == b.low && a.source == b.source; }
    friend bool operator<(const PathLabel& a, const PathLabel& b) {
        return a.low != b.low ? a.low < b.low : a.source < b.source;
    }
};

std::string label_name(const PathLabel& l);  // "X_{j,k}"

struct LabeledPath {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;
    PathLabel label;
    ExpVec weight;  // summed exponent over the network torus
};

// All source-to-sink paths ending on their own row, sorted by label.
// Throws std::logic_error if two paths share a label.
std::vector<LabeledPath> enumerate_labeled_paths(const Network& net);
TorusElement quantized_path_weight(const Network& net, const LabeledPath& p);

struct PathFamily {
    std::vector<int> rows;                 // index set I, ascending
    std::vector<std::size_t> members;      // indices into the path list, descending source row
};

// Vertex-disjoint families whose sources and sinks are exactly i rows.
// The environment variable QTODA_MAX_FAMILIES caps the number produced.
std::vector<PathFamily> enumerate_families(const Network& net, const std::vector<LabeledPath>& paths, int i);

// Sum over families of the top-to-bottom product of path weights.
TorusElement network_hamiltonian(const Network& net, int i);
TorusElement family_weight(const Network& net, const std::vector<LabeledPath>& paths, const PathFamily& f);

}  // namespace qtoda
