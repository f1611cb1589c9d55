#include "qtoda/network.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qtoda {

namespace {

std::string weight_token(const ContextPtr& ctx, const ExpVec& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += " ";
        s += ctx->name(i);
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

// Rows joined by the slanted edges of letter chip k, lower row first.
std::vector<std::pair<int, int>> letter_rows(DynkinType type, int n, int k) {
    std::vector<std::pair<int, int>> r{{k, k + 1}};
    if (type == DynkinType::C && k < n) r.emplace_back(2 * n - k, 2 * n + 1 - k);
    return r;
}

// Exponent of the diagonal-chip weight on row r over (t1..tn, c1..cn).
ExpVec diagonal_weight(DynkinType type, int n, int r) {
    ExpVec e(2 * n, 0);
    int sign = 1;
    if (type == DynkinType::C && r > n) {
        r = 2 * n + 1 - r;
        sign = -1;
    }
    if (r - 1 >= 1) e[r - 2] -= sign;
    if (r <= n) e[r - 1] += sign;
    return e;
}

long max_families() {
    const char* env = std::getenv("QTODA_MAX_FAMILIES");
    if (!env) return 5'000'000;
    long v = std::strtol(env, nullptr, 10);
    return v > 0 ? v : 5'000'000;
}

}  // namespace

std::string label_name(const PathLabel& l) {
    return "X_{" + std::to_string(l.low) + "," + std::to_string(l.source) + "}";
}

ContextPtr network_torus(DynkinType type, const DoubleWord& w) {
    const int n = w.n;
    QuiverVector q = quiver_vector_of(w);
    auto cartan = cartan_matrix(type, n);
    auto d = symmetrizer(type, n);
    std::vector<std::string> names;
    for (int j = 1; j <= n; ++j) names.push_back("t" + std::to_string(j));
    for (int j = 1; j <= n; ++j) names.push_back("c" + std::to_string(j));
    SkewMatrix s = zero_skew(2 * n);
    for (int j = 0; j < n; ++j) {
        s[n + j][j] = QExponent(-d[j]);
        s[j][n + j] = QExponent(d[j]);
    }
    for (int k = 1; k < n; ++k) {
        // omega_{k,k+1} = -Q_k * (-C_{k,k+1}) * d_{k+1}; the c-c skew is -omega.
        int omega = -q_entry(q, k) * (-cartan[k - 1][k]) * d[k];
        s[n + k - 1][n + k] = QExponent(-omega);
        s[n + k][n + k - 1] = QExponent(omega);
    }
    return make_context(std::move(names), std::move(s));
}

std::size_t Network::add_vertex(int row, int column, VertexRole role, VertexColour colour) {
    std::size_t id = vertices_.size();
    vertices_.push_back({id, row, column, role, colour});
    out_.emplace_back();
    return id;
}

void Network::add_edge(std::size_t from, std::size_t to, std::string token, ExpVec weight, bool slanted) {
    out_[from].push_back(edges_.size());
    edges_.push_back({from, to, std::move(token), std::move(weight), slanted});
}

Network build_network(DynkinType type, const DoubleWord& w) {
    validate_word(w);
    const int n = w.n;
    Network net;
    net.type_ = type;
    net.n_ = n;
    net.word_ = unmixed_form(w);
    net.torus_ = network_torus(type, net.word_);
    const int rows = net.row_count();
    net.lo_ = 1;
    net.hi_ = rows;

    std::vector<int> chips;  // letters with 0 for the diagonal chip
    for (int l : net.word_.letters)
        if (l < 0) chips.push_back(l);
    chips.push_back(0);
    for (int l : net.word_.letters)
        if (l > 0) chips.push_back(l);

    // Per-row vertex chain in column order.
    std::vector<std::vector<std::size_t>> chain(rows + 1);
    std::vector<std::size_t> diag_left(rows + 1, 0);
    net.sources_.assign(rows + 1, 0);
    net.sinks_.assign(rows + 1, 0);
    for (int r = 1; r <= rows; ++r) {
        net.sources_[r] = net.add_vertex(r, 0, VertexRole::Source, VertexColour::Plain);
        chain[r].push_back(net.sources_[r]);
    }
    struct Slant {
        std::size_t from, to;
        int letter;
    };
    std::vector<Slant> slants;
    for (std::size_t p = 0; p < chips.size(); ++p) {
        const int left = 2 * static_cast<int>(p) + 1;
        const int letter = chips[p];
        if (letter == 0) {
            for (int r = 1; r <= rows; ++r) {
                diag_left[r] = net.add_vertex(r, left, VertexRole::Internal, VertexColour::Plain);
                chain[r].push_back(diag_left[r]);
                chain[r].push_back(net.add_vertex(r, left + 1, VertexRole::Internal, VertexColour::Plain));
            }
            continue;
        }
        const int k = std::abs(letter);
        for (auto [lower, upper] : letter_rows(type, n, k)) {
            int tail_row = letter < 0 ? upper : lower;
            int head_row = letter < 0 ? lower : upper;
            std::size_t tail = net.add_vertex(tail_row, left, VertexRole::Internal, VertexColour::Orange);
            std::size_t head = net.add_vertex(head_row, left + 1, VertexRole::Internal, VertexColour::Black);
            chain[tail_row].push_back(tail);
            chain[head_row].push_back(head);
            slants.push_back({tail, head, letter});
        }
    }
    const int right = 2 * static_cast<int>(chips.size()) + 1;
    for (int r = 1; r <= rows; ++r) {
        net.sinks_[r] = net.add_vertex(r, right, VertexRole::Sink, VertexColour::Plain);
        chain[r].push_back(net.sinks_[r]);
    }
    for (int r = 1; r <= rows; ++r) {
        for (std::size_t i = 0; i + 1 < chain[r].size(); ++i) {
            ExpVec e(2 * n, 0);
            if (chain[r][i] == diag_left[r]) e = diagonal_weight(type, n, r);
            net.add_edge(chain[r][i], chain[r][i + 1], weight_token(net.torus_, e), e, false);
        }
    }
    for (const auto& s : slants) {
        ExpVec e(2 * n, 0);
        if (s.letter > 0) e[n + s.letter - 1] = 1;
        net.add_edge(s.from, s.to, weight_token(net.torus_, e), e, true);
    }
    return net;
}

Network subnetwork(const Network& net, int lo, int hi) {
    if (lo < net.row_lo() || hi > net.row_hi() || lo > hi) throw std::invalid_argument("invalid row range");
    Network sub;
    sub.type_ = net.type_;
    sub.n_ = net.n_;
    sub.word_ = net.word_;
    sub.torus_ = net.torus_;
    sub.lo_ = lo;
    sub.hi_ = hi;
    sub.sources_.assign(net.sources_.size(), 0);
    sub.sinks_.assign(net.sinks_.size(), 0);
    std::vector<std::size_t> remap(net.vertices_.size(), SIZE_MAX);
    for (const auto& v : net.vertices_) {
        if (v.row < lo || v.row > hi) continue;
        remap[v.id] = sub.add_vertex(v.row, v.column, v.role, v.colour);
        if (v.role == VertexRole::Source) sub.sources_[v.row] = remap[v.id];
        if (v.role == VertexRole::Sink) sub.sinks_[v.row] = remap[v.id];
    }
    for (const auto& e : net.edges_)
        if (remap[e.from] != SIZE_MAX && remap[e.to] != SIZE_MAX)
            sub.add_edge(remap[e.from], remap[e.to], e.token, e.weight, e.slanted);
    return sub;
}

LaurentMatrix classical_matrix(const Network& net) {
    const int lo = net.row_lo(), hi = net.row_hi();
    const auto& ctx = net.torus();
    std::vector<std::size_t> order(net.vertices().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return net.vertices()[a].column < net.vertices()[b].column;
    });
    LaurentMatrix m;
    for (int i = lo; i <= hi; ++i) {
        std::vector<CommutativeLaurent> acc(net.vertices().size(), CommutativeLaurent(ctx));
        acc[net.source(i)] = CommutativeLaurent::constant(ctx, 1);
        for (std::size_t v : order) {
            if (acc[v].is_zero()) continue;
            for (std::size_t ei : net.out_edges(v)) {
                const auto& e = net.edges()[ei];
                acc[e.to] += acc[v] * CommutativeLaurent::monomial(ctx, e.weight);
            }
        }
        std::vector<CommutativeLaurent> row;
        for (int j = lo; j <= hi; ++j) row.push_back(acc[net.sink(j)]);
        m.push_back(std::move(row));
    }
    return m;
}

std::vector<LabeledPath> enumerate_labeled_paths(const Network& net) {
    std::vector<LabeledPath> out;
    const std::size_t dim = net.torus()->rank();
    for (int r = net.row_lo(); r <= net.row_hi(); ++r) {
        LabeledPath cur;
        cur.vertices.push_back(net.source(r));
        std::function<void(std::size_t)> dfs = [&](std::size_t v) {
            if (net.vertices()[v].role == VertexRole::Sink) {
                if (v != net.sink(r)) return;
                LabeledPath p = cur;
                p.weight.assign(dim, 0);
                p.label = {r, r};
                for (std::size_t vi : p.vertices) p.label.low = std::min(p.label.low, net.vertices()[vi].row);
                for (std::size_t ei : p.edges)
                    for (std::size_t g = 0; g < dim; ++g) p.weight[g] += net.edges()[ei].weight[g];
                out.push_back(std::move(p));
                return;
            }
            for (std::size_t ei : net.out_edges(v)) {
                cur.edges.push_back(ei);
                cur.vertices.push_back(net.edges()[ei].to);
                dfs(net.edges()[ei].to);
                cur.vertices.pop_back();
                cur.edges.pop_back();
            }
        };
        dfs(net.source(r));
    }
    std::stable_sort(out.begin(), out.end(), [](const LabeledPath& a, const LabeledPath& b) { return a.label < b.label; });
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].label == out[i - 1].label)
            throw std::logic_error("two distinct paths share the label " + label_name(out[i].label));
    return out;
}

TorusElement quantized_path_weight(const Network& net, const LabeledPath& p) {
    return TorusElement::monomial(net.torus(), p.weight);
}

std::vector<PathFamily> enumerate_families(const Network& net, const std::vector<LabeledPath>& paths, int i) {
    const int lo = net.row_lo(), hi = net.row_hi();
    std::vector<PathFamily> out;
    if (i < 0 || i > hi - lo + 1) return out;
    const long cap = max_families();
    std::map<int, std::vector<std::size_t>> by_row;
    for (std::size_t p = 0; p < paths.size(); ++p) by_row[paths[p].label.source].push_back(p);

    std::vector<char> used(net.vertices().size(), 0);
    std::vector<int> rows;
    std::vector<std::size_t> chosen;
    std::function<void(int)> rec = [&](int next_row) {
        if (static_cast<int>(chosen.size()) == i) {
            if (static_cast<long>(out.size()) >= cap)
                throw std::length_error("family enumeration exceeded QTODA_MAX_FAMILIES");
            PathFamily f{rows, std::vector<std::size_t>(chosen.rbegin(), chosen.rend())};
            out.push_back(std::move(f));
            return;
        }
        for (int r = next_row; r <= hi; ++r) {
            if (hi - r + 1 < i - static_cast<int>(chosen.size())) break;
            for (std::size_t p : by_row[r]) {
                const auto& vs = paths[p].vertices;
                if (std::any_of(vs.begin(), vs.end(), [&](std::size_t v) { return used[v]; })) continue;
                for (std::size_t v : vs) used[v] = 1;
                rows.push_back(r);
                chosen.push_back(p);
                rec(r + 1);
                chosen.pop_back();
                rows.pop_back();
                for (std::size_t v : vs) used[v] = 0;
            }
        }
    };
    rec(lo);
    return out;
}

TorusElement family_weight(const Network& net, const std::vector<LabeledPath>& paths, const PathFamily& f) {
    TorusElement acc = TorusElement::one(net.torus());
    for (std::size_t p : f.members) acc = acc * quantized_path_weight(net, paths[p]);
    return acc;
}

TorusElement network_hamiltonian(const Network& net, int i) {
    auto paths = enumerate_labeled_paths(net);
    TorusElement h = TorusElement::zero(net.torus());
    for (const auto& f : enumerate_families(net, paths, i)) h += family_weight(net, paths, f);
    return h;
}

nlohmann::json Network::to_json() const {
    nlohmann::json j;
    j["type"] = type_name(type_);
    j["rank"] = n_;
    j["word"] = qtoda::to_json(word_);
    j["rows"] = {lo_, hi_};
    j["generators"] = torus_->names();
    auto role = [](VertexRole r) { return r == VertexRole::Source ? "source" : r == VertexRole::Sink ? "sink" : "internal"; };
    auto colour = [](VertexColour c) { return c == VertexColour::Orange ? "orange" : c == VertexColour::Black ? "black" : "plain"; };
    for (const auto& v : vertices_)
        j["vertices"].push_back({{"id", v.id}, {"row", v.row}, {"column", v.column}, {"role", role(v.role)},
                                 {"colour", colour(v.colour)}});
    for (const auto& e : edges_)
        j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"weight", e.token}, {"exponent", e.weight},
                              {"slanted", e.slanted}});
    return j;
}

std::string Network::to_dot() const {
    std::ostringstream os;
    os << "digraph network {\n  layout=neato;\n  node [shape=circle, width=0.15, label=\"\"];\n";
    for (const auto& v : vertices_) {
        os << "  v" << v.id << " [pos=\"" << v.column << "," << v.row << "!\"";
        if (v.colour == VertexColour::Orange) os << ", style=filled, fillcolor=orange";
        if (v.colour == VertexColour::Black) os << ", style=filled, fillcolor=black";
        if (v.role == VertexRole::Source) os << ", shape=plaintext, label=\"" << v.row << "\"";
        if (v.role == VertexRole::Sink) os << ", shape=plaintext, label=\"" << v.row << "\"";
        os << "];\n";
    }
    for (const auto& e : edges_) {
        os << "  v" << e.from << " -> v" << e.to;
        if (e.token != "1") os << " [label=\"" << e.token << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace qtoda
