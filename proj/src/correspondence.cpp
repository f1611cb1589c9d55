#include "qtoda/correspondence.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qtoda {

namespace {

// Exponent k_l of w_l in sigma-hat / sigma-tilde: the index vector (0,Q,0) read at l.
int k_at(const QuiverVector& Q, int l) { return q_entry(Q, l - 1); }

TorusElement sigma_hat(const LaxContext& lax, const QuiverVector& Q, int a, int b) {
    TorusElement r = lax.one();
    for (int l = a; l <= b; ++l) r = r * lax.w(l, -k_at(Q, l) - 1);
    return r;
}

TorusElement sigma_tilde(const LaxContext& lax, const QuiverVector& Q, int a, int b) {
    TorusElement r = lax.one();
    for (int l = a; l <= b; ++l) r = r * lax.w(l, -k_at(Q, l) + 1);
    return r;
}

std::string label_key(const PathLabel& l) { return "X" + std::to_string(l.low) + "_" + std::to_string(l.source); }

PathLabelContext make_label_context(DynkinType type, int n, const QuiverVector& Q, std::vector<PathLabel> labels,
                                    const SkewMatrix& skew) {
    std::vector<std::string> names;
    for (const auto& l : labels) names.push_back(label_key(l));
    PathLabelContext c;
    c.type = type;
    c.n = n;
    c.Q = Q;
    c.labels = std::move(labels);
    c.torus = make_context(std::move(names), skew);
    return c;
}

TorusElement w_product(const LaxContext& lax, int from, int to, int power) {
    TorusElement r = lax.one();
    for (int l = from; l <= to; ++l) r = r * lax.w(l, power);
    return r;
}

// (Q_{m-1}, ..., Q_1, 0): the index vector seen by the bottom (or mirrored top) m rows.
IndexVector block_index_vector(const QuiverVector& Q, int m) {
    IndexVector k(static_cast<std::size_t>(m), 0);
    for (int l = 2; l <= m; ++l) k[static_cast<std::size_t>(m - l)] = q_entry(Q, l - 1);
    return k;
}

TorusElement subnetwork_in_lax(const Network& sub, const LaxContext& lax, const QuiverVector& Q, int i) {
    auto paths = enumerate_labeled_paths(sub);
    TorusElement h(lax.torus);
    for (const auto& fam : label_families(sub, paths, i)) {
        TorusElement t = lax.one();
        for (const auto& l : fam) t = t * alpha_image(sub.type(), lax, Q, l);
        h += t;
    }
    return h;
}

}  // namespace

std::optional<std::size_t> PathLabelContext::index_of(const PathLabel& l) const {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
}

std::size_t PathLabelContext::require(const PathLabel& l) const {
    auto i = index_of(l);
    if (!i) throw std::out_of_range("label " + label_name(l) + " not in context");
    return *i;
}

TorusElement PathLabelContext::generator(const PathLabel& l, int power) const {
    return TorusElement::generator(torus, require(l), power);
}

int table_exponent(const PathLabel& x, const PathLabel& y) {
    const int i = x.low, j = x.source, l = y.low, m = y.source;
    const bool xd = i == j, yd = l == m;
    if (xd && yd) return 0;
    if (yd) {
        if (i == l) return -2;
        if (j == l) return 2;
        return 0;
    }
    if (xd) return -table_exponent(y, x);
    if ((i == l && j == m) || (i < l && j < m) || (i > l && j > m)) return 0;
    if ((i == l && j < m) || (i > l && j == m)) return 2;
    if ((i == l && j > m) || (i < l && j == m)) return -2;
    if (i > l && j < m) return 4;
    return -4;
}

PathLabelContext table_label_context(int n, const QuiverVector& Q) {
    std::vector<PathLabel> labels;
    for (int i = 1; i <= n + 1; ++i)
        for (int j = i; j <= n + 1; ++j) labels.push_back({i, j});
    SkewMatrix skew(labels.size(), std::vector<QExponent>(labels.size()));
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = 0; b < labels.size(); ++b) skew[a][b] = QExponent(table_exponent(labels[a], labels[b]), 2);
    return make_label_context(DynkinType::A, n, Q, std::move(labels), skew);
}

PathLabelContext network_label_context(const Network& net, const std::vector<LabeledPath>& paths) {
    std::vector<PathLabel> labels;
    for (const auto& p : paths) labels.push_back(p.label);
    const auto& t = *net.torus();
    SkewMatrix skew(paths.size(), std::vector<QExponent>(paths.size()));
    for (std::size_t a = 0; a < paths.size(); ++a)
        for (std::size_t b = 0; b < paths.size(); ++b) skew[a][b] = t.pairing(paths[a].weight, paths[b].weight);
    QuiverVector Q = net.rank() > 1 ? quiver_vector_of(net.word()) : QuiverVector{};
    return make_label_context(net.type(), net.rank(), Q, std::move(labels), skew);
}

MonomialTarget as_monomial(const TorusElement& e) {
    if (e.size() != 1) throw std::invalid_argument("not a monomial: " + e.to_string());
    const auto& [a, c] = *e.terms().begin();
    if (c.terms().size() != 1 || c.terms().begin()->second != 1)
        throw std::invalid_argument("not a unit q-power coefficient: " + e.to_string());
    return {c.terms().begin()->first, a};
}

TorusElement alpha_image(DynkinType type, const LaxContext& lax, const QuiverVector& Q, const PathLabel& l) {
    const int i = l.low, j = l.source;
    if (type == DynkinType::A) {
        if (i == j) return lax.w(i, -2);
        return sigma_hat(lax, Q, i, j) * lax.D(i) * lax.D(j, -1);
    }
    const int n = lax.n;
    if (i == j) return i <= n ? lax.w(i, -2) : lax.w(2 * n + 1 - i, 2);
    if (i == n && j == n + 1) {
        const int q = q_entry(Q, n - 1);
        return (lax.w(n, -2 * q) * lax.D(n, 2)).q_shifted(QExponent(-q));
    }
    if (j <= n) return sigma_hat(lax, Q, i, j) * lax.D(i) * lax.D(j, -1);
    if (j == n + 1) return (sigma_hat(lax, Q, i, n) * lax.D(i) * lax.D(n)).q_shifted(QExponent(-1));
    const int a = 2 * n + 1 - j;
    if (i >= n + 1) {
        const int b = 2 * n + 1 - i;
        return sigma_tilde(lax, Q, a, b) * lax.D(a) * lax.D(b, -1);
    }
    if (i == n) return (sigma_tilde(lax, Q, a, n) * lax.D(a) * lax.D(n)).q_shifted(QExponent(1));
    throw std::domain_error("label " + label_name(l) + " is not covered by the type C weight table");
}

TorusElement AlphaMap::image(const PathLabel& l) const { return alpha_image(source.type, lax, source.Q, l); }

AlphaMap build_alpha_on(const PathLabelContext& source) {
    LaxContext lax(source.type == DynkinType::A ? source.n + 1 : source.n);
    std::vector<MonomialTarget> images;
    for (const auto& l : source.labels) images.push_back(as_monomial(alpha_image(source.type, lax, source.Q, l)));
    MonomialMap map(source.torus, lax.torus, std::move(images));
    return AlphaMap{source, lax, std::move(map)};
}

AlphaMap build_alpha(DynkinType type, int n, const QuiverVector& Q) {
    if (static_cast<int>(Q.size()) != n - 1) throw std::invalid_argument("quiver vector must have length n-1");
    if (type == DynkinType::A) return build_alpha_on(table_label_context(n, Q));
    auto net = build_network(type, word_of_quiver_vector(n, Q));
    return build_alpha_on(network_label_context(net, enumerate_labeled_paths(net)));
}

std::size_t AlphaReport::failures() const {
    return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return !p.ok(); }));
}

std::size_t AlphaReport::cooccurring_failures() const {
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.cooccur && !p.ok(); }));
}

nlohmann::json AlphaReport::to_json() const {
    nlohmann::json j;
    j["type"] = type_name(type);
    j["rank"] = n;
    j["Q"] = Q;
    j["ok"] = ok();
    j["failures"] = failures();
    j["cooccurring_failures"] = cooccurring_failures();
    auto& arr = j["pairs"] = nlohmann::json::array();
    for (const auto& p : pairs)
        arr.push_back({{"a", label_name(p.a)},
                       {"b", label_name(p.b)},
                       {"expected", p.expected.pretty()},
                       {"actual", p.actual.pretty()},
                       {"cooccur", p.cooccur},
                       {"ok", p.ok()}});
    return j;
}

std::string AlphaReport::to_text() const {
    std::ostringstream os;
    os << "alpha " << type_name(type) << n << " Q=" << vector_to_string(Q) << ": " << pairs.size() << " pairs, "
       << failures() << " failing (" << cooccurring_failures() << " co-occurring)\n";
    for (const auto& p : pairs)
        if (!p.ok())
            os << "  " << label_name(p.a) << " " << label_name(p.b) << ": expected " << p.expected.pretty() << ", got "
               << p.actual.pretty() << (p.cooccur ? " [co-occur]" : "") << "\n";
    return os.str();
}

std::vector<std::vector<PathLabel>> label_families(const Network& net, const std::vector<LabeledPath>& paths, int i) {
    std::vector<std::vector<PathLabel>> out;
    for (const auto& f : enumerate_families(net, paths, i)) {
        std::vector<PathLabel> fam;
        for (auto m : f.members) fam.push_back(paths[m].label);
        out.push_back(std::move(fam));
    }
    return out;
}

AlphaReport verify_alpha_map(const AlphaMap& alpha, const std::vector<std::vector<PathLabel>>& families) {
    std::set<std::pair<std::size_t, std::size_t>> together;
    for (const auto& fam : families)
        for (const auto& x : fam)
            for (const auto& y : fam) {
                auto a = alpha.source.index_of(x), b = alpha.source.index_of(y);
                if (a && b) together.insert({*a, *b});
            }
    AlphaReport r;
    r.type = alpha.source.type;
    r.n = alpha.source.n;
    r.Q = alpha.source.Q;
    for (const auto& pr : alpha.map.verify()) {
        if (pr.i >= pr.j) continue;
        r.pairs.push_back({alpha.source.labels[pr.i], alpha.source.labels[pr.j], pr.expected, pr.actual,
                           together.count({pr.i, pr.j}) > 0});
    }
    return r;
}

AlphaReport verify_alpha_homomorphism(DynkinType type, int n, const QuiverVector& Q) {
    auto alpha = build_alpha(type, n, Q);
    auto net = build_network(type, word_of_quiver_vector(n, Q));
    auto paths = enumerate_labeled_paths(net);
    std::vector<std::vector<PathLabel>> fams;
    for (int i = 1; i <= net.row_count(); ++i)
        for (auto& f : label_families(net, paths, i)) fams.push_back(std::move(f));
    return verify_alpha_map(alpha, fams);
}

TorusElement network_hamiltonian_in_lax(const Network& net, const LaxContext& lax, const QuiverVector& Q, int i) {
    if (i < 1 || i > net.row_count()) throw std::out_of_range("Hamiltonian index out of range");
    return subnetwork_in_lax(net, lax, Q, i);
}

TorusElement network_hamiltonian_in_lax(DynkinType type, const DoubleWord& w, int i) {
    auto net = build_network(type, w);
    LaxContext lax(type == DynkinType::A ? w.n + 1 : w.n);
    return network_hamiltonian_in_lax(net, lax, w.n > 1 ? quiver_vector_of(w) : QuiverVector{}, i);
}

std::string first_difference(const TorusElement& a, const TorusElement& b) {
    auto diff = a - b;
    if (diff.is_zero()) return "";
    const auto& [e, c] = *diff.terms().begin();
    auto show = [&](const TorusElement& x) {
        auto coeff = x.coefficient(e);
        return coeff.is_zero() ? std::string("0") : coeff.to_string();
    };
    auto mono = TorusElement::monomial(a.context(), e).to_string();
    return mono + ": " + show(a) + " vs " + show(b);
}

nlohmann::json EquivalenceCheck::to_json() const {
    nlohmann::json j{{"name", name}, {"ok", ok()}};
    if (!ok()) j["first_difference"] = first_difference(network, lax);
    return j;
}

bool EquivalenceReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok(); });
}

nlohmann::json EquivalenceReport::to_json() const {
    nlohmann::json j{{"type", type_name(type)}, {"rank", word.n}, {"word", word.letters}, {"Q", Q}, {"ok", ok()}};
    auto& arr = j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) arr.push_back(c.to_json());
    return j;
}

std::string EquivalenceReport::to_text() const {
    std::ostringstream os;
    os << type_name(type) << word.n << " " << to_string(word) << ": " << (ok() ? "pass" : "FAIL") << "\n";
    for (const auto& c : checks)
        if (!c.ok()) os << "  " << c.name << " differs at " << first_difference(c.network, c.lax) << "\n";
    return os.str();
}

EquivalenceReport verify_equivalence_A(const DoubleWord& w) {
    validate_word(w);
    const int n = w.n;
    EquivalenceReport r;
    r.type = DynkinType::A;
    r.word = w;
    r.Q = n > 1 ? quiver_vector_of(w) : QuiverVector{};
    LaxContext lax(n + 1);
    auto net = build_network(DynkinType::A, w);
    // hs[i] holds H_{i+1}.
    auto hs = normalized_A(lax_hamiltonians_A(lax, index_vector_of(r.Q)));
    auto prefactor = w_product(lax, 1, n + 1, -1);
    for (int i = 1; i <= n; ++i)
        r.checks.push_back({"H_" + std::to_string(i), network_hamiltonian_in_lax(net, lax, r.Q, i), prefactor * hs[i]});
    return r;
}

EquivalenceReport verify_equivalence_C(const DoubleWord& w, bool include_subnetworks) {
    validate_word(w);
    const int n = w.n;
    EquivalenceReport r;
    r.type = DynkinType::C;
    r.word = w;
    r.Q = n > 1 ? quiver_vector_of(w) : QuiverVector{};
    LaxContext lax(n);
    auto net = build_network(DynkinType::C, w);
    IndexVector k = r.Q;
    k.push_back(0);
    auto hs = normalized_C(lax_hamiltonians_C(lax, k));
    for (int i = 1; i <= n; ++i)
        r.checks.push_back({"H_" + std::to_string(i), network_hamiltonian_in_lax(net, lax, r.Q, i), hs[i]});
    if (!include_subnetworks) return r;

    // Bottom m rows: (w_1^{-1}...w_m^{-1}) H_{i+1}; top N rows: (w_1...w_N) H_{N+1-i}.
    for (int m = 2; m <= n; ++m) {
        auto sub = subnetwork(net, 1, m);
        auto ha = normalized_A(lax_hamiltonians_A(lax, block_index_vector(r.Q, m)));
        auto pre = w_product(lax, 1, m, -1);
        for (int i = 1; i < m; ++i)
            r.checks.push_back({"rows 1.." + std::to_string(m) + " H_" + std::to_string(i),
                                subnetwork_in_lax(sub, lax, r.Q, i), pre * ha[i]});
    }
    for (int lo = n + 1; lo <= 2 * n - 1; ++lo) {
        const int rows = 2 * n + 1 - lo;
        auto sub = subnetwork(net, lo, 2 * n);
        auto ha = normalized_A(lax_hamiltonians_A(lax, block_index_vector(r.Q, rows)));
        auto pre = w_product(lax, 1, rows, 1);
        for (int i = 1; i < rows; ++i)
            r.checks.push_back({"rows " + std::to_string(lo) + ".." + std::to_string(2 * n) + " H_" + std::to_string(i),
                                subnetwork_in_lax(sub, lax, r.Q, i), pre * ha[rows - i]});
    }
    return r;
}

}  // namespace qtoda
