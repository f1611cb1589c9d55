#include "qtoda/cluster.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qtoda {

namespace {

mpq_class abs_q(const mpq_class& x) { return x < 0 ? mpq_class(-x) : x; }

int to_int(const mpq_class& x, const char* what) {
    if (x.get_den() != 1) throw std::domain_error(std::string(what) + " is not an integer: " + x.get_str());
    return static_cast<int>(x.get_num().get_si());
}

nlohmann::json rational_json(const mpq_class& x) {
    if (x.get_den() == 1) return x.get_num().get_si();
    return x.get_str();
}

Seed make_seed(std::vector<std::string> names, std::vector<bool> frozen, std::vector<int> d) {
    Seed s;
    const std::size_t m = names.size();
    s.names = std::move(names);
    s.frozen = std::move(frozen);
    s.d = std::move(d);
    s.eps.assign(m, std::vector<mpq_class>(m, 0));
    return s;
}

// Cartan scaling of an arrow count between levels a and b.
mpq_class level_factor(const std::vector<std::vector<int>>& c, int a, int b) {
    if (a == b) return 1;
    return -c[a - 1][b - 1];
}

std::string face_name(int level, int slot) { return "f" + std::to_string(level) + "." + std::to_string(slot); }

// Chip sequence read from the slanted edges of the bottom levels, by column.
DoubleWord word_from_network(const Network& net) {
    const int n = net.rank();
    std::vector<std::pair<int, int>> chips;  // column, letter
    for (const auto& e : net.edges()) {
        if (!e.slanted) continue;
        const auto& a = net.vertices()[e.from];
        const auto& b = net.vertices()[e.to];
        const int lower = std::min(a.row, b.row);
        if (lower > n || std::abs(a.row - b.row) != 1) continue;
        chips.emplace_back(a.column, a.row > b.row ? -lower : lower);
    }
    std::sort(chips.begin(), chips.end());
    DoubleWord w{n, {}};
    for (auto [col, l] : chips) w.letters.push_back(l);
    validate_word(w);
    return w;
}

std::string encode(const std::vector<mpq_class>& v) {
    std::string s;
    for (const auto& x : v) s += x.get_str() + ",";
    return s;
}

CommutativeLaurent monomial_of(const ContextPtr& ctx, const ExpVec& e) { return CommutativeLaurent::monomial(ctx, e); }

}  // namespace

std::optional<std::size_t> Seed::index_of(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

std::size_t Seed::require(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw std::out_of_range("no vertex named " + name);
    return *i;
}

bool Seed::skew_symmetrizable() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (eps[i][j] * d[j] != -eps[j][i] * d[i]) return false;
    return true;
}

bool Seed::integral() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if ((!frozen[i] || !frozen[j]) && eps[i][j].get_den() != 1) return false;
    return true;
}

nlohmann::json Seed::to_json() const {
    nlohmann::json j;
    j["vertices"] = names;
    j["frozen"] = frozen;
    j["d"] = d;
    auto& e = j["eps"] = nlohmann::json::array();
    auto& w = j["omega"] = nlohmann::json::array();
    for (std::size_t a = 0; a < size(); ++a) {
        nlohmann::json re = nlohmann::json::array(), rw = nlohmann::json::array();
        for (std::size_t b = 0; b < size(); ++b) {
            re.push_back(rational_json(eps[a][b]));
            rw.push_back(rational_json(omega(a, b)));
        }
        e.push_back(re);
        w.push_back(rw);
    }
    return j;
}

std::string Seed::to_dot() const {
    std::ostringstream os;
    os << "digraph quiver {\n  node [shape=circle];\n";
    for (std::size_t i = 0; i < size(); ++i)
        os << "  \"" << names[i] << "\"" << (frozen[i] ? " [shape=box]" : "") << ";\n";
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) {
            mpq_class w = omega(i, j);
            if (w <= 0) continue;
            os << "  \"" << names[i] << "\" -> \"" << names[j] << "\" [label=\"" << w.get_str() << "\"";
            if (w.get_den() != 1) os << ", style=dashed";
            os << "];\n";
        }
    os << "}\n";
    return os.str();
}

bool operator==(const Seed& a, const Seed& b) {
    return a.names == b.names && a.frozen == b.frozen && a.d == b.d && a.eps == b.eps;
}

std::string signed_name(int index) { return std::to_string(index); }

Seed empty_seed(std::vector<std::string> names, std::vector<int> d) {
    if (names.size() != d.size()) throw std::invalid_argument("names and symmetrizers differ in length");
    std::vector<bool> frozen(names.size(), false);
    return make_seed(std::move(names), std::move(frozen), std::move(d));
}

Seed amalgamate(const Seed& a, const Seed& b, const std::vector<std::string>& shared, bool keep_frozen) {
    for (const auto& name : shared) {
        auto ia = a.index_of(name), ib = b.index_of(name);
        if (!ia || !ib || !a.frozen[*ia] || !b.frozen[*ib])
            throw std::invalid_argument("amalgamation vertex " + name + " is not frozen in both seeds");
        if (a.d[*ia] != b.d[*ib]) throw std::invalid_argument("amalgamation vertex " + name + " has two symmetrizers");
    }
    std::set<std::string> sh(shared.begin(), shared.end());
    for (const auto& name : b.names)
        if (a.index_of(name) && !sh.count(name)) throw std::invalid_argument("vertex " + name + " in both seeds but not shared");

    std::vector<std::string> names = a.names;
    std::vector<bool> frozen = a.frozen;
    std::vector<int> d = a.d;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!sh.count(b.names[i])) {
            names.push_back(b.names[i]);
            frozen.push_back(b.frozen[i]);
            d.push_back(b.d[i]);
        }
    for (const auto& name : shared) frozen[static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin())] = keep_frozen;

    Seed r = make_seed(names, frozen, d);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r.eps[i][j] = a.eps[i][j];
    std::vector<std::size_t> map(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) map[i] = r.require(b.names[i]);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r.eps[map[i]][map[j]] += b.eps[i][j];
    return r;
}

Seed glue(const Seed& s, const std::vector<std::pair<std::string, std::string>>& pairs) {
    Seed r = s;
    for (const auto& [keep, drop] : pairs) {
        const std::size_t a = r.require(keep), b = r.require(drop);
        if (!r.frozen[a] || !r.frozen[b]) throw std::invalid_argument("glued vertices must be frozen");
        if (r.d[a] != r.d[b]) throw std::invalid_argument("glued vertices have different symmetrizers");
        for (std::size_t x = 0; x < r.size(); ++x) {
            if (x == a || x == b) continue;
            r.eps[a][x] += r.eps[b][x];
            r.eps[x][a] += r.eps[x][b];
        }
        r.eps[a][a] = 0;
        r.frozen[a] = false;
        r.names.erase(r.names.begin() + static_cast<long>(b));
        r.frozen.erase(r.frozen.begin() + static_cast<long>(b));
        r.d.erase(r.d.begin() + static_cast<long>(b));
        r.eps.erase(r.eps.begin() + static_cast<long>(b));
        for (auto& row : r.eps) row.erase(row.begin() + static_cast<long>(b));
    }
    return r;
}

Seed open_quiver(DynkinType type, const DoubleWord& w) {
    validate_word(w);
    const int n = w.n;
    const auto c = cartan_matrix(type, n);
    const auto dsym = symmetrizer(type, n);
    std::vector<int> slot(n + 1, 0);

    Seed acc = make_seed({}, {}, {});
    for (int k = 1; k <= n; ++k) {
        Seed f = make_seed({face_name(k, 0)}, {true}, {dsym[k - 1]});
        acc = amalgamate(acc, f, {});
    }
    // Each chip contributes a whole arrow along its level and half arrows to
    // the faces it touches on the neighbouring levels.
    for (int l : w.letters) {
        const int k = std::abs(l);
        const mpq_class s = l > 0 ? 1 : -1;
        const std::string left = face_name(k, slot[k]), right = face_name(k, slot[k] + 1);
        ++slot[k];
        std::vector<std::string> names{left, right};
        std::vector<int> levels{k, k};
        for (int j : {k - 1, k + 1})
            if (j >= 1 && j <= n) {
                names.push_back(face_name(j, slot[j]));
                levels.push_back(j);
            }
        std::vector<int> d;
        for (int lv : levels) d.push_back(dsym[lv - 1]);
        Seed chip = make_seed(names, std::vector<bool>(names.size(), true), d);
        auto arrow = [&](std::size_t x, std::size_t y, const mpq_class& count) {
            chip.eps[x][y] += count * level_factor(c, levels[x], levels[y]);
            chip.eps[y][x] -= count * level_factor(c, levels[y], levels[x]);
        };
        arrow(0, 1, s);
        for (std::size_t f = 2; f < names.size(); ++f) {
            arrow(1, f, s / 2);
            arrow(f, 0, s / 2);
        }
        std::vector<std::string> shared;
        for (const auto& nm : names)
            if (acc.index_of(nm)) shared.push_back(nm);
        acc = amalgamate(acc, chip, shared);
    }

    // Rename: first and last face per level are the boundary, the middle face is -k.
    Seed r = acc;
    for (int k = 1; k <= n; ++k) {
        if (slot[k] != 2) throw std::invalid_argument("not a Coxeter word");
        r.names[r.require(face_name(k, 0))] = "L" + std::to_string(k);
        r.names[r.require(face_name(k, 2))] = "R" + std::to_string(k);
        const std::size_t mid = r.require(face_name(k, 1));
        r.names[mid] = signed_name(-k);
        r.frozen[mid] = false;
    }
    return r;
}

Seed quiver_from_word(DynkinType type, const DoubleWord& w) {
    const int n = w.n;
    Seed open = open_quiver(type, w);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int k = 1; k <= n; ++k) pairs.emplace_back("L" + std::to_string(k), "R" + std::to_string(k));
    Seed glued = glue(open, pairs);
    for (int k = 1; k <= n; ++k) glued.names[glued.require("L" + std::to_string(k))] = signed_name(k);

    // Reorder to -1..-n, 1..n.
    std::vector<std::string> order;
    for (int k = 1; k <= n; ++k) order.push_back(signed_name(-k));
    for (int k = 1; k <= n; ++k) order.push_back(signed_name(k));
    std::vector<std::size_t> idx;
    for (const auto& nm : order) idx.push_back(glued.require(nm));
    std::vector<bool> frozen;
    std::vector<int> d;
    for (auto i : idx) {
        frozen.push_back(glued.frozen[i]);
        d.push_back(glued.d[i]);
    }
    Seed r = make_seed(order, frozen, d);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) r.eps[a][b] = glued.eps[idx[a]][idx[b]];
    if (!r.integral()) throw std::logic_error("half arrows did not sum to whole arrows for " + to_string(w));
    return r;
}

Seed quiver_from_network(const Network& net) { return quiver_from_word(net.type(), word_from_network(net)); }

Seed mutate_seed(const Seed& s, std::size_t k) {
    if (k >= s.size()) throw std::out_of_range("mutation index out of range");
    if (s.frozen[k]) throw std::invalid_argument("cannot mutate at frozen vertex " + s.names[k]);
    Seed r = s;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == k || j == k) r.eps[i][j] = -s.eps[i][j];
            else r.eps[i][j] = s.eps[i][j] + (s.eps[i][k] * abs_q(s.eps[k][j]) + abs_q(s.eps[i][k]) * s.eps[k][j]) / 2;
        }
    return r;
}

Seed mutate_seed(const Seed& s, const std::string& k) { return mutate_seed(s, s.require(k)); }

Seed sigma(const Seed& s, int k) {
    const std::size_t a = s.require(signed_name(-k)), b = s.require(signed_name(k));
    Seed r = s;
    std::swap(r.names[a], r.names[b]);
    return r;
}

Seed tau(const Seed& s, int k) { return mutate_seed(sigma(s, k), signed_name(-k)); }

std::vector<mpq_class> canonical_encoding(const Seed& s) {
    const std::size_t m = s.size();
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<mpq_class> best;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i)
            ok = s.d[perm[i]] == s.d[i] && s.frozen[perm[i]] == s.frozen[i];
        if (!ok) continue;
        std::vector<mpq_class> enc;
        enc.reserve(m * m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) enc.push_back(s.eps[perm[i]][perm[j]]);
        if (best.empty() || enc < best) best = std::move(enc);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool isomorphic(const Seed& a, const Seed& b) {
    if (a.size() != b.size()) return false;
    auto da = a.d, db = b.d;
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    return da == db && canonical_encoding(a) == canonical_encoding(b);
}

Seed apply_moves(const Seed& s, const std::vector<std::string>& moves) {
    Seed r = s;
    for (const auto& mv : moves) {
        auto open = mv.find('('), close = mv.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw std::invalid_argument("bad move: " + mv);
        const std::string op = mv.substr(0, open), arg = mv.substr(open + 1, close - open - 1);
        if (op == "mu") r = mutate_seed(r, arg);
        else if (op == "tau") r = tau(r, std::stoi(arg));
        else if (op == "sigma") r = sigma(r, std::stoi(arg));
        else throw std::invalid_argument("bad move: " + mv);
    }
    return r;
}

MutationSearchResult mutation_equivalent(const Seed& from, const Seed& to, int max_depth) {
    MutationSearchResult res;
    if (from.size() != to.size()) return res;
    const auto target = encode(canonical_encoding(to));
    struct Node {
        Seed seed;
        std::vector<std::string> moves;
    };
    std::deque<Node> queue{{from, {}}};
    std::set<std::string> seen{encode(canonical_encoding(from))};
    while (!queue.empty()) {
        Node cur = std::move(queue.front());
        queue.pop_front();
        ++res.explored;
        if (encode(canonical_encoding(cur.seed)) == target) {
            res.found = true;
            res.moves = cur.moves;
            return res;
        }
        if (static_cast<int>(cur.moves.size()) >= max_depth) continue;
        std::vector<std::string> moves;
        for (std::size_t i = 0; i < cur.seed.size(); ++i)
            if (!cur.seed.frozen[i]) moves.push_back("mu(" + cur.seed.names[i] + ")");
        for (int k = 1;; ++k) {
            auto a = cur.seed.index_of(signed_name(-k)), b = cur.seed.index_of(signed_name(k));
            if (!a || !b) break;
            if (!cur.seed.frozen[*a]) moves.push_back("tau(" + std::to_string(k) + ")");
        }
        for (const auto& mv : moves) {
            Seed next = apply_moves(cur.seed, {mv});
            auto key = encode(canonical_encoding(next));
            if (!seen.insert(key).second) continue;
            auto path = cur.moves;
            path.push_back(mv);
            queue.push_back({std::move(next), std::move(path)});
        }
    }
    return res;
}

ContextPtr x_torus(const Seed& s) {
    std::vector<std::string> names;
    for (const auto& nm : s.names) names.push_back("X" + nm);
    SkewMatrix skew(s.size(), std::vector<QExponent>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) skew[i][j] = QExponent(s.omega(i, j));
    return make_context(std::move(names), skew);
}

ContextPtr a_torus(const Seed& s) {
    std::vector<std::string> names;
    for (const auto& nm : s.names) names.push_back("A" + nm);
    return make_context(std::move(names), zero_skew(s.size()));
}

MonomialMap ensemble_map(const Seed& s) {
    std::vector<MonomialTarget> images;
    for (std::size_t i = 0; i < s.size(); ++i) {
        ExpVec e(s.size(), 0);
        for (std::size_t j = 0; j < s.size(); ++j) e[j] = to_int(s.eps[j][i], "exchange matrix entry");
        images.push_back({QExponent(0), e});
    }
    return MonomialMap(x_torus(s), a_torus(s), std::move(images));
}

RationalFunction::RationalFunction(const ContextPtr& ctx)
    : num_(ctx), den_(CommutativeLaurent::constant(ctx, 1)) {}

RationalFunction::RationalFunction(CommutativeLaurent num, CommutativeLaurent den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("division by zero polynomial");
    if (den_.is_monomial()) {
        num_ = num_ * den_.monomial_inverse();
        den_ = CommutativeLaurent::constant(num_.context(), 1);
    }
}

RationalFunction RationalFunction::constant(const ContextPtr& ctx, const mpq_class& c) {
    return RationalFunction(CommutativeLaurent::constant(ctx, c), CommutativeLaurent::constant(ctx, 1));
}

RationalFunction RationalFunction::generator(const ContextPtr& ctx, std::size_t i) {
    return from_laurent(CommutativeLaurent::generator(ctx, i));
}

RationalFunction RationalFunction::from_laurent(const CommutativeLaurent& p) {
    return RationalFunction(p, CommutativeLaurent::constant(p.context(), 1));
}

RationalFunction RationalFunction::inverse() const { return RationalFunction(den_, num_); }

RationalFunction RationalFunction::pow(int e) const {
    RationalFunction base = e < 0 ? inverse() : *this;
    RationalFunction r = constant(num_.context(), 1);
    for (int i = 0; i < std::abs(e); ++i) r = r * base;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

bool operator==(const RationalFunction& a, const RationalFunction& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

std::string RationalFunction::to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

Assignment identity_assignment(const ContextPtr& ctx) {
    Assignment a;
    for (std::size_t i = 0; i < ctx->rank(); ++i) a.push_back(RationalFunction::generator(ctx, i));
    return a;
}

Assignment mutate_X_classical(const Assignment& x, const Seed& s, std::size_t k) {
    if (s.frozen[k]) throw std::invalid_argument("cannot mutate at frozen vertex " + s.names[k]);
    const auto one = RationalFunction::constant(x[k].num().context(), 1);
    Assignment r;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i == k) {
            r.push_back(x[k].inverse());
            continue;
        }
        const int e = to_int(s.eps[k][i], "exchange matrix entry");
        r.push_back(x[i] * x[k].pow(std::max(e, 0)) * (one + x[k]).pow(-e));
    }
    return r;
}

Assignment mutate_A_classical(const Assignment& a, const Seed& s, std::size_t k) {
    if (s.frozen[k]) throw std::invalid_argument("cannot mutate at frozen vertex " + s.names[k]);
    const auto& ctx = a[k].num().context();
    auto plus = RationalFunction::constant(ctx, 1), minus = RationalFunction::constant(ctx, 1);
    for (std::size_t j = 0; j < s.size(); ++j) {
        const int e = to_int(s.eps[j][k], "exchange matrix entry");
        if (e > 0) plus = plus * a[j].pow(e);
        if (e < 0) minus = minus * a[j].pow(-e);
    }
    Assignment r = a;
    r[k] = a[k].inverse() * (plus + minus);
    return r;
}

Assignment ensemble_pullback(const Assignment& a, const Seed& s) {
    const auto& ctx = a.front().num().context();
    Assignment r;
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto x = RationalFunction::constant(ctx, 1);
        for (std::size_t j = 0; j < s.size(); ++j) x = x * a[j].pow(to_int(s.eps[j][i], "exchange matrix entry"));
        r.push_back(x);
    }
    return r;
}

bool ensemble_naturality_holds(const Seed& s, std::size_t k) {
    auto a = identity_assignment(a_torus(s));
    auto lhs = mutate_X_classical(ensemble_pullback(a, s), s, k);
    auto rhs = ensemble_pullback(mutate_A_classical(a, s, k), mutate_seed(s, k));
    return lhs == rhs;
}

RationalFunction FactoredExpression::specialize_classical() const {
    auto r = RationalFunction::constant(torus, 1);
    const auto one = RationalFunction::constant(torus, 1);
    for (const auto& f : factors) {
        auto m = RationalFunction::from_laurent(monomial_of(torus, f.exponent));
        r = r * (f.binomial ? (one + m) : m).pow(f.power);
    }
    return r;
}

nlohmann::json FactoredExpression::to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto& f : factors) {
        nlohmann::json j{{"binomial", f.binomial}, {"exponent", f.exponent}, {"power", f.power}};
        if (f.binomial) j["qpow"] = f.qpow.pretty();
        arr.push_back(j);
    }
    return arr;
}

std::string FactoredExpression::to_string() const {
    std::string s;
    for (const auto& f : factors) {
        std::string mono = TorusElement::monomial(torus, f.exponent).to_string();
        if (!f.binomial) s += mono;
        else s += "(1 + q^(" + f.qpow.pretty() + ")*" + mono + ")";
        if (f.power != 1) s += "^" + std::to_string(f.power);
        s += " ";
    }
    if (!s.empty()) s.pop_back();
    return s;
}

FactoredExpression quantum_mutate(const Seed& s, std::size_t k, std::size_t i) {
    if (k >= s.size() || i >= s.size()) throw std::out_of_range("vertex index out of range");
    if (s.frozen[k]) throw std::invalid_argument("cannot mutate at frozen vertex " + s.names[k]);
    FactoredExpression fe;
    fe.torus = x_torus(s);
    auto unit = [&](std::size_t v, int p) {
        ExpVec e(s.size(), 0);
        e[v] = p;
        return e;
    };
    if (i == k) {
        fe.factors.push_back({false, QExponent(0), unit(k, 1), -1});
        return fe;
    }
    fe.factors.push_back({false, QExponent(0), unit(i, 1), 1});
    const int e = to_int(s.eps[k][i], "exchange matrix entry");
    for (int r = 1; r <= std::abs(e); ++r) {
        QExponent qp(static_cast<long>((2 * r - 1) * s.d[i]));
        if (e < 0) fe.factors.push_back({true, qp, unit(k, 1), 1});
        else fe.factors.push_back({true, qp, unit(k, -1), -1});
    }
    return fe;
}

}  // namespace qtoda
