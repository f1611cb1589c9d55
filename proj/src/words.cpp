#include "qtoda/words.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qtoda {

namespace {

std::vector<int> positions(const DoubleWord& w, int sign) {
    std::vector<int> pos(w.n + 1, -1);
    for (std::size_t p = 0; p < w.letters.size(); ++p) {
        int l = w.letters[p];
        if ((l > 0) == (sign > 0)) pos[std::abs(l)] = static_cast<int>(p);
    }
    return pos;
}

// Greedy linear extension: among letters whose neighbour constraints are met,
// emit the smallest index first. before[k] says whether k precedes k+1.
std::vector<int> ordered_part(int n, const std::vector<bool>& before) {
    std::vector<int> out;
    std::vector<bool> used(n + 1, false);
    while (static_cast<int>(out.size()) < n) {
        for (int k = 1; k <= n; ++k) {
            if (used[k]) continue;
            bool ready = !(k > 1 && before[k - 1] && !used[k - 1]) && !(k < n && !before[k] && !used[k + 1]);
            if (ready) {
                used[k] = true;
                out.push_back(k);
                break;
            }
        }
    }
    return out;
}

}  // namespace

DynkinType parse_type(const std::string& s) {
    if (s == "A" || s == "a") return DynkinType::A;
    if (s == "C" || s == "c") return DynkinType::C;
    throw std::invalid_argument("unknown Dynkin type: " + s);
}

std::string type_name(DynkinType t) { return t == DynkinType::A ? "A" : "C"; }

std::vector<std::vector<int>> cartan_matrix(DynkinType t, int n) {
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        c[i][i] = 2;
        if (i + 1 < n) c[i][i + 1] = c[i + 1][i] = -1;
    }
    if (t == DynkinType::C && n >= 2) c[n - 1][n - 2] = -2;
    return c;
}

std::vector<int> symmetrizer(DynkinType t, int n) {
    std::vector<int> d(n, 1);
    if (t == DynkinType::C && n >= 2) d[n - 1] = 2;
    return d;
}

int q_entry(const QuiverVector& q, int k) {
    const int m = static_cast<int>(q.size());
    if (k < 1 || k > m) return 0;
    return q[m - k];
}

int k_entry(const IndexVector& k, int i) {
    const int m = static_cast<int>(k.size());
    if (i < 1 || i > m) return 0;
    return k[m - i];
}

IndexVector negate(const IndexVector& k) {
    IndexVector r(k);
    for (int& x : r) x = -x;
    return r;
}

void validate_word(const DoubleWord& w) {
    if (w.n < 1) throw std::invalid_argument("rank must be positive");
    if (static_cast<int>(w.letters.size()) != 2 * w.n) throw std::invalid_argument("word must have 2n letters");
    std::vector<int> neg(w.n + 1, -1), pos(w.n + 1, -1);
    for (std::size_t p = 0; p < w.letters.size(); ++p) {
        int l = w.letters[p];
        if (l == 0 || std::abs(l) > w.n) throw std::invalid_argument("letter out of range");
        auto& slot = l < 0 ? neg[-l] : pos[l];
        if (slot != -1) throw std::invalid_argument("repeated letter " + std::to_string(l));
        slot = static_cast<int>(p);
    }
    for (int k = 1; k <= w.n; ++k)
        if (neg[k] > pos[k]) throw std::invalid_argument("letter +" + std::to_string(k) + " precedes -" + std::to_string(k));
}

bool is_valid_word(const DoubleWord& w) {
    try {
        validate_word(w);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

DoubleWord unmixed_form(const DoubleWord& w) {
    validate_word(w);
    DoubleWord r{w.n, {}};
    for (int l : w.letters)
        if (l < 0) r.letters.push_back(l);
    for (int l : w.letters)
        if (l > 0) r.letters.push_back(l);
    return r;
}

DoubleWord canonical_form(const DoubleWord& w) {
    validate_word(w);
    auto neg = positions(w, -1);
    auto pos = positions(w, 1);
    std::vector<bool> nb(w.n + 1, true), pb(w.n + 1, true);
    for (int k = 1; k < w.n; ++k) {
        nb[k] = neg[k] < neg[k + 1];
        pb[k] = pos[k] < pos[k + 1];
    }
    DoubleWord r{w.n, {}};
    for (int k : ordered_part(w.n, nb)) r.letters.push_back(-k);
    for (int k : ordered_part(w.n, pb)) r.letters.push_back(k);
    return r;
}

bool commutation_equivalent(const DoubleWord& a, const DoubleWord& b) {
    return a.n == b.n && canonical_form(a) == canonical_form(b);
}

QuiverVector quiver_vector_of(const DoubleWord& w) {
    validate_word(w);
    auto neg = positions(w, -1);
    auto pos = positions(w, 1);
    QuiverVector q(w.n - 1, 0);
    for (int k = 1; k < w.n; ++k) {
        bool nb = neg[k] < neg[k + 1];
        bool pb = pos[k] < pos[k + 1];
        int v;
        if (nb && pb) v = 0;
        else if (!nb && pb) v = 1;
        else if (nb && !pb) v = -1;
        else throw std::invalid_argument("word " + to_string(w) + " reverses both letters " + std::to_string(k) +
                                         "," + std::to_string(k + 1) + "; not in the enumerated classes");
        q[w.n - 1 - k] = v;
    }
    return q;
}

DoubleWord word_of_quiver_vector(int n, const QuiverVector& q) {
    if (n < 1) throw std::invalid_argument("rank must be positive");
    if (static_cast<int>(q.size()) != n - 1) throw std::invalid_argument("quiver vector must have length n-1");
    std::vector<bool> nb(n + 1, true), pb(n + 1, true);
    for (int k = 1; k < n; ++k) {
        int v = q_entry(q, k);
        if (v < -1 || v > 1) throw std::invalid_argument("quiver vector entries must be -1, 0 or 1");
        nb[k] = v != 1;
        pb[k] = v != -1;
    }
    DoubleWord r{n, {}};
    for (int k : ordered_part(n, nb)) r.letters.push_back(-k);
    for (int k : ordered_part(n, pb)) r.letters.push_back(k);
    return r;
}

std::vector<QuiverVector> all_quiver_vectors(int n) {
    std::vector<QuiverVector> out;
    QuiverVector q(std::max(n - 1, 0), -1);
    if (n <= 1) return {QuiverVector{}};
    while (true) {
        out.push_back(q);
        int i = static_cast<int>(q.size()) - 1;
        while (i >= 0 && q[i] == 1) q[i--] = -1;
        if (i < 0) break;
        ++q[i];
    }
    return out;
}

std::vector<DoubleWord> enumerate_double_coxeter(int n) {
    if (n < 1) throw std::invalid_argument("rank must be positive");
    // Insert the pair +-(k+1) in one of three ways relative to +-k, one rank at a time.
    std::vector<QuiverVector> partial{QuiverVector{}};
    for (int k = 1; k < n; ++k) {
        std::vector<QuiverVector> next;
        next.reserve(partial.size() * 3);
        for (const auto& q : partial)
            for (int v : {0, 1, -1}) {
                QuiverVector e{v};
                e.insert(e.end(), q.begin(), q.end());
                next.push_back(std::move(e));
            }
        partial = std::move(next);
    }
    std::vector<DoubleWord> out;
    out.reserve(partial.size());
    for (const auto& q : partial) out.push_back(word_of_quiver_vector(n, q));
    std::sort(out.begin(), out.end());
    return out;
}

IndexVector index_vector_of(const QuiverVector& q) {
    IndexVector k{0};
    k.insert(k.end(), q.begin(), q.end());
    k.push_back(0);
    return k;
}

DoubleWord standard_word(int n) {
    DoubleWord w{n, {}};
    for (int k = 1; k <= n; ++k) w.letters.push_back(-k);
    for (int k = 1; k <= n; ++k) w.letters.push_back(k);
    return w;
}

namespace {

std::vector<int> parse_ints(const std::string& text) {
    std::string s;
    for (char c : text) s += (c == ',' || c == '(' || c == ')' || c == '[' || c == ']') ? ' ' : c;
    std::istringstream is(s);
    std::vector<int> out;
    std::string tok;
    while (is >> tok) {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad integer: " + tok);
        out.push_back(v);
    }
    return out;
}

}  // namespace

DoubleWord parse_word(int n, const std::string& text) {
    DoubleWord w{n, parse_ints(text)};
    validate_word(w);
    return w;
}

QuiverVector parse_vector(const std::string& text) { return parse_ints(text); }

std::string vector_to_string(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string to_string(const DoubleWord& w) { return vector_to_string(w.letters); }

nlohmann::json to_json(const DoubleWord& w) { return w.letters; }

}  // namespace qtoda
