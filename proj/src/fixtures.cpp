#include "qtoda/fixtures.hpp"

#include <cctype>
#include <stdexcept>

namespace qtoda {

namespace {

class Scanner {
public:
    // Drops whitespace, alignment marks and LaTeX spacing (\, \; \quad ...); other
    // backslashes are dropped so \sigma reads as sigma.
    explicit Scanner(const std::string& s) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            const char c = s[i];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '&') continue;
            if (c != '\\') {
                text_ += c;
                continue;
            }
            if (i + 1 < s.size() && std::string(",;:!").find(s[i + 1]) != std::string::npos) {
                ++i;
                continue;
            }
            for (const char* cmd : {"qquad", "quad"}) {
                const std::string w(cmd);
                if (s.compare(i + 1, w.size(), w) == 0) {
                    i += w.size();
                    break;
                }
            }
        }
    }
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    char get() {
        if (done()) throw std::invalid_argument("unexpected end of expression");
        return text_[pos_++];
    }
    void expect(char c) {
        if (get() != c) throw std::invalid_argument(std::string("expected '") + c + "' in expression " + text_);
    }
    int integer() {
        std::string s;
        if (peek() == '-' || peek() == '+') s += get();
        while (std::isdigit(static_cast<unsigned char>(peek()))) s += get();
        if (s.empty() || s == "-" || s == "+") throw std::invalid_argument("expected integer in " + text_);
        return std::stoi(s);
    }
    // "{a,b,...}" or a single digit.
    std::vector<int> group() {
        std::vector<int> out;
        if (peek() != '{') {
            if (!std::isdigit(static_cast<unsigned char>(peek()))) throw std::invalid_argument("bad subscript in " + text_);
            out.push_back(get() - '0');
            return out;
        }
        get();
        out.push_back(integer());
        while (peek() == ',') {
            get();
            out.push_back(integer());
        }
        expect('}');
        return out;
    }

private:
    std::string text_;
    std::size_t pos_ = 0;
};

struct Factor {
    std::string base;
    std::vector<int> sub;
    int power = 1;
};

// One product term: optional integer coefficient then factors.
std::pair<long, std::vector<Factor>> parse_term(Scanner& sc) {
    long coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) coeff = sc.integer();
    std::vector<Factor> fs;
    while (std::isalpha(static_cast<unsigned char>(sc.peek()))) {
        Factor f;
        while (std::isalpha(static_cast<unsigned char>(sc.peek()))) f.base += sc.get();
        sc.expect('_');
        f.sub = sc.group();
        if (sc.peek() == '^') {
            sc.get();
            auto p = sc.group();
            if (p.size() != 1) throw std::invalid_argument("bad exponent");
            f.power = p[0];
        }
        fs.push_back(f);
    }
    return {coeff, fs};
}

template <typename F>
void for_each_term(const std::string& text, F&& fn) {
    Scanner sc(text);
    while (!sc.done()) {
        auto [coeff, fs] = parse_term(sc);
        fn(coeff, fs);
        if (sc.done()) break;
        sc.expect('+');
        if (sc.done()) throw std::invalid_argument("expression ends with '+'");
    }
}

}  // namespace

std::string lax_symbol(const std::string& base, const std::vector<int>& sub) {
    if (sub.size() != 1) throw std::invalid_argument("Lax symbols take one subscript");
    return base + std::to_string(sub[0]);
}

std::string label_symbol(const std::string& base, const std::vector<int>& sub) {
    if (base != "X" || sub.size() != 2) throw std::invalid_argument("labels are X_{i,j}");
    return "X" + std::to_string(sub[0]) + "_" + std::to_string(sub[1]);
}

TorusElement parse_expression(const ContextPtr& ctx, const std::string& text, const SymbolResolver& resolve) {
    TorusElement sum(ctx);
    for_each_term(text, [&](long coeff, const std::vector<Factor>& fs) {
        TorusElement t = TorusElement::one(ctx);
        for (const auto& f : fs) t = t * TorusElement::generator(ctx, resolve(f.base, f.sub), f.power);
        sum += t.scaled(QPoly::constant(coeff));
    });
    return sum;
}

std::vector<std::vector<std::pair<int, int>>> parse_label_families(const std::string& text) {
    std::vector<std::vector<std::pair<int, int>>> out;
    for_each_term(text, [&](long coeff, const std::vector<Factor>& fs) {
        if (coeff != 1) throw std::invalid_argument("label sums have unit coefficients");
        std::vector<std::pair<int, int>> fam;
        for (const auto& f : fs) {
            if (f.base != "X" || f.sub.size() != 2 || f.power != 1) throw std::invalid_argument("bad label factor");
            fam.emplace_back(f.sub[0], f.sub[1]);
        }
        out.push_back(fam);
    });
    return out;
}

const std::vector<GoldenList>& a2_network_goldens() {
    static const std::vector<GoldenList> g{
        {"network", "(-1,-2,1,2)", 1, "X_{1,1} + X_{2,2} + X_{3,3} + X_{1,2} + X_{2,3}"},
        {"network", "(-1,-2,1,2)", 2, "X_{1,1}X_{2,2} + X_{1,1}X_{3,3} + X_{2,2}X_{3,3} + X_{1,1}X_{2,3} + X_{1,2}X_{3,3}"},
        {"network", "(-2,-1,1,2)", 1, "X_{1,1} + X_{2,2} + X_{3,3} + X_{1,2} + X_{2,3} + X_{1,3}"},
        {"network", "(-2,-1,1,2)", 2, "X_{1,1}X_{2,2} + X_{1,1}X_{3,3} + X_{2,2}X_{3,3} + X_{1,1}X_{2,3} + X_{1,2}X_{3,3}"},
        {"network", "(-1,-2,2,1)", 1, "X_{1,1} + X_{2,2} + X_{3,3} + X_{1,2} + X_{2,3}"},
        {"network", "(-1,-2,2,1)", 2,
         "X_{1,1}X_{2,2} + X_{1,1}X_{3,3} + X_{2,2}X_{3,3} + X_{1,1}X_{2,3} + X_{1,2}X_{3,3} + X_{1,2}X_{2,3}"},
    };
    return g;
}

const std::vector<GoldenList>& a2_lax_goldens() {
    static const std::vector<GoldenList> g{
        {"lax", "(0,0,0)", 2, "w_1^{-1}w_2w_3 + w_1w_2^{-1}w_3 + w_1w_2w_3^{-1} + w_3D_1D_2^{-1} + w_1D_2D_3^{-1}"},
        {"lax", "(0,0,0)", 3,
         "w_1w_2^{-1}w_3^{-1} + w_1^{-1}w_2w_3^{-1} + w_1^{-1}w_2^{-1}w_3 + w_3^{-1}D_1D_2^{-1} + w_1^{-1}D_2D_3^{-1}"},
        {"lax", "(0,1,0)", 2,
         "w_1^{-1}w_2w_3 + w_1w_2^{-1}w_3 + w_1w_2w_3^{-1} + w_2^{-1}w_3D_1D_2^{-1} + w_1w_2^{-1}D_2D_3^{-1} + "
         "w_2^{-1}D_1D_3^{-1}"},
        {"lax", "(0,1,0)", 3,
         "w_1w_2^{-1}w_3^{-1} + w_1^{-1}w_2w_3^{-1} + w_1^{-1}w_2^{-1}w_3 + w_2^{-1}w_3^{-1}D_1D_2^{-1} + "
         "w_1^{-1}w_2^{-1}D_2D_3^{-1}"},
        {"lax", "(0,-1,0)", 2,
         "w_1^{-1}w_2w_3 + w_1w_2^{-1}w_3 + w_1w_2w_3^{-1} + w_2w_3D_1D_2^{-1} + w_1w_2D_2D_3^{-1}"},
        {"lax", "(0,-1,0)", 3,
         "w_1w_2^{-1}w_3^{-1} + w_1^{-1}w_2w_3^{-1} + w_1^{-1}w_2^{-1}w_3 + w_2w_3^{-1}D_1D_2^{-1} + "
         "w_1^{-1}w_2D_2D_3^{-1} + w_2D_1D_3^{-1}"},
    };
    return g;
}

nlohmann::json seed_manifest() {
    nlohmann::json j;
    j["schema_version"] = 1;
    auto& e = j["fixtures"] = nlohmann::json::array();
    for (const auto* list : {&a2_network_goldens(), &a2_lax_goldens()})
        for (const auto& g : *list)
            e.push_back({{"name", g.route + " H_" + std::to_string(g.index) + " " + g.key},
                         {"value", g.text},
                         {"origin", "literal"},
                         {"check", "exact equality after sign normalization, products in written order"}});
    for (int n = 1; n <= 8; ++n) {
        long count = 1;
        for (int i = 1; i < n; ++i) count *= 3;
        e.push_back({{"name", "word count n=" + std::to_string(n)},
                     {"value", count},
                     {"origin", "literal"},
                     {"check", "size of enumerate_double_coxeter(n)"}});
    }
    e.push_back({{"name", "exchange matrix of the standard word"},
                 {"value", "[[0,C],[-C,0]] with C the Cartan matrix"},
                 {"origin", "literal"},
                 {"check", "quiver_from_network on both types, n <= 4"}});
    e.push_back({{"name", "Lax H_2, H_3 for A_2 beyond the literal lists"},
                 {"value", "direct monodromy extraction"},
                 {"origin", "oracle"},
                 {"check", "recursion and network route compared against it"}});
    return j;
}

}  // namespace qtoda
