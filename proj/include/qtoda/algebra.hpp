#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qtoda {

// Exact rational exponent of q (or v). Always in lowest terms.
class QExponent {
public:
    QExponent() = default;
    QExponent(long num) : v_(num) {}  // NOLINT(google-explicit-constructor)
    QExponent(long num, long den);
    explicit QExponent(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    static QExponent parse(const std::string& s);

    const mpq_class& value() const { return v_; }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_zero() const { return sgn(v_) == 0; }
    std::string str() const;  // "num/den"
    std::string pretty() const;  // "num" or "num/den"

    QExponent operator-() const { return QExponent(mpq_class(-v_)); }
    QExponent& operator+=(const QExponent& o) { v_ += o.v_; return *this; }
    QExponent& operator-=(const QExponent& o) { v_ -= o.v_; return *this; }
    friend QExponent operator+(QExponent a, const QExponent& b) { return a += b; }
    friend QExponent operator-(QExponent a, const QExponent& b) { return a -= b; }
    friend QExponent operator*(const QExponent& a, const QExponent& b) { return QExponent(mpq_class(a.v_ * b.v_)); }
    friend bool operator==(const QExponent& a, const QExponent& b) { return a.v_ == b.v_; }
    friend bool operator!=(const QExponent& a, const QExponent& b) { return a.v_ != b.v_; }
    friend bool operator<(const QExponent& a, const QExponent& b) { return a.v_ < b.v_; }

private:
    mpq_class v_{0};
};

using ExpVec = std::vector<int>;
using SkewMatrix = std::vector<std::vector<QExponent>>;

// Generators X_0..X_{m-1} with X_i X_j = q^{2 skew[i][j]} X_j X_i.
class TorusContext {
public:
    TorusContext(std::vector<std::string> names, SkewMatrix skew);

    std::size_t rank() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    std::optional<std::size_t> index_of(const std::string& name) const;
    std::size_t require(const std::string& name) const;
    const QExponent& skew(std::size_t i, std::size_t j) const { return skew_.at(i).at(j); }
    const SkewMatrix& skew_matrix() const { return skew_; }

    // <a,b> = sum skew[i][j] a_i b_j
    QExponent pairing(const ExpVec& a, const ExpVec& b) const;
    // same value scaled by denominator(), as an integer
    std::int64_t pairing_scaled(const ExpVec& a, const ExpVec& b) const;
    std::int64_t denominator() const { return den_; }

    ExpVec unit_vector(std::size_t i, int power = 1) const;
    ExpVec zero_vector() const { return ExpVec(rank(), 0); }

private:
    std::vector<std::string> names_;
    SkewMatrix skew_;
    std::int64_t den_ = 1;
    std::vector<std::int64_t> scaled_;  // row-major skew * den_
};

using ContextPtr = std::shared_ptr<const TorusContext>;

ContextPtr make_context(std::vector<std::string> names, SkewMatrix skew);
SkewMatrix zero_skew(std::size_t m);

// Laurent polynomial in q with rational exponents and integer coefficients.
class QPoly {
public:
    QPoly() = default;
    static QPoly monomial(const QExponent& e, std::int64_t c = 1);
    static QPoly constant(std::int64_t c) { return monomial(QExponent(0), c); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<QExponent, std::int64_t>& terms() const { return terms_; }
    void add(const QExponent& e, std::int64_t c);
    QPoly shifted(const QExponent& e) const;
    std::int64_t at_one() const;  // value at q = 1
    std::int64_t coefficient(const QExponent& e) const;

    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    QPoly operator-() const;
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    nlohmann::json to_json() const;
    std::string to_string() const;

private:
    std::map<QExponent, std::int64_t> terms_;
};

// Element of the quantum torus in the Weyl-ordered basis E(a).
class TorusElement {
public:
    using Terms = std::map<ExpVec, QPoly>;

    explicit TorusElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}
    TorusElement(ContextPtr ctx, Terms terms);

    static TorusElement zero(const ContextPtr& ctx) { return TorusElement(ctx); }
    static TorusElement one(const ContextPtr& ctx);
    static TorusElement monomial(const ContextPtr& ctx, const ExpVec& a, const QPoly& c = QPoly::constant(1));
    static TorusElement generator(const ContextPtr& ctx, std::size_t i, int power = 1);
    static TorusElement generator(const ContextPtr& ctx, const std::string& name, int power = 1);

    const ContextPtr& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    QPoly coefficient(const ExpVec& a) const;

    void add_term(const ExpVec& a, const QPoly& c);
    TorusElement scaled(const QPoly& c) const;
    TorusElement q_shifted(const QExponent& e) const;

    TorusElement& operator+=(const TorusElement& o);
    TorusElement& operator-=(const TorusElement& o);
    TorusElement operator-() const;
    friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
    friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
    friend TorusElement operator*(const TorusElement& a, const TorusElement& b);
    friend bool operator==(const TorusElement& a, const TorusElement& b);
    friend bool operator!=(const TorusElement& a, const TorusElement& b) { return !(a == b); }

    nlohmann::json to_json() const;
    std::string to_string() const;
    std::string to_latex() const;

private:
    void check_same(const TorusElement& o) const;
    ContextPtr ctx_;
    Terms terms_;
};

TorusElement torus_mul(const TorusElement& a, const TorusElement& b);
TorusElement weyl_monomial(const ContextPtr& ctx, const std::vector<std::pair<std::size_t, int>>& letters);
bool commutes(const TorusElement& a, const TorusElement& b);
TorusElement commutator(const TorusElement& a, const TorusElement& b);

// Commutative Laurent polynomial with rational coefficients (q = 1).
class CommutativeLaurent {
public:
    using Terms = std::map<ExpVec, mpq_class>;

    explicit CommutativeLaurent(ContextPtr ctx) : ctx_(std::move(ctx)) {}
    CommutativeLaurent(ContextPtr ctx, Terms terms);

    static CommutativeLaurent constant(const ContextPtr& ctx, const mpq_class& c);
    static CommutativeLaurent monomial(const ContextPtr& ctx, const ExpVec& a, const mpq_class& c = 1);
    static CommutativeLaurent generator(const ContextPtr& ctx, std::size_t i, int power = 1);

    const ContextPtr& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    void add_term(const ExpVec& a, const mpq_class& c);
    // Single-term check, used to invert monomials.
    bool is_monomial() const { return terms_.size() == 1; }
    CommutativeLaurent monomial_inverse() const;
    CommutativeLaurent pow(int e) const;  // e < 0 only for monomials

    CommutativeLaurent& operator+=(const CommutativeLaurent& o);
    CommutativeLaurent& operator-=(const CommutativeLaurent& o);
    CommutativeLaurent operator-() const;
    friend CommutativeLaurent operator+(CommutativeLaurent a, const CommutativeLaurent& b) { return a += b; }
    friend CommutativeLaurent operator-(CommutativeLaurent a, const CommutativeLaurent& b) { return a -= b; }
    friend CommutativeLaurent operator*(const CommutativeLaurent& a, const CommutativeLaurent& b);
    friend bool operator==(const CommutativeLaurent& a, const CommutativeLaurent& b);
    friend bool operator!=(const CommutativeLaurent& a, const CommutativeLaurent& b) { return !(a == b); }

    nlohmann::json to_json() const;
    std::string to_string() const;

private:
    ContextPtr ctx_;
    Terms terms_;
};

CommutativeLaurent specialize_classical(const TorusElement& a);
CommutativeLaurent poisson_bracket(const CommutativeLaurent& f, const CommutativeLaurent& g, const SkewMatrix& bracket);

// Laurent polynomial in a central variable z; keys are 2*exponent.
class ZLaurent {
public:
    using Terms = std::map<int, TorusElement>;

    explicit ZLaurent(ContextPtr ctx) : ctx_(std::move(ctx)) {}
    static ZLaurent constant(const TorusElement& c);
    static ZLaurent term(const TorusElement& c, int doubled_exponent);

    const ContextPtr& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(int doubled_exponent, const TorusElement& c);
    TorusElement coefficient(int doubled_exponent) const;
    ZLaurent inverted() const;  // z -> z^{-1}
    std::pair<int, int> doubled_support() const;  // min, max; requires nonzero

    ZLaurent& operator+=(const ZLaurent& o);
    ZLaurent& operator-=(const ZLaurent& o);
    ZLaurent operator-() const;
    friend ZLaurent operator+(ZLaurent a, const ZLaurent& b) { return a += b; }
    friend ZLaurent operator-(ZLaurent a, const ZLaurent& b) { return a -= b; }
    friend ZLaurent operator*(const ZLaurent& a, const ZLaurent& b);
    friend bool operator==(const ZLaurent& a, const ZLaurent& b);
    friend bool operator!=(const ZLaurent& a, const ZLaurent& b) { return !(a == b); }

    nlohmann::json to_json() const;
    std::string to_string() const;

private:
    ContextPtr ctx_;
    Terms terms_;
};

struct MonomialTarget {
    QExponent qpow;
    ExpVec exponent;
};

struct PairReport {
    std::size_t i = 0;
    std::size_t j = 0;
    QExponent expected;  // source skew
    QExponent actual;    // pairing of images
    bool ok() const { return expected == actual; }
};

// Generator-wise assignment X_i -> q^{qpow_i} E(target_i), extended on the
// Weyl basis by E(a) -> q^{sum a_i qpow_i} E(sum a_i target_i).
class MonomialMap {
public:
    MonomialMap(ContextPtr source, ContextPtr target, std::vector<MonomialTarget> images);

    static MonomialMap identity(const ContextPtr& ctx);

    const ContextPtr& source() const { return source_; }
    const ContextPtr& target() const { return target_; }
    const std::vector<MonomialTarget>& images() const { return images_; }

    TorusElement apply(const TorusElement& a) const;
    CommutativeLaurent apply_classical(const CommutativeLaurent& a) const;
    std::vector<PairReport> verify() const;
    bool preserves_relations() const;

private:
    ContextPtr source_;
    ContextPtr target_;
    std::vector<MonomialTarget> images_;
};

TorusElement monomial_map_apply(const MonomialMap& map, const TorusElement& a);
std::vector<PairReport> verify_monomial_map(const MonomialMap& map);

}  // namespace qtoda
