#include "qtoda/algebra.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qtoda {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
    return r;
}

ExpVec add_vec(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

std::string monomial_text(const TorusContext& ctx, const ExpVec& a, bool latex) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (!out.empty()) out += latex ? " " : "*";
        out += ctx.name(i);
        if (a[i] != 1) out += latex ? "^{" + std::to_string(a[i]) + "}" : "^" + std::to_string(a[i]);
    }
    return out;
}

}  // namespace

QExponent::QExponent(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

QExponent QExponent::parse(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return QExponent(v);
}

std::string QExponent::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string QExponent::pretty() const {
    return is_integer() ? v_.get_num().get_str() : str();
}

TorusContext::TorusContext(std::vector<std::string> names, SkewMatrix skew)
    : names_(std::move(names)), skew_(std::move(skew)) {
    const std::size_t m = names_.size();
    if (skew_.size() != m) throw std::invalid_argument("skew matrix size mismatch");
    mpz_class den = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (skew_[i].size() != m) throw std::invalid_argument("skew matrix size mismatch");
        for (std::size_t j = 0; j < m; ++j) {
            if (skew_[i][j] != -skew_[j][i]) throw std::invalid_argument("skew matrix is not skew-symmetric");
            mpz_class d = skew_[i][j].value().get_den();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        }
    }
    if (!den.fits_slong_p()) throw std::overflow_error("skew denominator too large");
    den_ = den.get_si();
    scaled_.assign(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            mpq_class s = skew_[i][j].value() * den_;
            mpz_class n = s.get_num();
            if (!n.fits_slong_p()) throw std::overflow_error("skew entry too large");
            scaled_[i * m + j] = n.get_si();
        }
}

std::optional<std::size_t> TorusContext::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

std::size_t TorusContext::require(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw std::out_of_range("unknown generator " + name);
    return *i;
}

std::int64_t TorusContext::pairing_scaled(const ExpVec& a, const ExpVec& b) const {
    const std::size_t m = rank();
    std::int64_t total = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        std::int64_t row = 0;
        const std::int64_t* s = &scaled_[i * m];
        for (std::size_t j = 0; j < m; ++j)
            if (b[j] != 0 && s[j] != 0) row = checked_add(row, checked_mul(s[j], b[j]));
        total = checked_add(total, checked_mul(row, a[i]));
    }
    return total;
}

QExponent TorusContext::pairing(const ExpVec& a, const ExpVec& b) const {
    if (a.size() != rank() || b.size() != rank()) throw std::invalid_argument("exponent length mismatch");
    return QExponent(pairing_scaled(a, b), den_);
}

ExpVec TorusContext::unit_vector(std::size_t i, int power) const {
    if (i >= rank()) throw std::out_of_range("generator index out of range");
    ExpVec v(rank(), 0);
    v[i] = power;
    return v;
}

ContextPtr make_context(std::vector<std::string> names, SkewMatrix skew) {
    return std::make_shared<const TorusContext>(std::move(names), std::move(skew));
}

SkewMatrix zero_skew(std::size_t m) { return SkewMatrix(m, std::vector<QExponent>(m, QExponent(0))); }

// ---------------------------------------------------------------- QPoly

QPoly QPoly::monomial(const QExponent& e, std::int64_t c) {
    QPoly p;
    p.add(e, c);
    return p;
}

void QPoly::add(const QExponent& e, std::int64_t c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

QPoly QPoly::shifted(const QExponent& e) const {
    if (e.is_zero()) return *this;
    QPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), k + e, c);
    return r;
}

std::int64_t QPoly::at_one() const {
    std::int64_t s = 0;
    for (const auto& [k, c] : terms_) s = checked_add(s, c);
    return s;
}

std::int64_t QPoly::coefficient(const QExponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
}

QPoly& QPoly::operator+=(const QPoly& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
    for (const auto& [k, c] : o.terms_) add(k, checked_mul(c, -1));
    return *this;
}

QPoly QPoly::operator-() const {
    QPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), k, checked_mul(c, -1));
    return r;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    QPoly r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) r.add(ka + kb, checked_mul(ca, cb));
    return r;
}

nlohmann::json QPoly::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [k, c] : terms_) j.push_back({{"q", k.str()}, {"c", c}});
    return j;
}

std::string QPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        std::int64_t a = c < 0 ? -c : c;
        if (k.is_zero()) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << "q^(" << k.pretty() << ")";
        }
    }
    return os.str();
}

// --------------------------------------------------------- TorusElement

TorusElement::TorusElement(ContextPtr ctx, Terms terms) : ctx_(std::move(ctx)) {
    for (auto& [a, c] : terms) add_term(a, c);
}

TorusElement TorusElement::one(const ContextPtr& ctx) { return monomial(ctx, ctx->zero_vector()); }

TorusElement TorusElement::monomial(const ContextPtr& ctx, const ExpVec& a, const QPoly& c) {
    TorusElement e(ctx);
    e.add_term(a, c);
    return e;
}

TorusElement TorusElement::generator(const ContextPtr& ctx, std::size_t i, int power) {
    return monomial(ctx, ctx->unit_vector(i, power));
}

TorusElement TorusElement::generator(const ContextPtr& ctx, const std::string& name, int power) {
    return generator(ctx, ctx->require(name), power);
}

QPoly TorusElement::coefficient(const ExpVec& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? QPoly() : it->second;
}

void TorusElement::add_term(const ExpVec& a, const QPoly& c) {
    if (a.size() != ctx_->rank()) throw std::invalid_argument("exponent length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
        terms_.emplace(a, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

TorusElement TorusElement::scaled(const QPoly& c) const {
    TorusElement r(ctx_);
    for (const auto& [a, k] : terms_) r.add_term(a, k * c);
    return r;
}

TorusElement TorusElement::q_shifted(const QExponent& e) const {
    TorusElement r(ctx_);
    for (const auto& [a, k] : terms_) r.terms_.emplace_hint(r.terms_.end(), a, k.shifted(e));
    return r;
}

void TorusElement::check_same(const TorusElement& o) const {
    if (ctx_ != o.ctx_) throw std::invalid_argument("torus context mismatch");
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
    check_same(o);
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
    check_same(o);
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
}

TorusElement TorusElement::operator-() const {
    TorusElement r(ctx_);
    for (const auto& [a, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), a, -c);
    return r;
}

TorusElement operator*(const TorusElement& a, const TorusElement& b) {
    a.check_same(b);
    const TorusContext& ctx = *a.ctx_;
    TorusElement r(a.ctx_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            QExponent e(ctx.pairing_scaled(ea, eb), ctx.denominator());
            r.add_term(add_vec(ea, eb), (ca * cb).shifted(e));
        }
    return r;
}

bool operator==(const TorusElement& a, const TorusElement& b) {
    a.check_same(b);
    return a.terms_ == b.terms_;
}

nlohmann::json TorusElement::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [a, c] : terms_) terms.push_back({{"exponent", a}, {"coefficient", c.to_json()}});
    return {{"generators", ctx_->names()}, {"terms", terms}};
}

std::string TorusElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : terms_) {
        std::string coef = c.to_string();
        std::string mono = monomial_text(*ctx_, a, false);
        bool simple = c.terms().size() == 1 && c.terms().begin()->first.is_zero();
        std::int64_t v = simple ? c.terms().begin()->second : 0;
        if (!first) os << ((simple && v < 0) ? " - " : " + ");
        else if (simple && v < 0) os << "-";
        first = false;
        if (simple) {
            std::int64_t av = v < 0 ? -v : v;
            if (mono.empty()) os << av;
            else if (av != 1) os << av << "*" << mono;
            else os << mono;
        } else {
            os << "(" << coef << ")";
            if (!mono.empty()) os << "*" << mono;
        }
    }
    return os.str();
}

std::string TorusElement::to_latex() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : terms_) {
        std::string mono = monomial_text(*ctx_, a, true);
        for (const auto& [k, v] : c.terms()) {
            if (!first) os << (v < 0 ? " - " : " + ");
            else if (v < 0) os << "-";
            first = false;
            std::int64_t av = v < 0 ? -v : v;
            std::string body;
            if (!k.is_zero()) body = "q^{" + k.pretty() + "}";
            if (!mono.empty()) body += (body.empty() ? "" : " ") + mono;
            if (av != 1 || body.empty()) os << av << (body.empty() ? "" : " ");
            os << body;
        }
    }
    return os.str();
}

TorusElement torus_mul(const TorusElement& a, const TorusElement& b) { return a * b; }

TorusElement weyl_monomial(const ContextPtr& ctx, const std::vector<std::pair<std::size_t, int>>& letters) {
    ExpVec a = ctx->zero_vector();
    for (const auto& [i, p] : letters) {
        if (i >= ctx->rank()) throw std::out_of_range("generator index out of range");
        a[i] += p;
    }
    return TorusElement::monomial(ctx, a);
}

TorusElement commutator(const TorusElement& a, const TorusElement& b) { return a * b - b * a; }

bool commutes(const TorusElement& a, const TorusElement& b) {
    return a * b == b * a;
}

// --------------------------------------------------- CommutativeLaurent

CommutativeLaurent::CommutativeLaurent(ContextPtr ctx, Terms terms) : ctx_(std::move(ctx)) {
    for (auto& [a, c] : terms) add_term(a, c);
}

CommutativeLaurent CommutativeLaurent::constant(const ContextPtr& ctx, const mpq_class& c) {
    return monomial(ctx, ctx->zero_vector(), c);
}

CommutativeLaurent CommutativeLaurent::monomial(const ContextPtr& ctx, const ExpVec& a, const mpq_class& c) {
    CommutativeLaurent r(ctx);
    r.add_term(a, c);
    return r;
}

CommutativeLaurent CommutativeLaurent::generator(const ContextPtr& ctx, std::size_t i, int power) {
    return monomial(ctx, ctx->unit_vector(i, power));
}

void CommutativeLaurent::add_term(const ExpVec& a, const mpq_class& c) {
    if (a.size() != ctx_->rank()) throw std::invalid_argument("exponent length mismatch");
    if (sgn(c) == 0) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
        terms_.emplace(a, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
}

CommutativeLaurent CommutativeLaurent::monomial_inverse() const {
    if (!is_monomial()) throw std::domain_error("inverse of a non-monomial Laurent polynomial");
    const auto& [a, c] = *terms_.begin();
    ExpVec neg(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
    return monomial(ctx_, neg, mpq_class(1 / c));
}

CommutativeLaurent CommutativeLaurent::pow(int e) const {
    if (e < 0) return monomial_inverse().pow(-e);
    CommutativeLaurent r = constant(ctx_, 1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

CommutativeLaurent& CommutativeLaurent::operator+=(const CommutativeLaurent& o) {
    if (ctx_ != o.ctx_) throw std::invalid_argument("context mismatch");
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
}

CommutativeLaurent& CommutativeLaurent::operator-=(const CommutativeLaurent& o) {
    if (ctx_ != o.ctx_) throw std::invalid_argument("context mismatch");
    for (const auto& [a, c] : o.terms_) add_term(a, mpq_class(-c));
    return *this;
}

CommutativeLaurent CommutativeLaurent::operator-() const {
    CommutativeLaurent r(ctx_);
    for (const auto& [a, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), a, -c);
    return r;
}

CommutativeLaurent operator*(const CommutativeLaurent& a, const CommutativeLaurent& b) {
    if (a.ctx_ != b.ctx_) throw std::invalid_argument("context mismatch");
    CommutativeLaurent r(a.ctx_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(add_vec(ea, eb), ca * cb);
    return r;
}

bool operator==(const CommutativeLaurent& a, const CommutativeLaurent& b) {
    if (a.ctx_ != b.ctx_) throw std::invalid_argument("context mismatch");
    return a.terms_ == b.terms_;
}

nlohmann::json CommutativeLaurent::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [a, c] : terms_) terms.push_back({{"exponent", a}, {"coefficient", c.get_str()}});
    return {{"generators", ctx_->names()}, {"terms", terms}};
}

std::string CommutativeLaurent::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : terms_) {
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        first = false;
        mpq_class ac = abs(c);
        std::string mono = monomial_text(*ctx_, a, false);
        if (mono.empty()) os << ac.get_str();
        else if (ac != 1) os << ac.get_str() << "*" << mono;
        else os << mono;
    }
    return os.str();
}

CommutativeLaurent specialize_classical(const TorusElement& a) {
    CommutativeLaurent r(a.context());
    for (const auto& [e, c] : a.terms()) r.add_term(e, mpq_class(c.at_one()));
    return r;
}

CommutativeLaurent poisson_bracket(const CommutativeLaurent& f, const CommutativeLaurent& g, const SkewMatrix& bracket) {
    if (f.context() != g.context()) throw std::invalid_argument("context mismatch");
    const std::size_t m = f.context()->rank();
    if (bracket.size() != m) throw std::invalid_argument("bracket size mismatch");
    for (std::size_t i = 0; i < m; ++i) {
        if (bracket[i].size() != m) throw std::invalid_argument("bracket size mismatch");
        for (std::size_t j = 0; j < m; ++j)
            if (bracket[i][j] != -bracket[j][i]) throw std::invalid_argument("bracket matrix is not skew-symmetric");
    }
    CommutativeLaurent r(f.context());
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : g.terms()) {
            mpq_class s = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (a[i] == 0) continue;
                for (std::size_t j = 0; j < m; ++j)
                    if (b[j] != 0) s += bracket[i][j].value() * a[i] * b[j];
            }
            if (sgn(s) != 0) r.add_term(add_vec(a, b), s * ca * cb);
        }
    return r;
}

// -------------------------------------------------------------- ZLaurent

ZLaurent ZLaurent::constant(const TorusElement& c) { return term(c, 0); }

ZLaurent ZLaurent::term(const TorusElement& c, int doubled_exponent) {
    ZLaurent r(c.context());
    r.add_term(doubled_exponent, c);
    return r;
}

void ZLaurent::add_term(int doubled_exponent, const TorusElement& c) {
    if (c.context() != ctx_) throw std::invalid_argument("context mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(doubled_exponent);
    if (it == terms_.end()) {
        terms_.emplace(doubled_exponent, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

TorusElement ZLaurent::coefficient(int doubled_exponent) const {
    auto it = terms_.find(doubled_exponent);
    return it == terms_.end() ? TorusElement(ctx_) : it->second;
}

ZLaurent ZLaurent::inverted() const {
    ZLaurent r(ctx_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(-k, c);
    return r;
}

std::pair<int, int> ZLaurent::doubled_support() const {
    if (terms_.empty()) throw std::domain_error("support of zero");
    return {terms_.begin()->first, terms_.rbegin()->first};
}

ZLaurent& ZLaurent::operator+=(const ZLaurent& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

ZLaurent& ZLaurent::operator-=(const ZLaurent& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

ZLaurent ZLaurent::operator-() const {
    ZLaurent r(ctx_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

ZLaurent operator*(const ZLaurent& a, const ZLaurent& b) {
    if (a.ctx_ != b.ctx_) throw std::invalid_argument("context mismatch");
    ZLaurent r(a.ctx_);
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
    return r;
}

bool operator==(const ZLaurent& a, const ZLaurent& b) {
    if (a.ctx_ != b.ctx_) throw std::invalid_argument("context mismatch");
    return a.terms_ == b.terms_;
}

nlohmann::json ZLaurent::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : terms_)
        terms.push_back({{"z", QExponent(k, 2).str()}, {"coefficient", c.to_json()["terms"]}});
    return {{"generators", ctx_->names()}, {"terms", terms}};
}

std::string ZLaurent::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (k != 0) os << "*z^(" << QExponent(k, 2).pretty() << ")";
    }
    return os.str();
}

// ----------------------------------------------------------- MonomialMap

MonomialMap::MonomialMap(ContextPtr source, ContextPtr target, std::vector<MonomialTarget> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->rank()) throw std::invalid_argument("monomial map needs one image per generator");
    for (const auto& im : images_)
        if (im.exponent.size() != target_->rank()) throw std::invalid_argument("monomial map image has wrong length");
}

MonomialMap MonomialMap::identity(const ContextPtr& ctx) {
    std::vector<MonomialTarget> images;
    for (std::size_t i = 0; i < ctx->rank(); ++i) images.push_back({QExponent(0), ctx->unit_vector(i)});
    return MonomialMap(ctx, ctx, std::move(images));
}

TorusElement MonomialMap::apply(const TorusElement& a) const {
    if (a.context() != source_) throw std::invalid_argument("monomial map source mismatch");
    TorusElement r(target_);
    for (const auto& [e, c] : a.terms()) {
        ExpVec t = target_->zero_vector();
        QExponent shift(0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            for (std::size_t k = 0; k < t.size(); ++k) t[k] += e[i] * images_[i].exponent[k];
            if (!images_[i].qpow.is_zero()) shift += images_[i].qpow * QExponent(e[i]);
        }
        r.add_term(t, c.shifted(shift));
    }
    return r;
}

CommutativeLaurent MonomialMap::apply_classical(const CommutativeLaurent& a) const {
    if (a.context() != source_) throw std::invalid_argument("monomial map source mismatch");
    CommutativeLaurent r(target_);
    for (const auto& [e, c] : a.terms()) {
        ExpVec t = target_->zero_vector();
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t k = 0; k < t.size(); ++k) t[k] += e[i] * images_[i].exponent[k];
        r.add_term(t, c);
    }
    return r;
}

std::vector<PairReport> MonomialMap::verify() const {
    std::vector<PairReport> out;
    for (std::size_t i = 0; i < images_.size(); ++i)
        for (std::size_t j = i + 1; j < images_.size(); ++j)
            out.push_back({i, j, source_->skew(i, j), target_->pairing(images_[i].exponent, images_[j].exponent)});
    return out;
}

bool MonomialMap::preserves_relations() const {
    for (const auto& r : verify())
        if (!r.ok()) return false;
    return true;
}

TorusElement monomial_map_apply(const MonomialMap& map, const TorusElement& a) { return map.apply(a); }

std::vector<PairReport> verify_monomial_map(const MonomialMap& map) { return map.verify(); }

}  // namespace qtoda
