#pragma once

// Exact univariate polynomials over the rationals, plus the few primitives
// (gcd, derivative, radical, powers) the rest of the library builds on.
//
// Representation is dense and lowest-degree-first. Every Poly is kept in
// canonical form: no trailing zero coefficient, zero is the empty sequence.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumprod/detail/hash.hpp"
#include "sumprod/error.hpp"

namespace sumprod {

using Int = mpz_class;
using Rat = mpq_class;

/// Degree reported for the zero polynomial; compares below every real degree.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

/// Canonical num/den (mpq_class does not reduce on construction).
inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Renders a rational as "num/den", or just "num" when den is 1.
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat parse_rat(std::string_view s) {
    auto digits = [](std::string_view d) {
        return !d.empty() && std::all_of(d.begin(), d.end(), [](unsigned char ch) { return std::isdigit(ch); });
    };
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw ParseError(0, "malformed rational '" + std::string(s) + "'");
    const Int n{std::string(num)};
    const Int d{std::string(den)};
    if (d == 0) throw ParseError(slash, "zero denominator");
    Rat r(n, d);
    r.canonicalize();
    if (neg) r = -r;
    return r;
}

inline std::size_t hash_value(const Int& z) {
    const mpz_srcptr p = z.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(mpz_sgn(p) + 2);
    const std::size_t n = mpz_size(p);
    for (std::size_t i = 0; i < n; ++i) h = detail::hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(p, i)));
    return h;
}

inline std::size_t hash_value(const Rat& q) {
    return detail::hash_combine(hash_value(Int(q.get_num())), hash_value(Int(q.get_den())));
}

/// Total order on polynomials: degree first, then coefficients lowest-first.
struct CanonicalKey {
    int degree;
    std::span<const Rat> coeffs;

    friend std::strong_ordering operator<=>(const CanonicalKey& a, const CanonicalKey& b) {
        if (a.degree != b.degree) return a.degree <=> b.degree;
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
            const int c = cmp(a.coeffs[i], b.coeffs[i]);
            if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }
};

class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }
    static Poly monomial(const Rat& c, std::size_t degree) {
        std::vector<Rat> v(degree + 1);
        v[degree] = c;
        return Poly(std::move(v));
    }
    static Poly x() { return monomial(1, 1); }
    static Poly parse(std::string_view text);

    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    std::span<const Rat> coeffs() const noexcept { return c_; }

    const Rat& coeff(std::size_t i) const {
        static const Rat zero(0);
        return i < c_.size() ? c_[i] : zero;
    }
    const Rat& leading() const {
        require(!is_zero(), "leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !is_zero() && c_.back() == 1; }
    bool has_integer_coeffs() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r.get_den() == 1; });
    }

    Poly monic() const {
        if (is_zero()) return *this;
        const Rat inv = 1 / c_.back();
        return *this * inv;
    }

    CanonicalKey key() const noexcept { return {degree(), c_}; }

    Rat eval(const Rat& at) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rat> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return Poly(std::move(d));
    }

    Poly derivative(unsigned order) const {
        Poly r = *this;
        for (unsigned i = 0; i < order && !r.is_zero(); ++i) r = r.derivative();
        return r;
    }

    std::string to_string() const;

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Rat& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& c : c_) c *= s;
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
    friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) { return a.key() <=> b.key(); }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

inline CanonicalKey canonical_key(const Poly& f) noexcept { return f.key(); }

struct PolyHash {
    std::size_t operator()(const Poly& p) const noexcept {
        std::size_t h = 0x9e3779b9u;
        for (const auto& c : p.coeffs()) h = detail::hash_combine(h, hash_value(c));
        return h;
    }
};

enum class ArithOp { add, sub, mul };

inline Poly arith(const Poly& f, const Poly& g, ArithOp op) {
    switch (op) {
        case ArithOp::add: return f + g;
        case ArithOp::sub: return f - g;
        case ArithOp::mul: return f * g;
    }
    return {};
}

inline Poly pow(Poly base, unsigned long m) {
    Poly r = Poly::constant(1);
    while (m > 0) {
        if (m & 1UL) r *= base;
        m >>= 1;
        if (m > 0) base *= base;
    }
    return r;
}

inline Poly derivative(const Poly& f) { return f.derivative(); }

/// Quotient and remainder of f by g over Q; g must be nonzero.
inline std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    require(!g.is_zero(), "division by zero polynomial");
    if (f.degree() < g.degree()) return {Poly{}, f};
    std::vector<Rat> rem(f.coeffs().begin(), f.coeffs().end());
    const std::size_t dg = static_cast<std::size_t>(g.degree());
    std::vector<Rat> quo(rem.size() - dg);
    const Rat inv_lead = 1 / g.leading();
    for (std::size_t k = quo.size(); k-- > 0;) {
        const Rat q = rem[k + dg] * inv_lead;
        quo[k] = q;
        if (q == 0) continue;
        for (std::size_t j = 0; j <= dg; ++j) rem[k + j] -= q * g.coeff(j);
    }
    rem.resize(dg);
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

inline Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).second; }

inline bool divides(const Poly& d, const Poly& f) {
    require(!d.is_zero(), "zero divisor");
    return divmod(f, d).second.is_zero();
}

/// Exact quotient; throws when g does not divide f.
inline Poly exact_div(const Poly& f, const Poly& g) {
    auto [q, r] = divmod(f, g);
    require(r.is_zero(), "inexact polynomial division");
    return q;
}

/// Scales f to integer coefficients with unit content and positive leading coefficient.
inline Poly primitive_part(const Poly& f) {
    if (f.is_zero()) return f;
    Int den_lcm(1), num_gcd(0);
    for (const auto& c : f.coeffs()) {
        if (c == 0) continue;
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (f.leading() < 0) scale = -scale;
    return f * scale;
}

/// Monic gcd. gcd(f, 0) = monic(f); both zero is rejected.
inline Poly gcd(const Poly& f, const Poly& g) {
    require(!(f.is_zero() && g.is_zero()), "gcd of two zero polynomials");
    Poly a = primitive_part(f), b = primitive_part(g);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        Poly r = primitive_part(a % b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Monic squarefree part f / gcd(f, f'); its degree counts the distinct complex roots.
inline Poly radical(const Poly& f) {
    require(!f.is_zero(), "radical of zero polynomial");
    return exact_div(f, gcd(f, f.derivative())).monic();
}

/// Returns lambda with f = lambda * g, if one exists.
inline std::optional<Rat> is_scalar_multiple(const Poly& f, const Poly& g) {
    require(!f.is_zero() && !g.is_zero(), "scalar multiple test on zero polynomial");
    if (f.degree() != g.degree()) return std::nullopt;
    const Rat lambda = f.leading() / g.leading();
    if (g * lambda != f) return std::nullopt;
    return lambda;
}

// ---------------------------------------------------------------------------
// text form

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    Poly parse() {
        skip_ws();
        if (pos_ == s_.size()) throw ParseError(pos_, "empty polynomial");
        Poly acc;
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ == s_.size()) break;
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw ParseError(pos_, "expected '+' or '-'");
            }
            acc += term() * Rat(sign);
            first = false;
        }
        return acc;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    Poly term() {
        Rat coef(1);
        bool have_coef = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Int num(digits());
            Int den(1);
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                const std::size_t at = pos_;
                const std::string d = digits();
                if (d.empty()) throw ParseError(at, "expected denominator");
                den = Int(d);
                if (den == 0) throw ParseError(at, "zero denominator");
            }
            coef = Rat(num, den);
            coef.canonicalize();
            have_coef = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (peek() != 'x') throw ParseError(pos_, "expected 'x' after '*'");
            }
        }
        if (peek() != 'x') {
            if (!have_coef) throw ParseError(pos_, "expected coefficient or 'x'");
            return Poly::constant(coef);
        }
        ++pos_;
        skip_ws();
        std::size_t exponent = 1;
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            const std::string e = digits();
            if (e.empty()) throw ParseError(at, "expected exponent");
            if (e.size() > 6) throw ParseError(at, "exponent too large");
            exponent = std::stoul(e);
        }
        return Poly::monomial(coef, exponent);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly Poly::parse(std::string_view text) { return detail::PolyParser(text).parse(); }

inline std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rat& c = c_[i];
        if (c == 0) continue;
        const bool neg = c < 0;
        if (out.empty()) {
            if (neg) out += '-';
        } else {
            out += neg ? " - " : " + ";
        }
        const Rat mag = abs(c);
        if (i == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1) out += mag.get_str() + "*";
        out += 'x';
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// rational functions

/// Reduced quotient num/den with monic denominator.
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly::constant(1)) {}
    RatFunc(const Poly& p) : num_(p), den_(Poly::constant(1)) {}  // NOLINT(google-explicit-constructor)
    RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
        require(!den.is_zero(), "rational function with zero denominator");
        normalize();
    }

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        require(!b.is_zero(), "division by zero rational function");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b) {
        if (auto c = a.den_ <=> b.den_; c != 0) return c;
        return a.num_ <=> b.num_;
    }

    std::string to_string() const {
        if (den_ == Poly::constant(1)) return num_.to_string();
        auto wrap = [](const Poly& p) {
            std::string s = p.to_string();
            const bool single = s.find(' ') == std::string::npos;
            return single ? s : "(" + s + ")";
        };
        return wrap(num_) + "/" + wrap(den_);
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::constant(1);
            return;
        }
        const Poly g = gcd(num_, den_);
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
        const Rat inv = 1 / den_.leading();
        num_ *= inv;
        den_ *= inv;
    }

    Poly num_;
    Poly den_;
};

inline RatFunc pow(const RatFunc& r, unsigned long m) { return {pow(r.num(), m), pow(r.den(), m)}; }

struct RatFuncHash {
    std::size_t operator()(const RatFunc& r) const noexcept {
        return detail::hash_combine(PolyHash{}(r.num()), PolyHash{}(r.den()));
    }
};

}  // namespace sumprod
