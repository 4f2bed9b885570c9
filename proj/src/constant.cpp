#include "sharing/constant.hpp"

#include <deque>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace sharing {

namespace {

enum class AtomKind { Pi, Exp, Sin, Cos, Approx };

struct Atom {
    AtomKind kind;
    SymConst arg;
    ComplexBall ball;
    std::string label;

    std::mutex cache_mutex;
    std::map<mpfr_prec_t, ComplexBall> cache;
};

// Interned atoms. Atoms are never removed, so references stay valid.
class AtomTable {
public:
    static AtomTable &instance() {
        static AtomTable table;
        return table;
    }

    AtomId intern(AtomKind kind, const SymConst &arg) {
        std::string key = std::to_string(static_cast<int>(kind)) + ":" + arg.key();
        std::lock_guard lock(mutex_);
        if (auto it = index_.find(key); it != index_.end()) return it->second;
        auto atom = std::make_unique<Atom>();
        atom->kind = kind;
        atom->arg = arg;
        AtomId id = static_cast<AtomId>(atoms_.size());
        atoms_.push_back(std::move(atom));
        index_.emplace(std::move(key), id);
        return id;
    }

    AtomId add_approx(const ComplexBall &ball, std::string label) {
        std::lock_guard lock(mutex_);
        auto atom = std::make_unique<Atom>();
        atom->kind = AtomKind::Approx;
        atom->ball = ball;
        atom->label = std::move(label);
        AtomId id = static_cast<AtomId>(atoms_.size());
        atoms_.push_back(std::move(atom));
        return id;
    }

    Atom &get(AtomId id) {
        std::lock_guard lock(mutex_);
        return *atoms_.at(id);
    }

    AtomId pi_id() {
        static const AtomId id = intern(AtomKind::Pi, SymConst());
        return id;
    }

private:
    std::mutex mutex_;
    std::deque<std::unique_ptr<Atom>> atoms_;
    std::map<std::string, AtomId> index_;
};

Monomial mono_mul(const Monomial &a, const Monomial &b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            int e = a[i].second + b[j].second;
            if (e != 0) out.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    return out;
}

Monomial mono_inverse(Monomial m) {
    for (auto &[id, e] : m) e = -e;
    return m;
}

void poly_add_term(Poly &p, const Monomial &m, const GaussRational &c) {
    if (c.is_zero()) return;
    auto [it, inserted] = p.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

Poly poly_add(Poly a, const Poly &b, bool subtract) {
    for (const auto &[m, c] : b) poly_add_term(a, m, subtract ? -c : c);
    return a;
}

Poly poly_mul(const Poly &a, const Poly &b) {
    Poly out;
    for (const auto &[ma, ca] : a)
        for (const auto &[mb, cb] : b) poly_add_term(out, mono_mul(ma, mb), ca * cb);
    return out;
}

Poly poly_scale(Poly p, const GaussRational &q) {
    if (q.is_zero()) return {};
    for (auto &[m, c] : p) c *= q;
    return p;
}

Poly poly_one() { return Poly{{Monomial{}, GaussRational(1)}}; }

Poly poly_pow(const Poly &p, int n) {
    Poly result = poly_one();
    for (int k = 0; k < n; ++k) result = poly_mul(result, p);
    return result;
}

// Ratio c with a == c * b, if any.
std::optional<GaussRational> proportional(const Poly &a, const Poly &b) {
    if (a.size() != b.size() || a.empty()) return std::nullopt;
    std::optional<GaussRational> ratio;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return std::nullopt;
        GaussRational r = ia->second / ib->second;
        if (ratio && *ratio != r) return std::nullopt;
        ratio = r;
    }
    return ratio;
}

ComplexBall atom_ball(AtomId id, mpfr_prec_t prec);

ComplexBall poly_ball(const Poly &p, mpfr_prec_t prec) {
    ComplexBall sum(prec);
    for (const auto &[m, c] : p) {
        ComplexBall term = ComplexBall::exact(c, prec);
        for (const auto &[id, e] : m) term = term * pow(atom_ball(id, prec), e);
        sum = sum + term;
    }
    return sum;
}

ComplexBall atom_ball(AtomId id, mpfr_prec_t prec) {
    Atom &atom = AtomTable::instance().get(id);
    {
        std::lock_guard lock(atom.cache_mutex);
        if (auto it = atom.cache.find(prec); it != atom.cache.end()) return it->second;
    }
    ComplexBall value(prec);
    switch (atom.kind) {
    case AtomKind::Pi:
        value = ComplexBall::pi(prec);
        break;
    case AtomKind::Exp:
        value = exp(enclose(atom.arg, prec + 16));
        break;
    case AtomKind::Sin:
        value = sin(enclose(atom.arg, prec + 16));
        break;
    case AtomKind::Cos:
        value = cos(enclose(atom.arg, prec + 16));
        break;
    case AtomKind::Approx:
        value = atom.ball.with_precision(std::max(prec, atom.ball.precision()));
        break;
    }
    std::lock_guard lock(atom.cache_mutex);
    atom.cache.emplace(prec, value);
    return value;
}

std::string atom_text(AtomId id, bool as_key) {
    Atom &atom = AtomTable::instance().get(id);
    switch (atom.kind) {
    case AtomKind::Pi:
        return "pi";
    case AtomKind::Exp:
        return "exp(" + (as_key ? atom.arg.key() : atom.arg.to_string()) + ")";
    case AtomKind::Sin:
        return "sin(" + (as_key ? atom.arg.key() : atom.arg.to_string()) + ")";
    case AtomKind::Cos:
        return "cos(" + (as_key ? atom.arg.key() : atom.arg.to_string()) + ")";
    case AtomKind::Approx:
        if (as_key) return "@" + std::to_string(id);
        return atom.label.empty() ? "(" + atom.ball.to_string(25) + ")" : atom.label;
    }
    return "?";
}

bool monomial_never_vanishes(const Monomial &m) {
    for (const auto &[id, e] : m) {
        AtomKind k = AtomTable::instance().get(id).kind;
        if (k != AtomKind::Pi && k != AtomKind::Exp) return false;
    }
    return true;
}

bool form_has_approx(const Poly &p);

bool atom_has_approx(AtomId id) {
    Atom &atom = AtomTable::instance().get(id);
    if (atom.kind == AtomKind::Approx) return true;
    if (atom.kind == AtomKind::Pi) return false;
    return !atom.arg.is_exact();
}

bool form_has_approx(const Poly &p) {
    for (const auto &[m, c] : p)
        for (const auto &[id, e] : m)
            if (atom_has_approx(id)) return true;
    return false;
}

}  // namespace

PrecisionSchedule PrecisionSchedule::for_working(mpfr_prec_t working) {
    PrecisionSchedule s;
    s.bits = {std::min<mpfr_prec_t>(64, working), working, 4 * working};
    return s;
}

SymConst::SymConst(const GaussRational &q) {
    if (!q.is_zero()) num_.emplace(Monomial{}, q);
}

SymConst SymConst::pi() {
    SymConst c;
    c.num_.emplace(Monomial{{AtomTable::instance().pi_id(), 1}}, GaussRational(1));
    return c;
}

SymConst SymConst::imaginary_unit() { return SymConst(GaussRational(0, 1)); }

SymConst SymConst::approximate(const ComplexBall &ball, std::string label) {
    SymConst c;
    AtomId id = AtomTable::instance().add_approx(ball, std::move(label));
    c.num_.emplace(Monomial{{id, 1}}, GaussRational(1));
    return c;
}

SymConst SymConst::exp(const SymConst &arg) {
    if (arg.is_exact_zero()) return SymConst(1);
    SymConst c;
    c.num_.emplace(Monomial{{AtomTable::instance().intern(AtomKind::Exp, arg), 1}},
                   GaussRational(1));
    return c;
}

SymConst SymConst::sin(const SymConst &arg) {
    if (arg.is_exact_zero()) return SymConst();
    if (auto q = arg.as_rational_multiple_of_pi(); q && q->get_den() == 1) return SymConst();
    SymConst c;
    c.num_.emplace(Monomial{{AtomTable::instance().intern(AtomKind::Sin, arg), 1}},
                   GaussRational(1));
    return c;
}

SymConst SymConst::cos(const SymConst &arg) {
    if (arg.is_exact_zero()) return SymConst(1);
    if (auto q = arg.as_rational_multiple_of_pi(); q && q->get_den() == 1) {
        mpz_class n = q->get_num();
        return SymConst(mpz_odd_p(n.get_mpz_t()) ? -1 : 1);
    }
    SymConst c;
    c.num_.emplace(Monomial{{AtomTable::instance().intern(AtomKind::Cos, arg), 1}},
                   GaussRational(1));
    return c;
}

std::optional<GaussRational> SymConst::as_rational() const {
    if (num_.empty()) return GaussRational(0);
    if (!den_.empty() || num_.size() != 1 || !num_.begin()->first.empty()) return std::nullopt;
    return num_.begin()->second;
}

std::optional<mpq_class> SymConst::as_rational_multiple_of_pi() const {
    if (num_.empty()) return mpq_class(0);
    if (!den_.empty() || num_.size() != 1) return std::nullopt;
    const auto &[m, c] = *num_.begin();
    if (m.size() != 1 || m[0].first != AtomTable::instance().pi_id() || m[0].second != 1)
        return std::nullopt;
    if (!c.is_real()) return std::nullopt;
    return c.re;
}

bool SymConst::is_exact() const {
    if (form_has_approx(num_)) return false;
    for (const auto &[p, e] : den_)
        if (form_has_approx(p)) return false;
    return true;
}

void SymConst::normalize() {
    if (num_.empty()) {
        den_.clear();
        return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        while (it->second > 0) {
            auto ratio = proportional(num_, it->first);
            if (!ratio) break;
            num_ = Poly{{Monomial{}, *ratio}};
            --it->second;
        }
        if (it->second == 0)
            it = den_.erase(it);
        else
            ++it;
    }
}

SymConst SymConst::operator-() const {
    SymConst c(*this);
    for (auto &[m, q] : c.num_) q = -q;
    return c;
}

SymConst &SymConst::operator+=(const SymConst &o) {
    if (o.num_.empty()) return *this;
    if (num_.empty()) return *this = o;
    if (den_ == o.den_) {
        num_ = poly_add(std::move(num_), o.num_, false);
    } else {
        std::map<Poly, int> lcm = den_;
        for (const auto &[p, e] : o.den_) {
            auto &slot = lcm[p];
            slot = std::max(slot, e);
        }
        auto lift = [&lcm](const Poly &num, const std::map<Poly, int> &den) {
            Poly out = num;
            for (const auto &[p, e] : lcm) {
                auto it = den.find(p);
                int have = it == den.end() ? 0 : it->second;
                if (e > have) out = poly_mul(out, poly_pow(p, e - have));
            }
            return out;
        };
        num_ = poly_add(lift(num_, den_), lift(o.num_, o.den_), false);
        den_ = std::move(lcm);
    }
    normalize();
    return *this;
}

SymConst &SymConst::operator-=(const SymConst &o) { return *this += -o; }

SymConst &SymConst::operator*=(const SymConst &o) {
    if (num_.empty()) return *this;
    if (o.num_.empty()) return *this = SymConst();
    num_ = poly_mul(num_, o.num_);
    for (const auto &[p, e] : o.den_) den_[p] += e;
    normalize();
    return *this;
}

SymConst &SymConst::operator/=(const SymConst &o) {
    if (o.num_.empty()) throw std::domain_error("division by an exactly zero constant");
    if (num_.empty()) return *this;
    for (const auto &[p, e] : o.den_) num_ = poly_mul(num_, poly_pow(p, e));
    if (o.num_.size() == 1) {
        const auto &[m, c] = *o.num_.begin();
        num_ = poly_mul(num_, Poly{{mono_inverse(m), GaussRational(1) / c}});
    } else {
        GaussRational lead = o.num_.begin()->second;
        Poly factor = poly_scale(o.num_, GaussRational(1) / lead);
        num_ = poly_scale(std::move(num_), GaussRational(1) / lead);
        den_[factor] += 1;
    }
    normalize();
    return *this;
}

SymConst SymConst::pow(long n) const {
    if (n < 0) return SymConst(1) / pow(-n);
    SymConst result(1), base(*this);
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

SymConst SymConst::scaled(const GaussRational &q) const {
    SymConst c(*this);
    c.num_ = poly_scale(std::move(c.num_), q);
    c.normalize();
    return c;
}

namespace {

std::string coefficient_prefix(const GaussRational &c, bool has_monomial) {
    if (!has_monomial) return c.to_string();
    if (c.is_one()) return "";
    if (c == GaussRational(-1)) return "-";
    if (c.is_real() || sgn(c.re) == 0) {
        std::string s = c.to_string();
        return s + "*";
    }
    return "(" + c.to_string() + ")*";
}

std::string poly_text(const Poly &p, bool as_key) {
    if (p.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto &[m, c] : p) {
        std::string term = coefficient_prefix(c, !m.empty());
        bool first_factor = true;
        for (const auto &[id, e] : m) {
            if (!first_factor) term += "*";
            term += atom_text(id, as_key);
            if (e != 1) term += "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
            first_factor = false;
        }
        if (first) {
            out = term;
        } else if (!term.empty() && term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
        first = false;
    }
    return out;
}

}  // namespace

std::string SymConst::render(bool as_key) const {
    std::string n = poly_text(num_, as_key);
    if (den_.empty()) return n;
    std::string d;
    for (const auto &[p, e] : den_) {
        if (!d.empty()) d += "*";
        d += "(" + poly_text(p, as_key) + ")";
        if (e != 1) d += "^" + std::to_string(e);
    }
    return "(" + n + ")/(" + d + ")";
}

const char *to_string(ZeroTest z) {
    switch (z) {
    case ZeroTest::Zero:
        return "zero";
    case ZeroTest::NonZero:
        return "nonzero";
    case ZeroTest::Unknown:
        return "unknown";
    }
    return "?";
}

ComplexBall enclose(const SymConst &c, mpfr_prec_t precision_bits) {
    ComplexBall num = poly_ball(c.num_, precision_bits);
    if (c.den_.empty() || c.num_.empty()) return num;
    // Denominator factors were certified nonzero; raise precision until the
    // ball separates them from zero.
    for (mpfr_prec_t p = precision_bits; p <= 16 * precision_bits + 4096; p *= 2) {
        try {
            ComplexBall den = ComplexBall::exact(GaussRational(1), p);
            for (const auto &[poly, e] : c.den_) den = den * pow(poly_ball(poly, p), e);
            ComplexBall n = p == precision_bits ? num : poly_ball(c.num_, p);
            return n / den;
        } catch (const BallDomainError &) {
        }
    }
    throw BallDomainError("denominator of a certified constant could not be separated from zero");
}

ZeroTest zero_test(const SymConst &c, const PrecisionSchedule &schedule) {
    if (c.num_.empty()) return ZeroTest::Zero;
    if (c.num_.size() == 1 && monomial_never_vanishes(c.num_.begin()->first))
        return ZeroTest::NonZero;
    for (mpfr_prec_t p : schedule.bits)
        if (poly_ball(c.num_, p).excludes_zero()) return ZeroTest::NonZero;
    return ZeroTest::Unknown;
}

std::string approximate_string(const SymConst &c, int digits) {
    return enclose(c, 128 + 4 * digits).to_string(digits);
}

}  // namespace sharing
