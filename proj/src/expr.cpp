#include "sharing/expr.hpp"

namespace sharing {

struct Expr::Node {
    ExprKind kind;
    mpq_class value;
    long exponent = 0;
    Expr a{std::shared_ptr<const Node>()};
    Expr b{std::shared_ptr<const Node>()};
    bool has_z = false;
    std::size_t size = 1;
};

namespace {

std::shared_ptr<const Expr::Node> literal_node(const mpq_class &q) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = ExprKind::Rational;
    n->value = q;
    return n;
}

const std::shared_ptr<const Expr::Node> &zero_node() {
    static const std::shared_ptr<const Expr::Node> zero = literal_node(mpq_class(0));
    return zero;
}

bool entire_argument(const Expr &e) {
    switch (e.kind()) {
    case ExprKind::Divide:
        if (e.rhs().depends_on_z()) return false;
        return entire_argument(e.lhs());
    case ExprKind::IntegerPower:
        if (e.exponent() < 0 && e.lhs().depends_on_z()) return false;
        return entire_argument(e.lhs());
    case ExprKind::Negate:
        return entire_argument(e.lhs());
    case ExprKind::Add:
    case ExprKind::Multiply:
        return entire_argument(e.lhs()) && entire_argument(e.rhs());
    default:
        // Exp/Sin/Cos arguments were checked when those nodes were built.
        return true;
    }
}

}  // namespace

Expr::Expr() : node_(zero_node()) {}

Expr Expr::variable() {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Variable;
    n->has_z = true;
    return Expr(std::move(n));
}

Expr Expr::rational(const mpq_class &value) {
    mpq_class q = value;
    q.canonicalize();
    if (sgn(q) == 0) return Expr();
    return Expr(literal_node(q));
}

Expr Expr::pi() {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Pi;
    return Expr(std::move(n));
}

Expr Expr::imaginary_unit() {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::ImaginaryUnit;
    return Expr(std::move(n));
}

Expr Expr::constant(const GaussRational &q) {
    Expr re = rational(q.re);
    if (sgn(q.im) == 0) return re;
    return re + rational(q.im) * imaginary_unit();
}

ExprKind Expr::kind() const { return node_->kind; }
const mpq_class &Expr::value() const { return node_->value; }
long Expr::exponent() const { return node_->exponent; }
const Expr &Expr::lhs() const { return node_->a; }
const Expr &Expr::rhs() const { return node_->b; }
bool Expr::depends_on_z() const { return node_->has_z; }
std::size_t Expr::size() const { return node_->size; }

bool Expr::is_rational(long n) const { return is_rational() && value() == n; }

Expr Expr::make(ExprKind kind, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->has_z = a.depends_on_z() || (b.node_ && b.depends_on_z());
    n->size = 1 + a.size() + (b.node_ ? b.size() : 0);
    n->a = std::move(a);
    n->b = std::move(b);
    return Expr(std::move(n));
}

Expr operator-(const Expr &a) {
    if (a.is_rational()) return Expr::rational(-a.value());
    return Expr::make(ExprKind::Negate, a);
}

Expr operator+(const Expr &a, const Expr &b) {
    if (a.is_rational() && b.is_rational()) return Expr::rational(a.value() + b.value());
    if (a.is_rational(0)) return b;
    if (b.is_rational(0)) return a;
    return Expr::make(ExprKind::Add, a, b);
}

Expr operator-(const Expr &a, const Expr &b) { return a + (-b); }

Expr operator*(const Expr &a, const Expr &b) {
    if (a.is_rational() && b.is_rational()) return Expr::rational(a.value() * b.value());
    if (a.is_rational(0) || b.is_rational(0)) return Expr();
    if (a.is_rational(1)) return b;
    if (b.is_rational(1)) return a;
    return Expr::make(ExprKind::Multiply, a, b);
}

Expr operator/(const Expr &a, const Expr &b) {
    if (b.is_rational(0)) throw ExprError("division by literal zero");
    if (a.is_rational() && b.is_rational()) return Expr::rational(a.value() / b.value());
    if (b.is_rational(1)) return a;
    if (a.is_rational(0)) return Expr();
    return Expr::make(ExprKind::Divide, a, b);
}

Expr pow(const Expr &base, long n) {
    if (n == 0) return Expr::integer(1);
    if (n == 1) return base;
    if (base.is_rational()) {
        if (base.is_rational(0)) {
            if (n < 0) throw ExprError("negative power of literal zero");
            return Expr();
        }
        mpq_class r(1);
        for (long k = 0; k < std::labs(n); ++k) r *= base.value();
        return Expr::rational(n < 0 ? mpq_class(1 / r) : r);
    }
    auto node = std::make_shared<Expr::Node>();
    node->kind = ExprKind::IntegerPower;
    node->exponent = n;
    node->has_z = base.depends_on_z();
    node->size = 1 + base.size();
    node->a = base;
    return Expr(std::move(node));
}

Expr exp(const Expr &a) {
    if (a.is_rational(0)) return Expr::integer(1);
    if (!entire_argument(a)) throw ExprError("transcendental argument not entire");
    return Expr::make(ExprKind::Exp, a);
}

Expr sin(const Expr &a) {
    if (a.is_rational(0)) return Expr();
    if (!entire_argument(a)) throw ExprError("transcendental argument not entire");
    return Expr::make(ExprKind::Sin, a);
}

Expr cos(const Expr &a) {
    if (a.is_rational(0)) return Expr::integer(1);
    if (!entire_argument(a)) throw ExprError("transcendental argument not entire");
    return Expr::make(ExprKind::Cos, a);
}

Expr differentiate(const Expr &e) {
    if (!e.depends_on_z()) return Expr();
    switch (e.kind()) {
    case ExprKind::Variable:
        return Expr::integer(1);
    case ExprKind::Negate:
        return -differentiate(e.lhs());
    case ExprKind::Add:
        return differentiate(e.lhs()) + differentiate(e.rhs());
    case ExprKind::Multiply:
        return differentiate(e.lhs()) * e.rhs() + e.lhs() * differentiate(e.rhs());
    case ExprKind::Divide: {
        const Expr &u = e.lhs(), &v = e.rhs();
        if (!v.depends_on_z()) return differentiate(u) / v;
        return (differentiate(u) * v - u * differentiate(v)) / pow(v, 2);
    }
    case ExprKind::IntegerPower: {
        long n = e.exponent();
        return Expr::integer(n) * pow(e.lhs(), n - 1) * differentiate(e.lhs());
    }
    case ExprKind::Exp:
        return differentiate(e.lhs()) * e;
    case ExprKind::Sin:
        return differentiate(e.lhs()) * cos(e.lhs());
    case ExprKind::Cos:
        return -(differentiate(e.lhs()) * sin(e.lhs()));
    default:
        return Expr();
    }
}

Expr reciprocal_of(const Expr &e) {
    if (e.is_rational(0)) throw ExprError("reciprocal of literal zero");
    return Expr::integer(1) / e;
}

Fraction split_fraction(const Expr &e) {
    const Expr one = Expr::integer(1);
    switch (e.kind()) {
    case ExprKind::Negate: {
        Fraction f = split_fraction(e.lhs());
        return {-f.num, f.den};
    }
    case ExprKind::Add: {
        Fraction l = split_fraction(e.lhs()), r = split_fraction(e.rhs());
        return {l.num * r.den + r.num * l.den, l.den * r.den};
    }
    case ExprKind::Multiply: {
        Fraction l = split_fraction(e.lhs()), r = split_fraction(e.rhs());
        return {l.num * r.num, l.den * r.den};
    }
    case ExprKind::Divide: {
        Fraction l = split_fraction(e.lhs()), r = split_fraction(e.rhs());
        return {l.num * r.den, l.den * r.num};
    }
    case ExprKind::IntegerPower: {
        Fraction b = split_fraction(e.lhs());
        long n = e.exponent();
        if (n >= 0) return {pow(b.num, n), pow(b.den, n)};
        return {pow(b.den, -n), pow(b.num, -n)};
    }
    default:
        return {e, one};
    }
}

std::optional<SymConst> constant_value(const Expr &e) {
    if (e.depends_on_z()) return std::nullopt;
    auto nonzero = [](const SymConst &c) {
        if (zero_test(c) != ZeroTest::NonZero)
            throw ExprError("divisor not certified nonzero: " + c.to_string());
        return c;
    };
    switch (e.kind()) {
    case ExprKind::Rational:
        return SymConst(GaussRational(e.value()));
    case ExprKind::Pi:
        return SymConst::pi();
    case ExprKind::ImaginaryUnit:
        return SymConst::imaginary_unit();
    case ExprKind::Negate:
        return -*constant_value(e.lhs());
    case ExprKind::Add:
        return *constant_value(e.lhs()) + *constant_value(e.rhs());
    case ExprKind::Multiply:
        return *constant_value(e.lhs()) * *constant_value(e.rhs());
    case ExprKind::Divide:
        return *constant_value(e.lhs()) / nonzero(*constant_value(e.rhs()));
    case ExprKind::IntegerPower: {
        SymConst base = *constant_value(e.lhs());
        if (e.exponent() < 0) nonzero(base);
        return base.pow(e.exponent());
    }
    case ExprKind::Exp:
        return SymConst::exp(*constant_value(e.lhs()));
    case ExprKind::Sin:
        return SymConst::sin(*constant_value(e.lhs()));
    case ExprKind::Cos:
        return SymConst::cos(*constant_value(e.lhs()));
    case ExprKind::Variable:
        break;
    }
    return std::nullopt;
}

Mobius::Mobius(Expr a, Expr b, Expr c, Expr d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    auto va = constant_value(a_), vb = constant_value(b_), vc = constant_value(c_),
         vd = constant_value(d_);
    if (!va || !vb || !vc || !vd) throw ExprError("Mobius coefficients must be constants");
    det_ = *va * *vd - *vb * *vc;
    if (zero_test(det_) != ZeroTest::NonZero)
        throw ExprError("Mobius determinant not certified nonzero");
}

Mobius Mobius::identity() {
    return Mobius(Expr::integer(1), Expr(), Expr(), Expr::integer(1));
}

Mobius Mobius::inversion() {
    return Mobius(Expr(), Expr::integer(1), Expr::integer(1), Expr());
}

Mobius Mobius::translation(const Expr &shift) {
    return Mobius(Expr::integer(1), shift, Expr(), Expr::integer(1));
}

Mobius Mobius::compose(const Mobius &in) const {
    return Mobius(a_ * in.a_ + b_ * in.c_, a_ * in.b_ + b_ * in.d_, c_ * in.a_ + d_ * in.c_,
                  c_ * in.b_ + d_ * in.d_);
}

std::string Mobius::to_string() const {
    return "w -> ((" + sharing::to_string(a_) + ")*w + (" + sharing::to_string(b_) + "))/((" +
           sharing::to_string(c_) + ")*w + (" + sharing::to_string(d_) + "))";
}

Expr apply_mobius(const Mobius &m, const Expr &e) {
    Expr num = m.a() * e + m.b();
    Expr den = m.c() * e + m.d();
    return num / den;
}

}  // namespace sharing
