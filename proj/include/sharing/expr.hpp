#pragma once

#include "sharing/constant.hpp"
#include "sharing/rational.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sharing {

enum class ExprKind {
    Variable,
    Rational,
    Pi,
    ImaginaryUnit,
    Negate,
    Add,
    Multiply,
    Divide,
    IntegerPower,
    Exp,
    Sin,
    Cos,
};

/// Immutable expression tree over the complex variable z. Copies share nodes.
class Expr {
public:
    /// The literal 0.
    Expr();

    static Expr variable();
    static Expr rational(const mpq_class &q);
    static Expr integer(long n) { return rational(mpq_class(n)); }
    static Expr pi();
    static Expr imaginary_unit();
    /// Gaussian rational as re + im*i.
    static Expr constant(const GaussRational &q);

    ExprKind kind() const;
    /// Valid for Rational nodes.
    const mpq_class &value() const;
    /// Valid for IntegerPower nodes.
    long exponent() const;
    /// Operand of unary nodes, left operand of binary ones.
    const Expr &lhs() const;
    const Expr &rhs() const;

    bool is_rational() const { return kind() == ExprKind::Rational; }
    bool is_rational(long n) const;
    bool depends_on_z() const;
    /// Node count.
    std::size_t size() const;

    friend Expr operator-(const Expr &a);
    friend Expr operator+(const Expr &a, const Expr &b);
    friend Expr operator-(const Expr &a, const Expr &b);
    friend Expr operator*(const Expr &a, const Expr &b);
    friend Expr operator/(const Expr &a, const Expr &b);
    friend Expr pow(const Expr &base, long n);
    friend Expr exp(const Expr &a);
    friend Expr sin(const Expr &a);
    friend Expr cos(const Expr &a);

    /// Node identity; only for caching, never for semantic equality.
    const void *id() const { return node_.get(); }

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expr make(ExprKind kind, Expr a, Expr b = Expr(std::shared_ptr<const Node>()));
    std::shared_ptr<const Node> node_;
};

/// Raised for expressions outside the language: division by literal 0,
/// reciprocal of 0, or a transcendental argument with a pole.
struct ExprError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
    ParseError(const std::string &message, std::size_t offset);
    std::size_t offset;
};

Expr parse(std::string_view text);
std::string to_string(const Expr &e);

Expr differentiate(const Expr &e);
Expr reciprocal_of(const Expr &e);

/// Entire numerator and denominator with e = num / den.
struct Fraction {
    Expr num;
    Expr den;
};
Fraction split_fraction(const Expr &e);

/// Exact value of a z-free expression; nullopt if e depends on z.
/// Throws ExprError when a divisor is not certified nonzero.
std::optional<SymConst> constant_value(const Expr &e);

/// w -> (a w + b) / (c w + d) with constant coefficients.
class Mobius {
public:
    /// Throws ExprError unless all coefficients are constant and a d - b c is
    /// certified nonzero.
    Mobius(Expr a, Expr b, Expr c, Expr d);

    static Mobius identity();
    static Mobius inversion();
    static Mobius translation(const Expr &shift);

    const Expr &a() const { return a_; }
    const Expr &b() const { return b_; }
    const Expr &c() const { return c_; }
    const Expr &d() const { return d_; }
    const SymConst &determinant() const { return det_; }

    /// this o inner.
    Mobius compose(const Mobius &inner) const;
    std::string to_string() const;

private:
    Expr a_, b_, c_, d_;
    SymConst det_;
};

Expr apply_mobius(const Mobius &m, const Expr &e);

}  // namespace sharing
