#pragma once

#include "sharing/ball.hpp"
#include "sharing/expr.hpp"

#include <complex>
#include <unordered_map>
#include <vector>

namespace sharing {

/// Expression flattened to straight-line code; shared subtrees are evaluated
/// once. Evaluation is reentrant.
class Program {
public:
    Program() = default;
    explicit Program(const Expr &e);

    std::complex<double> operator()(std::complex<double> z) const;

    /// Double value with a first-order bound on its rounding error. Not
    /// rigorous (libm is trusted to a few ulps); used to detect cancellation.
    struct Estimate {
        std::complex<double> value;
        double error = 0;
    };
    Estimate estimate(std::complex<double> z) const;
    /// Enclosure of e over the ball z, at z's precision. Throws BallDomainError
    /// when a divisor ball contains zero.
    ComplexBall operator()(const ComplexBall &z) const;

    std::size_t length() const { return code_.size(); }

private:
    enum class Op { Z, Const, Pi, Neg, Add, Mul, Div, Pow, Exp, Sin, Cos };
    struct Instr {
        Op op;
        int a = -1;
        int b = -1;
        long n = 0;
    };

    int emit(const Expr &e, std::unordered_map<const void *, int> &seen);

    std::vector<Instr> code_;
    std::vector<GaussRational> constants_;
    std::vector<std::complex<double>> constants_double_;
};

}  // namespace sharing
