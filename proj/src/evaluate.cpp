#include "sharing/evaluate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sharing {

Program::Program(const Expr &e) {
    std::unordered_map<const void *, int> seen;
    emit(e, seen);
}

int Program::emit(const Expr &e, std::unordered_map<const void *, int> &seen) {
    if (auto it = seen.find(e.id()); it != seen.end()) return it->second;
    Instr in{Op::Z};
    switch (e.kind()) {
    case ExprKind::Variable:
        in.op = Op::Z;
        break;
    case ExprKind::Rational:
    case ExprKind::ImaginaryUnit: {
        GaussRational q = e.kind() == ExprKind::Rational ? GaussRational(e.value()) : GaussRational(0, 1);
        in.op = Op::Const;
        in.n = static_cast<long>(constants_.size());
        constants_double_.emplace_back(q.re.get_d(), q.im.get_d());
        constants_.push_back(std::move(q));
        break;
    }
    case ExprKind::Pi:
        in.op = Op::Pi;
        break;
    case ExprKind::Negate:
        in.op = Op::Neg;
        in.a = emit(e.lhs(), seen);
        break;
    case ExprKind::Add:
    case ExprKind::Multiply:
    case ExprKind::Divide:
        in.op = e.kind() == ExprKind::Add ? Op::Add : e.kind() == ExprKind::Multiply ? Op::Mul : Op::Div;
        in.a = emit(e.lhs(), seen);
        in.b = emit(e.rhs(), seen);
        break;
    case ExprKind::IntegerPower:
        in.op = Op::Pow;
        in.a = emit(e.lhs(), seen);
        in.n = e.exponent();
        break;
    case ExprKind::Exp:
    case ExprKind::Sin:
    case ExprKind::Cos:
        in.op = e.kind() == ExprKind::Exp ? Op::Exp : e.kind() == ExprKind::Sin ? Op::Sin : Op::Cos;
        in.a = emit(e.lhs(), seen);
        break;
    }
    code_.push_back(in);
    int slot = static_cast<int>(code_.size()) - 1;
    seen.emplace(e.id(), slot);
    return slot;
}

namespace {

std::complex<double> ipow(std::complex<double> x, long n) {
    bool invert = n < 0;
    unsigned long m = invert ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    std::complex<double> r(1.0, 0.0);
    while (m) {
        if (m & 1) r *= x;
        m >>= 1;
        if (m) x *= x;
    }
    return invert ? 1.0 / r : r;
}

}  // namespace

std::complex<double> Program::operator()(std::complex<double> z) const {
    std::vector<std::complex<double>> r(code_.size());
    for (std::size_t k = 0; k < code_.size(); ++k) {
        const Instr &in = code_[k];
        switch (in.op) {
        case Op::Z: r[k] = z; break;
        case Op::Const: r[k] = constants_double_[in.n]; break;
        case Op::Pi: r[k] = std::numbers::pi; break;
        case Op::Neg: r[k] = -r[in.a]; break;
        case Op::Add: r[k] = r[in.a] + r[in.b]; break;
        case Op::Mul: r[k] = r[in.a] * r[in.b]; break;
        case Op::Div: r[k] = r[in.a] / r[in.b]; break;
        case Op::Pow: r[k] = ipow(r[in.a], in.n); break;
        case Op::Exp: r[k] = std::exp(r[in.a]); break;
        case Op::Sin: r[k] = std::sin(r[in.a]); break;
        case Op::Cos: r[k] = std::cos(r[in.a]); break;
        }
    }
    return r.back();
}

Program::Estimate Program::estimate(std::complex<double> z) const {
    constexpr double u = std::numeric_limits<double>::epsilon();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<Estimate> r(code_.size());
    for (std::size_t k = 0; k < code_.size(); ++k) {
        const Instr &in = code_[k];
        Estimate &out = r[k];
        const Estimate &a = in.a >= 0 ? r[in.a] : out;
        const Estimate &b = in.b >= 0 ? r[in.b] : out;
        double ma = std::abs(a.value), mb = std::abs(b.value);
        switch (in.op) {
        case Op::Z: out = {z, 0}; break;
        case Op::Const: out = {constants_double_[in.n], u * std::abs(constants_double_[in.n])}; break;
        case Op::Pi: out = {std::numbers::pi, u * std::numbers::pi}; break;
        case Op::Neg: out = {-a.value, a.error}; break;
        case Op::Add:
            out.value = a.value + b.value;
            out.error = a.error + b.error + u * std::abs(out.value);
            break;
        case Op::Mul:
            out.value = a.value * b.value;
            out.error = ma * b.error + mb * a.error + a.error * b.error + 3 * u * ma * mb;
            break;
        case Op::Div:
            out.value = a.value / b.value;
            out.error = mb > b.error ? (a.error + std::abs(out.value) * b.error) / (mb - b.error) +
                                           4 * u * std::abs(out.value)
                                     : inf;
            break;
        case Op::Pow: {
            out.value = ipow(a.value, in.n);
            double rel = ma > 0 ? a.error / ma : inf;
            double n = std::abs(static_cast<double>(in.n));
            out.error = rel < 0.5 ? std::abs(out.value) * (std::expm1(2 * n * rel) + 2 * n * u) : inf;
            break;
        }
        case Op::Exp:
            out.value = std::exp(a.value);
            out.error = std::abs(out.value) * (std::expm1(a.error) + 4 * u);
            break;
        case Op::Sin:
        case Op::Cos: {
            out.value = in.op == Op::Sin ? std::sin(a.value) : std::cos(a.value);
            double bound = std::cosh(std::abs(a.value.imag()) + a.error);
            out.error = a.error * bound + 4 * u * bound;
            break;
        }
        }
    }
    return r.back();
}

ComplexBall Program::operator()(const ComplexBall &z) const {
    mpfr_prec_t prec = z.precision();
    std::vector<ComplexBall> r;
    r.reserve(code_.size());
    for (const Instr &in : code_) {
        switch (in.op) {
        case Op::Z: r.push_back(z); break;
        case Op::Const: r.push_back(ComplexBall::exact(constants_[in.n], prec)); break;
        case Op::Pi: r.push_back(ComplexBall::pi(prec)); break;
        case Op::Neg: r.push_back(-r[in.a]); break;
        case Op::Add: r.push_back(r[in.a] + r[in.b]); break;
        case Op::Mul: r.push_back(r[in.a] * r[in.b]); break;
        case Op::Div: r.push_back(r[in.a] / r[in.b]); break;
        case Op::Pow: r.push_back(pow(r[in.a], in.n)); break;
        case Op::Exp: r.push_back(exp(r[in.a])); break;
        case Op::Sin: r.push_back(sin(r[in.a])); break;
        case Op::Cos: r.push_back(cos(r[in.a])); break;
        }
    }
    return r.back();
}

}  // namespace sharing
