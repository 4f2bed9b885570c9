#include "sharing/expr.hpp"

#include <cctype>

namespace sharing {

ParseError::ParseError(const std::string &message, std::size_t offset)
    : std::invalid_argument(message + " at offset " + std::to_string(offset)), offset(offset) {}

namespace {

// Recursive descent; one function per precedence level.
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr run() {
        Expr e = parse_sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &message) const { throw ParseError(message, pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool at_digit() {
        skip_space();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    mpz_class integer_literal() {
        if (!at_digit()) fail("expected integer");
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') fail("decimal literals are not supported");
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    Expr parse_sum() {
        Expr e = parse_product();
        for (;;) {
            if (accept('+'))
                e = e + parse_product();
            else if (accept('-'))
                e = e + (-parse_product());
            else
                return e;
        }
    }

    Expr parse_product() {
        Expr e = parse_unary();
        for (;;) {
            if (accept('*')) {
                e = e * parse_unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expr d = parse_unary();
                if (d.is_rational(0)) throw ParseError("division by literal zero", at);
                e = e / d;
            } else {
                return e;
            }
        }
    }

    Expr parse_unary() {
        if (accept('-')) return -parse_unary();
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        while (accept('^')) base = pow(base, exponent());
        return base;
    }

    long exponent() {
        bool paren = accept('(');
        bool negative = accept('-');
        if (!negative) accept('+');
        skip_space();
        if (!at_digit()) {
            if (pos_ < text_.size() && (text_[pos_] == 'z' || text_[pos_] == '('))
                fail("fractional power");
            fail("expected integer exponent");
        }
        mpz_class n = integer_literal();
        // Without parentheses z^1/2 reads as (z^1)/2, which is legal.
        if (paren) {
            if (accept('/')) fail("fractional power");
            expect(')');
        }
        if (!n.fits_slong_p()) fail("exponent too large");
        long v = n.get_si();
        return negative ? -v : v;
    }

    Expr parse_atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        std::size_t start = pos_;
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Expr::rational(mpq_class(integer_literal()));
        if (accept('(')) {
            Expr e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (name == "z") return Expr::variable();
            if (name == "pi") return Expr::pi();
            if (name == "i") return Expr::imaginary_unit();
            if (name == "exp" || name == "sin" || name == "cos") {
                expect('(');
                Expr arg = parse_sum();
                expect(')');
                try {
                    if (name == "exp") return exp(arg);
                    if (name == "sin") return sin(arg);
                    return cos(arg);
                } catch (const ExprError &err) {
                    throw ParseError(err.what(), start);
                }
            }
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

enum Level { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

int level(const Expr &e) {
    switch (e.kind()) {
    case ExprKind::Rational:
        if (e.value().get_den() != 1) return kProduct;
        return sgn(e.value()) < 0 ? kUnary : kAtom;
    case ExprKind::Add:
        return kSum;
    case ExprKind::Multiply:
    case ExprKind::Divide:
        return kProduct;
    case ExprKind::Negate:
        return kUnary;
    case ExprKind::IntegerPower:
        return kPower;
    default:
        return kAtom;
    }
}

void print(const Expr &e, int min_level, std::string &out);

void print_operand(const Expr &e, int min_level, std::string &out) {
    if (level(e) < min_level) {
        out += '(';
        print(e, 0, out);
        out += ')';
    } else {
        print(e, min_level, out);
    }
}

void print(const Expr &e, int, std::string &out) {
    switch (e.kind()) {
    case ExprKind::Variable:
        out += 'z';
        return;
    case ExprKind::Rational:
        out += rational_to_string(e.value());
        return;
    case ExprKind::Pi:
        out += "pi";
        return;
    case ExprKind::ImaginaryUnit:
        out += 'i';
        return;
    case ExprKind::Negate:
        out += '-';
        print_operand(e.lhs(), kUnary, out);
        return;
    case ExprKind::Add: {
        print_operand(e.lhs(), kSum, out);
        const Expr &r = e.rhs();
        if (r.kind() == ExprKind::Negate) {
            out += " - ";
            print_operand(r.lhs(), kProduct, out);
        } else if (r.is_rational() && sgn(r.value()) < 0) {
            out += " - ";
            out += rational_to_string(-r.value());
        } else {
            out += " + ";
            print_operand(r, kProduct, out);
        }
        return;
    }
    case ExprKind::Multiply:
    case ExprKind::Divide:
        print_operand(e.lhs(), kProduct, out);
        out += e.kind() == ExprKind::Multiply ? '*' : '/';
        print_operand(e.rhs(), kUnary, out);
        return;
    case ExprKind::IntegerPower:
        print_operand(e.lhs(), kAtom, out);
        out += '^';
        out += e.exponent() < 0 ? "(" + std::to_string(e.exponent()) + ")"
                                : std::to_string(e.exponent());
        return;
    case ExprKind::Exp:
    case ExprKind::Sin:
    case ExprKind::Cos:
        out += e.kind() == ExprKind::Exp ? "exp(" : e.kind() == ExprKind::Sin ? "sin(" : "cos(";
        print(e.lhs(), 0, out);
        out += ')';
        return;
    }
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

std::string to_string(const Expr &e) {
    std::string out;
    print(e, 0, out);
    return out;
}

}  // namespace sharing
