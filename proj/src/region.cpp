#include "sharing/region.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace sharing {

Region::Region(mpq_class a, mpq_class b, mpq_class c, mpq_class d)
    : re_min(std::move(a)), re_max(std::move(b)), im_min(std::move(c)), im_max(std::move(d)) {
    re_min.canonicalize();
    re_max.canonicalize();
    im_min.canonicalize();
    im_max.canonicalize();
    if (re_min >= re_max || im_min >= im_max) throw std::invalid_argument("region has empty interior");
}

Region Region::parse(const std::string &text) {
    std::vector<mpq_class> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) throw std::invalid_argument("empty region entry");
        if (item[0] == '+') item.erase(0, 1);
        mpq_class q;
        if (q.set_str(item, 10) != 0 || item.find('.') != std::string::npos)
            throw std::invalid_argument("region entries must be rationals: " + item);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator in region: " + item);
        q.canonicalize();
        v.push_back(q);
    }
    if (v.size() != 4) throw std::invalid_argument("region needs four entries re_min,re_max,im_min,im_max");
    return Region(v[0], v[1], v[2], v[3]);
}

std::string Region::to_string() const {
    return rational_to_string(re_min) + "," + rational_to_string(re_max) + "," +
           rational_to_string(im_min) + "," + rational_to_string(im_max);
}

Region Region::shrunk(const mpq_class &delta) const {
    return Region(re_min + delta, re_max - delta, im_min + delta, im_max - delta);
}

bool Region::contains(std::complex<double> z) const {
    return z.real() > re_min.get_d() && z.real() < re_max.get_d() && z.imag() > im_min.get_d() &&
           z.imag() < im_max.get_d();
}

namespace {

using cd = std::complex<double>;

// Sum of e_i'/e_i over a list of factors.
class LogDerivative {
public:
    void add(const Expr &e) { terms_.push_back({Program(e), Program(differentiate(e))}); }
    bool empty() const { return terms_.empty(); }

    cd operator()(cd z) const {
        cd s = 0;
        for (const auto &[f, df] : terms_) {
            auto v = f.estimate(z), dv = df.estimate(z);
            double mv = std::abs(v.value), mdv = std::abs(dv.value);
            // Cancellation inside f or f' (e.g. next to a multiple zero):
            // redo the term with balls.
            if (v.error <= kNoise * mv && dv.error <= kNoise * (mdv + mv)) {
                s += dv.value / v.value;
                continue;
            }
            s += precise_term(f, df, z, dv.value / v.value);
        }
        return s;
    }

    /// Midpoint evaluation at high precision. Empty when some factor's ball
    /// contains zero, i.e. z is a root within working accuracy.
    std::optional<ComplexBall> at(const ComplexBall &z) const {
        ComplexBall s(z.precision());
        for (const auto &[f, df] : terms_) {
            ComplexBall v = f(z);
            if (v.contains_zero()) return std::nullopt;
            s = s + df(z) / v;
        }
        return s;
    }

private:
    static constexpr double kNoise = 1e-10;

    static cd precise_term(const Program &f, const Program &df, cd z, cd fallback) {
        for (mpfr_prec_t bits : {128, 256, 512}) {
            try {
                ComplexBall zb = ComplexBall::from_complex(z, bits);
                ComplexBall q = df(zb) / f(zb);
                cd mid = q.mid_double();
                if (q.radius_double() <= kNoise * std::abs(mid)) return mid;
                if (bits == 512) return mid;
            } catch (const BallDomainError &) {
            }
        }
        return fallback;
    }

    std::vector<std::pair<Program, Program>> terms_;
};

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
constexpr std::array<double, 8> kXk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                       0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                       0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                       0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                       0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                       0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                       0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kBoundaryRatio = 1e4;
constexpr double kSegmentTolerance = 1e-9;
constexpr int kMaxBisections = 48;
// Near a multiple zero the double-precision log derivative is noisy and
// bisection would never settle.
constexpr int kSegmentBudget = 1 << 13;

// Path z(t), t in [0, 1], with derivative.
struct Path {
    virtual ~Path() = default;
    virtual std::pair<cd, cd> at(double t) const = 0;
};

struct Segment : Path {
    cd a, b;
    Segment(cd a_, cd b_) : a(a_), b(b_) {}
    std::pair<cd, cd> at(double t) const override { return {a + t * (b - a), b - a}; }
};

struct Arc : Path {
    cd c;
    double r, t0, t1;
    Arc(cd c_, double r_, double t0_, double t1_) : c(c_), r(r_), t0(t0_), t1(t1_) {}
    std::pair<cd, cd> at(double t) const override {
        double th = t0 + t * (t1 - t0);
        cd e = std::polar(1.0, th);
        return {c + r * e, cd(0, 1) * r * e * (t1 - t0)};
    }
};

class Integrator {
public:
    Integrator(const LogDerivative &h, double scale) : h_(h), scale_(scale) {}

    cd integrate(const Path &p) const {
        segments_ = 0;
        return adapt(p, 0.0, 1.0, 0);
    }

private:
    cd sample(const Path &p, double t) const {
        auto [z, dz] = p.at(t);
        cd v = h_(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) * scale_ > kBoundaryRatio)
            throw BoundaryEvent("zero or pole too close to the contour near " + format(z));
        return v * dz;
    }

    static std::string format(cd z) {
        std::ostringstream os;
        os.precision(6);
        os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "*i";
        return os.str();
    }

    cd adapt(const Path &p, double lo, double hi, int depth) const {
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        cd kron = kWk[7] * sample(p, mid);
        cd gauss = kWg[3] * sample(p, mid);
        for (int j = 0; j < 7; ++j) {
            cd s = sample(p, mid - half * kXk[j]) + sample(p, mid + half * kXk[j]);
            kron += kWk[j] * s;
            if (j % 2 == 1) gauss += kWg[j / 2] * s;
        }
        kron *= half;
        gauss *= half;
        if (std::abs(kron - gauss) <= kSegmentTolerance) return kron;
        if (depth >= kMaxBisections || ++segments_ > kSegmentBudget)
            throw ResidualTooLarge("contour quadrature did not converge");
        return adapt(p, lo, mid, depth + 1) + adapt(p, mid, hi, depth + 1);
    }

    const LogDerivative &h_;
    double scale_;
    mutable int segments_ = 0;
};

int round_winding(cd total) {
    cd w = total / (2.0 * std::numbers::pi * cd(0, 1));
    double n = std::round(w.real());
    if (std::abs(w.real() - n) >= 1e-3 || std::abs(w.imag()) >= 1e-3)
        throw ResidualTooLarge("winding number residual too large");
    return static_cast<int>(n);
}

int circle_winding(const LogDerivative &h, cd c, double r) {
    Integrator in(h, 2 * r);
    cd total = 0;
    for (int q = 0; q < 4; ++q)
        total += in.integrate(Arc(c, r, q * std::numbers::pi / 2, (q + 1) * std::numbers::pi / 2));
    return round_winding(total);
}

struct Box {
    double x0, x1, y0, y1;
    double diameter() const { return std::hypot(x1 - x0, y1 - y0); }
    cd center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
    bool inside(cd z) const { return z.real() > x0 && z.real() < x1 && z.imag() > y0 && z.imag() < y1; }
    double edge_distance(cd z) const {
        return std::min({z.real() - x0, x1 - z.real(), z.imag() - y0, y1 - z.imag()});
    }
};

// Edge integrals are cached so that neighbouring cells share work.
class BoxCounter {
public:
    explicit BoxCounter(const LogDerivative &h) : h_(h) {}

    int count(const Box &b) {
        cd c[4] = {{b.x0, b.y0}, {b.x1, b.y0}, {b.x1, b.y1}, {b.x0, b.y1}};
        cd total = 0;
        double scale = b.diameter();
        for (int k = 0; k < 4; ++k) total += edge(c[k], c[(k + 1) % 4], scale);
        return round_winding(total);
    }

private:
    cd edge(cd a, cd b, double scale) {
        bool flip = std::make_pair(a.real(), a.imag()) > std::make_pair(b.real(), b.imag());
        if (flip) std::swap(a, b);
        std::array<double, 4> key{a.real(), a.imag(), b.real(), b.imag()};
        auto it = cache_.find(key);
        cd v;
        if (it != cache_.end()) {
            v = it->second;
        } else {
            v = Integrator(h_, scale).integrate(Segment(a, b));
            cache_.emplace(key, v);
        }
        return flip ? -v : v;
    }

    const LogDerivative &h_;
    std::map<std::array<double, 4>, cd> cache_;
};

// First continued-fraction convergent of x with denominator <= max_den that
// satisfies accept.
template <class Accept>
std::optional<mpq_class> convergent(const mpq_class &x, const mpz_class &max_den, Accept &&accept) {
    mpz_class h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    mpq_class r = x;
    for (int iter = 0; iter < 200; ++iter) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        mpz_class h = a * h1 + h2, k = a * k1 + k2;
        if (k > max_den) break;
        mpq_class cand(h, k);
        cand.canonicalize();
        if (accept(cand)) return cand;
        mpq_class frac = r - a;
        if (sgn(frac) == 0) break;
        r = 1 / frac;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
    }
    return std::nullopt;
}

}  // namespace

std::optional<SymConst> snap_real(const Real &x) {
    static const mpq_class tol(mpz_class(1), mpz_class("100000000000000000000"));
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), x.get());
    auto near_rational = [&](const mpq_class &c) { return abs(q - c) < tol; };
    if (auto r = convergent(q, mpz_class(1000000), near_rational)) return SymConst(GaussRational(*r));

    mpfr_prec_t p = x.precision() + 32;
    Real pi(p), y(p), diff(p);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    mpfr_div(y.get(), x.get(), pi.get(), MPFR_RNDN);
    mpq_class yq;
    mpfr_get_q(yq.get_mpq_t(), y.get());
    auto near_pi_multiple = [&](const mpq_class &c) {
        mpfr_mul_q(diff.get(), pi.get(), c.get_mpq_t(), MPFR_RNDN);
        mpfr_sub(diff.get(), diff.get(), x.get(), MPFR_RNDN);
        return std::abs(mpfr_get_d(diff.get(), MPFR_RNDN)) < 1e-20;
    };
    if (auto m = convergent(yq, mpz_class(24), near_pi_multiple)) return SymConst::pi().scaled(GaussRational(*m));
    return std::nullopt;
}

int net_zero_pole_count(const Expr &e, const Region &r) {
    LogDerivative h;
    h.add(e);
    BoxCounter counter(h);
    return counter.count({r.re_min.get_d(), r.re_max.get_d(), r.im_min.get_d(), r.im_max.get_d()});
}

int multiplicity_by_winding(const Expr &e, const SymConst &center, const mpq_class &radius) {
    LogDerivative h;
    h.add(e);
    return std::abs(circle_winding(h, enclose(center, 64).mid_double(), radius.get_d()));
}

namespace {

class CandidateFinder {
public:
    CandidateFinder(std::vector<Expr> factors, const PrecisionSchedule &schedule)
        : factors_(std::move(factors)), schedule_(schedule), counter_(h_) {
        for (const Expr &f : factors_) h_.add(f);
    }

    void run(const Box &top, int count, CandidateSearch &out) {
        std::vector<std::pair<Box, int>> stack{{top, count}};
        while (!stack.empty()) {
            auto [box, n] = stack.back();
            stack.pop_back();
            if (n == 0) continue;
            if (n < 0) throw ResidualTooLarge("negative zero count for entire factors");
            if (++out.cells > kCellBudget) throw SubdivisionBudgetExceeded("more than 10^4 cells");
            if (resolve(box, n, out)) continue;
            auto children = split(box, n);
            for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
        }
    }

private:
    std::vector<std::pair<Box, int>> split(const Box &b, int n) {
        static const double ratios[] = {0.4571, 0.5417, 0.3871, 0.6133, 0.4919};
        if (b.diameter() < 1e-10 * (1 + std::abs(b.center())))
            throw SubdivisionBudgetExceeded("cells shrank below resolution");
        for (double rx : ratios) {
            double xm = b.x0 + rx * (b.x1 - b.x0);
            double ym = b.y0 + (1 - rx) * (b.y1 - b.y0);
            Box q[4] = {{b.x0, xm, b.y0, ym}, {xm, b.x1, b.y0, ym}, {b.x0, xm, ym, b.y1}, {xm, b.x1, ym, b.y1}};
            try {
                std::vector<std::pair<Box, int>> out;
                int total = 0;
                for (const Box &c : q) {
                    int k = counter_.count(c);
                    total += k;
                    out.emplace_back(c, k);
                }
                if (total == n) return out;
            } catch (const BoundaryEvent &) {
            } catch (const ResidualTooLarge &) {
            }
        }
        throw BoundaryEvent("could not split a cell away from a zero");
    }

    // Modified Newton in double precision; true if it settles inside the box.
    std::optional<cd> newton_double(const Box &b, int n) const {
        cd z = b.center();
        double last = 0;
        for (int it = 0; it < 60; ++it) {
            cd hz = h_(z);
            if (!std::isfinite(hz.real()) || !std::isfinite(hz.imag())) return b.inside(z) ? std::optional(z) : std::nullopt;
            cd step = double(n) / hz;
            z -= step;
            last = std::abs(step);
            if (!b.inside(z) && it > 8) return std::nullopt;
            if (last < 1e-13 * (1 + std::abs(z))) break;
        }
        if (last > 1e-6 * b.diameter() || !b.inside(z)) return std::nullopt;
        return z;
    }

    bool resolve(const Box &b, int n, CandidateSearch &out) {
        auto z = newton_double(b, n);
        if (!z) return false;
        double rho = 0.5 * b.edge_distance(*z);
        if (rho < 1e-9 * (1 + std::abs(*z))) return false;
        // A second, smaller circle must see the same count, otherwise a
        // neighbouring root shares the outer one. Capped in absolute terms
        // so that wide cells cannot hide a neighbour.
        double inner = std::min(rho / 64, 1e-4 * (1 + std::abs(*z)));
        try {
            if (circle_winding(h_, *z, rho) != n) return false;
            if (inner > 1e-7 * (1 + std::abs(*z)) && circle_winding(h_, *z, inner) != n) return false;
        } catch (const std::runtime_error &) {
            return false;
        }
        auto c = refine(*z, n, b.diameter() < 1e-8);
        if (!c) return false;
        out.max_precision = std::max(out.max_precision, precision_used_);
        out.candidates.push_back(std::move(*c));
        return true;
    }

    // Sum of Laurent orders of the factors at p, if all decisive and not poles.
    std::optional<int> factor_order(const SymConst &p) const {
        int total = 0;
        for (const Expr &f : factors_) {
            LocalOrder o = local_order(f, p, schedule_);
            if (o.kind == LocalOrder::Kind::Zero)
                total += o.m;
            else if (o.kind != LocalOrder::Kind::Regular)
                return std::nullopt;
        }
        return total;
    }

    std::optional<Candidate> try_snap(const ComplexBall &z, int n) const {
        auto re = snap_real(z.re());
        if (!re) return std::nullopt;
        auto im = snap_real(z.im());
        if (!im) return std::nullopt;
        SymConst p = *re + *im * SymConst::imaginary_unit();
        auto k = factor_order(p);
        if (!k || *k != n) return std::nullopt;
        return Candidate{p, true, n, z.mid_double()};
    }

    // High-precision modified Newton, escalating precision when the iteration
    // stalls on rounding noise; then snapping.
    std::optional<Candidate> refine(cd z0, int n, bool accept_unconverged) {
        const mpfr_prec_t base = schedule_.working();
        ComplexBall z = ComplexBall::from_complex(z0, base);
        double step_size = 1;
        for (mpfr_prec_t prec : {base, 2 * base, 4 * base}) {
            precision_used_ = prec;
            // Cancellation limits a multiple root to about eps^(1/m); only
            // the last precision accepts that.
            bool limited = false;
            z = z.with_precision(prec).midpoint();
            ComplexBall k = ComplexBall::exact(GaussRational(n), prec);
            int stalls = 0;
            double last = 1e300;
            bool converged = false;
            for (int it = 0; it < 100; ++it) {
                std::optional<ComplexBall> hz;
                try {
                    hz = h_.at(z);
                } catch (const BallDomainError &) {
                }
                // near a root h is large, so a ball around it that contains
                // zero only says the precision ran out
                if (!hz || hz->contains_zero()) {
                    limited = true;
                    break;
                }
                ComplexBall step = (k / *hz).midpoint();
                z = (z - step).midpoint();
                double s = std::abs(step.mid_double());
                step_size = s;
                if (s < 1e-30) {
                    converged = true;
                    break;
                }
                if (s > 0.5 * last && ++stalls >= 3) break;
                last = std::min(last, s);
            }
            if (auto c = try_snap(z, n)) return c;
            if (converged || (limited && prec == 4 * base)) {
                step_size = 0;
                break;
            }
        }
        if (step_size > 1e-20 && !accept_unconverged) return std::nullopt;
        // Keep an approximate point; the radius is a generous allowance for
        // the distance to the true root.
        Real rad(kRadiusBits);
        mpfr_set_d(rad.get(), std::max(step_size * 16, 1e-40), MPFR_RNDU);
        ComplexBall ball = ComplexBall::from_parts(z.re(), z.im(), rad);
        std::ostringstream label;
        label.precision(17);
        cd m = z.mid_double();
        label << "~(" << m.real() << (m.imag() < 0 ? " - " : " + ") << std::abs(m.imag()) << "*i)";
        return Candidate{SymConst::approximate(ball, label.str()), false, n, m};
    }

    std::vector<Expr> factors_;
    const PrecisionSchedule &schedule_;
    LogDerivative h_;
    BoxCounter counter_;
    mpfr_prec_t precision_used_ = 0;
};

// A fixed point well away from every corpus feature, for the degeneracy check.
SymConst generic_point() { return SymConst(GaussRational(mpq_class(3, 7), mpq_class(2, 11))); }

std::vector<Expr> candidate_factors(const Triple &t, const PrecisionSchedule &schedule) {
    Fraction a = split_fraction(t.alpha);
    std::vector<Expr> out;
    const std::pair<const Expr *, const char *> named[] = {
        {&t.contact_f, "f - alpha"}, {&t.contact_g, "g - alpha"}, {&a.num, "alpha"}, {&a.den, "denominator of alpha"}};
    for (auto [e, name] : named) {
        if (!e->depends_on_z()) {
            if (e->is_rational(0)) throw IdenticallyVanishing(std::string(name) + " vanishes identically");
            continue;
        }
        LocalOrder o = local_order(*e, generic_point(), schedule);
        if (o.kind == LocalOrder::Kind::VanishesToDepth)
            throw IdenticallyVanishing(std::string(name) + " vanishes identically");
        if (o.kind == LocalOrder::Kind::Undecided) {
            ComplexBall v = Program(*e)(enclose(generic_point(), schedule.bits.back()));
            if (v.contains_zero())
                throw IdenticallyVanishing(std::string(name) + " cannot be distinguished from zero");
        }
        out.push_back(*e);
    }
    return out;
}

}  // namespace

CandidateSearch search_candidates(const Triple &t, const Region &r, const PrecisionSchedule &schedule) {
    CandidateSearch out;
    out.region = r;
    std::vector<Expr> factors = candidate_factors(t, schedule);
    if (factors.empty()) return out;
    CandidateFinder finder(factors, schedule);
    mpq_class delta = std::min(r.re_max - r.re_min, r.im_max - r.im_min) / 1000;
    for (;;) {
        Box top{out.region.re_min.get_d(), out.region.re_max.get_d(), out.region.im_min.get_d(),
                out.region.im_max.get_d()};
        LogDerivative h;
        for (const Expr &f : factors) h.add(f);
        int n;
        try {
            n = BoxCounter(h).count(top);
        } catch (const BoundaryEvent &) {
            if (++out.boundary_shifts > 4) throw;
            out.region = out.region.shrunk(delta);
            continue;
        }
        finder.run(top, n, out);
        break;
    }
    std::sort(out.candidates.begin(), out.candidates.end(), [](const Candidate &a, const Candidate &b) {
        return std::make_pair(a.approx.real(), a.approx.imag()) < std::make_pair(b.approx.real(), b.approx.imag());
    });
    return out;
}

std::vector<SymConst> locate_candidates(const Expr &f, const Expr &g, const Expr &alpha, const Region &r) {
    std::vector<SymConst> out;
    for (const Candidate &c : search_candidates(Triple(f, g, alpha), r).candidates) out.push_back(c.point);
    return out;
}

}  // namespace sharing
