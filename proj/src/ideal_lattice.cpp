#include "eiszeta/ideal_lattice.hpp"

#include <algorithm>
#include <cmath>

namespace eiszeta {

namespace {

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// extended gcd: g = a x + b y
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

}  // namespace

IdealLattice IdealLattice::from_zspan(const QuadField& F,
                                      const std::vector<FieldElem>& span) {
    IdealLattice L;
    L.F_ = F;
    if (F.degree() == 1) {
        // Z-module in Q: g Z with g = gcd of the generators
        Int den = 1;
        for (const auto& w : span) {
            Int l;
            mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), w.a.get_den().get_mpz_t());
            den = l;
        }
        Int g = 0;
        for (const auto& w : span) g = gcd(g, Int(w.a * Rat(den)));
        if (g == 0) throw std::invalid_argument("zero module");
        L.basis_ = {FieldElem(make_rat(g, den))};
        L.finalize();
        return L;
    }
    // integer coordinate pairs (x, y) w.r.t. (1, omega) over a common
    // denominator, then a 2-column HNF by gcd steps
    Int den = 1;
    for (const auto& w : span) {
        Int l;
        mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), w.a.get_den().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), w.b.get_den().get_mpz_t());
        den = l;
    }
    std::vector<std::pair<Int, Int>> rows;
    for (const auto& w : span)
        rows.push_back({Int(w.a * Rat(den)), Int(w.b * Rat(den))});

    // gcd of the omega-coordinates with a combination achieving it
    Int c = 0;
    std::pair<Int, Int> g2{0, 0};
    for (const auto& [x, y] : rows) {
        if (y == 0) continue;
        if (c == 0) {
            c = y;
            g2 = {x, y};
        } else {
            Int s, t;
            Int g = ext_gcd(c, y, s, t);
            g2 = {s * g2.first + t * x, g};
            c = g;
        }
    }
    if (c < 0) {
        c = -c;
        g2 = {-g2.first, -g2.second};
    }
    // clear omega-coordinates, gcd the rational parts
    Int a = 0;
    for (const auto& [x, y] : rows) {
        Int x0 = x;
        if (c != 0 && y != 0) x0 = x - y / c * g2.first;
        a = gcd(a, x0);
    }
    if (a == 0 && c == 0) throw std::invalid_argument("zero module");
    if (a == 0) throw std::invalid_argument("module has rank < 2");
    if (c == 0) throw std::invalid_argument("module has rank < 2");
    // reduce b mod a for the canonical HNF
    Int b = g2.first;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
    b -= q * a;

    L.basis_ = {FieldElem(make_rat(a, den)),
                FieldElem(make_rat(b, den), make_rat(c, den))};
    L.finalize();
    return L;
}

void IdealLattice::finalize() {
    const QuadField& F = F_;
    int n = F.degree();
    if (n == 1) {
        if (basis_[0].a < 0) basis_[0].a = -basis_[0].a;
        norm_ = basis_[0].a;
        orientation_ = 1;
        dual_ = {FieldElem(Rat(1) / basis_[0].a)};
        return;
    }
    // norm = |det| of the coordinate matrix w.r.t. (1, omega)
    Rat det = basis_[0].a * basis_[1].b - basis_[1].a * basis_[0].b;
    norm_ = abs(det);
    // embedding determinant is det * (tau_2 - tau_1)(omega) = -det sqrt(D')
    orientation_ = sgn(det) < 0 ? 1 : -1;
    // trace-dual basis: solve Tr(b_i d_j) = delta_ij; Tr(b (x + y w)) is a
    // linear form in (x, y)
    dual_.resize(2);
    auto lin = [&](const FieldElem& bb) {
        Rat c1 = F.trace(F.mul(bb, FieldElem(Rat(1), Rat(0))));
        Rat c2 = F.trace(F.mul(bb, FieldElem(Rat(0), Rat(1))));
        return std::pair<Rat, Rat>(c1, c2);
    };
    auto [a11, a12] = lin(basis_[0]);
    auto [a21, a22] = lin(basis_[1]);
    Rat dd = a11 * a22 - a12 * a21;
    if (dd == 0) throw std::logic_error("degenerate trace pairing");
    dual_[0] = FieldElem(a22 / dd, -a21 / dd);
    dual_[1] = FieldElem(-a12 / dd, a11 / dd);
}

IdealLattice IdealLattice::ring_of_integers(const QuadField& F) {
    if (F.degree() == 1) return from_zspan(F, {FieldElem(Rat(1))});
    return from_zspan(F, {FieldElem(Rat(1)), F.omega()});
}

IdealLattice IdealLattice::from_generators(const QuadField& F,
                                           const std::vector<FieldElem>& gens) {
    std::vector<FieldElem> span;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        span.push_back(g);
        if (F.degree() == 2) span.push_back(F.mul(g, F.omega()));
    }
    if (span.empty()) throw std::invalid_argument("no nonzero generators");
    return from_zspan(F, span);
}

IdealLattice IdealLattice::from_basis(const QuadField& F,
                                      const std::vector<FieldElem>& basis) {
    IdealLattice L = from_zspan(F, basis);
    // the span of the basis must already be the full O_F-module
    for (const auto& b : basis)
        if (!L.contains(b)) throw std::logic_error("basis span broken");
    if (F.degree() == 2) {
        for (const auto& b : L.basis_)
            if (!L.contains(F.mul(b, F.omega())))
                throw std::invalid_argument("not a fractional ideal: not O_F-stable");
    }
    return L;
}

IdealLattice IdealLattice::principal(const QuadField& F, const FieldElem& x) {
    return from_generators(F, {x});
}

std::vector<Rat> IdealLattice::coords(const FieldElem& x) const {
    if (F_.degree() == 1) return {x.a / basis_[0].a};
    // solve x = c1 b1 + c2 b2 in (1, omega) coordinates
    Rat det = basis_[0].a * basis_[1].b - basis_[1].a * basis_[0].b;
    Rat c1 = (x.a * basis_[1].b - basis_[1].a * x.b) / det;
    Rat c2 = (basis_[0].a * x.b - x.a * basis_[0].b) / det;
    return {c1, c2};
}

FieldElem IdealLattice::from_coords(const std::vector<Rat>& c) const {
    FieldElem out;
    for (size_t i = 0; i < basis_.size(); ++i)
        out = F_.add(out, F_.mul(basis_[i], FieldElem(c[i])));
    return out;
}

bool IdealLattice::contains(const FieldElem& x) const {
    for (const Rat& c : coords(x))
        if (c.get_den() != 1) return false;
    return true;
}

FieldElem IdealLattice::reduce_mod(const FieldElem& x) const {
    auto c = coords(x);
    for (auto& v : c) v = frac_mod1(v);
    return from_coords(c);
}

IdealLattice IdealLattice::scaled(const FieldElem& x) const {
    std::vector<FieldElem> b;
    for (const auto& e : basis_) b.push_back(F_.mul(e, x));
    return from_zspan(F_, b);
}

IdealLattice IdealLattice::product(const IdealLattice& o) const {
    std::vector<FieldElem> span;
    for (const auto& x : basis_)
        for (const auto& y : o.basis_) span.push_back(F_.mul(x, y));
    return from_zspan(F_, span);
}

IdealLattice IdealLattice::inverse() const {
    // for an invertible fractional ideal, a^{-1} = conj(a) / N(a)
    if (F_.degree() == 1) return from_zspan(F_, {FieldElem(Rat(1) / basis_[0].a)});
    std::vector<FieldElem> span;
    for (const auto& x : basis_)
        span.push_back(F_.mul(F_.conj(x), FieldElem(Rat(1) / norm_)));
    IdealLattice inv = from_zspan(F_, span);
    // guard: L * inv must be O_F
    IdealLattice prod = product(inv);
    if (!(prod == ring_of_integers(F_))) throw std::logic_error("ideal inversion failed");
    return inv;
}

bool IdealLattice::is_integral() const {
    IdealLattice O = ring_of_integers(F_);
    for (const auto& b : basis_)
        if (!O.contains(b)) return false;
    return true;
}

bool IdealLattice::is_coprime(const IdealLattice& o) const {
    // a + b spans O_F
    std::vector<FieldElem> span = basis_;
    for (const auto& b : o.basis_) span.push_back(b);
    return from_zspan(F_, span) == ring_of_integers(F_);
}

double IdealLattice::covolume() const {
    if (F_.degree() == 1) return std::abs(basis_[0].a.get_d());
    // vol(O_F) = sqrt(disc), rescaled by the coordinate determinant
    Rat det = basis_[0].a * basis_[1].b - basis_[1].a * basis_[0].b;
    return std::abs(det.get_d()) * std::sqrt(F_.discriminant().get_d());
}

Stabilizer stabilizer(const QuadField& F, const FieldElem& h, const IdealLattice& L) {
    if (F.degree() == 1) return {FieldElem(Rat(1)), 1};
    const FieldElem& u = F.totally_positive_unit();
    FieldElem pw = u;
    for (long m = 1; m <= 2'000'000; ++m) {
        // (u^m - 1) h in L
        FieldElem diff = F.mul(F.sub(pw, FieldElem(Rat(1))), h);
        if (L.contains(diff)) return {pw, m};
        pw = F.mul(pw, u);
    }
    throw std::runtime_error("stabilizer index exceeded search bound");
}

std::vector<ShintaniCone> shintani_cones(const QuadField& F, const FieldElem& u) {
    if (F.degree() == 1) return {ShintaniCone{FieldElem(Rat(1)), FieldElem(Rat(1))}};
    if (!F.is_totally_positive(u)) throw std::invalid_argument("unit must be totally positive");
    // the half-open cone between 1 and u is a fundamental domain for <u>
    // acting on the totally positive quadrant
    return {ShintaniCone{FieldElem(Rat(1)), u}};
}

std::vector<ShintaniCone> refine_cone(const QuadField& F, const ShintaniCone& c) {
    FieldElem mid = F.add(c.A, c.B);
    return {ShintaniCone{c.A, mid}, ShintaniCone{mid, c.B}};
}

bool cone_contains(const QuadField& F, const ShintaniCone& c, const FieldElem& x) {
    if (F.degree() == 1) return x.a > 0;
    // solve x = y A + z B in embedding coordinates, exactly: the system has
    // a rational solution since A, B are a Q-basis
    // coordinates w.r.t. (1, omega):
    Rat det = c.A.a * c.B.b - c.B.a * c.A.b;
    if (det == 0) throw std::invalid_argument("degenerate cone");
    Rat y = (x.a * c.B.b - c.B.a * x.b) / det;
    Rat z = (c.A.a * x.b - x.a * c.A.b) / det;
    return y > 0 && z >= 0;
}

std::vector<FieldElem> orbit_representatives(const IdealLattice& L, const FieldElem& shift,
                                             const FieldElem& u, const Rat& X,
                                             bool totally_positive_only) {
    const QuadField& F = L.field();
    std::vector<FieldElem> out;
    if (F.degree() == 1) {
        // orbits are singletons: mu = shift + k b with 0 < |mu| <= X
        Rat b = L.basis()[0].a;
        Rat lo = (-X - shift.a) / b, hi = (X - shift.a) / b;
        Int klo, khi;
        mpz_cdiv_q(klo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
        mpz_fdiv_q(khi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
        for (Int k = klo; k <= khi; ++k) {
            Rat v = shift.a + Rat(k) * b;
            if (v == 0) continue;
            if (totally_positive_only && v < 0) continue;
            out.push_back(FieldElem(v));
        }
        std::sort(out.begin(), out.end(),
                  [](const FieldElem& p, const FieldElem& q) { return p.a < q.a; });
        return out;
    }

    // box scan in doubles with a generous margin, then exact filtering
    double u1 = F.embed(u, 0);
    double sX = std::sqrt(X.get_d());
    double B1 = u1 * sX * 1.0001 + 1e-9;  // |tau_1| bound
    double B2 = sX * 1.0001 + 1e-9;       // |tau_2| bound

    const auto& b1 = L.basis()[0];
    const auto& b2 = L.basis()[1];
    double e11 = F.embed(b1, 0), e12 = F.embed(b2, 0);
    double e21 = F.embed(b1, 1), e22 = F.embed(b2, 1);
    double s1 = F.embed(shift, 0), s2 = F.embed(shift, 1);
    double det = e11 * e22 - e12 * e21;
    // coordinate bounds from the embedding box via the inverse matrix
    double a_bound = (std::abs(e22) * (B1 + std::abs(s1)) + std::abs(e12) * (B2 + std::abs(s2))) /
                         std::abs(det) +
                     2;
    double b_bound = (std::abs(e21) * (B1 + std::abs(s1)) + std::abs(e11) * (B2 + std::abs(s2))) /
                         std::abs(det) +
                     2;
    long amax = static_cast<long>(a_bound), bmax = static_cast<long>(b_bound);

    FieldElem usq = F.mul(u, u);
    double u1sq = u1 * u1;
    for (long a = -amax; a <= amax; ++a) {
        // precompute embeddings of shift + a b1
        double base1 = s1 + a * e11, base2 = s2 + a * e21;
        for (long b = -bmax; b <= bmax; ++b) {
            double m1 = base1 + b * e12, m2 = base2 + b * e22;
            if (std::abs(m1) > B1 * 1.001 + 1e-6 || std::abs(m2) > B2 * 1.001 + 1e-6) continue;
            double nn = std::abs(m1 * m2);
            if (nn > X.get_d() * 1.001 + 1e-6) continue;
            // normalization window prefilter; boundary fuzz goes to the
            // exact check below
            if (m1 * m1 < nn * (1.0 - 1e-6) - 1e-9 ||
                m1 * m1 > nn * u1sq * (1.0 + 1e-6) + 1e-9)
                continue;
            if (totally_positive_only && (m1 < -1e-9 || m2 < -1e-9)) continue;
            FieldElem mu = F.add(shift, F.add(F.mul(b1, FieldElem(Rat(a))),
                                              F.mul(b2, FieldElem(Rat(b)))));
            if (mu.is_zero()) continue;
            Rat N = F.norm(mu);
            if (N == 0 || abs(N) > X) continue;
            if (totally_positive_only && !F.is_totally_positive(mu)) continue;
            // normalization per quadrant: 1 <= tau_1(mu)^2 / |N| < tau_1(u)^2
            Rat absN = abs(N);
            FieldElem musq = F.mul(mu, mu);
            // tau_1(mu)^2 = tau_1(mu^2) since squares are embedding-positive
            FieldElem lhs = F.sub(musq, FieldElem(absN));
            if (F.sign_embedding(lhs, 0) < 0) continue;  // ratio < 1
            FieldElem rhs = F.sub(F.mul(usq, FieldElem(absN)), musq);
            if (F.sign_embedding(rhs, 0) <= 0) continue;  // ratio >= tau_1(u)
            out.push_back(mu);
        }
    }
    std::vector<std::pair<Rat, FieldElem>> keyed;
    keyed.reserve(out.size());
    for (auto& mu : out) keyed.push_back({abs(F.norm(mu)), std::move(mu)});
    std::sort(keyed.begin(), keyed.end(), [](const auto& p, const auto& q) {
        if (p.first != q.first) return p.first < q.first;
        return p.second < q.second;
    });
    out.clear();
    for (auto& [n, mu] : keyed) out.push_back(std::move(mu));
    return out;
}

}  // namespace eiszeta
