#include "eiszeta/epstein.hpp"

#include <cmath>
#include <stdexcept>

namespace eiszeta {

namespace {

using Cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

std::vector<std::vector<Rat>> rational_inverse(const std::vector<std::vector<Rat>>& m) {
    int n = static_cast<int>(m.size());
    std::vector<std::vector<Rat>> a = m;
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::invalid_argument("singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col];
        for (int j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

Rat rational_det(std::vector<std::vector<Rat>> a) {
    int n = static_cast<int>(a.size());
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

void validate(const EpsteinSpec& spec) {
    int n = static_cast<int>(spec.gram.size());
    if (n < 1) throw std::invalid_argument("empty Gram matrix");
    for (const auto& row : spec.gram)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("Gram not square");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (spec.gram[i][j] != spec.gram[j][i])
                throw std::invalid_argument("Gram not symmetric");
    // leading principal minors positive, exactly
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<Rat>> lead(k, std::vector<Rat>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) lead[i][j] = spec.gram[i][j];
        if (rational_det(lead) <= 0)
            throw std::invalid_argument("Gram matrix not positive definite");
    }
    if (static_cast<int>(spec.shift.size()) != n)
        throw std::invalid_argument("shift dimension mismatch");
}

bool shift_is_integral(const EpsteinSpec& spec) {
    for (const auto& q : spec.shift)
        if (frac_mod1(q) != 0) return false;
    return true;
}

/// Symbolic P(D) applied to the dual Gaussian: terms of the form
/// c * i^ip * pi^pp * xi-monomial * u^e against e^{-pi u xi^T B xi}.
struct GaussTerm {
    Rat c;
    int ip;  // 0 or 1 after normalizing i^2 = -1 into the sign of c
    int pp;
    std::vector<int> mono;
    int upow;
};

void normalize_i(Rat& c, int& ip) {
    ip %= 4;
    if (ip < 0) ip += 4;
    if (ip >= 2) {
        c = -c;
        ip -= 2;
    }
}

std::vector<GaussTerm> apply_poly_to_gaussian(const EpsteinSpec& spec, int n) {
    std::vector<GaussTerm> cur;
    cur.push_back({Rat(1), 0, 0, std::vector<int>(n, 0), 0});

    auto apply_D = [&](const std::vector<GaussTerm>& in, int j) {
        std::vector<GaussTerm> out;
        for (const auto& t : in) {
            // -(1/2 pi i) d/dxi_j acting on the polynomial part
            if (t.mono[j] > 0) {
                GaussTerm d = t;
                d.c = -t.c * Rat(t.mono[j]) / 2;
                d.ip = t.ip - 1;
                d.pp = t.pp - 1;
                d.mono[j] -= 1;
                normalize_i(d.c, d.ip);
                out.push_back(d);
            }
            // + (u / i) (B xi)_j times the term
            for (int i = 0; i < n; ++i) {
                if (spec.gram[j][i] == 0) continue;
                GaussTerm g = t;
                g.c = t.c * spec.gram[j][i];
                g.ip = t.ip - 1;
                g.mono[i] += 1;
                g.upow = t.upow + 1;
                normalize_i(g.c, g.ip);
                out.push_back(g);
            }
        }
        return out;
    };

    std::vector<GaussTerm> total;
    for (const auto& [mono, coef] : spec.poly) {
        std::vector<GaussTerm> part = cur;
        for (int j = 0; j < n; ++j)
            for (int e = 0; e < mono[j]; ++e) part = apply_D(part, j);
        for (auto t : part) {
            t.c *= coef;
            total.push_back(t);
        }
    }
    // merge identical keys
    std::map<std::tuple<int, int, std::vector<int>, int>, Rat> merged;
    for (const auto& t : total) merged[{t.ip, t.pp, t.mono, t.upow}] += t.c;
    std::vector<GaussTerm> out;
    for (const auto& [key, c] : merged)
        if (c != 0)
            out.push_back({c, std::get<0>(key), std::get<1>(key), std::get<2>(key),
                           std::get<3>(key)});
    return out;
}

double eval_quadratic(const std::vector<std::vector<Rat>>& m, const std::vector<Rat>& x) {
    Rat s(0);
    int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += m[i][j] * x[i] * x[j];
    return s.get_d();
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    // Lanczos approximation, g = 7, 9 coefficients
    static const double coef[9] = {0.99999999999980993,  676.5203681218851,
                                   -1259.1392167224028,  771.32342877765313,
                                   -176.61502916214059,  12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6,
                                   1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection
        return std::log(kPi / std::sin(kPi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    Cplx x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
    Cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

namespace {

/// Lentz continued fraction, valid for x > 0; converges fastest for large x.
Cplx gamma_cf(Cplx a, double x) {
    const double tiny = 1e-300;
    Cplx b = x + 1.0 - a;
    Cplx c = 1.0 / tiny;
    Cplx d = 1.0 / b;
    Cplx h = d;
    for (int i = 1; i <= 2000; ++i) {
        Cplx an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        Cplx delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

/// Exponential integral E_1(x) = Gamma(0, x).
Cplx exp_int_e1(double x) {
    if (x >= 1.5) return gamma_cf({0.0, 0.0}, x);
    const double euler = 0.57721566490153286061;
    double sum = -euler - std::log(x);
    double term = -1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -x / k;
        sum += term / k;
        if (std::abs(term / k) < 1e-18) break;
    }
    return {sum, 0.0};
}

}  // namespace

std::complex<double> upper_incomplete_gamma(std::complex<double> a, double x) {
    if (x <= 0) throw std::invalid_argument("upper_incomplete_gamma needs x > 0");
    // exact nonpositive integer order: walk down from Gamma(0,x) = E_1(x)
    double n0 = std::round(a.real());
    if (std::abs(a - Cplx(n0, 0.0)) < 1e-13 && n0 <= 0.0) {
        Cplx g = exp_int_e1(x);
        for (double k = 0.0; k > n0; k -= 1.0)
            g = (g - std::exp((k - 1.0) * std::log(x) - x)) / (k - 1.0);
        return g;
    }
    if (x > std::abs(a) + 2.0) return gamma_cf(a, x);
    if (a.real() >= 0.5) {
        // series for the lower gamma, then complement
        Cplx sum = 1.0 / a;
        Cplx term = sum;
        for (int j = 1; j <= 500; ++j) {
            term *= x / (a + static_cast<double>(j));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        Cplx lower = std::exp(-x + a * std::log(x)) * sum;
        return std::exp(log_gamma(a)) - lower;
    }
    // shift the order up into the stable range, then recurse back down via
    // Gamma(a, x) = (Gamma(a+1, x) - x^a e^-x) / a
    int m = static_cast<int>(std::ceil(0.5 - a.real())) + 1;
    Cplx g = upper_incomplete_gamma(a + static_cast<double>(m), x);
    for (int j = m - 1; j >= 0; --j) {
        Cplx aj = a + static_cast<double>(j);
        g = (g - std::exp(aj * std::log(x) - x)) / aj;
    }
    return g;
}

int epstein_poly_degree(const EpsteinSpec& spec) {
    int g = -1;
    for (const auto& [mono, c] : spec.poly) {
        if (c == 0) continue;
        int d = 0;
        for (int e : mono) d += e;
        if (g < 0) g = d;
        if (d != g) throw std::invalid_argument("P must be homogeneous");
    }
    return g < 0 ? 0 : g;
}

std::complex<double> epstein_direct_sum(const EpsteinSpec& spec, long box) {
    validate(spec);
    int n = static_cast<int>(spec.gram.size());
    auto Binv = rational_inverse(spec.gram);
    Cplx sum = 0, comp = 0;
    int g = epstein_poly_degree(spec);
    Cplx w = spec.s + static_cast<double>(g) / 2.0;

    std::vector<long> m(n, -box);
    while (true) {
        bool zero = true;
        for (long v : m)
            if (v != 0) zero = false;
        if (!zero) {
            std::vector<Rat> mr(n);
            for (int i = 0; i < n; ++i) mr[i] = Rat(m[i]);
            double q = eval_quadratic(Binv, mr);
            double phase = 0;
            for (int i = 0; i < n; ++i) phase += spec.shift[i].get_d() * m[i];
            double pval = 0;
            for (const auto& [mono, c] : spec.poly) {
                double t = c.get_d();
                for (int i = 0; i < n; ++i)
                    for (int e = 0; e < mono[i]; ++e) t *= m[i];
                pval += t;
            }
            Cplx term = std::exp(Cplx(0, 2.0 * kPi * phase)) * pval *
                        std::exp(-w * std::log(q));
            Cplx y = term - comp;
            Cplx t2 = sum + y;
            comp = (t2 - sum) - y;
            sum = t2;
        }
        int i = n - 1;
        while (i >= 0) {
            if (++m[i] <= box) break;
            m[i] = -box;
            --i;
        }
        if (i < 0) break;
    }
    return sum;
}

std::complex<double> epstein_continued(const EpsteinSpec& spec, double t0, long box) {
    validate(spec);
    if (t0 <= 0) throw std::invalid_argument("split point must be positive");
    int n = static_cast<int>(spec.gram.size());
    int g = epstein_poly_degree(spec);
    if (g == 0 && shift_is_integral(spec))
        throw std::invalid_argument("pole case: constant P with integral shift");
    auto Binv = rational_inverse(spec.gram);
    Cplx w = spec.s + static_cast<double>(g) / 2.0;

    // direct half: sum' e(<v,m>) P(m) (pi q)^{-w} Gamma(w, pi q t0)
    Cplx direct = 0, comp = 0;
    {
        std::vector<long> m(n, -box);
        while (true) {
            bool zero = true;
            for (long v : m)
                if (v != 0) zero = false;
            if (!zero) {
                std::vector<Rat> mr(n);
                for (int i = 0; i < n; ++i) mr[i] = Rat(m[i]);
                double q = eval_quadratic(Binv, mr);
                double phase = 0;
                for (int i = 0; i < n; ++i) phase += spec.shift[i].get_d() * m[i];
                double pval = 0;
                for (const auto& [mono, c] : spec.poly) {
                    double t = c.get_d();
                    for (int i = 0; i < n; ++i)
                        for (int e = 0; e < mono[i]; ++e) t *= m[i];
                    pval += t;
                }
                if (pval != 0.0) {
                    Cplx term = std::exp(Cplx(0, 2.0 * kPi * phase)) * pval *
                                std::exp(-w * std::log(kPi * q)) *
                                upper_incomplete_gamma(w, kPi * q * t0);
                    Cplx y = term - comp;
                    Cplx t2 = direct + y;
                    comp = (t2 - direct) - y;
                    direct = t2;
                }
            }
            int i = n - 1;
            while (i >= 0) {
                if (++m[i] <= box) break;
                m[i] = -box;
                --i;
            }
            if (i < 0) break;
        }
    }

    // dual half via Poisson summation: the Fourier transform of
    // P(x) e^{-pi t x^T Binv x} is P(D)[ t^{-n/2} sqrt(det B)
    // e^{-(pi/t) xi^T B xi} ], evaluated at xi = mu - v
    auto terms = apply_poly_to_gaussian(spec, n);
    double sqrt_detB = std::sqrt(rational_det(spec.gram).get_d());
    Cplx dual = 0;
    Cplx comp2 = 0;
    {
        std::vector<long> m(n, -box);
        while (true) {
            std::vector<Rat> xi(n);
            bool xi_zero = true;
            for (int i = 0; i < n; ++i) {
                xi[i] = Rat(m[i]) - spec.shift[i];
                if (xi[i] != 0) xi_zero = false;
            }
            Cplx contrib = 0;
            if (!xi_zero) {
                double cB = kPi * eval_quadratic(spec.gram, xi);
                for (const auto& t : terms) {
                    double monoval = 1;
                    for (int i = 0; i < n; ++i)
                        for (int e = 0; e < t.mono[i]; ++e) monoval *= xi[i].get_d();
                    if (monoval == 0.0) continue;
                    Cplx ifac = t.ip == 0 ? Cplx(1, 0) : Cplx(0, 1);
                    double pifac = std::pow(kPi, t.pp);
                    Cplx expo = w - static_cast<double>(n) / 2.0 - static_cast<double>(t.upow);
                    contrib += t.c.get_d() * ifac * pifac * monoval *
                               std::exp(expo * std::log(cB)) *
                               upper_incomplete_gamma(-expo, cB / t0);
                }
            } else {
                // xi = 0 term: closed-form integral of t^{w-1-n/2-e}
                for (const auto& t : terms) {
                    bool mono_zero = true;
                    for (int e : t.mono)
                        if (e != 0) mono_zero = false;
                    if (!mono_zero) continue;
                    Cplx ifac = t.ip == 0 ? Cplx(1, 0) : Cplx(0, 1);
                    double pifac = std::pow(kPi, t.pp);
                    Cplx expo = w - static_cast<double>(n) / 2.0 - static_cast<double>(t.upow);
                    if (std::abs(expo) < 1e-12)
                        throw std::domain_error("evaluation at a pole of the xi = 0 term");
                    contrib += t.c.get_d() * ifac * pifac * std::pow(t0, expo.real()) *
                               std::exp(Cplx(0, expo.imag() * std::log(t0))) / expo;
                }
            }
            Cplx y = contrib - comp2;
            Cplx t2 = dual + y;
            comp2 = (t2 - dual) - y;
            dual = t2;
            int i = n - 1;
            while (i >= 0) {
                if (++m[i] <= box) break;
                m[i] = -box;
                --i;
            }
            if (i < 0) break;
        }
    }
    dual *= sqrt_detB;

    // the m = 0 term removed from the theta series (only when P(0) != 0)
    Cplx zero_correction = 0;
    {
        double p0 = 0;
        for (const auto& [mono, c] : spec.poly) {
            bool z = true;
            for (int e : mono)
                if (e != 0) z = false;
            if (z) p0 += c.get_d();
        }
        if (p0 != 0.0) zero_correction = -p0 * std::exp(w * std::log(t0)) / w;
    }

    Cplx prefactor = std::exp(w * std::log(kPi) - log_gamma(w));
    return prefactor * (direct + dual + zero_correction);
}

}  // namespace eiszeta
