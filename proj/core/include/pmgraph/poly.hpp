#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pmg {

/// Dense univariate polynomial with double coefficients, c[k] * t^k.
/// Source terms in problem documents are degree <= 3; products raise the
/// degree internally (e.g. squaring inside the interval inequality), so
/// the coefficient vector is unbounded.
struct Poly {
    std::vector<double> c;

    Poly() : c{0.0} {}
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {
        if (c.empty()) c.push_back(0.0);
    }
    static Poly constant(double v) { return Poly({v}); }

    int degree() const { return static_cast<int>(c.size()) - 1; }

    double operator()(double t) const {
        double acc = 0.0;
        for (int k = degree(); k >= 0; --k) acc = acc * t + c[k];
        return acc;
    }

    bool is_constant() const {
        return std::all_of(c.begin() + 1, c.end(), [](double v) { return v == 0.0; });
    }

    Poly operator+(const Poly& o) const {
        std::vector<double> r(std::max(c.size(), o.c.size()), 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) r[k] += c[k];
        for (std::size_t k = 0; k < o.c.size(); ++k) r[k] += o.c[k];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (o * -1.0); }
    Poly operator*(double s) const {
        Poly r = *this;
        for (double& v : r.c) v *= s;
        return r;
    }
    Poly operator*(const Poly& o) const {
        std::vector<double> r(c.size() + o.c.size() - 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
        return Poly(std::move(r));
    }

    Poly derivative() const {
        if (degree() == 0) return Poly();
        std::vector<double> r(c.size() - 1);
        for (std::size_t k = 1; k < c.size(); ++k) r[k - 1] = c[k] * static_cast<double>(k);
        return Poly(std::move(r));
    }

    /// Exact definite integral over [a, b].
    double integral(double a, double b) const {
        double fb = 0.0, fa = 0.0;
        for (int k = degree(); k >= 0; --k) {
            const double d = c[k] / static_cast<double>(k + 1);
            fb = fb * b + d;
            fa = fa * a + d;
        }
        return fb * b - fa * a;
    }

    /// Exact integral of (t - a)^2 * p(t) over [a, b].
    double integral_shifted_sq(double a, double b) const {
        const Poly shift({a * a, -2.0 * a, 1.0});  // (t - a)^2
        return (shift * (*this)).integral(a, b);
    }
};

/// Exact maximum of |p| on [a, b] for degree <= 3: candidates are the
/// endpoints plus real roots of p' (a quadratic at most).
inline double max_abs_on(const Poly& p, double a, double b) {
    if (p.degree() > 3) {
        throw std::invalid_argument("max_abs_on: supported for degree <= 3 only");
    }
    double best = std::max(std::abs(p(a)), std::abs(p(b)));
    const Poly d = p.derivative();
    std::vector<double> roots;
    if (d.degree() == 2 && d.c[2] != 0.0) {
        const double disc = d.c[1] * d.c[1] - 4.0 * d.c[2] * d.c[0];
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            roots.push_back((-d.c[1] + s) / (2.0 * d.c[2]));
            roots.push_back((-d.c[1] - s) / (2.0 * d.c[2]));
        }
    } else if (d.degree() >= 1 && d.c[1] != 0.0) {
        roots.push_back(-d.c[0] / d.c[1]);
    }
    for (double r : roots) {
        if (r > a && r < b) best = std::max(best, std::abs(p(r)));
    }
    return best;
}

}  // namespace pmg
