#include "schottky_zeta/tate.hpp"

#include <algorithm>
#include <cmath>

namespace szeta {

IntegerPowerSeries IntegerPowerSeries::truncated(int new_order) const {
    IntegerPowerSeries out(std::min(new_order, order()));
    for (int n = 0; n <= out.order(); ++n) out.coeff_[static_cast<size_t>(n)] = (*this)[n];
    return out;
}

IntegerPowerSeries operator+(const IntegerPowerSeries& a, const IntegerPowerSeries& b) {
    IntegerPowerSeries out(std::min(a.order(), b.order()));
    for (int n = 0; n <= out.order(); ++n) out.at(n) = a[n] + b[n];
    return out;
}

IntegerPowerSeries operator-(const IntegerPowerSeries& a, const IntegerPowerSeries& b) {
    IntegerPowerSeries out(std::min(a.order(), b.order()));
    for (int n = 0; n <= out.order(); ++n) out.at(n) = a[n] - b[n];
    return out;
}

IntegerPowerSeries operator*(const IntegerPowerSeries& a, const IntegerPowerSeries& b) {
    IntegerPowerSeries out(std::min(a.order(), b.order()));
    mpz_class tmp;
    for (int i = 0; i <= std::min(a.order(), out.order()); ++i) {
        if (a[i] == 0) continue;
        const int jmax = std::min(b.order(), out.order() - i);
        for (int j = 0; j <= jmax; ++j) {
            if (b[j] == 0) continue;
            tmp = a[i] * b[j];
            out.at(i + j) += tmp;
        }
    }
    return out;
}

IntegerPowerSeries IntegerPowerSeries::operator-() const {
    IntegerPowerSeries out(order());
    for (int n = 0; n <= order(); ++n) out.at(n) = -(*this)[n];
    return out;
}

IntegerPowerSeries IntegerPowerSeries::scaled(const mpz_class& k) const {
    IntegerPowerSeries out(order());
    for (int n = 0; n <= order(); ++n) out.at(n) = (*this)[n] * k;
    return out;
}

IntegerPowerSeries IntegerPowerSeries::div_exact(const mpz_class& k) const {
    if (k == 0) throw NotDivisible("division by zero");
    IntegerPowerSeries out(order());
    mpz_class q, r;
    for (int n = 0; n <= order(); ++n) {
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), (*this)[n].get_mpz_t(), k.get_mpz_t());
        if (r != 0) throw NotDivisible("coefficient of q^" + std::to_string(n) + " not divisible");
        out.at(n) = q;
    }
    return out;
}

IntegerPowerSeries IntegerPowerSeries::div_exact(const IntegerPowerSeries& unit) const {
    const mpz_class& c0 = unit[0];
    if (c0 != 1 && c0 != -1) throw NotDivisible("divisor series must have constant term +-1");
    const int ord = std::min(order(), unit.order());
    IntegerPowerSeries out(ord);
    // b_n = (a_n - sum_{k=1}^{n} u_k b_{n-k}) / u_0, exact since u_0 = +-1.
    mpz_class acc;
    for (int n = 0; n <= ord; ++n) {
        acc = (*this)[n];
        for (int k = 1; k <= n; ++k) acc -= unit[k] * out[n - k];
        out.at(n) = c0 == 1 ? acc : -acc;
    }
    return out;
}

IntegerPowerSeries IntegerPowerSeries::pow(int e) const {
    if (e < 0) throw Error("negative series powers not supported");
    IntegerPowerSeries base = *this;
    IntegerPowerSeries acc = IntegerPowerSeries::one(order());
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

IntegerPowerSeries IntegerPowerSeries::shifted(int shift) const {
    if (shift < 0) throw Error("negative shifts not supported");
    IntegerPowerSeries out(order());
    for (int n = 0; n + shift <= order(); ++n) out.at(n + shift) = (*this)[n];
    return out;
}

bool IntegerPowerSeries::is_zero() const {
    for (int n = 0; n <= order(); ++n) {
        if ((*this)[n] != 0) return false;
    }
    return true;
}

bool IntegerPowerSeries::congruent_zero_mod(const mpz_class& p) const {
    for (int n = 0; n <= order(); ++n) {
        if ((*this)[n] % p != 0) return false;
    }
    return true;
}

Complex IntegerPowerSeries::eval(Complex q) const {
    Complex acc{0.0, 0.0};
    for (int n = order(); n >= 0; --n) {
        acc = acc * q + Complex((*this)[n].get_d(), 0.0);
    }
    return acc;
}

std::vector<std::string> IntegerPowerSeries::coefficient_strings() const {
    std::vector<std::string> out;
    out.reserve(coeff_.size());
    for (const mpz_class& c : coeff_) out.push_back(c.get_str());
    return out;
}

IntegerPowerSeries s_k_series(int k, int order) {
    if (k != 1 && k != 3 && k != 5) throw Error("s_k is defined here for k in {1, 3, 5}");
    IntegerPowerSeries out(order);
    mpz_class dk;
    for (int n = 1; n <= order; ++n) {
        for (int d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d),
                          static_cast<unsigned long>(k));
            out.at(n) += dk;
        }
    }
    return out;
}

IntegerPowerSeries a4_series(int order) { return s_k_series(3, order).scaled(-5); }

IntegerPowerSeries a6_series(int order) {
    const IntegerPowerSeries num =
        s_k_series(3, order).scaled(5) + s_k_series(5, order).scaled(7);
    return (-num).div_exact(12);
}

IntegerPowerSeries delta_series(int order) {
    // eta-like product prod (1 - q^m), then the 24th power and a shift by q.
    IntegerPowerSeries prod = IntegerPowerSeries::one(order);
    for (int m = 1; m <= order; ++m) {
        IntegerPowerSeries factor = IntegerPowerSeries::one(order);
        factor.at(m) = -1;
        prod = prod * factor;
    }
    return prod.pow(24).shifted(1);
}

IntegerPowerSeries discriminant_series(int order) {
    // y^2 + xy = x^3 + a_4 x + a_6: a1 = 1, a2 = a3 = 0, so
    // c4 = 1 - 48 a_4 and c6 = -1 + 72 a_4 - 864 a_6.
    const IntegerPowerSeries a4 = a4_series(order);
    const IntegerPowerSeries a6 = a6_series(order);
    IntegerPowerSeries c4 = -a4.scaled(48);
    c4.at(0) += 1;
    IntegerPowerSeries c6 = a4.scaled(72) - a6.scaled(864);
    c6.at(0) -= 1;
    return (c4.pow(3) - c6 * c6).div_exact(1728);
}

namespace {

constexpr double kTatePoleGuard = 1e-6;

void check_pole_distance(Complex z, Complex q, int order) {
    Complex qn{1.0, 0.0};
    for (int n = 0; n <= order; ++n) {
        if (std::abs(z - qn) < kTatePoleGuard) throw PoleTooClose();
        if (n > 0 && std::abs(z - 1.0 / qn) < kTatePoleGuard) throw PoleTooClose();
        qn *= q;
    }
}

}  // namespace

Complex eval_X(Complex z, Complex q, int order) {
    check_pole_distance(z, q, order);
    auto u_term = [](Complex u) {
        const Complex d = 1.0 - u;
        return u / (d * d);
    };
    Complex sum = u_term(z);
    Complex qn{1.0, 0.0};
    for (int n = 1; n <= order; ++n) {
        qn *= q;
        sum += u_term(qn * z) + u_term(qn / z) - 2.0 * u_term(qn);
    }
    return sum;
}

Complex eval_Y(Complex z, Complex q, int order) {
    check_pole_distance(z, q, order);
    auto cube_term = [](Complex u) {
        const Complex d = 1.0 - u;
        return (u * u) / (d * d * d);
    };
    auto lin_term = [](Complex u) {
        const Complex d = 1.0 - u;
        return u / (d * d * d);
    };
    auto sq_term = [](Complex u) {
        const Complex d = 1.0 - u;
        return u / (d * d);
    };
    // Folding the bilateral sum sum_{n in Z} (q^n z)^2/(1 - q^n z)^3 + s_1
    // over n -> -n turns the negative half into -q^n z^{-1}/(1 - q^n z^{-1})^3
    // and the s_1 correction into +q^n/(1-q^n)^2 per n.
    Complex sum = cube_term(z);
    Complex qn{1.0, 0.0};
    for (int n = 1; n <= order; ++n) {
        qn *= q;
        sum += cube_term(qn * z) - lin_term(qn / z) + sq_term(qn);
    }
    return sum;
}

}  // namespace szeta
