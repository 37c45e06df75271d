#include "schottky_zeta/differentials.hpp"

#include <cmath>
#include <numbers>

namespace szeta {

namespace {

constexpr int kNodeStart = 32;
constexpr int kNodeCap = 1 << 16;
constexpr double kPoleGuard = 1e-6;

struct CircleIntegrand {
    int form_a = -1;  // index into the form list, -1 for the constant 1
    int form_b = -1;
    Complex poly_center{0.0, 0.0};
    int poly_power = 0;  // integrand includes (z - poly_center)^poly_power
};

// Evaluates a batch of integrands (1/2 pi i) contour over one circle, sharing
// the form evaluations between all entries at each quadrature level.
std::vector<Complex> integrate_on_circle(const Circle& circle,
                                         const std::vector<OneFormSeries>& forms,
                                         const std::vector<CircleIntegrand>& items, double tol) {
    if (!circle.disk_is_interior()) {
        throw Error("quadrature circles must bound a bounded disk");
    }
    std::vector<Complex> prev(items.size(), Complex{0.0, 0.0});
    bool have_prev = false;
    for (int n_nodes = kNodeStart; n_nodes <= kNodeCap; n_nodes *= 2) {
        std::vector<Complex> sums(items.size(), Complex{0.0, 0.0});
        std::vector<Complex> form_vals(forms.size());
        for (int k = 0; k < n_nodes; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / n_nodes;
            const Complex unit{std::cos(theta), std::sin(theta)};
            const Complex z = circle.center + circle.radius * unit;
            for (size_t l = 0; l < forms.size(); ++l) form_vals[l] = forms[l](z);
            for (size_t it = 0; it < items.size(); ++it) {
                const CircleIntegrand& item = items[it];
                Complex v{1.0, 0.0};
                if (item.form_a >= 0) v *= form_vals[static_cast<size_t>(item.form_a)];
                if (item.form_b >= 0) v *= form_vals[static_cast<size_t>(item.form_b)];
                if (item.poly_power > 0) {
                    const Complex base = z - item.poly_center;
                    Complex p = base;
                    for (int e = 1; e < item.poly_power; ++e) p *= base;
                    v *= p;
                }
                sums[it] += v * unit;
            }
        }
        std::vector<Complex> vals(items.size());
        for (size_t it = 0; it < items.size(); ++it) {
            vals[it] = sums[it] * (circle.radius / n_nodes);
        }
        if (have_prev) {
            double worst = 0.0;
            for (size_t it = 0; it < items.size(); ++it) {
                worst = std::max(worst, std::abs(vals[it] - prev[it]));
            }
            if (worst < tol) return vals;
        }
        prev = std::move(vals);
        have_prev = true;
    }
    throw NoConvergence("circle quadrature still moving at the node cap");
}

std::vector<OneFormSeries> build_forms(const SchottkyGroup& group, int max_len) {
    std::vector<OneFormSeries> forms;
    forms.reserve(static_cast<size_t>(group.genus()));
    for (int i = 1; i <= group.genus(); ++i) forms.emplace_back(group, i, max_len);
    return forms;
}

std::vector<Complex> all_poles(const std::vector<OneFormSeries>& forms) {
    std::vector<Complex> poles;
    for (const auto& f : forms) poles.insert(poles.end(), f.poles().begin(), f.poles().end());
    return poles;
}

std::vector<std::pair<int, int>> row_products_k2(int g) {
    std::vector<std::pair<int, int>> rows;
    for (int l = 1; l <= g; ++l) rows.emplace_back(l, l);
    for (int l = 2; l <= g; ++l) rows.emplace_back(1, l);
    for (int l = 3; l <= g; ++l) rows.emplace_back(2, l);
    return rows;
}

std::vector<std::pair<int, int>> col_indices_k2(int g) {
    std::vector<std::pair<int, int>> cols;
    cols.emplace_back(1, 1);
    cols.emplace_back(2, 1);
    cols.emplace_back(2, 2);
    for (int i = 3; i <= g; ++i) {
        cols.emplace_back(i, 0);
        cols.emplace_back(i, 1);
        cols.emplace_back(i, 2);
    }
    return cols;
}

// (x_1 - x_{-1}) / ((p - x_1)(p - x_{-1})), with the x_{-1} -> infinity limit.
Complex fixed_point_pair_ratio(const SpherePoint& x1, const SpherePoint& xm1, Complex p) {
    if (x1.is_infinity()) throw Error("sigma/tau product needs a finite attracting point for generator 1");
    if (xm1.is_infinity()) return 1.0 / (p - x1.value);
    return (x1.value - xm1.value) / ((p - x1.value) * (p - xm1.value));
}

}  // namespace

Complex contour_integral(const std::function<Complex(Complex)>& f, const Circle& circle,
                         double tol) {
    if (!circle.disk_is_interior()) {
        throw Error("quadrature circles must bound a bounded disk");
    }
    Complex prev{0.0, 0.0};
    bool have_prev = false;
    for (int n_nodes = kNodeStart / 2; n_nodes <= kNodeCap; n_nodes *= 2) {
        Complex sum{0.0, 0.0};
        for (int k = 0; k < n_nodes; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / n_nodes;
            const Complex unit{std::cos(theta), std::sin(theta)};
            sum += f(circle.center + circle.radius * unit) * unit;
        }
        const Complex val = sum * (circle.radius / n_nodes);
        if (have_prev && std::abs(val - prev) < tol) return val;
        prev = val;
        have_prev = true;
    }
    throw NoConvergence();
}

OneFormSeries::OneFormSeries(const SchottkyGroup& group, int gen_index, int max_len)
    : gen_index_(gen_index), max_len_(max_len) {
    const std::vector<ReducedWord> reps =
        enumerate_coset_reps(group.genus(), gen_index, max_len);
    const SpherePoint xi = group.fixed_point(gen_index);
    const SpherePoint xmi = group.fixed_point(-gen_index);
    for (const ReducedWord& rep : reps) {
        const MoebiusMap phi = group.evaluate_word(rep);
        const SpherePoint p = phi(xi);
        const SpherePoint q = phi(xmi);
        // A pole at infinity contributes the zero function 1/(z - inf).
        if (!p.is_infinity()) {
            pos_poles_.push_back(p.value);
            poles_.push_back(p.value);
        }
        if (!q.is_infinity()) {
            neg_poles_.push_back(q.value);
            poles_.push_back(q.value);
        }
    }
}

Complex OneFormSeries::operator()(Complex z) const {
    Complex sum{0.0, 0.0};
    constexpr double guard2 = kPoleGuard * kPoleGuard;
    for (const Complex& p : pos_poles_) {
        const Complex d = z - p;
        if (std::norm(d) < guard2) throw PoleTooClose();
        sum += 1.0 / d;
    }
    for (const Complex& p : neg_poles_) {
        const Complex d = z - p;
        if (std::norm(d) < guard2) throw PoleTooClose();
        sum -= 1.0 / d;
    }
    return sum;
}

Circle pole_safe_circle(const Circle& circle, const std::vector<Complex>& poles, double margin,
                        double clearance) {
    auto radial_clearance = [&](double r) {
        double best = std::numeric_limits<double>::infinity();
        for (const Complex& p : poles) {
            best = std::min(best, std::abs(std::abs(p - circle.center) - r));
        }
        return best;
    };
    if (radial_clearance(circle.radius) >= clearance) return circle;
    const double step = std::min(margin, circle.radius) / 8.0;
    double best_r = circle.radius;
    double best_c = radial_clearance(circle.radius);
    for (int k = -3; k <= 3; ++k) {
        if (k == 0) continue;
        const double r = circle.radius + k * step;
        if (r <= 0.0) continue;
        const double c = radial_clearance(r);
        if (c > best_c) {
            best_c = c;
            best_r = r;
        }
    }
    Circle out = circle;
    out.radius = best_r;
    return out;
}

Matrix normalization_matrix(const SchottkyGroup& group, int max_len, double tol) {
    const int g = group.genus();
    const std::vector<OneFormSeries> forms = build_forms(group, max_len);
    const std::vector<Complex> poles = all_poles(forms);
    const double margin = group.circle_report().disjointness_margin;

    Matrix m(g, g);
    for (int i = 1; i <= g; ++i) {
        const Circle ci = pole_safe_circle(group.circle(i), poles, margin);
        std::vector<CircleIntegrand> items;
        for (int j = 0; j < g; ++j) items.push_back(CircleIntegrand{j, -1, Complex{0.0, 0.0}, 0});
        const std::vector<Complex> vals = integrate_on_circle(ci, forms, items, tol);
        for (int j = 0; j < g; ++j) m(i - 1, j) = vals[static_cast<size_t>(j)];
    }
    return m;
}

PairingMatrix pairing_matrix_k2(const SchottkyGroup& group, int max_len, double tol,
                                CocycleConvention convention) {
    const int g = group.genus();
    if (g < 2) throw GenusTooSmall("the k = 2 pairing needs genus >= 2");
    if (convention == CocycleConvention::normalized_xi && !group.is_normalized()) {
        throw Error("the xi convention anchors polynomials at 0 and 1; normalize the marking first");
    }

    PairingMatrix pm;
    pm.row_products = row_products_k2(g);
    pm.col_indices = col_indices_k2(g);
    const int n = 3 * g - 3;
    pm.entries = Matrix(n, n);

    const std::vector<OneFormSeries> forms = build_forms(group, max_len);
    const std::vector<Complex> poles = all_poles(forms);
    const double margin = group.circle_report().disjointness_margin;

    // The cocycle vanishes on every generator except its own index, so the
    // column (i, j) only integrates over C_i.
    for (int i = 1; i <= g; ++i) {
        std::vector<int> col_ids;
        for (int c = 0; c < n; ++c) {
            if (pm.col_indices[static_cast<size_t>(c)].first == i) col_ids.push_back(c);
        }
        if (col_ids.empty()) continue;
        const Circle ci = pole_safe_circle(group.circle(i), poles, margin);
        std::vector<CircleIntegrand> items;
        for (const int c : col_ids) {
            const int j = pm.col_indices[static_cast<size_t>(c)].second;
            Complex center{0.0, 0.0};
            if (convention == CocycleConvention::general_zeta) {
                center = group.fixed_point(i).value;
            } else if (i == 2) {
                center = Complex{1.0, 0.0};
            }
            for (const auto& [a, b] : pm.row_products) {
                items.push_back(CircleIntegrand{a - 1, b - 1, center, j});
            }
        }
        const std::vector<Complex> vals = integrate_on_circle(ci, forms, items, tol);
        size_t pos = 0;
        for (const int c : col_ids) {
            for (int r = 0; r < n; ++r) pm.entries(r, c) = vals[pos++];
        }
    }

    Eigen::JacobiSVD<Matrix> svd(pm.entries);
    const auto& s = svd.singularValues();
    pm.condition_number = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1)
                                                : std::numeric_limits<double>::infinity();
    pm.singular = !(pm.condition_number < 1e12);
    return pm;
}

std::pair<Matrix, Complex> normalized_basis_change(const SchottkyGroup& group, int max_len,
                                                   double tol) {
    const PairingMatrix pm = pairing_matrix_k2(group, max_len, tol, CocycleConvention::normalized_xi);
    if (pm.singular) throw SingularPairing();
    Matrix b = pm.entries.inverse();
    return {b, b.determinant()};
}

std::pair<Complex, Complex> period_determinants(const Matrix& coeff_1, const Matrix& coeff_k,
                                                const Matrix& norm_matrix, int genus) {
    if (coeff_1.rows() != genus || coeff_1.cols() != genus) {
        throw DimensionMismatch("coeff_1 must be g x g");
    }
    const int h = 3 * genus - 3;
    if (coeff_k.rows() != h || coeff_k.cols() != h) {
        throw DimensionMismatch("coeff_k must be (3g-3) x (3g-3)");
    }
    const Complex omega_1 = coeff_1.determinant() * norm_matrix.determinant();
    const Complex omega_k = coeff_k.determinant();
    return {omega_1, omega_k};
}

Complex c_gamma(const SchottkyGroup& group, const Matrix& coeff_1, const TruncationPolicy& policy,
                int max_len, double tol) {
    const Matrix m = normalization_matrix(group, max_len, tol);
    const Complex omega_1 = coeff_1.determinant() * m.determinant();
    return zograf_F1(group, policy).value / omega_1;
}

Complex sigma_tau_product(const SchottkyGroup& group, const std::vector<Complex>& y) {
    const int g = group.genus();
    if (g < 2) throw GenusTooSmall();
    if (static_cast<int>(y.size()) != g) throw DimensionMismatch("one y per generator");
    const SpherePoint x1 = group.fixed_point(1);
    const SpherePoint xm1 = group.fixed_point(-1);
    for (int i = 2; i <= g; ++i) {
        if (group.fixed_point(i).is_infinity() || group.fixed_point(-i).is_infinity()) {
            throw Error("sigma/tau product: only the repelling point of generator 1 may be infinite");
        }
    }
    const Complex x2 = group.fixed_point(2).value;
    const Complex xm2 = group.fixed_point(-2).value;

    Complex prod{1.0, 0.0};
    for (int k = 3; k <= g; ++k) {
        const Complex xk = group.fixed_point(k).value;
        prod *= (x2 - xm2) / ((xk - x2) * (xk - xm2));
    }
    // tau_2
    prod *= fixed_point_pair_ratio(x1, xm1, xm2) * (x2 - xm2) * (x2 - xm2) * y[1];
    for (int k = 3; k <= g; ++k) {
        const Complex xk = group.fixed_point(k).value;
        const Complex xmk = group.fixed_point(-k).value;
        const Complex term1 = fixed_point_pair_ratio(x1, xm1, xmk);
        const Complex term2 = (xk - x2) * (xk - xm2) / ((xmk - x2) * (xmk - xm2)) *
                              fixed_point_pair_ratio(x1, xm1, xk);
        prod *= (term1 - term2) * (xk - xmk) * (xk - xmk) * y[static_cast<size_t>(k - 1)];
    }
    return prod;
}

DetLeadingFit det_leading_order(const SchottkyGroup& base, double t1, double t2, int max_len,
                                double tol) {
    if (!(t1 > 0.0 && t2 > 0.0 && t1 != t2)) throw FitFailed("need two distinct positive t values");
    const int g = base.genus();
    const auto det_at = [&](double t) {
        const SchottkyGroup grp = base.scaled_multipliers(t);
        const PairingMatrix pm = pairing_matrix_k2(grp, max_len, tol, CocycleConvention::general_zeta);
        return pm.entries.determinant();
    };
    const Complex d1 = det_at(t1);
    const Complex d2 = det_at(t2);
    if (!(std::abs(d1) > 0.0 && std::abs(d2) > 0.0)) throw FitFailed("vanishing determinant");

    DetLeadingFit fit;
    fit.exponent = std::log(std::abs(d1) / std::abs(d2)) / std::log(t1 / t2);
    const Complex c1 = d1 / std::pow(t1, g - 1);
    const Complex c2 = d2 / std::pow(t2, g - 1);
    // One Richardson step removes the O(t) correction of det / t^{g-1}.
    fit.coefficient = (t1 * c2 - t2 * c1) / (t1 - t2);
    std::vector<Complex> y;
    for (int i = 1; i <= g; ++i) y.push_back(base.multiplier(i));
    fit.sigma_tau = sigma_tau_product(base, y);
    if (std::abs(fit.sigma_tau) == 0.0) throw FitFailed("closed-form lowest term vanishes");
    fit.magnitude_ratio = std::abs(fit.coefficient) / std::abs(fit.sigma_tau);
    return fit;
}

}  // namespace szeta
