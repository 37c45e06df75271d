#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "schottky_zeta/schottky.hpp"
#include "schottky_zeta/zetaprod.hpp"

namespace szeta {

using Matrix = Eigen::MatrixXcd;

/// (1/2 pi i) times the counterclockwise contour integral of f over the
/// circle, by uniform-node periodic quadrature with node doubling until two
/// successive levels agree to tol. Throws NoConvergence past 2^16 nodes and
/// rejects circles whose disk is the exterior.
Complex contour_integral(const std::function<Complex(Complex)>& f, const Circle& circle,
                         double tol);

/// Truncated Poincare series for the normalized 1-form omega_i: the sum over
/// coset representatives of 1/(z - phi(x_i)) - 1/(z - phi(x_{-i})), with the
/// pole pairs cached at construction. Evaluation guards against points within
/// 1e-6 of any pole.
class OneFormSeries {
public:
    OneFormSeries(const SchottkyGroup& group, int gen_index, int max_len);

    int generator_index() const { return gen_index_; }
    int max_len() const { return max_len_; }

    Complex operator()(Complex z) const;

    /// Finite poles of the truncated series (images of both fixed points).
    const std::vector<Complex>& poles() const { return poles_; }

private:
    int gen_index_;
    int max_len_;
    std::vector<Complex> pos_poles_;  // contribute +1/(z - p)
    std::vector<Complex> neg_poles_;  // contribute -1/(z - p)
    std::vector<Complex> poles_;
};

/// Nudges the circle radius within the disjointness margin so that no pole
/// of the truncated series sits within `clearance` of the quadrature path.
Circle pole_safe_circle(const Circle& circle, const std::vector<Complex>& poles, double margin,
                        double clearance = 1e-3);

/// Entries (1/2 pi i) contour over C_i of omega_j; converges to the identity
/// as max_len grows.
Matrix normalization_matrix(const SchottkyGroup& group, int max_len, double tol);

enum class CocycleConvention {
    normalized_xi,  // xi_{i,j}(gamma_l): (z-1)^j when i = 2, z^j otherwise; needs a normalized marking
    general_zeta,   // zeta_{i,j}(gamma_l) = delta_{il} (z - x_i)^j; any marking
};

/// The k = 2 Eichler pairing matrix: rows are the products of 1-forms
/// {omega_l^2 (1<=l<=g), omega_1 omega_l (2<=l<=g), omega_2 omega_l (3<=l<=g)},
/// columns the cocycles {(1,1), (2,1), (2,2), (i,0), (i,1), (i,2) (3<=i<=g)}.
struct PairingMatrix {
    Matrix entries;                                // (3g-3) x (3g-3)
    std::vector<std::pair<int, int>> row_products;  // (a, b) meaning omega_a omega_b
    std::vector<std::pair<int, int>> col_indices;   // (i, j)
    double condition_number = 0.0;
    bool singular = false;  // condition number beyond 1e12
};

PairingMatrix pairing_matrix_k2(const SchottkyGroup& group, int max_len, double tol,
                                CocycleConvention convention);

/// Inverse of the normalized-xi pairing matrix: expresses the normalized
/// basis of 2-forms in the product frame. Returns (B, det B) with
/// PairingMatrix * B = I. Throws SingularPairing.
std::pair<Matrix, Complex> normalized_basis_change(const SchottkyGroup& group, int max_len,
                                                   double tol);

/// Periods of user bases given by coefficient matrices over the computed
/// frames: u = coeff_1 * omega and v = coeff_k * (normalized basis), so
/// Omega_1 = det(coeff_1) det(normalization matrix) and Omega_k = det(coeff_k).
std::pair<Complex, Complex> period_determinants(const Matrix& coeff_1, const Matrix& coeff_k,
                                                const Matrix& norm_matrix, int genus);

/// c(Gamma) = F(1) / Omega_1 for the basis u = coeff_1 * omega.
Complex c_gamma(const SchottkyGroup& group, const Matrix& coeff_1, const TruncationPolicy& policy,
                int max_len, double tol);

/// Leading behavior of det(pairing matrix) along the family scaling every
/// multiplier by t: fits det ~ C t^{g-1} from two t values (with one
/// Richardson step for the coefficient) and evaluates the closed-form
/// lowest-term product from the fixed points for comparison.
struct DetLeadingFit {
    double exponent = 0.0;          // fitted power of t
    Complex coefficient{0.0, 0.0};  // extrapolated det / t^{g-1}
    Complex sigma_tau{0.0, 0.0};    // closed-form lowest-term coefficient
    double magnitude_ratio = 0.0;   // |coefficient| / |sigma_tau|
};

DetLeadingFit det_leading_order(const SchottkyGroup& base, double t1, double t2, int max_len,
                                double tol);

/// The closed-form lowest-term product: prod_{k>=3} sigma_k * prod_{k>=2} tau_k
/// evaluated at the group's fixed points with the given y values (one per
/// generator, y_i standing for the multiplier of generator i). Infinity is
/// accepted only as the repelling point of generator 1.
Complex sigma_tau_product(const SchottkyGroup& group, const std::vector<Complex>& y);

}  // namespace szeta
