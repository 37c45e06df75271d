#pragma once

#include <utility>

#include "schottky_zeta/schottky.hpp"

namespace szeta {

/// d_k = 6k^2 - 6k + 1, the Mumford-isomorphism exponent.
inline long long d_k(int k) {
    const long long kk = k;
    return 6 * kk * kk - 6 * kk + 1;
}

struct TruncationPolicy {
    int max_word_len = 10;      // outer cutoff: classes of word length <= L
    double term_floor = 1e-18;  // drop inner factors with |q_gamma^m| below this
    double conv_tol = 1e-9;     // successive-L agreement needed for `converged`
    int threads = 1;            // > 1 enables prefix-partitioned accumulation
};

/// A truncated infinite-product evaluation with its bookkeeping.
struct ProductValue {
    Complex value{1.0, 0.0};
    int max_word_len = 0;
    int inner_cutoff = 0;        // largest power of q_gamma retained in any factor
    long long terms_used = 0;    // total log-factors accumulated
    double tail_estimate = 0.0;  // heuristic; see README
    bool converged = false;
};

/// Zograf's product F(1) = prod over primitive classes of prod_{m>=1} (1 - q_gamma^m).
ProductValue zograf_F1(const SchottkyGroup& group, const TruncationPolicy& policy);

/// McIntyre-Takhtajan's F(k) for k >= 2: the generator prefactor
/// (1-q_1)^2 ... (1-q_1^{k-1})^2 (1-q_2^{k-1}) times the double product
/// prod over classes of prod_{m>=k} (1 - q_gamma^m). Throws GenusTooSmall at g = 1.
ProductValue mt_Fk(const SchottkyGroup& group, int k, const TruncationPolicy& policy);

/// Ruelle zeta R(s) = prod over primitive classes of (1 - |q_gamma|^s)^{-1}.
/// Absolutely convergent for s >= 2; smaller s still computes but is flagged
/// unreliable via converged = false.
ProductValue ruelle(const SchottkyGroup& group, double s, const TruncationPolicy& policy);

/// Modified Ruelle value R(k) (1-q_1^k)^2 (1-q_2^k) / (1-q_2^{k-1}).
/// Throws GenusTooSmall at g = 1. Intended for real (Fuchsian) groups; for
/// non-real groups the value is still computed.
ProductValue modified_ruelle(const SchottkyGroup& group, int k, const TruncationPolicy& policy);

/// The Mumford-form product ratio computed along two routes that are equal
/// as formal rearrangements: F(1)^{d_k} / F(k), and the direct evaluation
/// prod over classes of [prod_{m<k}(1-q^m)^{d_k} prod_{m>=k}(1-q^m)^{d_k-1}]
/// divided by the generator prefactor. Their agreement is the numerical
/// witness of the identity.
std::pair<ProductValue, ProductValue> mumford_ratio(const SchottkyGroup& group, int k,
                                                    const TruncationPolicy& policy);

/// Genus-1 specialization of the direct ratio above: the gamma_2 prefactor
/// does not exist, leaving prod_{m>=1}(1-q^m)^{24} at k = 2 for the single
/// generator pair of classes with multiplier q.
Complex genus1_intro_ratio(Complex q, int k, double term_floor);

}  // namespace szeta
