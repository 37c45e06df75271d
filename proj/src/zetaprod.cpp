#include "schottky_zeta/zetaprod.hpp"

#include <cmath>
#include <thread>

namespace szeta {

namespace {

// sqrt-based magnitude; the products never approach the hypot under/overflow
// regime, and this stays out of libm.
double fast_abs(Complex z) {
    return std::sqrt(z.real() * z.real() + z.imag() * z.imag());
}

struct Accumulation {
    Complex log_sum{0.0, 0.0};        // over classes of length <= L
    Complex log_sum_shallow{0.0, 0.0};  // over classes of length <= L-2
    long long terms = 0;
    int inner_max = 0;
    double max_q_at_top = 0.0;  // max |q_gamma| among classes of the top length
    long long count_at_top = 0;
};

// Per-class log-factor accumulation shared by every product: PerClass maps a
// class multiplier to (log term, inner terms used, max power retained).
template <typename PerClass>
Accumulation accumulate(const SchottkyGroup& group, const TruncationPolicy& policy,
                        PerClass&& per_class) {
    const int L = policy.max_word_len;
    auto run_partition = [&](int first_letter, Accumulation& acc) {
        auto visit = [&](const int* w, int len) {
            const Complex q = group.word_multiplier(w, len);
            const Complex lt = per_class(q, acc);
            acc.log_sum += lt;
            if (len <= L - 2) acc.log_sum_shallow += lt;
            if (len == L) {
                acc.max_q_at_top = std::max(acc.max_q_at_top, fast_abs(q));
                ++acc.count_at_top;
            }
        };
        for_each_class_with_first(group.genus(), L, first_letter, visit);
    };

    const int parts = 2 * group.genus();
    std::vector<Accumulation> acc(static_cast<size_t>(parts));
    if (policy.threads > 1) {
        std::vector<std::thread> pool;
        const int nthreads = std::min(policy.threads, parts);
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                for (int p = t; p < parts; p += nthreads) {
                    const int first = p % 2 == 0 ? p / 2 + 1 : -(p / 2 + 1);
                    run_partition(first, acc[static_cast<size_t>(p)]);
                }
            });
        }
        for (auto& th : pool) th.join();
    } else {
        // Sequential mode follows the global (length, lexicographic) order and
        // is bit-deterministic.
        Accumulation seq;
        auto visit = [&](const int* w, int len) {
            const Complex q = group.word_multiplier(w, len);
            const Complex lt = per_class(q, seq);
            seq.log_sum += lt;
            if (len <= L - 2) seq.log_sum_shallow += lt;
            if (len == L) {
                seq.max_q_at_top = std::max(seq.max_q_at_top, fast_abs(q));
                ++seq.count_at_top;
            }
        };
        for_each_class(group.genus(), L, visit);
        return seq;
    }

    Accumulation total;
    for (const Accumulation& a : acc) {
        total.log_sum += a.log_sum;
        total.log_sum_shallow += a.log_sum_shallow;
        total.terms += a.terms;
        total.inner_max = std::max(total.inner_max, a.inner_max);
        total.max_q_at_top = std::max(total.max_q_at_top, a.max_q_at_top);
        total.count_at_top += a.count_at_top;
    }
    return total;
}

// log(1 - u) for |u| < 1; the two-term expansion is exact to ~|u|^3 and
// avoids the transcendental call for the overwhelmingly common tiny factors.
Complex log_one_minus(Complex u, double u_abs) {
    if (u_abs < 1e-8) return -u - 0.5 * u * u;
    return std::log(1.0 - u);  // |u| < 1 puts 1 - u in the right half plane
}

// Sum of log(1 - q^m) for m = m0, m0+1, ... until |q|^m drops below the floor.
Complex inner_log_product(Complex q, int m0, double term_floor, Accumulation& acc) {
    Complex sum{0.0, 0.0};
    const double qa = fast_abs(q);
    Complex qm = q;
    double qam = qa;
    for (int i = 1; i < m0; ++i) {
        qm *= q;
        qam *= qa;
    }
    for (int m = m0; qam >= term_floor; ++m) {
        sum += log_one_minus(qm, qam);
        qm *= q;
        qam *= qa;
        ++acc.terms;
        acc.inner_max = std::max(acc.inner_max, m);
    }
    return sum;
}

// Heuristic geometric tail for the dropped classes of length > L: per-length
// decay fitted from the deepest enumerated length, class count growth modeled
// as (2g-1)^l. Reported, never claimed rigorous.
double tail_model(const SchottkyGroup& group, const TruncationPolicy& policy,
                  const Accumulation& acc, double inner_power) {
    if (acc.count_at_top == 0) return 0.0;  // finitely many classes (genus 1)
    const int L = policy.max_word_len;
    const double per_length = std::pow(acc.max_q_at_top, 1.0 / L);
    const double x = (2.0 * group.genus() - 1.0) * std::pow(per_length, inner_power);
    if (x >= 1.0) return std::numeric_limits<double>::infinity();
    return 2.0 * std::pow(x, L + 1) / (1.0 - x);
}

ProductValue finish(const SchottkyGroup& group, const TruncationPolicy& policy,
                    const Accumulation& acc, Complex extra_log, double inner_power) {
    ProductValue pv;
    pv.max_word_len = policy.max_word_len;
    pv.inner_cutoff = acc.inner_max;
    pv.terms_used = acc.terms;
    pv.value = std::exp(acc.log_sum + extra_log);
    pv.tail_estimate = tail_model(group, policy, acc, inner_power);
    const Complex shallow = std::exp(acc.log_sum_shallow + extra_log);
    pv.converged = std::isfinite(pv.tail_estimate) &&
                   std::abs(pv.value - shallow) <= policy.conv_tol * (1.0 + std::abs(pv.value));
    return pv;
}

Complex mt_prefactor_log(const SchottkyGroup& group, int k) {
    const Complex q1 = group.multiplier(1);
    const Complex q2 = group.multiplier(2);
    Complex lg{0.0, 0.0};
    for (int m = 1; m <= k - 1; ++m) lg += 2.0 * std::log(1.0 - std::pow(q1, m));
    lg += std::log(1.0 - std::pow(q2, k - 1));
    return lg;
}

}  // namespace

ProductValue zograf_F1(const SchottkyGroup& group, const TruncationPolicy& policy) {
    const Accumulation acc = accumulate(group, policy, [&](Complex q, Accumulation& a) {
        return inner_log_product(q, 1, policy.term_floor, a);
    });
    return finish(group, policy, acc, Complex{0.0, 0.0}, 1.0);
}

ProductValue mt_Fk(const SchottkyGroup& group, int k, const TruncationPolicy& policy) {
    if (group.genus() < 2) throw GenusTooSmall("F(k) references gamma_2; genus must be >= 2");
    if (k < 2) throw Error("F(k) requires k >= 2");
    const Accumulation acc = accumulate(group, policy, [&](Complex q, Accumulation& a) {
        return inner_log_product(q, k, policy.term_floor, a);
    });
    return finish(group, policy, acc, mt_prefactor_log(group, k), static_cast<double>(k));
}

ProductValue ruelle(const SchottkyGroup& group, double s, const TruncationPolicy& policy) {
    const Accumulation acc = accumulate(group, policy, [&](Complex q, Accumulation& a) {
        ++a.terms;
        a.inner_max = std::max(a.inner_max, 1);
        const double x = std::pow(fast_abs(q), s);
        return -log_one_minus(Complex{x, 0.0}, x);
    });
    ProductValue pv = finish(group, policy, acc, Complex{0.0, 0.0}, s);
    if (s < 2.0) pv.converged = false;  // outside the absolute-convergence range
    return pv;
}

ProductValue modified_ruelle(const SchottkyGroup& group, int k, const TruncationPolicy& policy) {
    if (group.genus() < 2) throw GenusTooSmall("modified Ruelle references gamma_2; genus must be >= 2");
    if (k < 2) throw Error("modified Ruelle requires k >= 2");
    const Complex q1 = group.multiplier(1);
    const Complex q2 = group.multiplier(2);
    ProductValue pv = ruelle(group, static_cast<double>(k), policy);
    const Complex correction = 2.0 * std::log(1.0 - std::pow(q1, k)) +
                               std::log(1.0 - std::pow(q2, k)) -
                               std::log(1.0 - std::pow(q2, k - 1));
    pv.value *= std::exp(correction);
    return pv;
}

std::pair<ProductValue, ProductValue> mumford_ratio(const SchottkyGroup& group, int k,
                                                    const TruncationPolicy& policy) {
    if (group.genus() < 2) throw GenusTooSmall("the intro display references gamma_2; genus must be >= 2");
    const double dk = static_cast<double>(d_k(k));

    const Accumulation acc_f1 = accumulate(group, policy, [&](Complex q, Accumulation& a) {
        return inner_log_product(q, 1, policy.term_floor, a);
    });
    const Accumulation acc_fk = accumulate(group, policy, [&](Complex q, Accumulation& a) {
        return inner_log_product(q, k, policy.term_floor, a);
    });
    const Complex pref = mt_prefactor_log(group, k);

    ProductValue via_F;
    via_F.max_word_len = policy.max_word_len;
    via_F.inner_cutoff = std::max(acc_f1.inner_max, acc_fk.inner_max);
    via_F.terms_used = acc_f1.terms + acc_fk.terms;
    via_F.value = std::exp(dk * acc_f1.log_sum - (acc_fk.log_sum + pref));
    via_F.tail_estimate = dk * tail_model(group, policy, acc_f1, 1.0) +
                          tail_model(group, policy, acc_fk, static_cast<double>(k));
    {
        const Complex shallow =
            std::exp(dk * acc_f1.log_sum_shallow - (acc_fk.log_sum_shallow + pref));
        via_F.converged = std::isfinite(via_F.tail_estimate) &&
                          std::abs(via_F.value - shallow) <=
                              policy.conv_tol * (1.0 + std::abs(via_F.value));
    }

    // Direct route: per class, d_k-th powers below the k threshold and
    // (d_k - 1)-th powers above it.
    const Accumulation acc_intro = accumulate(group, policy, [&](Complex q, Accumulation& a) {
        Complex head{0.0, 0.0};
        Complex qm = q;
        for (int m = 1; m <= k - 1; ++m) {
            head += std::log(1.0 - qm);
            qm *= q;
            ++a.terms;
            a.inner_max = std::max(a.inner_max, m);
        }
        return dk * head + (dk - 1.0) * inner_log_product(q, k, policy.term_floor, a);
    });
    ProductValue via_intro = finish(group, policy, acc_intro, -pref, 1.0);
    via_intro.tail_estimate *= dk;  // factors enter with exponent up to d_k
    return {via_F, via_intro};
}

Complex genus1_intro_ratio(Complex q, int k, double term_floor) {
    const double dk = static_cast<double>(d_k(k));
    Complex head{0.0, 0.0};
    Complex qm = q;
    for (int m = 1; m <= k - 1; ++m) {
        head += std::log(1.0 - qm);
        qm *= q;
    }
    Complex tail{0.0, 0.0};
    const double qa = std::abs(q);
    Complex qq = std::pow(q, k);
    double qqa = std::pow(qa, k);
    for (int m = k; qqa >= term_floor; ++m) {
        tail += std::log(1.0 - qq);
        qq *= q;
        qqa *= qa;
    }
    // Two classes with the same multiplier; the prefactor keeps only its
    // gamma_1 part.
    const Complex log_num = 2.0 * (dk * head + (dk - 1.0) * tail);
    const Complex log_den = 2.0 * head;
    return std::exp(log_num - log_den);
}

}  // namespace szeta
