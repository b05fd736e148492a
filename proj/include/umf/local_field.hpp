#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "umf/gf.hpp"

namespace umf {

/// Element of K = GF(q)((p)) with finite support: x = sum_l c_l p^l.
///
/// Stored canonically as (exponent, digit value) pairs in ascending
/// exponent order with no zero digits. Addition has no carries
/// (characteristic p), so every operation here is exact.
class KElem {
public:
    using Term = std::pair<int, std::uint32_t>;

    explicit KElem(FieldPtr field);
    KElem(FieldPtr field, std::vector<Term> terms);

    static KElem zero(FieldPtr field) { return KElem(std::move(field)); }
    static KElem one(FieldPtr field) { return monomial(std::move(field), 1, 0); }
    /// digit * p^exponent
    static KElem monomial(FieldPtr field, std::uint32_t digit, int exponent);

    const FieldPtr& field() const { return field_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Digit value of the coefficient of p^exponent.
    std::uint32_t digit(int exponent) const;

    /// v(x); nullopt for x = 0.
    std::optional<int> valuation() const;
    /// log_q |x| = -v(x); nullopt for x = 0.
    std::optional<int> norm_exponent() const;
    /// |x| = q^{-v(x)}, with |0| = 0.
    double norm() const;
    /// Largest stored exponent; nullopt for x = 0.
    std::optional<int> top_exponent() const;

    friend bool operator==(const KElem& a, const KElem& b) {
        return a.terms_ == b.terms_ && a.field_->same_as(*b.field_);
    }

private:
    FieldPtr field_;
    std::vector<Term> terms_;
};

KElem k_add(const KElem& x, const KElem& y);
KElem k_sub(const KElem& x, const KElem& y);
KElem k_neg(const KElem& x);
KElem k_mul(const KElem& x, const KElem& y);
/// p^k * x
KElem k_shift(const KElem& x, int k);

inline KElem operator+(const KElem& x, const KElem& y) { return k_add(x, y); }
inline KElem operator-(const KElem& x, const KElem& y) { return k_sub(x, y); }
inline KElem operator-(const KElem& x) { return k_neg(x); }
inline KElem operator*(const KElem& x, const KElem& y) { return k_mul(x, y); }

/// The coset representative u(n) of D in K: base-q digits b_0..b_s of n
/// placed at exponents -1, ..., -(s+1).
KElem coset_rep(const FieldPtr& field, std::uint64_t n);

/// Inverse of coset_rep on elements supported in exponents < 0.
std::uint64_t coset_index(const KElem& x);

/// exp(2 pi i phase / p), kept as the exact phase.
struct UnitComplex {
    int phase = 0;
    int p = 2;

    std::complex<double> value() const;
    UnitComplex operator*(const UnitComplex& o) const { return {(phase + o.phase) % p, p}; }
    UnitComplex conj() const { return {(p - phase) % p, p}; }
    friend bool operator==(const UnitComplex&, const UnitComplex&) = default;
};

/// Table of exp(2 pi i k / p), k in [0, p), with the rational points exact.
std::vector<std::complex<double>> roots_of_unity(int p);

/// The canonical character: depends only on the unit coordinate of the
/// digit at exponent -1. Trivial on D, non-trivial on p^{-1}D.
UnitComplex character(const KElem& x);
/// chi(xi * x)
UnitComplex pair_character(const KElem& xi, const KElem& x);

/// The field element standing for the period N = q^nu, namely p^{-nu}.
KElem embed_period(const FieldPtr& field, int nu);

/// The nonuniform offset u(r)/N = p^nu u(r). Validates 1 <= r <= qN-1,
/// r odd and gcd(r, N) = 1.
KElem lattice_offset(const FieldPtr& field, int nu, std::int64_t r);

/// nu with N = q^nu; throws UnsupportedParameter if N is not a power of q.
int period_exponent(const FieldPtr& field, std::int64_t period);

}  // namespace umf
