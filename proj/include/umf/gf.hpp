#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "umf/error.hpp"

namespace umf {

/// Parameters of GF(q), q = p^c, realized as GF(p)[z]/(f(z)).
///
/// `f` holds the non-leading coefficients f_0 ... f_{c-1} of the monic
/// modulus z^c + sum f_i z^i, degree-0 first. It is empty when c == 1.
struct FieldParams {
    int p = 2;
    int c = 1;
    std::vector<int> f;

    friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

inline constexpr int kMaxPrime = 97;
inline constexpr int kMaxDegree = 4;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Validated residue field with optional lookup tables.
///
/// Elements are addressed by their digit value d = a_0 + a_1 p + ... +
/// a_{c-1} p^{c-1} in [0, q), where a_mu are the coordinates with respect to
/// the basis {1, z, ..., z^{c-1}}.
class Field {
public:
    static FieldPtr make(const FieldParams& params);

    /// GF(2^2) with modulus z^2 + z + 1.
    static FieldPtr gf4();
    /// GF(p) for a prime p.
    static FieldPtr prime(int p);

    const FieldParams& params() const { return params_; }
    int p() const { return params_.p; }
    int c() const { return params_.c; }
    std::uint32_t q() const { return q_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;

    /// Coordinate of `a` along the basis element 1 (zeta_0).
    int unit_coord(std::uint32_t a) const { return static_cast<int>(a % static_cast<std::uint32_t>(params_.p)); }
    /// unit_coord(a * b); the exponent of the character pairing.
    int trace_mul(std::uint32_t a, std::uint32_t b) const;

    std::array<int, kMaxDegree> coords(std::uint32_t a) const;
    std::uint32_t from_coords(const std::array<int, kMaxDegree>& coords) const;

    bool same_as(const Field& other) const { return this == &other || params_ == other.params_; }

private:
    explicit Field(FieldParams params);

    std::uint32_t mul_poly(std::uint32_t a, std::uint32_t b) const;

    FieldParams params_;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> pow_p_;
    // Full multiplication table when q is small enough.
    std::vector<std::uint16_t> mul_table_;
};

bool is_prime(int n);

/// Brute-force irreducibility test of z^c + sum f_i z^i over GF(p), c <= 4.
bool is_irreducible(int p, const std::vector<int>& f);

/// Lexicographically first monic irreducible of degree c over GF(p).
std::vector<int> find_irreducible(int p, int c);

/// Element of GF(q). Immutable value tied to its field.
class FqElem {
public:
    FqElem(FieldPtr field, std::uint32_t digit);

    static FqElem zero(FieldPtr field) { return FqElem(std::move(field), 0); }
    static FqElem one(FieldPtr field) { return FqElem(std::move(field), 1); }

    const FieldPtr& field() const { return field_; }
    std::uint32_t digit() const { return digit_; }
    std::array<int, kMaxDegree> coords() const { return field_->coords(digit_); }
    bool is_zero() const { return digit_ == 0; }

    friend bool operator==(const FqElem& a, const FqElem& b) {
        return a.digit_ == b.digit_ && a.field_->same_as(*b.field_);
    }

private:
    FieldPtr field_;
    std::uint32_t digit_;
};

FqElem fq_add(const FqElem& a, const FqElem& b);
FqElem fq_sub(const FqElem& a, const FqElem& b);
FqElem fq_mul(const FqElem& a, const FqElem& b);
FqElem fq_inv(const FqElem& a);

/// The digit bijection d = sum a_mu p^mu.
std::uint32_t fq_digit_value(const FqElem& a);
FqElem fq_from_digit(const FieldPtr& field, std::int64_t d);
FqElem fq_from_coords(const FieldPtr& field, const std::vector<int>& coords);

inline FqElem operator+(const FqElem& a, const FqElem& b) { return fq_add(a, b); }
inline FqElem operator-(const FqElem& a, const FqElem& b) { return fq_sub(a, b); }
inline FqElem operator*(const FqElem& a, const FqElem& b) { return fq_mul(a, b); }

}  // namespace umf
