#include "umf/gf.hpp"

#include <string>

namespace umf {

namespace {

constexpr std::uint32_t kTableLimit = 256;

using Poly = std::vector<int>;  // coefficients, degree-0 first

int mod_p(long long v, int p) {
    long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

int inv_mod_p(int a, int p) {
    // p is small; Fermat is fine.
    long long result = 1;
    long long base = a;
    for (int e = p - 2; e > 0; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<int>(result);
}

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic-or-not nonzero b over GF(p).
Poly poly_rem(Poly a, const Poly& b, int p) {
    trim(a);
    const int db = static_cast<int>(b.size()) - 1;
    const int lead_inv = inv_mod_p(b.back(), p);
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const int factor = mod_p(static_cast<long long>(a.back()) * lead_inv, p);
        for (int i = 0; i <= db; ++i) {
            a[shift + i] = mod_p(a[shift + i] - static_cast<long long>(factor) * b[i], p);
        }
        trim(a);
    }
    return a;
}

}  // namespace

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_irreducible(int p, const std::vector<int>& f) {
    const int c = static_cast<int>(f.size());
    if (c <= 1) return true;
    Poly modulus(f.begin(), f.end());
    modulus.push_back(1);
    // Any factorization has a monic factor of degree <= c/2.
    for (int deg = 1; deg <= c / 2; ++deg) {
        long long count = 1;
        for (int i = 0; i < deg; ++i) count *= p;
        for (long long code = 0; code < count; ++code) {
            Poly divisor(deg + 1);
            long long rest = code;
            for (int i = 0; i < deg; ++i) {
                divisor[i] = static_cast<int>(rest % p);
                rest /= p;
            }
            divisor[deg] = 1;
            if (poly_rem(modulus, divisor, p).empty()) return false;
        }
    }
    return true;
}

std::vector<int> find_irreducible(int p, int c) {
    if (!is_prime(p) || p > kMaxPrime) throw ParameterError("p must be a prime <= 97");
    if (c < 1 || c > kMaxDegree) throw ParameterError("extension degree must be in [1, 4]");
    if (c == 1) return {};
    long long count = 1;
    for (int i = 0; i < c; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
        std::vector<int> f(c);
        long long rest = code;
        for (int i = 0; i < c; ++i) {
            f[i] = static_cast<int>(rest % p);
            rest /= p;
        }
        if (f[0] != 0 && is_irreducible(p, f)) return f;
    }
    throw ParameterError("no irreducible polynomial found");  // unreachable for prime p
}

Field::Field(FieldParams params) : params_(std::move(params)) {
    const int p = params_.p;
    const int c = params_.c;
    if (!is_prime(p) || p > kMaxPrime) {
        throw ParameterError("field characteristic must be a prime <= 97, got " + std::to_string(p));
    }
    if (c < 1 || c > kMaxDegree) {
        throw ParameterError("extension degree must be in [1, 4], got " + std::to_string(c));
    }
    if (c == 1) {
        params_.f.clear();
    } else {
        if (static_cast<int>(params_.f.size()) != c) {
            throw ParameterError("modulus needs exactly c non-leading coefficients");
        }
        for (int coeff : params_.f) {
            if (coeff < 0 || coeff >= p) throw ParameterError("modulus coefficients must lie in [0, p)");
        }
        if (!is_irreducible(p, params_.f)) throw ParameterError("modulus is reducible over GF(p)");
    }
    pow_p_.resize(c + 1);
    pow_p_[0] = 1;
    for (int i = 1; i <= c; ++i) pow_p_[i] = pow_p_[i - 1] * static_cast<std::uint32_t>(p);
    q_ = pow_p_[c];

    if (q_ <= kTableLimit) {
        mul_table_.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) {
                mul_table_[a * q_ + b] = static_cast<std::uint16_t>(mul_poly(a, b));
            }
        }
    }
}

FieldPtr Field::make(const FieldParams& params) {
    return FieldPtr(new Field(params));
}

FieldPtr Field::gf4() {
    return make(FieldParams{2, 2, {1, 1}});
}

FieldPtr Field::prime(int p) {
    return make(FieldParams{p, 1, {}});
}

std::array<int, kMaxDegree> Field::coords(std::uint32_t a) const {
    std::array<int, kMaxDegree> out{};
    for (int i = 0; i < params_.c; ++i) {
        out[i] = static_cast<int>(a % static_cast<std::uint32_t>(params_.p));
        a /= static_cast<std::uint32_t>(params_.p);
    }
    return out;
}

std::uint32_t Field::from_coords(const std::array<int, kMaxDegree>& coords) const {
    std::uint32_t d = 0;
    for (int i = params_.c - 1; i >= 0; --i) {
        d = d * static_cast<std::uint32_t>(params_.p) + static_cast<std::uint32_t>(mod_p(coords[i], params_.p));
    }
    return d;
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
    if (params_.c == 1) return (a + b) % q_;
    auto x = coords(a);
    const auto y = coords(b);
    for (int i = 0; i < params_.c; ++i) x[i] = (x[i] + y[i]) % params_.p;
    return from_coords(x);
}

std::uint32_t Field::neg(std::uint32_t a) const {
    auto x = coords(a);
    for (int i = 0; i < params_.c; ++i) x[i] = (params_.p - x[i]) % params_.p;
    return from_coords(x);
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const {
    return add(a, neg(b));
}

std::uint32_t Field::mul_poly(std::uint32_t a, std::uint32_t b) const {
    const int p = params_.p;
    const int c = params_.c;
    const auto x = coords(a);
    const auto y = coords(b);
    std::array<long long, 2 * kMaxDegree> prod{};
    for (int i = 0; i < c; ++i) {
        for (int j = 0; j < c; ++j) prod[i + j] += static_cast<long long>(x[i]) * y[j];
    }
    for (auto& v : prod) v = mod_p(v, p);
    // z^k = z^{k-c} * (-sum f_i z^i) for k >= c.
    for (int k = 2 * c - 2; k >= c; --k) {
        const long long t = prod[k];
        if (t == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < c; ++i) {
            prod[k - c + i] = mod_p(prod[k - c + i] - t * params_.f[i], p);
        }
    }
    std::array<int, kMaxDegree> out{};
    for (int i = 0; i < c; ++i) out[i] = static_cast<int>(prod[i]);
    return from_coords(out);
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
    if (!mul_table_.empty()) return mul_table_[a * q_ + b];
    return mul_poly(a, b);
}

std::uint32_t Field::inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in GF(q)");
    // a^{q-2}
    std::uint32_t result = 1;
    std::uint32_t base = a;
    for (std::uint32_t e = q_ - 2; e > 0; e >>= 1) {
        if (e & 1u) result = mul(result, base);
        base = mul(base, base);
    }
    return result;
}

int Field::trace_mul(std::uint32_t a, std::uint32_t b) const {
    return unit_coord(mul(a, b));
}

FqElem::FqElem(FieldPtr field, std::uint32_t digit) : field_(std::move(field)), digit_(digit) {
    if (!field_) throw ParameterError("null field");
    if (digit_ >= field_->q()) throw RangeError("digit value out of range [0, q)");
}

namespace {
const Field& common_field(const FqElem& a, const FqElem& b) {
    if (!a.field()->same_as(*b.field())) throw ParameterError("GF(q) elements from different fields");
    return *a.field();
}
}  // namespace

FqElem fq_add(const FqElem& a, const FqElem& b) {
    return FqElem(a.field(), common_field(a, b).add(a.digit(), b.digit()));
}

FqElem fq_sub(const FqElem& a, const FqElem& b) {
    return FqElem(a.field(), common_field(a, b).sub(a.digit(), b.digit()));
}

FqElem fq_mul(const FqElem& a, const FqElem& b) {
    return FqElem(a.field(), common_field(a, b).mul(a.digit(), b.digit()));
}

FqElem fq_inv(const FqElem& a) {
    return FqElem(a.field(), a.field()->inv(a.digit()));
}

std::uint32_t fq_digit_value(const FqElem& a) {
    return a.digit();
}

FqElem fq_from_digit(const FieldPtr& field, std::int64_t d) {
    if (d < 0 || d >= static_cast<std::int64_t>(field->q())) {
        throw RangeError("digit " + std::to_string(d) + " outside [0, q)");
    }
    return FqElem(field, static_cast<std::uint32_t>(d));
}

FqElem fq_from_coords(const FieldPtr& field, const std::vector<int>& coords) {
    if (static_cast<int>(coords.size()) != field->c()) throw ParameterError("coordinate count must equal c");
    std::array<int, kMaxDegree> a{};
    for (int i = 0; i < field->c(); ++i) {
        if (coords[i] < 0 || coords[i] >= field->p()) throw RangeError("coordinate outside [0, p)");
        a[i] = coords[i];
    }
    return FqElem(field, field->from_coords(a));
}

}  // namespace umf
