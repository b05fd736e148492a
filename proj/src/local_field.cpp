#include "umf/local_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

namespace umf {

namespace {

void require_same(const KElem& x, const KElem& y) {
    if (!x.field()->same_as(*y.field())) throw ParameterError("local-field elements over different residue fields");
}

}  // namespace

KElem::KElem(FieldPtr field) : field_(std::move(field)) {
    if (!field_) throw ParameterError("null field");
}

KElem::KElem(FieldPtr field, std::vector<Term> terms) : field_(std::move(field)) {
    if (!field_) throw ParameterError("null field");
    std::sort(terms.begin(), terms.end());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0 && terms[i].first == terms[i - 1].first) throw ParameterError("duplicate exponent in digit list");
        if (terms[i].second >= field_->q()) throw RangeError("digit value out of range [0, q)");
        if (terms[i].second != 0) terms_.push_back(terms[i]);
    }
}

KElem KElem::monomial(FieldPtr field, std::uint32_t digit, int exponent) {
    return KElem(std::move(field), {{exponent, digit}});
}

std::uint32_t KElem::digit(int exponent) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{exponent, 0});
    return (it != terms_.end() && it->first == exponent) ? it->second : 0;
}

std::optional<int> KElem::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().first;
}

std::optional<int> KElem::norm_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return -terms_.front().first;
}

std::optional<int> KElem::top_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.back().first;
}

double KElem::norm() const {
    if (terms_.empty()) return 0.0;
    return std::pow(static_cast<double>(field_->q()), -terms_.front().first);
}

KElem k_add(const KElem& x, const KElem& y) {
    require_same(x, y);
    const Field& f = *x.field();
    std::vector<KElem::Term> out;
    out.reserve(x.terms().size() + y.terms().size());
    auto a = x.terms().begin();
    auto b = y.terms().begin();
    while (a != x.terms().end() || b != y.terms().end()) {
        if (b == y.terms().end() || (a != x.terms().end() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == x.terms().end() || b->first < a->first) {
            out.push_back(*b++);
        } else {
            const std::uint32_t s = f.add(a->second, b->second);
            if (s != 0) out.emplace_back(a->first, s);
            ++a;
            ++b;
        }
    }
    return KElem(x.field(), std::move(out));
}

KElem k_neg(const KElem& x) {
    std::vector<KElem::Term> out;
    out.reserve(x.terms().size());
    for (const auto& [e, d] : x.terms()) out.emplace_back(e, x.field()->neg(d));
    return KElem(x.field(), std::move(out));
}

KElem k_sub(const KElem& x, const KElem& y) {
    return k_add(x, k_neg(y));
}

KElem k_mul(const KElem& x, const KElem& y) {
    require_same(x, y);
    const Field& f = *x.field();
    std::map<int, std::uint32_t> acc;
    for (const auto& [ea, da] : x.terms()) {
        for (const auto& [eb, db] : y.terms()) {
            auto& slot = acc[ea + eb];
            slot = f.add(slot, f.mul(da, db));
        }
    }
    std::vector<KElem::Term> out;
    for (const auto& [e, d] : acc) {
        if (d != 0) out.emplace_back(e, d);
    }
    return KElem(x.field(), std::move(out));
}

KElem k_shift(const KElem& x, int k) {
    std::vector<KElem::Term> out = x.terms();
    for (auto& t : out) t.first += k;
    return KElem(x.field(), std::move(out));
}

KElem coset_rep(const FieldPtr& field, std::uint64_t n) {
    std::vector<KElem::Term> terms;
    const std::uint64_t q = field->q();
    int exponent = -1;
    while (n > 0) {
        const auto b = static_cast<std::uint32_t>(n % q);
        if (b != 0) terms.emplace_back(exponent, b);
        n /= q;
        --exponent;
    }
    return KElem(field, std::move(terms));
}

std::uint64_t coset_index(const KElem& x) {
    const std::uint64_t q = x.field()->q();
    std::uint64_t n = 0;
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
        if (it->first >= 0) throw RangeError("element has a component in D; not a coset representative");
    }
    const auto lowest = x.valuation();
    if (!lowest) return 0;
    for (int e = *lowest; e <= -1; ++e) n = n * q + x.digit(e);
    return n;
}

std::complex<double> UnitComplex::value() const {
    return roots_of_unity(p)[static_cast<std::size_t>(((phase % p) + p) % p)];
}

std::vector<std::complex<double>> roots_of_unity(int p) {
    std::vector<std::complex<double>> out(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
        if (k == 0) {
            out[k] = {1.0, 0.0};
        } else if (2 * k == p) {
            out[k] = {-1.0, 0.0};
        } else if (4 * k == p) {
            out[k] = {0.0, 1.0};
        } else if (4 * k == 3 * p) {
            out[k] = {0.0, -1.0};
        } else {
            out[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / p);
        }
    }
    return out;
}

UnitComplex character(const KElem& x) {
    return {x.field()->unit_coord(x.digit(-1)), x.field()->p()};
}

UnitComplex pair_character(const KElem& xi, const KElem& x) {
    return character(k_mul(xi, x));
}

KElem embed_period(const FieldPtr& field, int nu) {
    if (nu < 0) throw RangeError("period exponent must be >= 0");
    return KElem::monomial(field, 1, -nu);
}

KElem lattice_offset(const FieldPtr& field, int nu, std::int64_t r) {
    if (nu < 0) throw RangeError("period exponent must be >= 0");
    std::int64_t period = 1;
    for (int i = 0; i < nu; ++i) period *= field->q();
    const std::int64_t upper = static_cast<std::int64_t>(field->q()) * period - 1;
    if (r < 1 || r > upper) {
        throw ParameterError("offset r must satisfy 1 <= r <= qN-1 = " + std::to_string(upper));
    }
    if (r % 2 == 0) throw ParameterError("offset r must be odd");
    if (std::gcd(r, period) != 1) throw ParameterError("offset r must be coprime to N");
    return k_shift(coset_rep(field, static_cast<std::uint64_t>(r)), nu);
}

int period_exponent(const FieldPtr& field, std::int64_t period) {
    if (period < 1) throw ParameterError("period N must be >= 1");
    int nu = 0;
    while (period > 1) {
        if (period % field->q() != 0) {
            throw UnsupportedParameter("period N must be a power of q; general N has no embedding in K");
        }
        period /= field->q();
        ++nu;
    }
    return nu;
}

}  // namespace umf
