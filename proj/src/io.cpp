#include "umf/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace umf {

namespace {

void only_keys(const Json& j, const std::set<std::string>& allowed, const std::string& what) {
    if (!j.is_object()) throw InputError(what + ": expected an object");
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) throw InputError(what + ": unknown key '" + key + "'");
    }
}

const Json& need(const Json& j, const std::string& key, const std::string& what) {
    const auto it = j.find(key);
    if (it == j.end()) throw InputError(what + ": missing key '" + key + "'");
    return *it;
}

std::int64_t need_int(const Json& j, const std::string& key, const std::string& what) {
    const Json& v = need(j, key, what);
    if (!v.is_number_integer()) throw InputError(what + ": '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}

cplx number_pair(const Json& v, const std::string& what) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw InputError(what + ": values must be numbers or [re, im] pairs");
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // byte is 1-based and points just past the offending character
        const std::size_t stop = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                         e.what() + ")");
    }
}

Json field_to_json(const FieldParams& params) {
    Json out{{"p", params.p}, {"c", params.c}};
    if (params.c > 1) out["f"] = params.f;
    return out;
}

FieldParams field_from_json(const Json& j) {
    only_keys(j, {"p", "c", "f"}, "field");
    FieldParams out;
    out.p = static_cast<int>(need_int(j, "p", "field"));
    out.c = j.contains("c") ? static_cast<int>(need_int(j, "c", "field")) : 1;
    if (j.contains("f")) {
        if (!j["f"].is_array()) throw InputError("field: 'f' must be an array");
        for (const auto& v : j["f"]) {
            if (!v.is_number_integer()) throw InputError("field: 'f' entries must be integers");
            out.f.push_back(v.get<int>());
        }
    } else if (out.c > 1) {
        out.f = find_irreducible(out.p, out.c);
    }
    return out;
}

Json kelem_to_json(const KElem& x) {
    Json digits = Json::array();
    for (const auto& [e, dgt] : x.terms()) digits.push_back(Json::array({e, dgt}));
    return Json{{"digits", std::move(digits)}};
}

KElem kelem_from_json(const FieldPtr& field, const Json& j) {
    only_keys(j, {"digits"}, "element");
    const Json& digits = need(j, "digits", "element");
    if (!digits.is_array()) throw InputError("element: 'digits' must be [[exponent, digit], ...]");
    std::vector<KElem::Term> terms;
    for (const auto& t : digits) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_number_integer()) {
            throw InputError("element: digits must be [exponent, digit] integer pairs");
        }
        const auto dgt = t[1].get<std::int64_t>();
        if (dgt <= 0 || dgt >= static_cast<std::int64_t>(field->q())) {
            throw InputError("element: digit values must lie in [1, q)");
        }
        terms.emplace_back(t[0].get<int>(), static_cast<std::uint32_t>(dgt));
    }
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (terms[i].first <= terms[i - 1].first) throw InputError("element: exponents must be strictly ascending");
    }
    return KElem(field, std::move(terms));
}

Json freq_to_json(const FreqFn& f) {
    Json values = Json::array();
    for (const auto& v : f.values()) values.push_back(Json::array({v.real(), v.imag()}));
    return Json{{"s", f.grid().s}, {"m", f.grid().m}, {"values", std::move(values)}};
}

FreqFn freq_from_json(const FieldPtr& field, const Json& j) {
    only_keys(j, {"s", "m", "values"}, "function");
    const GridSpec grid{static_cast<int>(need_int(j, "s", "function")), static_cast<int>(need_int(j, "m", "function"))};
    if (grid.digits() < 1) throw InputError("function: grid needs s + m >= 1");
    const Json& vals = need(j, "values", "function");
    if (!vals.is_array()) throw InputError("function: 'values' must be an array");
    if (vals.size() != grid_dim(*field, grid)) {
        throw InputError("function: " + std::to_string(vals.size()) + " values for a grid of " +
                         std::to_string(grid_dim(*field, grid)) + " cells");
    }
    std::vector<cplx> values;
    values.reserve(vals.size());
    for (const auto& v : vals) values.push_back(number_pair(v, "function"));
    return FreqFn(field, grid, std::move(values));
}

Json setup_to_json(const Setup& s) {
    Json masks = Json::array();
    for (const auto& m : s.masks) masks.push_back(freq_to_json(m));
    return Json{{"field", field_to_json(s.field->params())},
                {"nu", s.lattice.nu},
                {"r", s.lattice.r},
                {"psi0_hat", freq_to_json(s.psi0_hat)},
                {"masks", std::move(masks)}};
}

Setup setup_from_json(const Json& j) {
    only_keys(j, {"field", "nu", "r", "psi0_hat", "masks"}, "setup");
    const FieldPtr field = Field::make(field_from_json(need(j, "field", "setup")));
    const auto nu = need_int(j, "nu", "setup");
    if (nu < 0 || nu > 16) throw InputError("setup: 'nu' out of range");
    const LatticeParams lat = make_lattice(field, static_cast<int>(nu), need_int(j, "r", "setup"));
    const FreqFn psi0 = freq_from_json(field, need(j, "psi0_hat", "setup"));
    const Json& ms = need(j, "masks", "setup");
    if (!ms.is_array()) throw InputError("setup: 'masks' must be an array");
    std::vector<FreqFn> masks;
    for (const auto& m : ms) masks.push_back(freq_from_json(field, m));
    return Setup{field, lat, psi0, std::move(masks)};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write '" + path + "'");
        out << text;
        if (!out) throw InputError("write failed for '" + path + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw InputError("cannot move output into '" + path + "'");
    }
}

}  // namespace umf
