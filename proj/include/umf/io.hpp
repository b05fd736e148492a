#pragma once

#include <string>

#include "json.hpp"

#include "umf/extension.hpp"

namespace umf {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become InputError with line:column.
Json parse_json(const std::string& text, const std::string& source = "<input>");

Json field_to_json(const FieldParams& params);
FieldParams field_from_json(const Json& j);

/// {"digits": [[exponent, digit], ...]}, exponents ascending, no zero digits.
Json kelem_to_json(const KElem& x);
KElem kelem_from_json(const FieldPtr& field, const Json& j);

/// {"s": .., "m": .., "values": [[re, im], ...]} in idx order;
/// plain numbers are accepted as real values on input.
Json freq_to_json(const FreqFn& f);
FreqFn freq_from_json(const FieldPtr& field, const Json& j);

Json setup_to_json(const Setup& s);
Setup setup_from_json(const Json& j);

std::string read_text_file(const std::string& path);
/// Writes through a temporary file and rename, so readers never see a
/// partial file.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace umf
