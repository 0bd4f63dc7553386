#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "pruwalk/series.hpp"

namespace pruwalk::io {

using nlohmann::json;

// Polynomials serialize as {"monomial": "coefficient"} with exact decimal
// (or p/q) strings, e.g. {"1": "3", "a^2*u": "-5/2"}; exactness survives a
// round trip.
json poly_to_json(const algebra::Poly& p);
algebra::Poly poly_from_json(const json& j);

json series_to_json(const algebra::Series& s);
algebra::Series series_from_json(const json& j);

// 17 significant digits: float round-trip safe.
std::string format_double(double x);

json make_meta(const std::string& command, const json& flags);

void write_output(const std::string& path, const std::string& content);  // "" or "-" = stdout

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

}  // namespace pruwalk::io
