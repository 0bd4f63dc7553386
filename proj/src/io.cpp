#include "pruwalk/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "pruwalk/errors.hpp"

namespace pruwalk::io {

using algebra::Mono;
using algebra::Poly;
using algebra::Series;
using algebra::Sym;

json poly_to_json(const Poly& p) {
    json j = json::object();
    for (const auto& [k, c] : p.terms()) j[Mono{k}.to_string()] = rat_to_string(c);
    return j;
}

namespace {

Mono parse_mono(const std::string& s) {
    if (s == "1") return Mono::one();
    Mono m = Mono::one();
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find('*', pos);
        std::string part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? s.size() : next + 1;
        if (part.empty()) throw Error("parse_mono: empty factor in '" + s + "'");
        std::string name;
        unsigned exp = 1;
        std::size_t caret = part.find('^');
        if (caret == std::string::npos) {
            name = part;
        } else {
            name = part.substr(0, caret);
            exp = static_cast<unsigned>(std::stoul(part.substr(caret + 1)));
        }
        bool found = false;
        for (int i = 0; i < algebra::kNumSyms; ++i) {
            if (name == algebra::kSymNames[i]) {
                m = m.times(Mono::sym(static_cast<Sym>(i), exp));
                found = true;
                break;
            }
        }
        if (!found) throw Error("parse_mono: unknown symbol '" + name + "'");
    }
    return m;
}

}  // namespace

Poly poly_from_json(const json& j) {
    Poly p;
    for (auto it = j.begin(); it != j.end(); ++it)
        p += Poly::term(parse_mono(it.key()), rat_from_string(it.value().get<std::string>()));
    return p;
}

json series_to_json(const Series& s) {
    json coeffs = json::array();
    for (int k = 0; k <= s.order(); ++k) coeffs.push_back(poly_to_json(s.coeff(k)));
    return json{{"order", s.order()}, {"coeffs", coeffs}};
}

Series series_from_json(const json& j) {
    int order = j.at("order").get<int>();
    Series s(order);
    const json& coeffs = j.at("coeffs");
    if (static_cast<int>(coeffs.size()) != order + 1)
        throw Error("series_from_json: coefficient count does not match the order");
    for (int k = 0; k <= order; ++k) s.set_coeff(k, poly_from_json(coeffs[static_cast<std::size_t>(k)]));
    return s;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

json make_meta(const std::string& command, const json& flags) {
    return json{{"command", command}, {"flags", flags}, {"version", "0.1.0"}};
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << content;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        out += header[i];
        out += (i + 1 == header.size()) ? "\n" : ",";
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            out += (i + 1 == row.size()) ? "\n" : ",";
        }
    }
    return out;
}

}  // namespace pruwalk::io
