#include "stark/harness/job.hpp"

#include <charconv>
#include <cmath>

#include "stark/harness/decimal.hpp"

namespace stark::harness {

std::string_view method_name(Method m) {
    switch (m) {
        case Method::rpm: return "rpm";
        case Method::pt: return "pt";
        case Method::crlm: return "crlm";
        case Method::asymptotic: return "asymptotic";
        case Method::compare: return "compare";
        case Method::converge: return "converge";
    }
    return "?";
}

std::string_view format_name(Format f) {
    switch (f) {
        case Format::csv: return "csv";
        case Format::json: return "json";
        case Format::md: return "md";
    }
    return "?";
}

pt::StateLabel parse_state(std::string_view text) {
    std::string s;
    for (char c : text) s += (c == '|' || c == '>' || c == ',' || c == '\t') ? ' ' : c;
    int v[3];
    int count = 0;
    const char* p = s.data();
    const char* end = s.data() + s.size();
    while (p < end) {
        while (p < end && *p == ' ') ++p;
        if (p == end) break;
        if (count == 3) throw ConfigError("state '" + std::string(text) + "' has more than three numbers");
        if (*p == '+') ++p;
        const auto [next, ec] = std::from_chars(p, end, v[count]);
        if (ec != std::errc() || (next < end && *next != ' '))
            throw ConfigError("state '" + std::string(text) + "' is not of the form \"n q m\"");
        ++count;
        p = next;
    }
    if (count != 3) throw ConfigError("state '" + std::string(text) + "' needs three numbers n q m");
    try {
        return pt::StateLabel::from_ket(v[0], v[1], v[2]);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

void JobConfig::validate() const {
    Decimal f;
    try {
        f = parse_decimal(field);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("--F: ") + e.what());
    }
    if (f.bound) throw ConfigError("--F must be a number");
    if (f.negative) throw ConfigError("--F must be non-negative, got " + field);
    if (digits && (*digits < 20 || *digits > 2000)) throw ConfigError("--digits must lie in [20, 2000]");
    if (dim_from < 1 || dim_to < dim_from) throw ConfigError("--D-from/--D-to must satisfy 1 <= from <= to");
    if (dim_to > 200) throw ConfigError("--D-to is limited to 200");
    if (shift < 0 || shift > 1) throw ConfigError("--shift must be 0 or 1");
    if (orders && (*orders < 1 || *orders > 200)) throw ConfigError("--orders must lie in [1, 200]");
    if (mesh_size < 2 || mesh_size > 60) throw ConfigError("--N must lie in [2, 60]");
    if (thetas.size() < 2) throw ConfigError("--theta needs at least two angles");
    for (double t : thetas)
        if (!(t >= 0 && t < std::atan(1.0))) throw ConfigError("--theta angles must lie in [0, pi/4)");
    if (quad_order < 0) throw ConfigError("--quad-order must be non-negative");
    if (integral_digits && *integral_digits < 1) throw ConfigError("--integral-digits must be positive");
    if (method == Method::asymptotic && !(state == pt::StateLabel(0, 0, 0)))
        throw ConfigError("the asymptotic width formula covers only the ground state |1 0 0>");
}

}  // namespace stark::harness
