#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stark/crlm/solve.hpp"
#include "stark/pt/state.hpp"

namespace stark::harness {

enum class Method { rpm, pt, crlm, asymptotic, compare, converge };
enum class Format { csv, json, md };

std::string_view method_name(Method m);
std::string_view format_name(Format f);

/// Invalid job description; the CLI exits with status 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// "1 0 0", "|2 -1 0>" or "2,-1,0": a ket |n q m>.
pt::StateLabel parse_state(std::string_view text);

struct JobConfig {
    Method method = Method::compare;
    std::string field = "0";  // decimal text, never a binary float
    pt::StateLabel state;
    /// Working digits; each engine has its own default when unset.
    std::optional<int> digits;

    // rpm, converge
    int dim_from = 2;
    int dim_to = 30;
    int shift = 0;

    // pt: number of terms summed; optimal truncation when unset
    std::optional<int> orders;

    // crlm
    int mesh_size = 30;
    std::vector<double> thetas = crlm::kDefaultThetaScan;
    int quad_order = 0;
    std::optional<int> integral_digits;

    std::string out;
    Format format = Format::md;
    bool check = false;

    /// Throws ConfigError naming the offending setting.
    void validate() const;
};

}  // namespace stark::harness
