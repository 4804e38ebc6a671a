#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stark/pt/state.hpp"

namespace stark::harness {

/// One printed row of the published results, numbers kept as the printed text.
struct ReferenceEntry {
    std::string source;  // table and method, e.g. "Table II LinHo"
    std::string row;     // row identity inside the table
    pt::StateLabel state;
    std::string field;
    std::string re;     // empty when the row has no real part
    std::string gamma;  // empty when the row has no width; "<" marks a bound
    std::string note;
};

namespace source {
inline constexpr std::string_view table1_fs13 = "Table I CRLM[FS13]";
inline constexpr std::string_view table1_crlm_bound = "Table I Present-CRLM-bound";
inline constexpr std::string_view table1_rpm = "Table I RPM";
inline constexpr std::string_view table1_asymptotic = "Table I Asymptotic";
inline constexpr std::string_view pt_string = "E^PT string";
inline constexpr std::string_view rpm_string = "Re E^RPM string";
inline constexpr std::string_view table2_fs13 = "Table II CRLM[FS13]";
inline constexpr std::string_view table2_crlm = "Table II Present CRLM";
inline constexpr std::string_view table2_linho = "Table II LinHo";
inline constexpr std::string_view table2_kolosov = "Table II Kolosov";
}  // namespace source

const std::vector<ReferenceEntry>& reference_catalog();

/// FNV-1a (64 bit) over every field of every entry, in catalog order.
std::uint64_t catalog_checksum();

/// Entry for (source, state); field compared by value ("0.005" == "5e-3").
std::optional<ReferenceEntry> find_reference(std::string_view source, const pt::StateLabel& state,
                                             std::string_view field);

/// All entries for (state, field), in catalog order.
std::vector<ReferenceEntry> references_for(const pt::StateLabel& state, std::string_view field);

}  // namespace stark::harness
