#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace lfr {

enum class SchemeVariant {
    baseline_unicast,
    baseline_full,
    corner_grouped,
    rho1,
    rho2,
    rho3,
};

inline constexpr std::array<SchemeVariant, 6> all_variants = {
    SchemeVariant::baseline_unicast, SchemeVariant::baseline_full,
    SchemeVariant::corner_grouped,   SchemeVariant::rho1,
    SchemeVariant::rho2,             SchemeVariant::rho3,
};

constexpr std::string_view variant_name(SchemeVariant v) {
    switch (v) {
        case SchemeVariant::baseline_unicast: return "baseline-unicast";
        case SchemeVariant::baseline_full: return "baseline-full";
        case SchemeVariant::corner_grouped: return "corner";
        case SchemeVariant::rho1: return "rho1";
        case SchemeVariant::rho2: return "rho2";
        case SchemeVariant::rho3: return "rho3";
    }
    return "?";
}

constexpr std::optional<SchemeVariant> parse_variant(std::string_view name) {
    for (SchemeVariant v : all_variants)
        if (variant_name(v) == name) return v;
    return std::nullopt;
}

}  // namespace lfr
