#ifndef SK_VARID_HPP
#define SK_VARID_HPP

#include <compare>
#include <string>

namespace sk {

// Variable x_{group,slot}. Geometry variables use group >= 1; group 0 is
// reserved for free parameters (e.g. symbolic a, b in identity checks).
// Ordering is lexicographic on (group, slot), which fixes the canonical
// term order everywhere.
struct VarId {
    int group = 0;
    int slot = 0;
    auto operator<=>(const VarId&) const = default;
};

inline std::string to_string(VarId v) {
    return "x_" + std::to_string(v.group) + "," + std::to_string(v.slot);
}

}  // namespace sk

#endif
