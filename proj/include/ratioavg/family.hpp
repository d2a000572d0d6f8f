#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ratioavg {

/// Compact classical group families handled by the library.
enum class Family { O, SO, USp };

constexpr std::string_view to_string(Family f) {
    switch (f) {
    case Family::O: return "O";
    case Family::SO: return "SO";
    case Family::USp: return "USp";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view text);

/// Ensemble family together with the matrix dimension N.
struct GroupSpec {
    Family family;
    int N;
};

/// Throws DomainError unless N >= 1 and (for USp) N is even.
void validate(const GroupSpec& g);

}  // namespace ratioavg
