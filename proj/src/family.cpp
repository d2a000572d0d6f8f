#include "ratioavg/family.hpp"

#include <string>

#include "ratioavg/error.hpp"

namespace ratioavg {

std::optional<Family> parse_family(std::string_view text) {
    if (text == "O" || text == "o") return Family::O;
    if (text == "SO" || text == "so") return Family::SO;
    if (text == "USp" || text == "USP" || text == "usp" || text == "Sp" || text == "sp")
        return Family::USp;
    return std::nullopt;
}

void validate(const GroupSpec& g) {
    if (g.N < 1)
        fail(ErrorCode::DomainError, "matrix dimension N must be >= 1, got " + std::to_string(g.N));
    if (g.family == Family::USp && g.N % 2 != 0)
        fail(ErrorCode::DomainError, "USp_N requires even N, got " + std::to_string(g.N));
}

}  // namespace ratioavg
