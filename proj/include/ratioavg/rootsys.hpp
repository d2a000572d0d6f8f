#pragma once

#include <string>
#include <vector>

#include "ratioavg/family.hpp"
#include "ratioavg/linform.hpp"

namespace ratioavg {

/// Root data of the Howe dual superalgebra paired with O_N (family O) or
/// USp_N (family USp), in rank n (number of (psi, phi) pairs).
///
/// Lists are in a fixed deterministic order; see build_root_data.
struct RootSystemData {
    Family family = Family::O;
    int n = 0;

    /// lambda-positive even roots (the degree-raising sector).
    std::vector<LinForm> delta_lambda_even;
    /// lambda-positive odd roots.
    std::vector<LinForm> delta_lambda_odd;
    /// Full positive systems, i.e. the lambda-positive roots together with the
    /// positive roots of the degree-preserving gl(U) sector. These are the
    /// factors of the radial Jacobian J.
    std::vector<LinForm> positive_even;
    std::vector<LinForm> positive_odd;

    std::vector<LinForm> simple_roots;
    /// False for family O with n = 1, where the last simple root
    /// i psi_{n-1} + i psi_n does not exist and is omitted.
    bool simple_roots_complete = true;

    /// Half supersum of the full positive system.
    LinForm delta_half_supersum;
    /// Half supersum of the lambda-positive roots.
    LinForm delta_prime;
};

/// Sign reversals i psi_j -> -i psi_j; one representative per coset of W/W_lambda.
struct SignConfig {
    std::vector<bool> flips;

    int size() const { return static_cast<int>(flips.size()); }
    int flip_count() const;
    bool even() const { return flip_count() % 2 == 0; }
    /// "+-" style rendering, '+' for an unflipped slot.
    std::string to_string() const;

    friend bool operator==(const SignConfig&, const SignConfig&) = default;
};

/// Throws InvalidArgument for family SO or n < 1.
RootSystemData build_root_data(Family family, int n);

/// All 2^n configurations for USp, the 2^(n-1) even ones for O, in
/// lexicographic order on the flip vector (unflipped < flipped).
std::vector<SignConfig> enumerate_cosets(Family family, int n);

LinForm apply_sign_config(const SignConfig& w, const LinForm& f);

/// lambda_1 = (1/2) sum_j (i psi_j - phi_j).
LinForm lambda_one(int n);

}  // namespace ratioavg
