#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ratioavg {

/// Linear form  sum_j (a_j * i psi_j + b_j * phi_j)  on the torus coordinates.
///
/// Coefficients are stored doubled (psi2[j] = 2 a_j, phi2[j] = 2 b_j) so that
/// half-integer forms such as the highest weight for odd N are exact. Roots
/// always have even stored entries.
///
/// The same type houses weights gamma = sum_j (i m_j psi_j - n_j phi_j), in
/// which case m_j = psi2[j] / 2 and n_j = -phi2[j] / 2.
struct LinForm {
    std::vector<int> psi2;
    std::vector<int> phi2;

    static LinForm zero(int rank);
    /// coeff * i psi_j (coefficient given undoubled)
    static LinForm psi(int rank, int j, int coeff = 1);
    /// coeff * phi_j (coefficient given undoubled)
    static LinForm phi(int rank, int j, int coeff = 1);
    /// Weight with doubled coordinates: m_j = twice_m[j]/2, n_j = twice_n[j]/2.
    static LinForm weight(std::vector<int> twice_m, std::vector<int> twice_n);

    int rank() const { return static_cast<int>(psi2.size()); }
    bool is_zero() const;
    /// All stored entries even, i.e. integer coefficients.
    bool is_integral() const;

    int twice_m(int j) const { return psi2[static_cast<std::size_t>(j)]; }
    int twice_n(int j) const { return -phi2[static_cast<std::size_t>(j)]; }

    /// Sum of the undoubled phi coefficients times two.
    int phi2_total() const;

    /// Value of the form at complex torus coordinates (psi, phi).
    std::complex<double> evaluate(std::span<const std::complex<double>> psi,
                                  std::span<const std::complex<double>> phi) const;

    LinForm& operator+=(const LinForm& other);
    LinForm& operator-=(const LinForm& other);
    LinForm operator-() const;
    friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
    friend LinForm operator-(LinForm a, const LinForm& b) { return a -= b; }
    friend LinForm operator*(int k, LinForm a);

    friend bool operator==(const LinForm&, const LinForm&) = default;
    friend std::strong_ordering operator<=>(const LinForm&, const LinForm&) = default;

    /// Human-readable rendering, e.g. "i psi1 + phi1" or "1/2 i psi1 - 1/2 phi1".
    std::string to_string() const;
};

struct LinFormHash {
    std::size_t operator()(const LinForm& f) const noexcept;
};

}  // namespace ratioavg
