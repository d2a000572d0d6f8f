#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ratioavg/exact.hpp"
#include "ratioavg/family.hpp"
#include "ratioavg/linform.hpp"
#include "ratioavg/rootsys.hpp"
#include "ratioavg/weights.hpp"

namespace ratioavg {

/// Truncation of a weight series.
///
/// For coefficient tables (compute_B) the window is the set of constrained
/// weights with sum_j (n_j - N/2) <= depth. For J expansions it bounds the
/// total phi-degree of the subtracted root combination c by depth (N unused).
struct SeriesWindow {
    int N = 0;
    int n = 0;
    int depth = 0;
};

/// Sparse exact series sum_e coeff_e * exp(e), e a lattice linear form.
/// Terms keep insertion order (the sweep order for compute_B).
class WeightSeries {
public:
    struct Term {
        LinForm exponent;
        BigInt coeff;
    };

    WeightSeries() = default;
    explicit WeightSeries(SeriesWindow window) : window_(window) {}

    const SeriesWindow& window() const { return window_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient at e, zero when e is not stored.
    BigInt coefficient(const LinForm& e) const;
    bool contains(const LinForm& e) const { return index_.count(e) != 0; }
    std::size_t nonzero_count() const;

    /// Appends a term; throws InvalidArgument if the exponent is already present.
    void push_back(LinForm exponent, BigInt coeff);

private:
    SeriesWindow window_;
    std::vector<Term> terms_;
    std::unordered_map<LinForm, std::size_t, LinFormHash> index_;
};

enum class JFactors {
    /// Every positive root: the radial Jacobian J itself.
    full,
    /// Only the lambda-positive roots, i.e. the expansion of 1/Z.
    lambda_positive,
};

/// Expansion of e^{-delta} J = prod_alpha (1 - e^{-alpha}) prod_beta sum_m e^{-m beta}
/// over the chosen root subset, keeping monomials e^{-c} whose total phi-degree
/// is at most depth. Exponents are stored as the linear form -c; A_0 = 1.
WeightSeries expand_J(const RootSystemData& data, int depth, JFactors factors = JFactors::full);

/// Coefficients B_gamma of the character on the total-degree window, by the
/// descending recursion B_gamma = -sum_{c != 0} A_c B_{gamma + c} started from
/// B_lambda = 1. One representative per W-orbit is derived; the other orbit
/// members are copied and re-derived as a consistency check. For O_N the orbit
/// of lambda - i N psi_n is pinned to zero.
///
/// Terms are stored for every window point (zeros included) in sweep order.
/// Throws InconsistentRecursion if a copied coefficient disagrees with its own
/// recursion, or if a vanishing Casimir spectrum shows up at an unexpected weight.
WeightSeries compute_B(Family family, int N, int n, int depth);

struct SeriesEvaluation {
    std::complex<double> value;
    double tail_estimate = 0.0;
};

/// Sums B_gamma e^{gamma(psi, phi)} over the window. The tail estimate is
/// (boundary sites) x (max boundary |B|) x (largest boundary |e^gamma|) plus a
/// rounding allowance. Throws TailTooLarge if a tolerance is given and exceeded.
SeriesEvaluation evaluate_series(const WeightSeries& B, std::span<const std::complex<double>> psi,
                                 std::span<const std::complex<double>> phi,
                                 std::optional<double> tolerance = std::nullopt);

struct CasimirViolation {
    Weight weight;
    BigInt residual;
};

struct CasimirReport {
    Family family = Family::O;
    int N = 0, n = 0, depth = 0, lmax = 0;
    std::size_t checked = 0;
    std::vector<Weight> skipped;  ///< E(l, delta + gamma) = 0 for every l <= lmax
    std::vector<CasimirViolation> violations;

    bool ok() const { return violations.empty(); }
};

/// Checks sum_c A_c B_{gamma + c} = 0 exactly at every window weight whose
/// shifted Casimir spectrum E(l, delta + gamma), l <= lmax, is not identically zero.
CasimirReport verify_casimir(Family family, int N, int n, int depth, int lmax);

/// Linear functional that is positive on every positive root; compute_B sweeps
/// in decreasing order of it.
long sweep_height(const LinForm& f);

/// Element of the W-orbit of gamma that comes first in sweep order.
Weight orbit_representative(Family family, const Weight& gamma);

/// Full W-orbit (signed permutations of the psi side, even-signed for O,
/// times permutations of the phi side). Exponential in n; for tests and checks.
std::vector<Weight> weyl_orbit(Family family, const Weight& gamma);

/// Rows m_1..m_n, n_1..n_n, numerator, denominator in term order.
void write_coefficient_csv(std::ostream& out, const WeightSeries& B);

}  // namespace ratioavg
