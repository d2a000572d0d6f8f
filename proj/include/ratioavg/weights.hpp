#pragma once

#include <vector>

#include "ratioavg/exact.hpp"
#include "ratioavg/linform.hpp"
#include "ratioavg/rootsys.hpp"

namespace ratioavg {

/// gamma = sum_j (i m_j psi_j - n_j phi_j), doubled storage as in LinForm.
using Weight = LinForm;

/// lambda_N = (N/2) sum_j (i psi_j - phi_j).
Weight highest_weight(int N, int n);

/// 2 m_j and 2 n_j have the parity of N for every j.
bool on_lattice(const Weight& gamma, int N);

/// -N/2 <= m_j <= N/2 <= n_j for every j.
bool satisfies_constraints(const Weight& gamma, int N);

/// E(l, e) = (-1)^l sum_k (m_k^{2l} - n_k^{2l}) for e = sum (i m_k psi_k - n_k phi_k).
/// Exact; throws InvalidArgument for l < 1.
Rational casimir_eigenvalue(int ell, const LinForm& e);

/// True iff E(l, delta + gamma) = 0 for l = 1..n. The first n power sums of
/// the squares fix the multiset of n squares, so this covers every l.
bool vanishing_test(const Weight& gamma, const RootSystemData& data, int N);

/// lambda_N - i N psi_j (zero-based j).
Weight exceptional_weight(int N, int n, int j);

/// Constrained lattice points with N/2 <= n_j <= N/2 + depth for each j.
std::vector<Weight> enumerate_box(int N, int n, int depth);

/// Constrained lattice points with sum_j (n_j - N/2) <= depth. This set is
/// closed under subtracting any non-negative combination of positive roots
/// (staying inside the constraints), which keeps the truncated recursion exact.
std::vector<Weight> enumerate_total_degree(int N, int n, int depth);

}  // namespace ratioavg
