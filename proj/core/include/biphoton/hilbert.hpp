#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biphoton/errors.hpp"

namespace biphoton {

using Complex = std::complex<double>;

// Tolerance for algebraic identities (norms, unitarity, hermiticity, trace).
inline constexpr double kAlgebraTol = 1e-12;
// Looser tolerance for eigenvalue positivity, which accumulates rounding.
inline constexpr double kEigenTol = 1e-10;

/// Pure state over a tensor product of labeled subsystems.
///
/// Amplitudes are stored densely in basis order with the last subsystem
/// varying fastest: for dims (dA, dB) the joint index of (a, b) is a*dB + b.
/// Every constructed StateVector is unit-norm within kAlgebraTol and carries
/// only finite amplitudes.
class StateVector {
public:
    StateVector(std::vector<std::string> labels, std::vector<std::size_t> dims,
                std::vector<Complex> amplitudes);

    /// Scales the given amplitudes to unit norm before constructing.
    static StateVector normalized(std::vector<std::string> labels,
                                  std::vector<std::size_t> dims,
                                  std::vector<Complex> amplitudes);

    /// Basis state |index> of a single subsystem.
    static StateVector basis_state(std::string label, std::size_t dim, std::size_t index);

    /// Single two-mode subsystem with amplitudes (amp1, amp2) on paths 1 and 2.
    static StateVector two_path_state(std::string label, Complex amp1, Complex amp2);

    /// (|1>_a |1>_b + |2>_a |2>_b) / sqrt(2) over two two-mode subsystems.
    static StateVector entangled_pair_state(std::string label_a = "A",
                                            std::string label_b = "B");

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }

    std::size_t dim() const { return amplitudes_.size(); }
    std::size_t subsystem_count() const { return labels_.size(); }

    /// Position of `label` in the subsystem list; throws LabelError if absent.
    std::size_t subsystem_index(std::string_view label) const;
    std::size_t subsystem_dim(std::string_view label) const;

    double norm_squared() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::size_t> dims_;
    std::vector<Complex> amplitudes_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix; all three invariants
/// are checked at construction (positivity via Jacobi diagonalization).
class DensityMatrix {
public:
    DensityMatrix(std::size_t dim, std::vector<Complex> entries);

    std::size_t dim() const { return dim_; }
    Complex at(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    std::span<const Complex> entries() const { return entries_; }

private:
    std::size_t dim_;
    std::vector<Complex> entries_; // row-major
};

/// Square matrix with U†U = I within kAlgebraTol, checked at construction.
class UnitaryOperator {
public:
    UnitaryOperator(std::size_t dim, std::vector<Complex> entries);

    static UnitaryOperator identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    Complex at(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    std::span<const Complex> entries() const { return entries_; }

private:
    std::size_t dim_;
    std::vector<Complex> entries_; // row-major
};

/// Matrix product a*b (apply b first, then a).
UnitaryOperator compose(const UnitaryOperator& a, const UnitaryOperator& b);

/// Tensor product; the subsystem lists are concatenated, so v's labels must
/// be disjoint from w's (LabelError otherwise).
StateVector tensor(const StateVector& v, const StateVector& w);

/// Applies u to the listed target subsystems (in the given order) and the
/// identity everywhere else. u.dim must equal the product of the target
/// dims (ShapeError).
StateVector apply_unitary(const UnitaryOperator& u, const StateVector& v,
                          std::span<const std::string> targets);
StateVector apply_unitary(const UnitaryOperator& u, const StateVector& v,
                          std::string_view target);

/// |v><v| as a DensityMatrix over the full joint space.
DensityMatrix outer_product(const StateVector& v);

/// Reduced density matrix of the subsystem named `keep`, tracing out the rest.
DensityMatrix partial_trace(const StateVector& v, std::string_view keep);

/// Partial trace of an explicit density matrix whose subsystem structure is
/// given by `dims`; keeps the subsystem at position `keep_index`.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::size_t keep_index);

/// Tr(rho^2). 1 for pure states, 1/dim for the maximally mixed state.
double purity(const DensityMatrix& rho);

/// Sum of |rho_ij| over i != j. Zero exactly for diagonal (incoherent) states.
double l1_coherence(const DensityMatrix& rho);

/// |amplitude_k|^2 per joint basis outcome. Throws NormalizationError if the
/// squared norm deviates from 1 by more than kAlgebraTol.
std::vector<double> born_probabilities(const StateVector& v);

/// Eigenvalues of a Hermitian matrix (ascending), via cyclic Jacobi rotations.
/// Intended for the small dimensions used here (<= 8).
std::vector<double> hermitian_eigenvalues(std::span<const Complex> entries, std::size_t dim);

} // namespace biphoton
