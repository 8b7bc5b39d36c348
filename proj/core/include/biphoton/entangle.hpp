#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "biphoton/hilbert.hpp"

namespace biphoton {

// Which-path detector parameterized by the inner product c = <d1|d2> of the
// two pointer states reached for system paths 1 and 2. c = 0 is the ideal
// detector, |c| = 1 records nothing.
struct DetectorModel {
    Complex overlap{0.0, 0.0};
};

struct CoherenceLedger {
    double global_purity;
    double local_purity_a;
    double local_purity_b;
    double local_l1_a;
    double local_l1_b;
    std::optional<double> correlation_visibility;
};

/// Entangles a two-path system state a|1> + b|2> with a detector:
/// a|1>|d1> + b|2>|d2>, where |d1> = (1, 0) and |d2> = (c, sqrt(1 - |c|^2))
/// in an orthonormal pointer basis. Throws ModelError if |c| > 1, ShapeError
/// if the system is not two-dimensional.
StateVector premeasure(const StateVector& system, const DetectorModel& det,
                       std::string detector_label = "B");

/// 2 |rho_01| of the kept subsystem's reduced density matrix: the maximum
/// fringe contrast that subsystem can show on its own. Kept subsystem must be
/// two-dimensional.
double reduced_visibility(const StateVector& joint, std::string_view subsystem);

struct FringePoint {
    double phi;
    double p_port1;
};

/// Interference scan of the premeasured system: for each grid phase, shift
/// the system's path 1 by phi, mix the system at a beam splitter (detector
/// untouched) and record the total probability of system port 1. The
/// preparation is expected to be an equal superposition.
std::vector<FringePoint> fringe_scan(const StateVector& system, const DetectorModel& det,
                                     std::span<const double> phase_grid);

// Least-squares cosine component of values over phases, values ~ mean +
// amplitude * cos(phase + phase_offset), extracted by projecting onto cos and
// sin. The projections are exact on a uniform full-period grid (n >= 3).
struct CosineFit {
    double mean;
    double amplitude;
    double phase_offset;
};

CosineFit cosine_fit(std::span<const double> phases, std::span<const double> values);

/// (max - min) / (max + min) fringe contrast of a scan, from the fitted
/// cosine amplitude of p_port1 (visibility = 2 * amplitude).
double fringe_visibility(std::span<const FringePoint> scan);

/// Degree-of-correlation sweep of a bipartite 2x2 state: for each delta on a
/// uniform [0, 2*pi) grid, shift subsystem B's path 2 by delta, mix both
/// subsystems at beam splitters and record P(agree) - P(disagree). Returns
/// (delta, degree) pairs suitable for coherence_ledger.
std::vector<std::pair<double, double>> correlation_phase_sweep(const StateVector& joint,
                                                               std::size_t n_points = 24);

/// Coherence bookkeeping for a bipartite pure state: global purity, both
/// local purities and l1-coherences, and, when a (phase, degree) sweep is
/// supplied, the fitted cosine amplitude of the correlation law.
CoherenceLedger coherence_ledger(const StateVector& joint,
                                 std::span<const std::pair<double, double>> correlation_sweep = {});

} // namespace biphoton
