#include "biphoton/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "biphoton/grid.hpp"
#include "biphoton/optics.hpp"

namespace biphoton {

StateVector premeasure(const StateVector& system, const DetectorModel& det,
                       std::string detector_label) {
    if (system.subsystem_count() != 1 || system.dims()[0] != 2) {
        throw ShapeError("premeasure: system must be a single two-path subsystem");
    }
    const Complex c = det.overlap;
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw ModelError("premeasure: non-finite pointer overlap");
    }
    const double mag = std::abs(c);
    if (mag > 1.0 + kAlgebraTol) {
        throw ModelError("premeasure: pointer overlap magnitude exceeds 1");
    }
    // Gram construction of the pointer states: |d1> = (1, 0),
    // |d2> = (c, sqrt(1 - |c|^2)), so <d1|d2> = c exactly.
    const double rest = std::sqrt(std::max(0.0, 1.0 - mag * mag));
    const Complex alpha = system.amplitudes()[0];
    const Complex beta = system.amplitudes()[1];
    return StateVector({system.labels()[0], std::move(detector_label)}, {2, 2},
                       {alpha, Complex{0.0, 0.0}, beta * c, beta * rest});
}

double reduced_visibility(const StateVector& joint, std::string_view subsystem) {
    if (joint.subsystem_dim(subsystem) != 2) {
        throw ShapeError("reduced_visibility: kept subsystem must be two-dimensional");
    }
    const DensityMatrix rho = partial_trace(joint, subsystem);
    return 2.0 * std::abs(rho.at(0, 1));
}

std::vector<FringePoint> fringe_scan(const StateVector& system, const DetectorModel& det,
                                     std::span<const double> phase_grid) {
    const StateVector joint = premeasure(system, det);
    const std::string& sys = joint.labels()[0];
    const auto bs = beam_splitter_unitary();

    std::vector<FringePoint> scan;
    scan.reserve(phase_grid.size());
    for (double phi : phase_grid) {
        StateVector v = apply_unitary(phase_shifter_unitary(phi, ShifterArm::path1), joint, sys);
        v = apply_unitary(bs, v, sys);
        const auto p = born_probabilities(v);
        // System is the slower subsystem: indices 0, 1 are system port 1.
        scan.push_back({phi, p[0] + p[1]});
    }
    return scan;
}

CosineFit cosine_fit(std::span<const double> phases, std::span<const double> values) {
    if (phases.empty() || phases.size() != values.size()) {
        throw InputError("cosine_fit: empty or mismatched series");
    }
    const double n = static_cast<double>(phases.size());
    double mean = 0.0, pc = 0.0, ps = 0.0;
    for (std::size_t k = 0; k < phases.size(); ++k) {
        mean += values[k];
        pc += values[k] * std::cos(phases[k]);
        ps += values[k] * std::sin(phases[k]);
    }
    mean /= n;
    pc *= 2.0 / n;
    ps *= 2.0 / n;
    // values ~ mean + A cos(phi + psi): projections give (A cos psi, -A sin psi).
    return {mean, std::hypot(pc, ps), std::atan2(-ps, pc)};
}

double fringe_visibility(std::span<const FringePoint> scan) {
    std::vector<double> phases(scan.size()), values(scan.size());
    for (std::size_t k = 0; k < scan.size(); ++k) {
        phases[k] = scan[k].phi;
        values[k] = scan[k].p_port1;
    }
    return 2.0 * cosine_fit(phases, values).amplitude;
}

std::vector<std::pair<double, double>> correlation_phase_sweep(const StateVector& joint,
                                                               std::size_t n_points) {
    if (joint.subsystem_count() != 2 || joint.dims()[0] != 2 || joint.dims()[1] != 2) {
        throw ShapeError("correlation_phase_sweep: state must be bipartite over two-path modes");
    }
    const std::string& la = joint.labels()[0];
    const std::string& lb = joint.labels()[1];
    const auto bs = beam_splitter_unitary();
    const auto grid = periodic_grid(n_points, 2.0 * std::numbers::pi);

    std::vector<std::pair<double, double>> sweep;
    sweep.reserve(grid.size());
    for (double delta : grid) {
        StateVector v = apply_unitary(phase_shifter_unitary(delta, ShifterArm::path2), joint, lb);
        v = apply_unitary(bs, v, la);
        v = apply_unitary(bs, v, lb);
        const auto p = born_probabilities(v);
        sweep.emplace_back(delta, p[0] + p[3] - p[1] - p[2]);
    }
    return sweep;
}

CoherenceLedger coherence_ledger(const StateVector& joint,
                                 std::span<const std::pair<double, double>> correlation_sweep) {
    if (joint.subsystem_count() != 2) {
        throw ShapeError("coherence_ledger: state must be bipartite");
    }
    const std::string& la = joint.labels()[0];
    const std::string& lb = joint.labels()[1];
    const DensityMatrix rho_a = partial_trace(joint, la);
    const DensityMatrix rho_b = partial_trace(joint, lb);

    CoherenceLedger ledger{
        .global_purity = purity(outer_product(joint)),
        .local_purity_a = purity(rho_a),
        .local_purity_b = purity(rho_b),
        .local_l1_a = l1_coherence(rho_a),
        .local_l1_b = l1_coherence(rho_b),
        .correlation_visibility = std::nullopt,
    };
    if (!correlation_sweep.empty()) {
        std::vector<double> phases(correlation_sweep.size()), degrees(correlation_sweep.size());
        for (std::size_t k = 0; k < correlation_sweep.size(); ++k) {
            phases[k] = correlation_sweep[k].first;
            degrees[k] = correlation_sweep[k].second;
        }
        ledger.correlation_visibility = cosine_fit(phases, degrees).amplitude;
    }
    return ledger;
}

} // namespace biphoton
