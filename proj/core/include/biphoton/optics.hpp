#pragma once

#include <string>

#include "biphoton/hilbert.hpp"

namespace biphoton {

// Phase picked up on transmission / reflection at a 50/50 beam splitter.
// Unitarity of the resulting matrix requires the two phases to differ by
// pi/2 mod pi; the constructor-equivalent check lives in
// beam_splitter_unitary. Default is the symmetric convention, i on reflection.
struct BsConvention {
    double transmission_phase = 0.0;
    double reflection_phase = 1.5707963267948966; // pi/2
};

enum class ShifterArm { path1, path2 };

// Which arm of each interferometer carries its phase shifter.
struct ShifterPlacement {
    ShifterArm station_a = ShifterArm::path1;
    ShifterArm station_b = ShifterArm::path2;
};

struct MziConfig {
    double phi1 = 0.0;
    double phi2 = 0.0;
};

// Two-photon interferometer settings. phi_a, phi_b are the shifter dials in
// radians; w is an extra fixed phase in station B's shifter arm (the
// configurable part of the apparatus offset).
struct RtoConfig {
    double phi_a = 0.0;
    double phi_b = 0.0;
    double w = 0.0;
    ShifterPlacement placement{};
};

enum class Station { a, b };

// One of the four detectors 1A, 2A, 1B, 2B.
struct PortLabel {
    Station station;
    int port; // 1 or 2
};

std::string to_string(const PortLabel& p);
std::string to_string(const ShifterPlacement& p);

/// 2x2 50/50 beam-splitter unitary for the given convention. The default is
/// (1/sqrt(2)) [[1, i], [i, 1]]. Throws ModelError if the convention's phases
/// do not produce a unitary matrix.
UnitaryOperator beam_splitter_unitary(const BsConvention& conv = {});

/// Diagonal unitary multiplying the chosen path's amplitude by e^{i phi}.
UnitaryOperator phase_shifter_unitary(double phi, ShifterArm path);

struct MziProbabilities {
    double p_1d;
    double p_2d;
};

/// Detection probabilities of the beam splitter -> shifters -> beam splitter
/// chain fed with |1>. Port 1D is the port that is constructive at
/// phi1 - phi2 = 0, so p_1d = (1 + cos(phi1 - phi2)) / 2.
MziProbabilities mzi_probabilities(const MziConfig& cfg);

/// Output state of the two-photon interferometer: the entangled pair source,
/// one phase shifter per station (per cfg.placement, with cfg.w added in B's
/// arm), then a beam splitter at each station. Subsystems are labeled "A", "B".
StateVector build_rto_state(const RtoConfig& cfg, const BsConvention& conv = {});

/// Fixed apparatus offset w of the bare chain (cfg.w = 0), in [0, 2*pi):
/// the simulated degree of correlation equals cos(delta_dial + w), where
/// delta_dial is phi_b - phi_a for opposite-arm placements and phi_b + phi_a
/// when both shifters sit on the same-numbered arm. Derived numerically from
/// two probe configurations; deterministic, so calibrating twice agrees.
double calibrate_offset(const BsConvention& conv = {}, const ShifterPlacement& placement = {});

/// The cfg.w value that cancels a calibrated offset: 2*pi - w, reduced to
/// [0, 2*pi). With it, the reported delta axis has its origin at maximum
/// correlation and degree(delta) = cos(delta).
double offset_compensation(double calibrated_w);

/// Dial-space phase difference the correlation law responds to, including
/// cfg.w: (phi_b + w) -+ phi_a per placement.
double effective_delta(const RtoConfig& cfg);

} // namespace biphoton
