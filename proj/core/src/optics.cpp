#include "biphoton/optics.hpp"

#include <cmath>
#include <numbers>

namespace biphoton {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_finite_phase(double phi, const char* what) {
    if (!std::isfinite(phi)) throw InputError(std::string(what) + ": non-finite phase");
}

double wrap_two_pi(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

// p_corr - p_anti of a four-outcome Born vector in basis order
// (11, 12, 21, 22), station B varying fastest.
double degree_of(const std::vector<double>& born) {
    return born[0] + born[3] - born[1] - born[2];
}

} // namespace

std::string to_string(const PortLabel& p) {
    return std::to_string(p.port) + (p.station == Station::a ? "A" : "B");
}

std::string to_string(const ShifterPlacement& p) {
    std::string s = "a";
    s += (p.station_a == ShifterArm::path1) ? '1' : '2';
    s += 'b';
    s += (p.station_b == ShifterArm::path1) ? '1' : '2';
    return s;
}

UnitaryOperator beam_splitter_unitary(const BsConvention& conv) {
    check_finite_phase(conv.transmission_phase, "beam_splitter_unitary");
    check_finite_phase(conv.reflection_phase, "beam_splitter_unitary");
    const double r = 1.0 / std::sqrt(2.0);
    const Complex t = std::polar(r, conv.transmission_phase);
    const Complex rf = std::polar(r, conv.reflection_phase);
    // Throws ModelError through the unitarity check if the phases are not
    // perpendicular (transmission and reflection must differ by pi/2 mod pi).
    return UnitaryOperator(2, {t, rf, rf, t});
}

UnitaryOperator phase_shifter_unitary(double phi, ShifterArm path) {
    check_finite_phase(phi, "phase_shifter_unitary");
    const Complex e = std::polar(1.0, phi);
    if (path == ShifterArm::path1) {
        return UnitaryOperator(2, {e, {}, {}, Complex{1.0, 0.0}});
    }
    return UnitaryOperator(2, {Complex{1.0, 0.0}, {}, {}, e});
}

namespace {

StateVector mzi_chain(double phi1, double phi2) {
    const auto bs = beam_splitter_unitary();
    StateVector v = StateVector::basis_state("path", 2, 0);
    v = apply_unitary(bs, v, "path");
    v = apply_unitary(phase_shifter_unitary(phi1, ShifterArm::path1), v, "path");
    v = apply_unitary(phase_shifter_unitary(phi2, ShifterArm::path2), v, "path");
    return apply_unitary(bs, v, "path");
}

} // namespace

MziProbabilities mzi_probabilities(const MziConfig& cfg) {
    check_finite_phase(cfg.phi1, "mzi_probabilities");
    check_finite_phase(cfg.phi2, "mzi_probabilities");
    // Port 1D is whichever output port the zero-difference chain feeds.
    const auto ref = born_probabilities(mzi_chain(0.0, 0.0));
    const std::size_t port_1d = ref[0] >= ref[1] ? 0 : 1;
    const auto p = born_probabilities(mzi_chain(cfg.phi1, cfg.phi2));
    return {p[port_1d], p[1 - port_1d]};
}

StateVector build_rto_state(const RtoConfig& cfg, const BsConvention& conv) {
    check_finite_phase(cfg.phi_a, "build_rto_state");
    check_finite_phase(cfg.phi_b, "build_rto_state");
    check_finite_phase(cfg.w, "build_rto_state");
    const auto bs = beam_splitter_unitary(conv);
    StateVector v = StateVector::entangled_pair_state("A", "B");
    v = apply_unitary(phase_shifter_unitary(cfg.phi_a, cfg.placement.station_a), v, "A");
    v = apply_unitary(phase_shifter_unitary(cfg.phi_b + cfg.w, cfg.placement.station_b), v, "B");
    v = apply_unitary(bs, v, "A");
    return apply_unitary(bs, v, "B");
}

double calibrate_offset(const BsConvention& conv, const ShifterPlacement& placement) {
    // degree(delta_dial) = cos(delta_dial + w); probe at delta_dial = 0 and
    // pi/2 (phi_a held at zero, so all placements respond to phi_b alike).
    RtoConfig probe{.phi_a = 0.0, .phi_b = 0.0, .w = 0.0, .placement = placement};
    const double c0 = degree_of(born_probabilities(build_rto_state(probe, conv)));
    probe.phi_b = std::numbers::pi / 2.0;
    const double c1 = degree_of(born_probabilities(build_rto_state(probe, conv)));
    return wrap_two_pi(std::atan2(-c1, c0));
}

double offset_compensation(double calibrated_w) {
    check_finite_phase(calibrated_w, "offset_compensation");
    return wrap_two_pi(-calibrated_w);
}

double effective_delta(const RtoConfig& cfg) {
    const bool same_arm = cfg.placement.station_a == cfg.placement.station_b;
    const double b = cfg.phi_b + cfg.w;
    return same_arm ? b + cfg.phi_a : b - cfg.phi_a;
}

} // namespace biphoton
