#include "biphoton/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace biphoton {

namespace {

constexpr double kPi = std::numbers::pi;

void check_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw InputError(std::string(what) + ": non-finite input");
}

} // namespace

void validate_distribution(const JointDistribution& jd) {
    const double probs[4] = {jd.p11, jd.p22, jd.p12, jd.p21};
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= -kAlgebraTol && p <= 1.0 + kAlgebraTol)) {
            throw ModelError("JointDistribution: probability outside [0, 1]");
        }
        sum += p;
    }
    if (!(std::abs(sum - 1.0) <= kAlgebraTol)) {
        throw ModelError("JointDistribution: probabilities do not sum to 1");
    }
}

JointDistribution joint_probs_analytic(double delta, double w) {
    check_finite(delta, "joint_probs_analytic");
    check_finite(w, "joint_probs_analytic");
    const double c = std::cos(delta + w);
    const double agree = 0.25 * (1.0 + c);
    const double differ = 0.25 * (1.0 - c);
    return {agree, agree, differ, differ};
}

JointDistribution joint_probs_from_state(const RtoConfig& cfg) {
    const auto p = born_probabilities(build_rto_state(cfg));
    // Born basis order (11, 12, 21, 22), station B fastest.
    return {p[0], p[3], p[1], p[2]};
}

CorrelationReport correlation_degree(const JointDistribution& jd, double delta) {
    validate_distribution(jd);
    const double p_corr = jd.p11 + jd.p22;
    const double p_anti = jd.p12 + jd.p21;
    return {delta, p_corr, p_anti, p_corr - p_anti};
}

std::vector<CorrelationReport> correlation_sweep(std::span<const double> grid, double w) {
    if (grid.empty()) throw InputError("correlation_sweep: empty grid");
    std::vector<CorrelationReport> reports;
    reports.reserve(grid.size());
    for (double delta : grid) {
        reports.push_back(correlation_degree(joint_probs_analytic(delta, w), delta));
    }
    return reports;
}

namespace {

struct PrintedClaim {
    double phase;
    double p1_percent;   // printed "% '1'" of the single-photon column
    double corr_percent; // printed "% corr" of the entangled column
};

// The published table's percentages at its five phases. The quarter-phase
// rows print 71/29, which matches cos(pi/4) rather than (1 + cos(pi/4))/2.
constexpr PrintedClaim kPrintedTable[] = {
    {0.0, 100.0, 100.0},
    {kPi / 4.0, 71.0, 71.0},
    {kPi / 2.0, 50.0, 50.0},
    {3.0 * kPi / 4.0, 29.0, 29.0},
    {kPi, 0.0, 0.0},
};

// Printed values are whole percents; anything beyond rounding distance is a
// genuine disagreement.
constexpr double kClaimTolPercent = 0.5;

const PrintedClaim* printed_claim_for(double phase) {
    for (const auto& claim : kPrintedTable) {
        if (std::abs(phase - claim.phase) <= 1e-9) return &claim;
    }
    return nullptr;
}

} // namespace

std::vector<Table1Row> table1_report() {
    const double grid[] = {0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0, kPi};
    return table1_report(grid);
}

std::vector<Table1Row> table1_report(std::span<const double> grid) {
    if (grid.empty()) throw InputError("table1_report: empty grid");
    const double w_cal = calibrate_offset();
    const double comp = offset_compensation(w_cal);

    std::vector<Table1Row> rows;
    rows.reserve(grid.size());
    for (double phase : grid) {
        const auto mzi = mzi_probabilities({.phi1 = phase, .phi2 = 0.0});
        const RtoConfig cfg{.phi_a = 0.0, .phi_b = phase, .w = comp, .placement = {}};
        const auto jd = joint_probs_from_state(cfg);
        const auto rep = correlation_degree(jd, phase);

        Table1Row row{
            .phase = phase,
            .simple_p1 = mzi.p_1d,
            .local_p1_a = jd.p11 + jd.p12,
            .local_p1_b = jd.p11 + jd.p21,
            .p_corr = rep.p_corr,
            .p_anti = rep.p_anti,
            .paper_claim = "",
            .flagged = false,
        };
        if (const PrintedClaim* claim = printed_claim_for(phase)) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%.0f/%.0f", claim->corr_percent,
                          100.0 - claim->corr_percent);
            row.paper_claim = buf;
            const bool p1_off = std::abs(100.0 * row.simple_p1 - claim->p1_percent) > kClaimTolPercent;
            const bool corr_off =
                std::abs(100.0 * row.p_corr - claim->corr_percent) > kClaimTolPercent;
            row.flagged = p1_off || corr_off;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double chsh_value(const ChshSetting& s, const std::function<double(double)>& correlation_fn) {
    check_finite(s.a, "chsh_value");
    check_finite(s.a_prime, "chsh_value");
    check_finite(s.b, "chsh_value");
    check_finite(s.b_prime, "chsh_value");
    const auto e = [&](double x, double y) { return correlation_fn(y - x); };
    return std::abs(e(s.a, s.b) - e(s.a, s.b_prime) + e(s.a_prime, s.b) + e(s.a_prime, s.b_prime));
}

double chsh_value(const ChshSetting& s) {
    return chsh_value(s, [](double delta) { return std::cos(delta); });
}

NoSignalingDeviation no_signaling_scan(std::span<const std::pair<double, double>> phase_pairs) {
    if (phase_pairs.empty()) throw InputError("no_signaling_scan: empty grid");
    NoSignalingDeviation dev{0.0, 0.0};
    for (const auto& [phi_a, phi_b] : phase_pairs) {
        const auto jd = joint_probs_from_state({.phi_a = phi_a, .phi_b = phi_b});
        const double p1a = jd.p11 + jd.p12;
        const double p1b = jd.p11 + jd.p21;
        dev.max_dev_1a = std::max(dev.max_dev_1a, std::abs(p1a - 0.5));
        dev.max_dev_1b = std::max(dev.max_dev_1b, std::abs(p1b - 0.5));
    }
    return dev;
}

} // namespace biphoton
