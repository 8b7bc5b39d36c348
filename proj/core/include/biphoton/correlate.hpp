#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "biphoton/optics.hpp"

namespace biphoton {

// Joint detection probabilities; first index is the port at station A,
// second the port at station B.
struct JointDistribution {
    double p11;
    double p22;
    double p12;
    double p21;
};

/// Throws ModelError unless all four probabilities are in [0, 1] and sum to 1
/// within kAlgebraTol.
void validate_distribution(const JointDistribution& jd);

struct CorrelationReport {
    double delta;
    double p_corr;
    double p_anti;
    double degree;
};

// Two phase settings per station for a CHSH run.
struct ChshSetting {
    double a = 0.0;
    double a_prime = 1.5707963267948966;  // pi/2
    double b = 0.7853981633974483;        // pi/4
    double b_prime = 2.356194490192345;   // 3*pi/4
};

struct NoSignalingDeviation {
    double max_dev_1a;
    double max_dev_1b;
    double max() const { return max_dev_1a > max_dev_1b ? max_dev_1a : max_dev_1b; }
};

/// Closed-form joint distribution: p11 = p22 = (1 + cos(delta + w)) / 4,
/// p12 = p21 = (1 - cos(delta + w)) / 4.
JointDistribution joint_probs_analytic(double delta, double w);

/// Joint distribution of the simulated apparatus (build_rto_state + Born).
JointDistribution joint_probs_from_state(const RtoConfig& cfg);

/// p_corr = p11 + p22, p_anti = p12 + p21, degree = p_corr - p_anti.
/// `delta` is carried through into the report for labeling.
CorrelationReport correlation_degree(const JointDistribution& jd, double delta = 0.0);

/// One analytic report per grid delta; degree traces cos(delta + w).
std::vector<CorrelationReport> correlation_sweep(std::span<const double> grid, double w);

struct Table1Row {
    double phase;
    double simple_p1;    // single-photon interferometer P(1D) at this phase
    double local_p1_a;   // entangled case: marginal P(1) at station A
    double local_p1_b;   //                 marginal P(1) at station B
    double p_corr;
    double p_anti;
    std::string paper_claim; // printed corr/anti percentages, e.g. "71/29"
    bool flagged;            // computed values disagree with the printed claim
};

/// Side-by-side single-photon vs entangled-pair behavior on the given phase
/// grid (default {0, pi/4, pi/2, 3pi/4, pi}). Rows whose computed
/// probabilities disagree with the printed claim carry flagged = true.
std::vector<Table1Row> table1_report();
std::vector<Table1Row> table1_report(std::span<const double> grid);

/// S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')| with E(x,y) =
/// correlation_fn(y - x). The default correlation function is the calibrated
/// cosine law.
double chsh_value(const ChshSetting& s, const std::function<double(double)>& correlation_fn);
double chsh_value(const ChshSetting& s = {});

/// Largest deviation of the single-station marginals P(1A), P(1B) from 1/2
/// over a grid of (phi_a, phi_b) dial pairs, using the simulated apparatus.
NoSignalingDeviation no_signaling_scan(std::span<const std::pair<double, double>> phase_pairs);

} // namespace biphoton
