#include "biphoton/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace biphoton {

namespace {

void check_finite(std::span<const Complex> values, const char* what) {
    for (const Complex& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InputError(std::string(what) + ": non-finite entry");
        }
    }
}

std::size_t product(std::span<const std::size_t> dims) {
    std::size_t p = 1;
    for (std::size_t d : dims) p *= d;
    return p;
}

// Strides for basis order with the last subsystem varying fastest.
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) {
        s[i - 1] = s[i] * dims[i];
    }
    return s;
}

} // namespace

StateVector::StateVector(std::vector<std::string> labels, std::vector<std::size_t> dims,
                         std::vector<Complex> amplitudes)
    : labels_(std::move(labels)), dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    if (labels_.size() != dims_.size()) {
        throw ShapeError("StateVector: label/dim count mismatch");
    }
    if (labels_.empty()) {
        throw ShapeError("StateVector: at least one subsystem required");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (dims_[i] == 0) throw ShapeError("StateVector: zero-dimensional subsystem");
        for (std::size_t j = i + 1; j < labels_.size(); ++j) {
            if (labels_[i] == labels_[j]) {
                throw LabelError("StateVector: duplicate subsystem label '" + labels_[i] + "'");
            }
        }
    }
    if (amplitudes_.size() != product(dims_)) {
        throw ShapeError("StateVector: amplitude count does not match product of dims");
    }
    check_finite(amplitudes_, "StateVector");
    if (std::abs(norm_squared() - 1.0) > kAlgebraTol) {
        throw NormalizationError("StateVector: squared norm deviates from 1 beyond 1e-12");
    }
}

StateVector StateVector::normalized(std::vector<std::string> labels,
                                    std::vector<std::size_t> dims,
                                    std::vector<Complex> amplitudes) {
    check_finite(amplitudes, "StateVector::normalized");
    double n2 = 0.0;
    for (const Complex& z : amplitudes) n2 += std::norm(z);
    if (n2 <= 0.0) throw NormalizationError("StateVector::normalized: zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (Complex& z : amplitudes) z *= inv;
    return StateVector(std::move(labels), std::move(dims), std::move(amplitudes));
}

StateVector StateVector::basis_state(std::string label, std::size_t dim, std::size_t index) {
    if (index >= dim) throw ShapeError("basis_state: index out of range");
    std::vector<Complex> amps(dim, Complex{0.0, 0.0});
    amps[index] = Complex{1.0, 0.0};
    return StateVector({std::move(label)}, {dim}, std::move(amps));
}

StateVector StateVector::two_path_state(std::string label, Complex amp1, Complex amp2) {
    return StateVector({std::move(label)}, {2}, {amp1, amp2});
}

StateVector StateVector::entangled_pair_state(std::string label_a, std::string label_b) {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector({std::move(label_a), std::move(label_b)}, {2, 2},
                       {Complex{r, 0.0}, {}, {}, Complex{r, 0.0}});
}

std::size_t StateVector::subsystem_index(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return i;
    }
    throw LabelError("unknown subsystem label '" + std::string(label) + "'");
}

std::size_t StateVector::subsystem_dim(std::string_view label) const {
    return dims_[subsystem_index(label)];
}

double StateVector::norm_squared() const {
    double n2 = 0.0;
    for (const Complex& z : amplitudes_) n2 += std::norm(z);
    return n2;
}

DensityMatrix::DensityMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0) throw ShapeError("DensityMatrix: zero dimension");
    if (entries_.size() != dim_ * dim_) {
        throw ShapeError("DensityMatrix: entry count does not match dim^2");
    }
    check_finite(entries_, "DensityMatrix");
    double herm_dev = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            herm_dev = std::max(herm_dev,
                                std::abs(entries_[r * dim_ + c] - std::conj(entries_[c * dim_ + r])));
        }
    }
    if (!(herm_dev <= kAlgebraTol)) {
        throw ModelError("DensityMatrix: not Hermitian within 1e-12");
    }
    Complex tr{0.0, 0.0};
    for (std::size_t r = 0; r < dim_; ++r) tr += entries_[r * dim_ + r];
    if (!(std::abs(tr - Complex{1.0, 0.0}) <= kAlgebraTol)) {
        throw ModelError("DensityMatrix: trace deviates from 1 beyond 1e-12");
    }
    const auto eigs = hermitian_eigenvalues(entries_, dim_);
    if (!(eigs.front() >= -kEigenTol)) {
        throw ModelError("DensityMatrix: negative eigenvalue beyond 1e-10");
    }
}

UnitaryOperator::UnitaryOperator(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0) throw ShapeError("UnitaryOperator: zero dimension");
    if (entries_.size() != dim_ * dim_) {
        throw ShapeError("UnitaryOperator: entry count does not match dim^2");
    }
    check_finite(entries_, "UnitaryOperator");
    // max_ij |(U†U - I)_ij| <= 1e-12
    double dev = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < dim_; ++k) {
                acc += std::conj(entries_[k * dim_ + r]) * entries_[k * dim_ + c];
            }
            if (r == c) acc -= Complex{1.0, 0.0};
            dev = std::max(dev, std::abs(acc));
        }
    }
    if (!(dev <= kAlgebraTol)) {
        throw ModelError("UnitaryOperator: U†U deviates from identity beyond 1e-12");
    }
}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
    std::vector<Complex> e(dim * dim, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < dim; ++r) e[r * dim + r] = Complex{1.0, 0.0};
    return UnitaryOperator(dim, std::move(e));
}

UnitaryOperator compose(const UnitaryOperator& a, const UnitaryOperator& b) {
    if (a.dim() != b.dim()) throw ShapeError("compose: dimension mismatch");
    const std::size_t n = a.dim();
    std::vector<Complex> e(n * n, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex ark = a.at(r, k);
            for (std::size_t c = 0; c < n; ++c) {
                e[r * n + c] += ark * b.at(k, c);
            }
        }
    }
    return UnitaryOperator(n, std::move(e));
}

StateVector tensor(const StateVector& v, const StateVector& w) {
    for (const std::string& lv : v.labels()) {
        for (const std::string& lw : w.labels()) {
            if (lv == lw) throw LabelError("tensor: duplicate subsystem label '" + lv + "'");
        }
    }
    std::vector<std::string> labels(v.labels());
    labels.insert(labels.end(), w.labels().begin(), w.labels().end());
    std::vector<std::size_t> dims(v.dims());
    dims.insert(dims.end(), w.dims().begin(), w.dims().end());

    const auto va = v.amplitudes();
    const auto wa = w.amplitudes();
    std::vector<Complex> amps(va.size() * wa.size());
    for (std::size_t i = 0; i < va.size(); ++i) {
        for (std::size_t j = 0; j < wa.size(); ++j) {
            amps[i * wa.size() + j] = va[i] * wa[j];
        }
    }
    return StateVector(std::move(labels), std::move(dims), std::move(amps));
}

StateVector apply_unitary(const UnitaryOperator& u, const StateVector& v,
                          std::span<const std::string> targets) {
    if (targets.empty()) throw ShapeError("apply_unitary: no target subsystems");
    std::vector<std::size_t> tpos(targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) {
        tpos[k] = v.subsystem_index(targets[k]);
        for (std::size_t m = 0; m < k; ++m) {
            if (tpos[m] == tpos[k]) {
                throw LabelError("apply_unitary: repeated target '" + targets[k] + "'");
            }
        }
    }
    const auto& dims = v.dims();
    std::size_t tdim = 1;
    for (std::size_t p : tpos) tdim *= dims[p];
    if (u.dim() != tdim) {
        throw ShapeError("apply_unitary: operator dim does not match target dims");
    }

    const auto strides = strides_of(dims);
    // Linearization of the target tuple in the order the targets were given.
    std::vector<std::size_t> tstride(tpos.size(), 1);
    for (std::size_t k = tpos.size(); k-- > 1;) {
        tstride[k - 1] = tstride[k] * dims[tpos[k]];
    }

    const auto amps = v.amplitudes();
    std::vector<Complex> out(amps.size(), Complex{0.0, 0.0});
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        // Target components of idx, and idx with those components zeroed.
        std::size_t trow = 0;
        std::size_t base = idx;
        for (std::size_t k = 0; k < tpos.size(); ++k) {
            const std::size_t comp = (idx / strides[tpos[k]]) % dims[tpos[k]];
            trow += comp * tstride[k];
            base -= comp * strides[tpos[k]];
        }
        Complex acc{0.0, 0.0};
        for (std::size_t tcol = 0; tcol < tdim; ++tcol) {
            const Complex m = u.at(trow, tcol);
            if (m == Complex{0.0, 0.0}) continue;
            std::size_t src = base;
            std::size_t rem = tcol;
            for (std::size_t k = 0; k < tpos.size(); ++k) {
                src += (rem / tstride[k]) * strides[tpos[k]];
                rem %= tstride[k];
            }
            acc += m * amps[src];
        }
        out[idx] = acc;
    }
    return StateVector(v.labels(), dims, std::move(out));
}

StateVector apply_unitary(const UnitaryOperator& u, const StateVector& v,
                          std::string_view target) {
    const std::string t(target);
    return apply_unitary(u, v, std::span<const std::string>(&t, 1));
}

DensityMatrix outer_product(const StateVector& v) {
    const auto amps = v.amplitudes();
    const std::size_t n = amps.size();
    std::vector<Complex> e(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            e[r * n + c] = amps[r] * std::conj(amps[c]);
        }
    }
    return DensityMatrix(n, std::move(e));
}

namespace {

// Shared kernel: rho_kept[i][j] = sum over matching rest components of
// a[(i, rest)] * conj(a[(j, rest)]) (state input) or rho[(i,rest),(j,rest)]
// (matrix input).
DensityMatrix trace_out(std::span<const Complex> entries, bool entries_are_matrix,
                        std::span<const std::size_t> dims, std::size_t keep_index) {
    const std::size_t total = product(dims);
    const auto strides = strides_of(dims);
    const std::size_t kd = dims[keep_index];
    const std::size_t kstride = strides[keep_index];

    std::vector<Complex> out(kd * kd, Complex{0.0, 0.0});
    for (std::size_t t = 0; t < total; ++t) {
        const std::size_t i = (t / kstride) % kd;
        const std::size_t rest = t - i * kstride;
        for (std::size_t j = 0; j < kd; ++j) {
            const std::size_t s = rest + j * kstride;
            const Complex term = entries_are_matrix ? entries[t * total + s]
                                                    : entries[t] * std::conj(entries[s]);
            out[i * kd + j] += term;
        }
    }
    return DensityMatrix(kd, std::move(out));
}

} // namespace

DensityMatrix partial_trace(const StateVector& v, std::string_view keep) {
    return trace_out(v.amplitudes(), false, v.dims(), v.subsystem_index(keep));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::size_t keep_index) {
    if (keep_index >= dims.size()) throw LabelError("partial_trace: keep index out of range");
    if (product(dims) != rho.dim()) {
        throw ShapeError("partial_trace: dims do not factor the matrix dimension");
    }
    return trace_out(rho.entries(), true, dims, keep_index);
}

double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = sum_ij rho_ij * rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
    double acc = 0.0;
    for (const Complex& z : rho.entries()) acc += std::norm(z);
    return acc;
}

double l1_coherence(const DensityMatrix& rho) {
    double acc = 0.0;
    const std::size_t n = rho.dim();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (r != c) acc += std::abs(rho.at(r, c));
        }
    }
    return acc;
}

std::vector<double> born_probabilities(const StateVector& v) {
    if (std::abs(v.norm_squared() - 1.0) > kAlgebraTol) {
        throw NormalizationError("born_probabilities: state not normalized");
    }
    const auto amps = v.amplitudes();
    std::vector<double> p(amps.size());
    for (std::size_t k = 0; k < amps.size(); ++k) p[k] = std::norm(amps[k]);
    return p;
}

std::vector<double> hermitian_eigenvalues(std::span<const Complex> entries, std::size_t dim) {
    if (entries.size() != dim * dim) {
        throw ShapeError("hermitian_eigenvalues: entry count does not match dim^2");
    }
    if (dim == 1) return {entries[0].real()};

    std::vector<Complex> a(entries.begin(), entries.end());
    auto at = [&](std::size_t r, std::size_t c) -> Complex& { return a[r * dim + c]; };

    // Classical Jacobi: repeatedly zero the largest off-diagonal entry with a
    // phased 2x2 rotation until all off-diagonals are negligible.
    for (int iter = 0; iter < 1000; ++iter) {
        std::size_t p = 0, q = 1;
        double biggest = 0.0;
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = r + 1; c < dim; ++c) {
                const double m = std::abs(at(r, c));
                if (m > biggest) {
                    biggest = m;
                    p = r;
                    q = c;
                }
            }
        }
        if (biggest < 1e-15) break;

        const Complex apq = at(p, q);
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const Complex phase = apq / std::abs(apq); // e^{i alpha}
        const double tau = (aqq - app) / (2.0 * std::abs(apq));
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Columns p and q of the rotation: col_p = (c, -s e^{-i a}),
        // col_q = (s e^{i a}, c) in the (p, q) plane.
        for (std::size_t r = 0; r < dim; ++r) {
            const Complex arp = at(r, p);
            const Complex arq = at(r, q);
            at(r, p) = c * arp - s * std::conj(phase) * arq;
            at(r, q) = s * phase * arp + c * arq;
        }
        for (std::size_t col = 0; col < dim; ++col) {
            const Complex apc = at(p, col);
            const Complex aqc = at(q, col);
            at(p, col) = c * apc - s * phase * aqc;
            at(q, col) = s * std::conj(phase) * apc + c * aqc;
        }
    }

    std::vector<double> eigs(dim);
    for (std::size_t r = 0; r < dim; ++r) eigs[r] = at(r, r).real();
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

} // namespace biphoton
