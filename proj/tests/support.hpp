#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "biphoton/hilbert.hpp"
#include "biphoton/sampler.hpp"

namespace testutil {

using biphoton::Complex;

// Deterministic generator for property-style tests; reuses the artifact's
// SplitMix64 so generated cases are identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.next_double(); }
    Complex amplitude() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
    std::uint64_t integer(std::uint64_t bound) { return rng_.next_u64() % bound; }

private:
    biphoton::SplitMix64 rng_;
};

inline biphoton::StateVector random_state(Rng& rng, std::vector<std::string> labels,
                                          std::vector<std::size_t> dims) {
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    std::vector<Complex> amps(total);
    for (auto& a : amps) a = rng.amplitude();
    return biphoton::StateVector::normalized(std::move(labels), std::move(dims), std::move(amps));
}

// Random unitary via Gram-Schmidt on random complex columns; two
// orthogonalization passes keep the residual below the constructor tolerance.
inline biphoton::UnitaryOperator random_unitary(Rng& rng, std::size_t dim) {
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (auto& col : cols) {
        for (auto& z : col) z = rng.amplitude();
    }
    for (std::size_t c = 0; c < dim; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < c; ++p) {
                Complex overlap{0.0, 0.0};
                for (std::size_t r = 0; r < dim; ++r) {
                    overlap += std::conj(cols[p][r]) * cols[c][r];
                }
                for (std::size_t r = 0; r < dim; ++r) cols[c][r] -= overlap * cols[p][r];
            }
        }
        double n2 = 0.0;
        for (const auto& z : cols[c]) n2 += std::norm(z);
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& z : cols[c]) z *= inv;
    }
    std::vector<Complex> entries(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) entries[r * dim + c] = cols[c][r];
    }
    return biphoton::UnitaryOperator(dim, std::move(entries));
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
inline bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

// ---- CLI binary helpers -------------------------------------------------

inline std::string cli_path() {
    if (const char* env = std::getenv("BIPHOTON_CLI")) return env;
#ifdef BIPHOTON_CLI_PATH
    return BIPHOTON_CLI_PATH;
#else
    return "biphoton";
#endif
}

struct RunResult {
    int exit_code;
    std::string out;
};

// Runs the CLI through the shell, capturing stdout only; stderr is dropped so
// diagnostics never pollute payload checks. `env_prefix` may carry VAR=value
// assignments.
inline RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix;
    if (!cmd.empty()) cmd += ' ';
    cmd += cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(out)};
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Csv {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        return static_cast<std::size_t>(-1);
    }

    double value(std::size_t row, const std::string& name) const {
        return std::stod(rows.at(row).at(column(name)));
    }
};

inline Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            csv.comments.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!header_seen) {
            csv.header = std::move(cells);
            header_seen = true;
        } else {
            csv.rows.push_back(std::move(cells));
        }
    }
    return csv;
}

} // namespace testutil
