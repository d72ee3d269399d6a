#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace codiag {

inline constexpr const char* kVersion = "codiag 0.1.0";

/// Parsed run configuration. Every run is reproducible from (config, seed);
/// outputs are byte-identical across repeats and worker counts.
struct RunConfig {
    std::string subcommand;
    std::string symbol_path;
    std::string psi_path;
    std::string spec_path;      // slow-Blaschke spec (build-blaschke output)
    std::string barriers_path;  // calibrate output
    std::string out_path = "out.json";
    std::string domain = "disk";

    std::size_t samples = 1 << 14;
    std::size_t paths = 100000;
    int depth = 24;
    int nmax = 8;
    int grid = 64;
    int n = 1;
    int n_lo = 1, n_hi = 6;
    double p = 2.0;
    double eps = 1e-6;          // boundary sampling offset
    double target_eps = 0.0;    // calibrate: explicit epsilon (0 = scheme)
    std::string eps_scheme = "exp";
    std::complex<double> a{0.5, 3.0};
    std::vector<double> h_list;
    std::uint64_t seed = 7;
    int threads = 0;            // 0 = hardware
};

/// Comma list ("0.1,0.05") or "geometric:start:factor:count".
std::vector<double> parse_h_grid(const std::string& text);
std::complex<double> parse_complex(const std::string& text);

/// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 statistical
/// floor violated. Writes the artifacts plus a manifest JSON (config hash,
/// seed, version, wall time, artifact content hashes) next to the output.
int run(const RunConfig& config);

} // namespace codiag
