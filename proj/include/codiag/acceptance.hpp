#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace codiag {

struct Criterion {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the full acceptance suite (also exposed as the `selftest` CLI
/// subcommand). Deterministic for a fixed seed; every tolerance is pinned
/// in code. Returns one entry per criterion, in order.
std::vector<Criterion> run_acceptance(std::uint64_t seed = 7);

} // namespace codiag
