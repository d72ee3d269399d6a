#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace codiag {

using Json = nlohmann::ordered_json;

/// %.17g rendering; round-trips doubles exactly and is byte-stable.
std::string format17(double x);

/// JSON dump with every float rendered through format17.
std::string dump_json17(const Json& j, int indent = 2);

/// FNV-1a over bytes; used for config and artifact content hashes.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
    std::string dump() const;
};

} // namespace codiag
