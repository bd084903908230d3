#pragma once

#include "expander/codes.hpp"
#include "expander/constructions.hpp"
#include "expander/orbit.hpp"
#include "expander/spectral.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace expander {

inline constexpr std::string_view kVersion = "1.0.0";

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);
/// "fnv1a64:<16 hex digits>" of a file's contents.
std::string file_digest(const std::string& path);

/// Everything needed to reproduce a report. The worker count is not part of
/// it: outputs do not depend on it.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> flags;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> inputs; ///< path -> digest
    std::string version{kVersion};
};

nlohmann::ordered_json to_json(const RunManifest& m);
/// "# manifest: {...}" header line for CSV output (no trailing newline).
std::string csv_manifest_line(const RunManifest& m);

nlohmann::ordered_json spectrum_json(const Spectrum& s);
nlohmann::ordered_json certificate_json(const Certificate& c);
nlohmann::ordered_json family_json(const ZigZagFamily& f);
nlohmann::ordered_json sieve_json(const SieveReport& r);

} // namespace expander
