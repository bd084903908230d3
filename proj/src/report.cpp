#include "expander/report.hpp"

#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>

namespace expander {

using nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string file_digest(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw PreconditionError("cannot open " + path);
    const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(data);
    return os.str();
}

ordered_json to_json(const RunManifest& m)
{
    ordered_json j;
    j["subcommand"] = m.subcommand;
    j["flags"] = ordered_json::object();
    for (const auto& [k, v] : m.flags)
        j["flags"][k] = v;
    j["seed"] = m.seed;
    j["inputs"] = ordered_json::object();
    for (const auto& [k, v] : m.inputs)
        j["inputs"][k] = v;
    j["version"] = m.version;
    return j;
}

std::string csv_manifest_line(const RunManifest& m) { return "# manifest: " + to_json(m).dump(); }

ordered_json spectrum_json(const Spectrum& s)
{
    const auto ram = is_ramanujan(s);
    ordered_json j;
    j["n"] = s.n;
    j["k"] = s.k;
    j["lambda0"] = s.lambda0();
    j["lambda1"] = s.eigenvalues.size() > 1 ? s.lambda1() : s.lambda0();
    j["lambda_min"] = s.lambda_min();
    j["lambda_abs"] = lambda_abs(s);
    j["ramanujan"] = ram.ramanujan;
    j["margin"] = ram.margin;
    return j;
}

ordered_json certificate_json(const Certificate& c)
{
    ordered_json j;
    j["n"] = c.n;
    j["dim"] = c.dim;
    j["rate"] = c.rate;
    j["rate_bound"] = c.rate_bound;
    j["mindist"] = c.mindist ? ordered_json(*c.mindist) : ordered_json(nullptr);
    j["delta"] = c.delta ? ordered_json(*c.delta) : ordered_json(nullptr);
    j["delta_bound"] = c.delta_bound;
    j["lambda_normalized"] = c.lambda_normalized;
    return j;
}

ordered_json family_json(const ZigZagFamily& f)
{
    ordered_json levels = ordered_json::array();
    for (const auto& l : f.levels)
        levels.push_back({{"level", l.level},
                          {"n", l.graph.n()},
                          {"k", l.graph.k()},
                          {"lambda_abs_normalized", l.lambda_normalized}});
    ordered_json j;
    j["base_ratio"] = f.base_ratio;
    j["truncated"] = f.truncated;
    j["levels"] = std::move(levels);
    return j;
}

ordered_json sieve_json(const SieveReport& r)
{
    ordered_json j;
    j["points"] = r.points;
    j["zeros"] = r.zeros;
    j["unfactored"] = r.unfactored;
    j["histogram"] = ordered_json::object();
    for (const auto& [nu, count] : r.histogram)
        j["histogram"][std::to_string(nu)] = count;
    j["r_star"] = r.r_star ? ordered_json(*r.r_star) : ordered_json(nullptr);
    ordered_json w = ordered_json::array();
    for (const auto& x : r.witnesses)
        w.push_back({{"point", format_vector(x.point)}, {"value", x.value.str()}, {"nu", x.nu}});
    j["witnesses"] = std::move(w);
    return j;
}

} // namespace expander
