#include "expander/codes.hpp"
#include "expander/graph.hpp"
#include "expander/orbit.hpp"
#include "expander/polynomial.hpp"
#include "expander/report.hpp"
#include "expander/spectral.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace expander;

namespace {

std::vector<std::string> keys(const nlohmann::ordered_json& j)
{
    std::vector<std::string> out;
    for (const auto& item : j.items())
        out.push_back(item.key());
    return out;
}

} // namespace

TEST_CASE("fnv1a64 test vectors")
{
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);

    const std::string path = "report_digest_probe.txt";
    {
        std::ofstream out(path, std::ios::binary);
        out << "foobar";
    }
    CHECK(file_digest(path) == "fnv1a64:85944171f73967e8");
    std::remove(path.c_str());
    CHECK_THROWS_AS(file_digest("no/such/file"), PreconditionError);
}

TEST_CASE("manifest serialization")
{
    RunManifest m;
    m.subcommand = "spectral";
    m.flags = {{"--preset", "k4"}, {"--exact", "true"}};
    m.seed = 42;
    m.inputs = {{"a.graph", "fnv1a64:0000000000000001"}};
    const auto j = to_json(m);
    CHECK(keys(j) == std::vector<std::string>{"subcommand", "flags", "seed", "inputs", "version"});
    CHECK(j["seed"] == 42);
    CHECK(j["version"] == "1.0.0");
    CHECK(j["flags"]["--preset"] == "k4");
    const std::string line = csv_manifest_line(m);
    CHECK(line.rfind("# manifest: ", 0) == 0);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(nlohmann::ordered_json::parse(line.substr(12)) == j);
    CHECK(to_json(m).dump() == j.dump());
}

TEST_CASE("spectrum report fields")
{
    const auto j = spectrum_json(spectrum(complete_graph(4)));
    CHECK(keys(j) == std::vector<std::string>{"n", "k", "lambda0", "lambda1", "lambda_min", "lambda_abs",
                                              "ramanujan", "margin"});
    CHECK(j["n"] == 4);
    CHECK(j["lambda_abs"].get<double>() == doctest::Approx(1.0));
    CHECK(j["ramanujan"] == true);
}

TEST_CASE("certificate report fields")
{
    const Graph k4 = complete_graph(4);
    const auto j = certificate_json(rate_distance_certificate(k4, even_weight_code(3), default_labeling(k4)));
    CHECK(keys(j) == std::vector<std::string>{"n", "dim", "rate", "rate_bound", "mindist", "delta",
                                              "delta_bound", "lambda_normalized"});
    CHECK(j["n"] == 6);
    CHECK(j["dim"] == 3);
    CHECK(j["mindist"] == 3);
}

TEST_CASE("sieve report fields")
{
    const auto rep = saturation_report(pythagorean_orbit(2), Polynomial::parse("x1*x2/2"));
    const auto j = sieve_json(rep);
    CHECK(keys(j) == std::vector<std::string>{"points", "zeros", "unfactored", "histogram", "r_star", "witnesses"});
    CHECK(j["points"] == 13);
    CHECK(j["r_star"] == 2);
    std::uint64_t total = 0;
    for (const auto& item : j["histogram"].items())
        total += item.value().get<std::uint64_t>();
    CHECK(total + j["zeros"].get<std::uint64_t>() + j["unfactored"].get<std::uint64_t>() == 13);
    REQUIRE_FALSE(j["witnesses"].empty());
    CHECK(j["witnesses"][0]["value"] == "6");
    CHECK(j["witnesses"][0]["point"] == "3,4,5");
}
