#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

struct ScratchDir {
    fs::path path = fs::temp_directory_path() / ("expander_cli_test_" + std::to_string(::getpid()));
    ScratchDir() { fs::create_directories(path); }
    ~ScratchDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path scratch()
{
    static const ScratchDir dir;
    return dir.path;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const fs::path& p, const std::string& s)
{
    std::ofstream out(p, std::ios::binary);
    out << s;
}

Run run(const std::string& args)
{
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = std::string("'") + EXPANDER_CLI + "' " + args + " 2>'" + err.string() + "'";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, got);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

long long descartes(const std::string& csv)
{
    std::vector<long long> a;
    std::istringstream in(csv);
    for (std::string t; std::getline(in, t, ',');)
        a.push_back(std::stoll(t));
    REQUIRE(a.size() == 4);
    long long sq = 0, sum = 0;
    for (auto x : a) {
        sq += x * x;
        sum += x;
    }
    return 2 * sq - sum * sum;
}

} // namespace

TEST_CASE("spectral report for K4 read from a file")
{
    const auto dump = run("graph --preset k4 --dump");
    REQUIRE(dump.code == 0);
    const fs::path k4 = scratch() / "k4.graph";
    spit(k4, dump.out);
    const auto r = run("spectral --in '" + k4.string() + "'");
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["lambda_abs"].get<double>() == doctest::Approx(1.0));
    CHECK(j["ramanujan"] == true);
    CHECK(j["n"] == 4);
    CHECK(j["manifest"]["subcommand"] == "spectral");
    CHECK(j["manifest"]["inputs"].contains(k4.string()));
    CHECK(j["manifest"]["inputs"][k4.string()].get<std::string>().rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("Apollonian orbit dump stays on the Descartes cone")
{
    const auto r = run("orbit --preset apollonian --root 18,23,27,146 --depth 3");
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    CHECK(ls.size() == 1 + 4 + 12 + 36);
    CHECK(ls.front() == "18,23,27,146");
    for (const auto& l : ls)
        CHECK(descartes(l) == 0);
}

TEST_CASE("malformed graph file")
{
    const fs::path bad = scratch() / "bad.graph";
    spit(bad, "4 3\n0 0 1 0\n0 1 x 0\n");
    const auto r = run("graph --in '" + bad.string() + "'");
    CHECK(r.code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("exit codes")
{
    const auto unknown = run("graph --bogus");
    CHECK(unknown.code == 64);
    CHECK(unknown.err.find("Usage") != std::string::npos);
    CHECK(run("frobnicate").code == 64);
    CHECK(run("").code == 64);
    // 26 primes below sqrt(103^2) exceed the subset enumeration cap.
    CHECK(run("sieve --legendre 10609").code == 2);
    CHECK(run("sieve --legendre 3").code == 1);
    CHECK(run("graph --in /no/such/file").code == 1);
    CHECK(run("--version").out == "1.0.0\n");
}

TEST_CASE("graph dump round trip is byte exact")
{
    const auto first = run("graph --random --n 30 --k 4 --seed 17 --dump");
    REQUIRE(first.code == 0);
    const fs::path g = scratch() / "random.graph";
    spit(g, first.out);
    const auto second = run("graph --in '" + g.string() + "' --dump");
    REQUIRE(second.code == 0);
    CHECK(second.out == first.out);
    CHECK(json::parse(first.err)["seed"] == 17);

    const auto code = run("code --preset petersen --write '" + (scratch() / "pet.code").string() + "'");
    REQUIRE(code.code == 0);
    const std::string text = slurp(scratch() / "pet.code");
    const auto rows = lines(text);
    REQUIRE(rows.size() == 11);
    CHECK(rows.front() == "10 15");
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::count(rows[i].begin(), rows[i].end(), '1') == 3);
}

TEST_CASE("outputs do not depend on the thread count")
{
    const std::vector<std::string> cmds = {
        "graph --random --n 16 --k 3 --exact",
        "spectral --preset petersen",
        "code --preset k4 --inner '" FIXTURE_DIR "/even3.code'",
        "prodrep --group cyclic:5 --trials 3000",
        "orbit --preset apollonian --depth 4",
        "sieve --preset pythagorean --depth 3 --poly 'x1*x2/2'",
        "walk --preset sl2 --steps 20 --trials 1000 --mod 31",
        "walk --preset sl3 --patterns --trials 100 --steps 15",
    };
    for (const auto& c : cmds) {
        CAPTURE(c);
        const auto one = run("--threads 1 " + c);
        const auto eight = run("--threads 8 " + c);
        REQUIRE(one.code == 0);
        CHECK(one.out == eight.out);
        CHECK(one.err == eight.err);
    }
}

TEST_CASE("every report embeds its manifest")
{
    for (const std::string c : {"graph --preset c6", "spectral --preset k4", "code --preset petersen",
                                "zigzag --levels 1 --trials 20 --threshold 1", "sieve --mobius 30",
                                "cayley --preset sl2-onetwothree --t 1 --p 5"}) {
        CAPTURE(c);
        const auto r = run(c);
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        REQUIRE(j.contains("manifest"));
        CHECK(j["manifest"]["version"] == "1.0.0");
        CHECK(j["manifest"]["subcommand"] == c.substr(0, c.find(' ')));
    }
    for (const std::string c : {"prodrep --group cyclic:5 --trials 100", "walk --preset sl2 --steps 5 --trials 10",
                                "spectral --preset petersen --mixing 0 --tmax 5"}) {
        CAPTURE(c);
        const auto r = run(c);
        REQUIRE(r.code == 0);
        const auto first = lines(r.out).front();
        REQUIRE(first.rfind("# manifest: ", 0) == 0);
        CHECK(json::parse(first.substr(12))["subcommand"] == c.substr(0, c.find(' ')));
    }
    const auto orbit = run("orbit --preset pythagorean --depth 1");
    REQUIRE(orbit.code == 0);
    CHECK(json::parse(lines(orbit.err).front())["subcommand"] == "orbit");
    const auto walk = run("walk --preset sl2 --steps 5 --trials 10");
    CHECK(json::parse(lines(walk.err).back())["manifest"]["seed"] == 1);
}
