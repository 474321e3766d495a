#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"
#include "qhtk/bounds.hpp"
#include "qhtk/errors.hpp"
#include "qhtk/geometry.hpp"
#include "qhtk/json_io.hpp"
#include "qhtk/qmatrix.hpp"
#include "qhtk/rng.hpp"

using namespace qhtk;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

// scratch file that cleans up after itself
struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& stem, const std::string& text) {
        path = fs::temp_directory_path() / (stem + "-" + std::to_string(::getpid()) + ".json");
        std::ofstream f(path, std::ios::binary);
        f << text;
    }
    ~TempFile() { std::error_code ec; fs::remove(path, ec); }
    std::string str() const { return path.string(); }
};

int run(const std::vector<std::string>& args, std::string& out, std::string& err) {
    out.clear();
    err.clear();
    return cli::run_cli(args, out, err);
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("qmatrix json round trip is exact") {
    Rng rng(41);
    QMatrix a(3, 3);
    for (Quaternion& q : a.entries) q = rng.gaussian_quaternion();
    const QMatrix back = qmatrix_from_json(qmatrix_to_json(a));
    REQUIRE(back.rows == 3);
    REQUIRE(back.cols == 3);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(back.entries[i].w == a.entries[i].w);
        CHECK(back.entries[i].x == a.entries[i].x);
        CHECK(back.entries[i].y == a.entries[i].y);
        CHECK(back.entries[i].z == a.entries[i].z);
    }

    CHECK_THROWS_AS(qmatrix_from_json("{"), DomainError);
    CHECK_THROWS_AS(qmatrix_from_json("{\"rows\":2,\"cols\":2,\"entries\":[[1,0,0,0]]}"), DomainError);
    CHECK_THROWS_AS(qmatrix_from_json("[1,2,3]"), DomainError);
}

TEST_CASE("point json accepts both encodings") {
    const std::vector<Quaternion> o = origin_point(2);
    const std::vector<Quaternion> arr = point_from_json(point_to_json(o), 2);
    CHECK(projectively_equal(arr, o, 1e-12));

    // the same point as a horospherical triple: xi = 0, v = 0, u = 2
    const std::vector<Quaternion> horo =
        point_from_json("{\"xi\":[[0,0,0,0]],\"v\":[0,0,0],\"u\":2}", 2);
    CHECK(projectively_equal(horo, o, 1e-12));

    CHECK_THROWS_AS(point_from_json("{\"v\":[0,0,0],\"u\":2}", 2), DomainError);
}

TEST_CASE("constants command") {
    std::string out, err;
    CHECK(run({"constants"}, out, err) == 0);
    CHECK(out.find("tau,omega,lambda_n,margin_bound,margin_verdict") == 0);
    CHECK(out.find("0.38545849852962405") != std::string::npos);
    CHECK(out.find("true") != std::string::npos);

    CHECK(run({"constants", "--format", "json"}, out, err) == 0);
    const json j = json::parse(out);
    CHECK(j.size() == 5);
    CHECK(j.at("tau").get<double>() == doctest::Approx(0.2971565).epsilon(1e-6));
    CHECK(j.at("omega").get<double>() == doctest::Approx(0.38545849852962405).epsilon(1e-12));
    CHECK(j.at("margin_verdict").get<bool>());
    CHECK(j.at("margin_bound").get<double>() < j.at("omega").get<double>());

    CHECK(run({"constants", "--n", "1"}, out, err) == 2);
    CHECK_FALSE(err.empty());
}

TEST_CASE("verify runs clean and is deterministic") {
    std::string out1, out2, err;
    CHECK(run({"verify", "--samples", "25", "--seed", "7"}, out1, err) == 0);
    CHECK(out1.find("suite,inequality,checks,violations,worst_slack") == 0);
    CHECK(run({"verify", "--samples", "25", "--seed", "7"}, out2, err) == 0);
    CHECK(out1 == out2);

    // every suite shows up in the combined report
    for (const char* name : {"commutator", "zassenhaus", "dirichlet", "rotation", "resume",
                             "distance", "volume"})
        CHECK(out1.find(std::string("\n") + name + ",") != std::string::npos);

    std::string out, e2;
    CHECK(run({"verify", "--suite", "dirichlet", "--samples", "10", "--format", "json"}, out, e2) == 0);
    const json j = json::parse(out);
    CHECK(j.at("violations").get<int>() == 0);
    CHECK(j.at("rows").is_array());

    CHECK(run({"verify", "--suite", "nonsense"}, out, e2) == 2);
}

TEST_CASE("verify reports violations through the exit code") {
    // an impossible tolerance turns fp rounding into counted violations
    std::string out, err;
    CHECK(run({"verify", "--suite", "distance", "--samples", "10", "--tol", "distance=1e-18",
               "--format", "json"},
              out, err) == 1);
    CHECK(json::parse(out).at("violations").get<long long>() >= 1);
}

TEST_CASE("certify accepts a dilation matrix") {
    const TempFile file("qhtk-dil", qmatrix_to_json(dilation(2, std::exp(0.01)).matrix));
    std::string out, err;
    CHECK(run({"certify", file.str()}, out, err) == 0);
    CHECK(out.find(bound_report_csv_header()) == 0);
    CHECK(out.find(",true") != std::string::npos);

    CHECK(run({"certify", file.str(), "--format", "json"}, out, err) == 0);
    const json j = json::parse(out);
    CHECK(j.at("q").get<int>() == 1);
    CHECK(j.at("product").get<double>() == doctest::Approx(0.010151172942588094).epsilon(1e-9));
    CHECK(j.at("product").get<double>() < j.at("omega").get<double>());
    CHECK(j.at("verdict").get<bool>());
}

TEST_CASE("certify classifies the degenerate and invalid inputs") {
    const TempFile ident("qhtk-id", qmatrix_to_json(QMatrix::identity(3)));
    std::string out, err;
    CHECK(run({"certify", ident.str()}, out, err) == 0);
    CHECK(out == "outcome\nfixes_origin\n");
    CHECK(run({"certify", ident.str(), "--format", "json"}, out, err) == 0);
    CHECK(json::parse(out).at("outcome").get<std::string>() == "fixes_origin");

    Rng rng(43);
    QMatrix g(3, 3);
    for (Quaternion& q : g.entries) q = rng.gaussian_quaternion();
    const TempFile gl("qhtk-gl", qmatrix_to_json(g));
    CHECK(run({"certify", gl.str()}, out, err) == 3);
    CHECK(err.find("defect") != std::string::npos);

    CHECK(run({"certify", "/nonexistent/qhtk-missing.json"}, out, err) == 2);

    const TempFile bad("qhtk-bad", "not json");
    CHECK(run({"certify", bad.str()}, out, err) == 2);
}

TEST_CASE("volume command tables") {
    std::string out, err;
    CHECK(run({"volume", "--n", "3"}, out, err) == 0);
    CHECK(out.find("n,R,volume") == 0);
    CHECK(out.find("n,lambda_n,radius,volume_recomputed,volume_printed") != std::string::npos);

    CHECK(run({"volume", "--n", "3", "--radius", "1", "--radius", "0", "--format", "json"}, out,
              err) == 0);
    const json j = json::parse(out);
    REQUIRE(j.at("balls").size() == 6);
    for (const auto& b : j.at("balls")) {
        const double r = b.at("R").get<double>();
        const double v = b.at("volume").get<double>();
        CHECK(v == doctest::Approx(r == 0.0 ? 0.0 : ball_volume(b.at("n").get<int>(), r).volume));
    }
    REQUIRE(j.at("manifold_bounds").size() == 2);

    CHECK(run({"volume", "--n", "0"}, out, err) == 2);
    CHECK(run({"volume", "--radius", "-1"}, out, err) == 2);
}

TEST_CASE("distance command") {
    std::string out, err;
    const std::string o = "{\"xi\":[[0,0,0,0]],\"v\":[0,0,0],\"u\":2}";
    const std::string lifted = "{\"xi\":[[0,0,0,0]],\"v\":[0,0,0],\"u\":" +
                               format_double(2.0 * std::exp(2.0)) + "}";
    CHECK(run({"distance", o, lifted}, out, err) == 0);
    REQUIRE(out.find("distance\n") == 0);
    CHECK(std::stod(out.substr(9)) == doctest::Approx(2.0).epsilon(1e-12));

    CHECK(run({"distance", o, o, "--format", "json"}, out, err) == 0);
    CHECK(json::parse(out).at("distance").get<double>() == doctest::Approx(0.0).epsilon(1e-7));

    // a null vector is on the boundary, not inside
    const std::string inf_pt = point_to_json(infinity_point(2));
    CHECK(run({"distance", o, inf_pt}, out, err) == 3);

    // 3-coordinate point against a 4-coordinate point
    const std::string p2 = point_to_json(origin_point(2));
    const std::string p3 = point_to_json(origin_point(3));
    CHECK(run({"distance", p2, p3}, out, err) == 2);

    // ball-model distance from the center to (1/2, 0): 2 acosh(2/sqrt(3)) = ln 3
    const std::string c = "[[0,0,0,0],[0,0,0,0],[1,0,0,0]]";
    const std::string z = "[[0.5,0,0,0],[0,0,0,0],[1,0,0,0]]";
    CHECK(run({"distance", c, z, "--model", "ball"}, out, err) == 0);
    CHECK(std::stod(out.substr(9)) == doctest::Approx(std::log(3.0)).epsilon(1e-9));

    CHECK(run({"distance", o, z, "--model", "ball"}, out, err) == 2);
}

TEST_CASE("output redirection and parser behavior") {
    const TempFile sink("qhtk-out", "");
    std::string out, err;
    CHECK(run({"constants", "--out", sink.str()}, out, err) == 0);
    CHECK(out.empty());
    std::ifstream f(sink.path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(text.find("tau,omega") == 0);

    CHECK(run({"--help"}, out, err) == 0);
    CHECK(run({}, out, err) == 2);
    CHECK(run({"constants", "--format", "xml"}, out, err) == 2);
    CHECK(run({"verify", "--tol", "garbage"}, out, err) == 2);
}

} // TEST_SUITE
