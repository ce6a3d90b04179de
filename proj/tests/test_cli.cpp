// Exercises the installed CLI binary: exit codes, output formats, determinism.

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(HEIS3_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string tmp_path(const char* name) {
    return std::string("heis3_clitest_") + name;
}

} // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("geodesic --v0 0,0,0").exit_code == 2);
    CHECK(run("geodesic").exit_code == 2);
    CHECK(run("residual --surface nope").exit_code == 2);
    CHECK(run("residual --surface helicoid:0").exit_code == 2);
    CHECK(run("residual --surface helicoid:2 --domain -1,1,-1,1").exit_code == 2);
    CHECK(run("limit --lambdas 0").exit_code == 2);
    CHECK(run("limit --lambdas 1,oops").exit_code == 2);
    CHECK(run("mesh --surface hpb").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
}

TEST_CASE("geodesic trace command") {
    const std::string out = tmp_path("trace.csv");
    const RunResult r =
        run("geodesic --p0 0,0,0 --v0 1,0,0 --tmax 1 --step 1e-3 --out " + out);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS geodesic-momentum-drift") != std::string::npos);

    const std::string csv = slurp(out);
    CHECK(csv.rfind("# heis3 geodesic", 0) == 0);
    CHECK(csv.find("t,x,y,z,dx,dy,dz,J") != std::string::npos);

    // byte-identical rerun
    const std::string out2 = tmp_path("trace2.csv");
    run("geodesic --p0 0,0,0 --v0 1,0,0 --tmax 1 --step 1e-3 --out " + out2);
    CHECK(slurp(out2) == csv);
    std::remove(out.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("residual scan command") {
    const std::string out = tmp_path("resid.csv");
    const RunResult r = run("residual --surface hpb --grid 11 --domain -1,1,-1,1 --out " + out);
    CHECK(r.exit_code == 0);

    const std::string csv = slurp(out);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line); // comment
    std::getline(is, line);
    CHECK(line == "x,y,riem_residual,lorentz_residual,diff_eq7,laplacian,causal");
    int rows = 0;
    double worst = 0.0;
    while (std::getline(is, line)) {
        ++rows;
        double x, y, riem, lor, diff, lap;
        char causal[32];
        CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%31s", &x, &y, &riem, &lor,
                          &diff, &lap, causal) == 7);
        worst = std::max({worst, std::fabs(riem), std::fabs(lor)});
    }
    CHECK(rows == 121);
    CHECK(worst < 1e-10);
    std::remove(out.c_str());

    CHECK(run("residual --surface plane --grid 5").exit_code == 0);
    CHECK(run("residual --surface vplane --grid 5").exit_code == 0);
    CHECK(run("residual --surface helicoid:2 --grid 5 --domain 0.5,2,-1,1").exit_code == 0);
}

TEST_CASE("limit command") {
    const std::string out = tmp_path("limit.csv");
    const RunResult r = run("limit --lambdas 1,0.25,0.0625 --grid 11 --out " + out);
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(out);
    CHECK(csv.find("lambda,sup_error,ratio_to_prev") != std::string::npos);
    std::remove(out.c_str());

    // single lambda: table without ratio, still exits cleanly
    CHECK(run("limit --lambdas 0.5 --grid 5").exit_code == 0);
}

TEST_CASE("mesh command") {
    const std::string out = tmp_path("heli.obj");
    CHECK(run("mesh --surface helicoid:2 --grid 16 --out " + out).exit_code == 0);
    std::istringstream is(slurp(out));
    std::string line;
    int verts = 0, faces = 0;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) == 0) ++verts;
        if (line.rfind("f ", 0) == 0) ++faces;
    }
    CHECK(verts == 16 * 16);
    CHECK(faces == 2 * 15 * 15);
    std::remove(out.c_str());
}

TEST_CASE("lemma25 command") {
    const RunResult r = run("lemma25 --sweep 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS profile C5") != std::string::npos);
    CHECK(r.output.find("PASS sweep agreements=5/5") != std::string::npos);

    CHECK(run("lemma25 --h0 0").exit_code == 0);
}

TEST_CASE("verify-all fault injection exits 1 and names the check") {
    const RunResult r = run("verify-all --tamper-connection");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("FAIL connection-compatibility") != std::string::npos);
    CHECK(r.output.find("OVERALL FAIL") != std::string::npos);
    CHECK(r.output.find("first failing check: connection-compatibility") != std::string::npos);
}

TEST_CASE("verify-all verdicts are seed independent") {
    const RunResult r = run("verify-all --seed 43");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("OVERALL PASS") != std::string::npos);
}
