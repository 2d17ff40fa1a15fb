#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

std::string cli_path() {
    const char* p = std::getenv("QHMOD_CLI_BIN");
    return p ? p : "./tools/qhmod";
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

} // namespace

TEST_CASE("analyze the cusp") {
    auto r = run("analyze \"y^2-x^3\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("stratum: (2,3,1)") != std::string::npos);
    CHECK(r.out.find("principal D2") != std::string::npos);
    CHECK(r.out.find("self=-3") != std::string::npos);
}

TEST_CASE("analyze a monomial cross") {
    auto r = run("analyze \"x*y\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("stratum: (1,1,2)") != std::string::npos);
    CHECK(r.out.find("resolution: 1 components") != std::string::npos);
}

TEST_CASE("analyze rejects non quasi-homogeneous input") {
    auto r = run("analyze \"y^2-x^3-x^2\"");
    CHECK(r.exit_code == 2);
}

TEST_CASE("equiv examples") {
    auto r1 = run("equiv \"x*(y-x)*(y+x)\" \"(y-2x)*(y-3x)*(y-5x)\"");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out.find("equivalent: yes") != std::string::npos);

    auto r2 = run("equiv \"y^2-x^3\" \"y^2-4x^3\"");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out.find("alpha: 4") != std::string::npos);
    CHECK(r2.out.find("witness: T(x,y) = (x, 2*y)") != std::string::npos);

    auto r3 = run("equiv \"(y^2-x^3)*(y^2-2x^3)\" \"(y^2-x^3)*(y^2-3x^3)\"");
    CHECK(r3.exit_code == 1);
    CHECK(r3.out.find("equivalent: no") != std::string::npos);
}

TEST_CASE("resolve emits DOT and JSON") {
    auto dot = run("resolve \"y^2-x^3\"");
    CHECK(dot.exit_code == 0);
    CHECK(dot.out.find("D2 [shape=doublecircle label=\"D2 (-1)\"]") != std::string::npos);

    auto js = run("resolve \"y^2-x^3\" --format json");
    CHECK(js.exit_code == 0);
    CHECK(js.out.find("\"edges\":[[1,2],[2,3]]") != std::string::npos);
}

TEST_CASE("classify-batch groups scaling orbits") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "qhmod_cli_test";
    fs::create_directories(dir);
    fs::path corpus = dir / "corpus.txt";
    {
        std::ofstream out(corpus);
        out << "# comment line\n";
        out << "y^2-x^3\n";
        out << "y^2-4x^3\n";
        out << "y^2-x^5\n";
        out << "\n";
    }
    auto r = run("classify-batch " + corpus.string());
    CHECK(r.exit_code == 0);
    // two classes: the scaling orbit and the (2,5) curve
    int records = 0;
    for (char ch : r.out) records += (ch == '\n') ? 1 : 0;
    CHECK(records == 2);

    // a bad line is reported but the rest still classifies
    {
        std::ofstream out(corpus);
        out << "y^2-x^3\n";
        out << "y^2-x^3-x^2\n";
    }
    auto r2 = run("classify-batch " + corpus.string());
    CHECK(r2.exit_code == 2);
    int records2 = 0;
    for (char ch : r2.out) records2 += (ch == '\n') ? 1 : 0;
    CHECK(records2 == 1);

    // empty corpus: empty database, success
    {
        std::ofstream out(corpus);
        out << "# nothing\n";
    }
    auto r3 = run("classify-batch " + corpus.string());
    CHECK(r3.exit_code == 0);
    CHECK(r3.out.empty());
}

TEST_CASE("foliation-check") {
    auto r1 = run("foliation-check --pq 2 3");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out.find("skipped (dicritical)") != std::string::npos);
    CHECK(r1.out.find("FAIL") == std::string::npos);

    auto r2 = run("foliation-check \"y^2-x^3\"");
    CHECK(r2.exit_code == 0);

    auto r3 = run("foliation-check --pq 2 4");
    CHECK(r3.exit_code == 2);
}

TEST_CASE("deterministic output across jobs") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "qhmod_cli_test";
    fs::create_directories(dir);
    fs::path corpus = dir / "det.txt";
    {
        std::ofstream out(corpus);
        for (int k = 2; k <= 12; ++k) out << "y^2-" << k << "x^3\n";
        for (int k = 2; k <= 8; ++k) out << "(y-" << k << "x)*(y+" << k << "x)*y\n";
    }
    auto a = run("classify-batch " + corpus.string() + " --jobs 1");
    auto b = run("classify-batch " + corpus.string() + " --jobs 4");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("resolve and foliation-check accept non-reduced input") {
    auto r = run("resolve \"(y^2-x^3)^2\" --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"mult\":2") != std::string::npos);

    auto f = run("foliation-check \"(y^2-x^3)^2\"");
    CHECK(f.exit_code == 0);
}

TEST_CASE("analyze json format and --output") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "qhmod_cli_test";
    fs::create_directories(dir);
    fs::path out = dir / "analysis.json";
    auto r = run("analyze \"y^2-x^3\" --format json --output " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content.find("\"fingerprint\"") != std::string::npos);
    CHECK(content.find("\"stratum\"") != std::string::npos);
}

TEST_CASE("QHMOD_TOLERANCE environment override") {
    // a sloppy tolerance turns the gray-zone pair into a clean match
    std::string cmd = "QHMOD_TOLERANCE=1e-3 " + cli_path() +
                      " equiv \"(y^2-x^3)*(y^2-2x^3)\" "
                      "\"(y^2-x^3)*(y^2-(2+1/20000000)x^3)\" 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::string outtext;
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) outtext.append(buf, n);
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(outtext.find("equivalent: yes") != std::string::npos);
}

TEST_CASE("tolerance ambiguity has its own exit code") {
    auto r = run("equiv \"y^2-x^3\" \"y^2-(1+1/50000000)x^3\"");
    // single-branch (p,q) curves are unconditionally equivalent, so force a
    // two-branch gray-zone instance instead
    auto r2 = run(
        "equiv \"(y^2-x^3)*(y^2-2x^3)\" \"(y^2-x^3)*(y^2-(2+1/20000000)x^3)\"");
    CHECK(r2.exit_code == 3);
    CHECK(r.exit_code == 0);
}
