// Exit-code contract of the CLI binary, driven as a subprocess.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

int run(const std::string& cmd) {
    int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

int failures = 0;

void expect(int got, int want, const std::string& what) {
    if (got != want) {
        std::fprintf(stderr, "FAIL %s: exit %d, expected %d\n", what.c_str(), got, want);
        ++failures;
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_process_test <path-to-binary>\n");
        return 1;
    }
    std::string bin = argv[1];

    expect(run(bin), 2, "no subcommand");
    expect(run(bin + " run --config /nonexistent.json"), 2, "missing config file");

    std::string dir = "cli_process_scratch";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) {
        std::fprintf(stderr, "cannot create scratch dir\n");
        return 1;
    }
    {
        std::ofstream f(dir + "/bad.json");
        f << "{ not json";
    }
    expect(run(bin + " run --config " + dir + "/bad.json"), 2, "invalid json");
    {
        std::ofstream f(dir + "/bad_table.json");
        f << R"({"task":"derive","semigroup":{"kind":"table","table":[[7,0,0],[0,0,0],[0,0,0]]},
                 "params":{"set":[0],"direction":0}})";
    }
    expect(run(bin + " run --config " + dir + "/bad_table.json"), 2, "malformed table");
    {
        std::ofstream f(dir + "/ok.json");
        f << R"({"task":"derive","semigroup":{"kind":"cyclic","n":6},
                 "params":{"set":[0,1,2],"direction":1}})";
    }
    expect(run(bin + " run --config " + dir + "/ok.json --out " + dir + "/out"), 0,
           "valid derive config");
    {
        std::ifstream report(dir + "/out/report.json");
        if (!report.good()) {
            std::fprintf(stderr, "FAIL report.json was not written\n");
            ++failures;
        }
    }
    {
        std::ofstream f(dir + "/fail.json");
        f << R"({"task":"qrec","semigroup":{"kind":"cyclic","n":5},
                 "measure":{"kind":"counting"},"params":{"set":[]}})";
    }
    expect(run(bin + " run --config " + dir + "/fail.json"), 1, "task failure");
    expect(run(bin + " suite --select algebra"), 0, "algebra battery");
    expect(run(bin + " suite --select nope"), 2, "unknown selector");

    if (failures == 0) std::printf("cli exit codes ok\n");
    return failures;
}
