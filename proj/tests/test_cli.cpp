// Drives the installed CLI binary through a pipeline run and checks the
// documented exit codes.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

static int failures = 0;

#define CHECK(cond)                                                     \
    do {                                                                \
        if (!(cond)) {                                                  \
            std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                 \
        }                                                               \
    } while (0)

static int run(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
#ifndef _WIN32
    if (rc != -1) rc = WEXITSTATUS(rc);
#endif
    return rc;
}

int main() {
    const std::string cli = ST_CLI_PATH;
    fs::path dir = fs::temp_directory_path() / "sticktile_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    {
        std::ofstream wang(dir / "wang.json");
        wang << R"({"colors":2,"tiles":[{"n":1,"e":1,"s":1,"w":2},{"n":1,"e":2,"s":1,"w":1}]})";
    }

    std::string quiet = " > " + (dir / "out.log").string() + " 2>&1";

    CHECK(run(cli + " compile --from wang --to table --out " + dir.string() + " " +
              (dir / "wang.json").string() + quiet) == 0);
    CHECK(fs::exists(dir / "ab.json"));
    CHECK(fs::exists(dir / "state_table.json"));

    CHECK(run(cli + " solve wang --torus 2x1 --out " + dir.string() + " " +
              (dir / "wang.json").string() + quiet) == 0);
    CHECK(fs::exists(dir / "tilings.json"));

    CHECK(run(cli + " verify --what bijection --torus 2x2 " + (dir / "wang.json").string() +
              quiet) == 0);

    CHECK(run(cli + " staple-check" + quiet) == 0);

    // Malformed input maps to exit code 4.
    {
        std::ofstream bad(dir / "bad.json");
        bad << "{\"colors\":0,\"tiles\":[]}";
    }
    CHECK(run(cli + " compile --from wang --to ab --out " + dir.string() + " " +
              (dir / "bad.json").string() + quiet) == 4);

    if (failures == 0) std::printf("test_cli: all checks passed\n");
    return failures == 0 ? 0 : 1;
}
