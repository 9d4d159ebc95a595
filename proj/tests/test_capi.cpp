// Exercises the shared-library C interface end to end.
#include <cstdio>
#include <cstring>
#include <string>

#include "sticktile.h"

static int failures = 0;

#define CHECK(cond)                                                       \
    do {                                                                  \
        if (!(cond)) {                                                    \
            std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond);   \
            ++failures;                                                   \
        }                                                                 \
    } while (0)

static const char* kWang =
    R"({"colors":2,"tiles":[{"n":1,"e":1,"s":1,"w":2},{"n":1,"e":2,"s":1,"w":1}]})";

int main() {
    CHECK(st_version() != nullptr);
    st_pipeline* p = st_pipeline_new();
    CHECK(p != nullptr);

    char* out = nullptr;
    std::string req = std::string("{\"wang\":") + kWang + "}";
    int rc = st_op(p, "wang_to_ab", req.c_str(), &out);
    CHECK(rc == 0);
    CHECK(out && std::strstr(out, "\"a_tiles\""));
    std::string ab = out ? out : "";
    st_string_free(out);

    rc = st_op(p, "solve_wang", (std::string("{\"wang\":") + kWang + ",\"w\":2,\"h\":1}").c_str(),
               &out);
    CHECK(rc == 0);
    CHECK(out && std::strstr(out, "\"count\": 2"));
    st_string_free(out);

    rc = st_op(p, "verify_bijection",
               (std::string("{\"wang\":") + kWang + ",\"w\":2,\"h\":2}").c_str(), &out);
    CHECK(rc == 0);
    st_string_free(out);

    rc = st_op(p, "build_table", (std::string("{\"ab\":") + ab + "}").c_str(), &out);
    CHECK(rc == 0);
    st_string_free(out);

    // Error paths: malformed input and unknown ops.
    rc = st_op(p, "wang_to_ab", "{\"wang\":{\"colors\":0,\"tiles\":[]}}", &out);
    CHECK(rc == 4);
    CHECK(std::strlen(st_last_error(p)) > 0);
    rc = st_op(p, "no_such_op", "{}", &out);
    CHECK(rc == 4);

    // Cap handling surfaces as exit code 3.
    st_pipeline_set_option(p, "cap", "1");
    rc = st_op(p, "solve_wang", (std::string("{\"wang\":") + kWang + ",\"w\":2,\"h\":2}").c_str(),
               &out);
    CHECK(rc == 3);
    st_pipeline_set_option(p, "cap", "10000");

    rc = st_op(p, "staple_check", "{}", &out);
    CHECK(rc == 0);
    st_string_free(out);

    st_pipeline_free(p);
    if (failures == 0) std::printf("test_capi: all checks passed\n");
    return failures == 0 ? 0 : 1;
}
