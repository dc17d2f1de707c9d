#include "doctest.h"

#include <cstdlib>

#include "landau_ee/config.hpp"

using namespace landau_ee;

TEST_CASE("defaults validate") {
    StudyConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.L_grid() == std::vector<double>{3, 4, 5, 6, 7, 8});
}

TEST_CASE("ini parsing") {
    const auto keys = parse_ini_text(
        "# comment\n[physics]\nB0 = 2\n[scan]\nalphas = 0.5, 1\nspacing = log\nL_min = 2\nL_max = 8\nL_count = 3\n"
        "interval = 1, 5\n[field]\nkind = gaussian\namplitude = 0.1\n");
    const StudyConfig c = config_from_keys(keys);
    CHECK(c.B0 == 2.0);
    CHECK(c.alphas == std::vector<double>{0.5, 1.0});
    CHECK(c.L_grid()[1] == doctest::Approx(4.0));
    CHECK(c.field.kind == "gaussian");
}

TEST_CASE("unknown keys and bad values are rejected") {
    CHECK_THROWS_AS(config_from_keys(parse_ini_text("[scan]\nL_mni = 3\n")), ValidationError);
    CHECK_THROWS_AS(config_from_keys(parse_ini_text("[physics]\nB0 = abc\n")), ValidationError);
    CHECK_THROWS_AS(config_from_keys(parse_ini_text("[region]\nshape = hexagon\n")), ValidationError);
    CHECK_THROWS_AS(parse_ini_text("B0 = 1\n"), ValidationError);
}

TEST_CASE("endpoint on a Landau level is rejected with the rule named") {
    try {
        config_from_keys(parse_ini_text("[scan]\ninterval = 1, 2\n"));
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("Landau level") != std::string::npos);
    }
    CHECK_THROWS_AS(config_from_keys(parse_ini_text("[scan]\ninterval = 0.5, 3\n")), ValidationError);
}

TEST_CASE("eps outside (0,1) is rejected") {
    CHECK_THROWS_AS(config_from_keys(parse_ini_text("[tameness]\neps = 1.2\n")), ValidationError);
}

TEST_CASE("the JSON echo reproduces the configuration") {
    StudyConfig c = config_from_keys(parse_ini_text(
        "[field]\nkind = power_law\namplitude = 0.25\nexponent = 1.75\ncenter = 0.1, -0.3\n"
        "[kernels]\npoints = 0 0 1 0; 0.5 0.5 -1 2\n[scan]\np_values = 1, 0.5\n[run]\nseed = 42\nplots = false\n"));
    const auto echo = config_to_json(c);
    const StudyConfig back = config_from_keys(key_map_from_json(echo));
    CHECK(config_to_json(back) == echo);
    CHECK(back.kernels.points.size() == 2);
    CHECK(back.seed == 42);
    CHECK(back.field.center.y == -0.3);
    // wrapped in a result document
    CHECK(config_to_json(config_from_keys(key_map_from_json({{"config", echo}}))) == echo);
}

TEST_CASE("every documented key is settable") {
    const auto keys = describe_keys();
    CHECK(keys.size() > 50);
    KeyMap all;
    for (const auto& [k, v] : keys) all[k] = v;
    CHECK(config_to_json(config_from_keys(all)) == config_to_json(StudyConfig{}));
}

TEST_CASE("environment overrides") {
    StudyConfig c;
    setenv("LANDAU_EE_OUT", "/tmp/elsewhere", 1);
    setenv("LANDAU_EE_JOBS", "3", 1);
    apply_environment(c);
    CHECK(c.out == "/tmp/elsewhere");
    CHECK(c.jobs == 3);
    setenv("LANDAU_EE_JOBS", "many", 1);
    CHECK_THROWS_AS(apply_environment(c), ValidationError);
    unsetenv("LANDAU_EE_OUT");
    unsetenv("LANDAU_EE_JOBS");
}
