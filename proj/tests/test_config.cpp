#include <doctest.h>

#include "floq/config.hpp"

using namespace floq;

namespace {

bool message_contains(const std::exception& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal config resolves defaults") {
    ExperimentConfig cfg = parse_config("kind = walk\n");
    CHECK(cfg.kind == ExperimentKind::Walk);
    CHECK(cfg.device_preset == "paper-10q");
    CHECK(cfg.levels == 2);
    CHECK(cfg.nu == doctest::Approx(120.0));
    CHECK(cfg.t_max == doctest::Approx(250.0));
    CHECK(cfg.shots == 0);
    CHECK(cfg.device().n_sites == 10);
    CHECK(cfg.device().nn_couplings.size() == 9);
}

TEST_CASE("sections assign the right fields") {
    const std::string text =
        "[experiment]\n"
        "kind = otoc\n"
        "butterfly = x\n"
        "[device]\n"
        "preset = uniform\n"
        "n = 8\n"
        "g = 4.5\n"
        "[drive]\n"
        "eps = 156\n"
        "pattern = sites\n"
        "sites = 2, 3, 6\n"
        "[model]\n"
        "frame = lab\n"
        "nnn = true\n"
        "[sampling]\n"
        "shots = 8000\n"
        "seed = 5\n"
        "confusion = yes\n";
    ExperimentConfig cfg = parse_config(text);
    CHECK(cfg.kind == ExperimentKind::Otoc);
    CHECK(cfg.butterfly == 'x');
    CHECK(cfg.device_n == 8);
    CHECK(cfg.device_g == doctest::Approx(4.5));
    CHECK(cfg.drive_sites == std::vector<int>{2, 3, 6});
    CHECK(cfg.lab_frame);
    CHECK(cfg.nnn);
    CHECK(cfg.shots == 8000);
    CHECK(cfg.seed == 5);
    CHECK(cfg.confusion);
}

TEST_CASE("unknown key names the key and line") {
    try {
        parse_config("kind = walk\nt_mxa = 100\n");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(message_contains(e, "t_mxa"));
        CHECK(message_contains(e, "line 2"));
    }
}

TEST_CASE("type mismatches are rejected with position") {
    try {
        parse_config("[experiment]\nkind = walk\nt_max = soon\n");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(message_contains(e, "t_max"));
        CHECK(message_contains(e, "line 3"));
    }
    CHECK_THROWS_AS((void)parse_config("[sampling]\nshots = many\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_config("[model]\nnnn = maybe\n"), std::invalid_argument);
}

TEST_CASE("unknown section and malformed lines") {
    CHECK_THROWS_AS((void)parse_config("[experimants]\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_config("[experiment\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_config("just words\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_config("= 3\n"), std::invalid_argument);
}

TEST_CASE("levels outside 2..3 are rejected") {
    try {
        parse_config("[device]\nlevels = 4\n");
        FAIL("expected a validation error");
    } catch (const std::invalid_argument& e) {
        CHECK(message_contains(e, "levels"));
    }
}

TEST_CASE("unknown experiment kind is rejected") {
    CHECK_THROWS_AS((void)parse_config("kind = quench\n"), std::invalid_argument);
}

TEST_CASE("canonical round trip is a fixed point") {
    ExperimentConfig cfg = parse_config(
        "[experiment]\nkind = reverse\nhalf_time = 80\n[drive]\neps_a = 200\n"
        "[integrator]\ndt = 0.25\n");
    const std::string canon = canonical_config(cfg);
    ExperimentConfig again = parse_config(canon);
    CHECK(canonical_config(again) == canon);
    CHECK(again.half_time == doctest::Approx(80.0));
    REQUIRE(again.dt.has_value());
    CHECK(*again.dt == doctest::Approx(0.25));
}

TEST_CASE("comments and blank lines are ignored") {
    ExperimentConfig cfg = parse_config("# a comment\n\n; another\nkind = ssh\n");
    CHECK(cfg.kind == ExperimentKind::Ssh);
}

TEST_CASE("kind names round trip") {
    for (auto kind : {ExperimentKind::RabiSweep, ExperimentKind::Walk, ExperimentKind::Reverse,
                      ExperimentKind::Otoc, ExperimentKind::Ssh, ExperimentKind::Velocity,
                      ExperimentKind::LongOtoc})
        CHECK(experiment_kind_from(to_string(kind)) == kind);
}

}  // TEST_SUITE
