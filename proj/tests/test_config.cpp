#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "lindblad/config.hpp"
#include "lindblad/csv.hpp"

using namespace lindblad;

namespace {

const char* kMinimal = R"({
  "dim": 2,
  "lindblad": [{"op": "sigma_z"}],
  "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
  "grid": {"t_start": 0, "t_end": 1, "dt": 0.001, "sample_stride": 10}
})";

} // namespace

TEST_CASE("minimal config parses to a dephasing model") {
    const RunConfig cfg = parse_config(kMinimal);
    CHECK(cfg.model.dim() == 2);
    REQUIRE(cfg.model.lindblad_terms().size() == 1);
    CHECK(frobenius_norm(cfg.model.lindblad_terms()[0].op - ops::sigma_z()) == 0.0);
    REQUIRE(cfg.initial_matrix.has_value());
    CHECK(cfg.grid.dt == 0.001);
    CHECK(cfg.grid.sample_stride == 10);
    CHECK(cfg.config_hash == csv::fnv1a64(kMinimal));
}

TEST_CASE("explicit matrices follow the ground-at-zero convention") {
    const RunConfig cfg = parse_config(R"({
      "dim": 2,
      "lindblad": [{"matrix": [[[0,0],[1,0]],[[0,0],[0,0]]]}],
      "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
      "grid": {"t_start": 0, "t_end": 1}
    })");
    CHECK(frobenius_norm(cfg.model.lindblad_terms()[0].op - ops::sigma_minus()) == 0.0);
}

TEST_CASE("named operators, scales and schedules") {
    const RunConfig cfg = parse_config(R"({
      "dim": 2,
      "hamiltonian": [{"op": "sigma_x", "scale": 0.5}],
      "lindblad": [{"op": "sigma_z", "coeff": 0}],
      "schedule": {"breakpoints": [0, 1, 2], "values": [[1.0], [0.25]]},
      "initial": {"sampler": "haar_pure", "seed": 7, "count": 3},
      "grid": {"t_start": 0, "t_end": 2},
      "bounds": ["hilbert", "liouville", "dephasing_floor"],
      "steady_state": "maximally_mixed",
      "output": "out.csv"
    })");
    CHECK(cfg.model.schedule().has_value());
    CHECK(cfg.initial_sampler.has_value());
    CHECK(cfg.initial_count == 3);
    CHECK(cfg.seed == 7);
    CHECK(cfg.bounds.hilbert);
    CHECK(cfg.bounds.dephasing_floor);
    CHECK(!cfg.bounds.deviation);
    CHECK(cfg.steady == SteadyStrategy::maximally_mixed);
    CHECK(cfg.output == "out.csv");
    CHECK(frobenius_norm(cfg.model.hamiltonian_terms()[0].op - 0.5 * ops::sigma_x()) == 0.0);
}

TEST_CASE("schema violations are field-addressed") {
    CHECK_THROWS_AS(parse_config("{"), ParseError);
    CHECK_THROWS_AS(parse_config("[1,2]"), SchemaError);

    CHECK_THROWS_WITH_AS(parse_config(R"({
      "dim": 2,
      "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
      "grid": {"t_start": 0, "t_end": 1},
      "typo_field": 1
    })"),
                         doctest::Contains("typo_field"), SchemaError);

    CHECK_THROWS_WITH_AS(parse_config(R"({
      "dim": 2,
      "lindblad": [{"op": "sigma_z", "coeff": 0}],
      "schedule": {"breakpoints": [0, 1, 1], "values": [[1.0], [1.0]]},
      "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
      "grid": {"t_start": 0, "t_end": 1}
    })"),
                         doctest::Contains("breakpoints[2]"), SchemaError);

    CHECK_THROWS_WITH_AS(parse_config(R"({
      "dim": 2,
      "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
      "grid": {"t_start": 0, "t_end": 1, "dt": -0.5}
    })"),
                         doctest::Contains("$.grid.dt"), SchemaError);

    // complex entries must be [re, im]
    CHECK_THROWS_AS(parse_config(R"({
      "dim": 2,
      "lindblad": [{"matrix": [[0.5, 0.5],[0.5, 0.5]]}],
      "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
      "grid": {"t_start": 0, "t_end": 1}
    })"),
                    SchemaError);

    // both op and matrix in one term
    CHECK_THROWS_AS(parse_config(R"({
      "dim": 2,
      "lindblad": [{"op": "sigma_z", "matrix": [[[1,0],[0,0]],[[0,0],[-1,0]]]}],
      "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
      "grid": {"t_start": 0, "t_end": 1}
    })"),
                    SchemaError);

    // named qubit operator at the wrong dimension
    CHECK_THROWS_AS(parse_config(R"({
      "dim": 3,
      "lindblad": [{"op": "sigma_z"}],
      "initial": {"matrix": [[[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]},
      "grid": {"t_start": 0, "t_end": 1}
    })"),
                    SchemaError);
}

TEST_CASE("module errors pass through with their own types") {
    // invalid initial state (negative eigenvalue)
    CHECK_THROWS_AS(parse_config(R"({
      "dim": 2,
      "initial": {"matrix": [[[1.2,0],[0,0]],[[0,0],[-0.2,0]]]},
      "grid": {"t_start": 0, "t_end": 1}
    })"),
                    NotPositive);

    // non-hermitian hamiltonian term
    CHECK_THROWS_AS(parse_config(R"({
      "dim": 2,
      "hamiltonian": [{"op": "sigma_minus"}],
      "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
      "grid": {"t_start": 0, "t_end": 1}
    })"),
                    NotHermitian);

    // negative noise amplitude in a schedule column used by a channel
    CHECK_THROWS_AS(parse_config(R"({
      "dim": 2,
      "lindblad": [{"op": "sigma_z", "coeff": 0}],
      "schedule": {"breakpoints": [0, 1], "values": [[-1.0]]},
      "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
      "grid": {"t_start": 0, "t_end": 1}
    })"),
                    ValidationError);
}

TEST_CASE("steady state variants") {
    const RunConfig named = parse_config(R"({
      "dim": 2,
      "lindblad": [{"op": "sigma_z"}],
      "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
      "grid": {"t_start": 0, "t_end": 1},
      "steady_state": "dephased_diagonal"
    })");
    CHECK(named.steady == SteadyStrategy::dephased_diagonal);

    const RunConfig supplied = parse_config(R"({
      "dim": 2,
      "lindblad": [{"op": "sigma_z"}],
      "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
      "grid": {"t_start": 0, "t_end": 1},
      "steady_state": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}
    })");
    CHECK(supplied.steady == SteadyStrategy::user_supplied);
    CHECK(supplied.steady_matrix.has_value());

    CHECK_THROWS_AS(parse_config(R"({
      "dim": 2,
      "initial": {"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
      "grid": {"t_start": 0, "t_end": 1},
      "steady_state": "nearest_fixed_point"
    })"),
                    SchemaError);
}

TEST_CASE("csv formatting contract") {
    CHECK(csv::format_double(0.5) == "0.5");
    CHECK(csv::format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(csv::escape_field("plain") == "plain");
    CHECK(csv::escape_field("a,b") == "\"a,b\"");
    CHECK(csv::escape_field("say \"hi\"") == "\"say \"\"hi\"\"\"");

    // FNV-1a 64 reference vectors
    CHECK(csv::fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(csv::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(csv::hex64(0xcbf29ce484222325ULL) == "cbf29ce484222325");
}
