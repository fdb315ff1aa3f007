#include "catch_amalgamated.hpp"

#include "compvar/cli.hpp"
#include "compvar/errors.hpp"
#include "compvar/io.hpp"
#include "fixtures.hpp"

#include <filesystem>
#include <sstream>

using namespace compvar;
using namespace fixtures;
using io::json;

namespace {

std::string fixture(const std::string& name) { return std::string(COMPVAR_FIXTURE_DIR) + "/" + name; }

struct Run {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return Run{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("algebras survive a JSON round trip", "[io]") {
    for (const Field& f : {Field::rationals(), Field::prime(3)}) {
        for (const AlgebraPtr& a : {dual_numbers(f), a2(f), truncated_polynomial_algebra(f, 3), linear_quiver_algebra(f, 3)}) {
            AlgebraPtr b = io::parse_algebra(json::parse(io::algebra_to_json(*a).dump()));
            CHECK(*a == *b);
            CHECK(b->idempotents().has_value() == a->idempotents().has_value());
            CHECK(b->labels() == a->labels());
        }
    }
}

TEST_CASE("identity_index moves the identity to the front", "[io]") {
    // {x, 1} with x² = 0, written with the identity second
    json j = json::parse(R"({"field": {"type": "Q"}, "dim": 2, "labels": ["x", "1"], "identity_index": 2,
                             "constants": [[2, 2, 2, 1], [2, 1, 1, 1], [1, 2, 1, 1]]})");
    AlgebraPtr a = io::parse_algebra(j);
    CHECK(*a == *dual_numbers(Field::rationals()));
    CHECK(a->labels() == std::vector<std::string>{"1", "x"});
}

TEST_CASE("scalars and matrices", "[io]") {
    Field q = Field::rationals();
    CHECK(io::parse_scalar(json("-3/6"), q) == Scalar(-1, 2));
    CHECK(io::parse_scalar(json(7), Field::prime(5)) == Scalar(2));
    CHECK(io::parse_scalar(json("1/2"), Field::prime(5)) == Scalar(3));
    CHECK_THROWS_AS(io::parse_scalar(json(1.5), q), ParseError);
    CHECK_THROWS_AS(io::parse_scalar(json("1/5"), Field::prime(5)), Error);

    Matrix m = Matrix::from_ints(q, {{1, 2}, {0, -1}});
    CHECK(io::parse_matrix(io::matrix_to_json(m), q, 2, 2) == m);
    CHECK_THROWS_AS(io::parse_matrix(json::parse("[[1, 2], [3]]"), q, 2, 2), DimensionMismatch);
    CHECK_THROWS_AS(io::parse_matrix(json::parse("[[1, 2]]"), q, 2, 2), DimensionMismatch);
}

TEST_CASE("modules and complexes survive a JSON round trip", "[io]") {
    std::mt19937_64 rng(17);
    for (const Field& f : {Field::rationals(), Field::prime(2), Field::prime(3)}) {
        for (const AlgebraPtr& a : {dual_numbers(f), a2(f)}) {
            for (const auto& m : building_blocks(a)) {
                ModuleRep back = io::parse_module(json::parse(io::module_to_json(m).dump()), a);
                CHECK(back.dim == m.dim);
                CHECK(back.rho == m.rho);
            }
            for (int k = 0; k < 5; ++k) {
                ChainComplex x = random_point(a, rng);
                ChainComplex y = io::parse_complex(json::parse(io::complex_to_json(x).dump()), a);
                CHECK(y == x);
            }
        }
    }
    CHECK_THROWS_AS(io::complex_to_json(shift(mult_x_complex(Field::rationals()), 1)), ValidationError);
}

TEST_CASE("malformed input is reported", "[io]") {
    try {
        io::parse_json(io::read_file(fixture("malformed.json")), "malformed.json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("at byte 65") != std::string::npos);
        CHECK(e.kind() == ErrorKind::io);
    }
    CHECK_THROWS_AS(io::read_file(fixture("does_not_exist.json")), ParseError);
    CHECK_THROWS_AS(io::parse_algebra(json::parse(R"({"field": {"type": "R"}, "dim": 1, "constants": []})")), ParseError);
    CHECK_THROWS_AS(io::parse_algebra(json::parse(R"({"dim": 1, "constants": []})")), ParseError);
    // a constant table without an identity fails validation
    CHECK_THROWS_AS(io::parse_algebra(json::parse(R"({"field": {"type": "Q"}, "dim": 1, "constants": []})")),
                    ValidationError);
    AlgebraPtr d = dual_numbers(Field::rationals());
    CHECK_THROWS_AS(io::parse_module(json::parse(R"({"dim": 1, "action": [[[1]]]})"), d), DimensionMismatch);
    // x acting by 1 breaks x² = 0
    CHECK_THROWS_AS(io::parse_module(json::parse(R"({"dim": 1, "action": [[[1]], [[1]]]})"), d), ValidationError);
}

TEST_CASE("exit codes", "[cli]") {
    const std::string dq = fixture("dual_numbers_q.json");
    CHECK(run({"validate", "--algebra", dq}).code == cli::ok);
    CHECK(run({"validate", "--algebra", fixture("ground_q.json"), "--complex", fixture("zero.json")}).code == cli::ok);

    Run broken = run({"validate", "--algebra", fixture("ground_q.json"), "--complex", fixture("broken_gamma.json")});
    CHECK(broken.code == cli::validation);
    CHECK(broken.err.find("(γ) at i=2") != std::string::npos);

    Run bad = run({"validate", "--algebra", fixture("malformed.json")});
    CHECK(bad.code == cli::io);
    CHECK(bad.err.find("byte 65") != std::string::npos);

    CHECK(run({"theorem7", "--algebra", fixture("bare_dual_numbers_q.json"), "--complex", fixture("mult_x.json")}).code ==
          cli::unsupported);
    CHECK(run({"census", "--algebra", dq, "--dims", "1"}).code == cli::unsupported);
    CHECK(run({"census", "--algebra", fixture("dual_numbers_f2.json"), "--dims", "3,3"}).code == cli::budget);
    CHECK(run({"theorem7", "--algebra", dq, "--complex", fixture("missing.json")}).code == cli::io);
    CHECK(run({"no-such-command"}).code == cli::io);
    CHECK(run({}).code == cli::io);
    CHECK(run({"tangent", "--algebra", dq}).code == cli::io);
    CHECK(run({"--help"}).code == cli::ok);
    CHECK(run({"--version"}).out == "0.1.0\n");
    // module shapes do not match the algebra
    CHECK(run({"theorem7", "--algebra", fixture("a2_q.json"), "--complex", fixture("mult_x.json")}).code == cli::validation);
}

TEST_CASE("comparison report for multiplication by x", "[cli]") {
    Run r = run({"theorem7", "--algebra", fixture("dual_numbers_q.json"), "--complex", fixture("mult_x.json"), "--json",
                 "--seed", "9"});
    REQUIRE(r.code == cli::ok);
    json j = r.report();
    CHECK(j["command"] == "theorem7");
    CHECK(j["seed"] == 9);
    CHECK(j["inputs"]["complex"]["sha256"].get<std::string>().size() == 64);
    CHECK(j["results"]["quotient"] == 1);
    CHECK(j["results"]["derived_hom_dim"] == 1);
    CHECK(j["results"]["verdict"] == "equality");

    Run embedded = run({"theorem7", "--complex", fixture("mult_x_embedded.json")});
    CHECK(embedded.code == cli::ok);
    CHECK(embedded.out.find("dim Hom_{D^b}(X,X[1]) = 1") != std::string::npos);
    CHECK(embedded.out.find("verdict: equality") != std::string::npos);

    Run text = run({"tangent", "--algebra", fixture("dual_numbers_q.json"), "--complex", fixture("mult_x.json")});
    CHECK(text.out.find("dim T_X(Comp) = 6") != std::string::npos);
    CHECK(text.out.find("dim T_X(G.X) = 5") != std::string::npos);
}

TEST_CASE("digests identify the input bytes", "[cli]") {
    const std::string dq = fixture("dual_numbers_q.json");
    json a = run({"validate", "--algebra", dq, "--json"}).report();
    json b = run({"validate", "--algebra", dq, "--json"}).report();
    CHECK(a["inputs"]["algebra"]["sha256"] == b["inputs"]["algebra"]["sha256"]);
    json c = run({"validate", "--algebra", fixture("dual_numbers_f2.json"), "--json"}).report();
    CHECK(a["inputs"]["algebra"]["sha256"] != c["inputs"]["algebra"]["sha256"]);
    // frozen from sha256sum
    json g = run({"validate", "--algebra", fixture("ground_q.json"), "--json"}).report();
    CHECK(g["inputs"]["algebra"]["sha256"] == "07b9382bf94ee509ca8cf6eb0f22568f7bc2b6a97df31efc621cc7641105b16d");
}

TEST_CASE("rigid scans from the command line", "[cli][scan]") {
    Run line = run({"rigid-scan", "--algebra", fixture("ground_f2.json"), "--dims", "1,1", "--json"});
    REQUIRE(line.code == cli::ok);
    json j = line.report();
    CHECK(j["results"]["label"] == "finite-field census");
    CHECK(j["results"]["points"] == 2);
    CHECK(j["results"]["rigid_class_count"] == 1);

    const std::string df2 = fixture("dual_numbers_f2.json");
    json pinned = run({"rigid-scan", "--algebra", df2, "--dims", "2,2", "--pin", fixture("pin_regular_pair.json"), "--json"})
                      .report();
    json regular = run({"rigid-scan", "--algebra", df2, "--dims", "2,2", "--pin-regular", "--json"}).report();
    CHECK(pinned["results"]["points"] == 4);
    CHECK(pinned["results"]["orbits"] == 3);
    CHECK(pinned["results"]["rigid_class_count"] == 1);
    CHECK(pinned["results"]["rigid_classes"] == regular["results"]["rigid_classes"]);

    Run census = run({"census", "--algebra", df2, "--dims", "2,2", "--json"});
    REQUIRE(census.code == cli::ok);
    json c = census.report();
    CHECK(c["results"]["group_checked"] == true);
    CHECK(c["results"]["partitions_agree"] == true);
    CHECK(c["results"]["points"] == 76);

    CHECK(run({"census", "--algebra", df2, "--dims", "2,2", "--max-points", "10"}).code == cli::budget);
}

TEST_CASE("strip-acyclic, voigt and derived-hom", "[cli]") {
    const std::string dq = fixture("dual_numbers_q.json");
    Run s = run({"strip-acyclic", "--algebra", dq, "--complex", fixture("contractible_plus_simple.json"), "--json"});
    REQUIRE(s.code == cli::ok);
    json j = s.report();
    CHECK(j["results"]["e_is_identity"] == false);
    CHECK(j["results"]["kept_dims"] == json::array({0, 1}));
    CHECK(j["results"]["removed_acyclic"] == true);

    json v = run({"voigt", "--algebra", dq, "--module", fixture("simple_module.json"), "--json"}).report();
    CHECK(v["results"]["quotient"] == 1);
    CHECK(v["results"]["ext1"] == 1);
    CHECK(v["results"]["ok"] == true);

    json d = run({"derived-hom", "--algebra", dq, "--source", fixture("mult_x.json"), "--shift", "0", "--json"}).report();
    // chain maps (a+bx, a+dx) modulo the homotopies (ex, ex)
    CHECK(d["results"]["derived_hom_dim"] == 2);
}

TEST_CASE("report directory", "[cli]") {
    auto dir = std::filesystem::temp_directory_path() / "compvar_report_test";
    std::filesystem::remove_all(dir);
    Run r = run({"validate", "--algebra", fixture("a2_q.json"), "--report-dir", dir.string()});
    CHECK(r.code == cli::ok);
    json j = io::parse_json(io::read_file((dir / "validate.json").string()));
    CHECK(j["results"]["dim"] == 3);
    std::filesystem::remove_all(dir);
}

TEST_CASE("fixture files re-parse to the same objects", "[io]") {
    for (const std::string name : {"dual_numbers_q.json", "dual_numbers_f2.json", "a2_q.json", "ground_f2.json"}) {
        AlgebraPtr a = io::parse_algebra(io::parse_json(io::read_file(fixture(name))));
        AlgebraPtr b = io::parse_algebra(json::parse(io::algebra_to_json(*a).dump()));
        CHECK(*a == *b);
    }
    AlgebraPtr d = io::parse_algebra(io::parse_json(io::read_file(fixture("dual_numbers_q.json"))));
    for (const std::string name : {"mult_x.json", "contractible_plus_simple.json"}) {
        ChainComplex x = io::parse_complex(io::parse_json(io::read_file(fixture(name))), d);
        CHECK(io::parse_complex(json::parse(io::complex_to_json(x).dump()), d) == x);
    }
    CHECK(io::parse_complex(io::parse_json(io::read_file(fixture("mult_x.json"))), d) == mult_x_complex(Field::rationals()));
}

TEST_CASE("quiver relations", "[io]") {
    // 1 → 2 → 3 with the composite killed
    json j = json::parse(R"({"field": {"type": "Q"},
        "quiver": {"vertices": 3, "arrows": [[1, 2, "a"], [2, 3, "b"]], "relations": [[["b*a", "1"]]],
                   "nilpotency_bound": 3}})");
    CHECK(io::parse_algebra(j)->dim() == 5);
    j["quiver"].erase("relations");
    CHECK(io::parse_algebra(j)->dim() == 6);
}

TEST_CASE("reports are stable under re-runs with the same seed", "[cli]") {
    std::vector<std::string> args{"rigid-scan", "--algebra", fixture("dual_numbers_f2.json"), "--dims", "2,2", "--json",
                                  "--seed", "4"};
    CHECK(run(args).out == run(args).out);
    std::vector<std::string> t7{"theorem7", "--algebra", fixture("a2_q.json"), "--complex", fixture("a2_arrow.json"),
                                "--json"};
    Run r = run(t7);
    REQUIRE(r.code == cli::ok);
    CHECK(r.out == run(t7).out);
    CHECK(r.report()["results"]["verdict"] == "equality");
}
