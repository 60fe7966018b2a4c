#include "fusionkz/errors.hpp"
#include "fusionkz/serialize.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace fusionkz;

namespace {

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("rationals and matrices") {
    CHECK(to_json(make_rational(-3, 6)) == "-1/2");
    CHECK(rational_from_json(Json("4/6")) == Rational(2, 3));
    CHECK(rational_from_json(Json(5)) == 5);
    RMatrix m(2, 2);
    m(0, 1) = Rational(1, 3);
    CHECK(rational_matrix_from_json(to_json(m)) == m);
    CHECK_THROWS_AS(rational_matrix_from_json(Json::parse(R"([["1"],["1","2"]])")),
                    DimensionError);
}

TEST_CASE("algebra data round trip") {
    const auto d = build_root_datum("A2");
    const Json j = to_json(*d);
    const auto back = root_datum_from_json(Json::parse(j.dump()));
    CHECK(back->gram == d->gram);
    CHECK(back->algebra_basis == d->algebra_basis);
    CHECK(back->structure == d->structure);
    CHECK(back->h_dual == 3);
    Json broken = j;
    broken["h_dual"] = 4;
    CHECK_THROWS_AS(root_datum_from_json(broken), InternalInvariantViolation);
    CHECK_THROWS_AS(root_datum_from_json(Json::object()), DomainError);
}

TEST_CASE("module round trip") {
    const auto d = build_root_datum("A1");
    const GModule m = irreducible(d, {3});
    const GModule back = module_from_json(Json::parse(to_json(m).dump()), d);
    CHECK(back.action == m.action);
    CHECK(back.weights == m.weights);
    Json bad = to_json(m);
    bad["action"][0][0][1] = "7";
    CHECK_THROWS_AS(module_from_json(bad, d), InternalInvariantViolation);
}

TEST_CASE("fusion table csv") {
    const auto d = build_root_datum("A1");
    const std::string csv = fusion_table_csv(fusion_table(d, 2));
    CHECK(csv == "lambda,0,1,2\n"
                 "0,\"0:1\",\"1:1\",\"2:1\"\n"
                 "1,\"1:1\",\"0:1,2:1\",\"1:1\"\n"
                 "2,\"2:1\",\"1:1\",\"0:1\"\n");
}

TEST_CASE("fusion product dump carries the kernel basis") {
    const auto d = build_root_datum("A1");
    const auto v = std::make_shared<const GModule>(defining_module(d));
    const Json j = to_json(fuse(v, v, 1));
    CHECK(j["kernel"]["dim"] == 3);
    CHECK(j["kernel"]["basis"].size() == 3);
    CHECK(j["result"]["dim"] == 1);
    CHECK(j["decomposition"]["0"] == 1);
}

TEST_CASE("associator dump metadata") {
    const KZSystem sys = make_kz_system(RMatrix(2, 2), RMatrix(2, 2), {0}, {0});
    AssociatorParams p;
    p.order = 8;
    const Json j = to_json(connection_matrix(std::make_shared<const KZSystem>(sys), p));
    CHECK(j["z0"] == "1/2");
    CHECK(j["M"] == 8);
    CHECK(j["precision_bits"] == 128);
    CHECK(j["phi"][0][0] == "1.000000000000000000000000000000000000000e+00");
    CHECK(j.contains("tail_bound"));
    CHECK(j["residuals"].contains("defining_relation"));
}

TEST_CASE("atomic writes replace the target") {
    const auto dir = std::filesystem::temp_directory_path() / "fusionkz_serialize_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.json";
    write_atomic(path, "first\n");
    write_atomic(path, "second\n");
    CHECK(slurp(path) == "second\n");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto &e : std::filesystem::directory_iterator(dir))
        ++files;
    CHECK(files == 1);
    std::filesystem::remove_all(dir);
    CHECK_THROWS(write_atomic(dir / "missing" / "x.json", "x"));
}
