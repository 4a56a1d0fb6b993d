#include "doctest.h"

#include <sstream>

#include "fixtures.hpp"
#include "foldbend/errors.hpp"
#include "foldbend/io.hpp"
#include "test_support.hpp"

using namespace foldbend;

TEST_CASE("number formatting is fixed at 9 significant digits") {
    CHECK(io::format_number(2.898) == "2.898");
    CHECK(io::format_number(1.0 / 3.0) == "0.333333333");
    CHECK(io::format_number(-0.0) == "0");
    CHECK(io::format_number(1e-12) == "1e-12");
    CHECK(io::format_number(INFINITY) == "inf");
}

TEST_CASE("numeric CSV parsing") {
    std::istringstream good("\xEF\xBB\xBFstrain, stress_mpa\r\n0,0\r\n\n0.5,1.25\n1e-1,+2\n");
    const auto rows = io::read_numeric_csv(good, {"strain", "stress_mpa"}, "mem");
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][1] == 1.25);
    CHECK(rows[2][0] == 0.1);

    std::istringstream wrong_header("x,y\n1,2\n");
    CHECK_THROWS_AS(io::read_numeric_csv(wrong_header, {"strain", "stress_mpa"}, "mem"), ValidationError);
    std::istringstream bad_cell("strain,stress_mpa\n1,abc\n");
    CHECK_THROWS_WITH_AS(io::read_numeric_csv(bad_cell, {"strain", "stress_mpa"}, "mem"),
                         doctest::Contains("mem:2"), ValidationError);
    std::istringstream thousands("strain,stress_mpa\n1,1,000\n");
    CHECK_THROWS_AS(io::read_numeric_csv(thousands, {"strain", "stress_mpa"}, "mem"), ValidationError);
    std::istringstream empty("");
    CHECK_THROWS_AS(io::read_numeric_csv(empty, {"strain", "stress_mpa"}, "mem"), ValidationError);
    CHECK_THROWS_AS(io::read_stress_strain_csv("/nonexistent/file.csv"), InputError);
}

TEST_CASE("material documents round trip") {
    support::TempDir dir;
    const auto nf = MooneyRivlinModel::ninjaflex();
    io::write_material(dir / "m.json", nf);
    const auto back = io::read_material(dir / "m.json");
    CHECK(back.c10() == nf.c10());
    CHECK(back.c01() == nf.c01());
    CHECK(back.c11() == nf.c11());
    CHECK(back.c20() == nf.c20());
    CHECK(back.c02() == nf.c02());

    CHECK_THROWS_AS(io::material_from_json_text(R"({"c10":1,"c01":0,"c11":0,"c20":0,"c02":0,"d":0.5})", "m"),
                    ValidationError);
    CHECK_THROWS_AS(io::material_from_json_text(R"({"c10":1})", "m"), ValidationError);
    CHECK_THROWS_AS(io::material_from_json_text("{not json", "m"), ValidationError);
    const auto with_c30 =
        io::material_from_json_text(R"({"c10":1,"c01":0,"c11":0,"c20":0,"c02":0,"c30":0.25})", "m");
    CHECK(with_c30.c30() == 0.25);
}

TEST_CASE("actuator config documents") {
    support::TempDir dir;
    const auto cfg = io::config_from_json_text(fixtures::kReferenceConfigJson, dir.path(), "cfg");
    const auto ref = fixtures::reference_actuator();
    CHECK(cfg.geometry.a == ref.geometry.a);
    CHECK(cfg.geometry.H1 == ref.geometry.H1);
    CHECK(cfg.depth == ref.depth);
    CHECK(cfg.n_folds == 10);
    CHECK(cfg.area_a == 140.0);
    CHECK(cfg.lambda_max == 2.5);
    CHECK(cfg.material.c01() == 2.898);
    CHECK_FALSE(cfg.segment_pitch.has_value());

    io::write_material(dir / "nf.json", MooneyRivlinModel::ninjaflex());
    const std::string by_file = R"({
      "geometry": {"a": 6, "b": 14, "l_c": 2, "h1": 10, "t_w": 1.2, "t_c": 1.2, "alpha": 0.6, "H1": 16, "depth": 14},
      "material_file": "nf.json",
      "actuator": {"n_folds": 4, "area_a": 100, "segment_pitch": 8}
    })";
    const auto cfg2 = io::config_from_json_text(by_file, dir.path(), "cfg2");
    CHECK(cfg2.material.c02() == 0.183);
    CHECK(cfg2.pitch() == 8.0);
    CHECK(cfg2.lambda_max == 2.5);

    const std::string both = R"({
      "geometry": {"a": 6, "b": 14, "l_c": 2, "h1": 10, "t_w": 1.2, "t_c": 1.2, "alpha": 0.6, "H1": 16, "depth": 14},
      "material_file": "nf.json",
      "material": {"c10": 1, "c01": 0, "c11": 0, "c20": 0, "c02": 0},
      "actuator": {"n_folds": 4, "area_a": 100}
    })";
    CHECK_THROWS_AS(io::config_from_json_text(both, dir.path(), "both"), ValidationError);

    const std::string fractional_folds = R"({
      "geometry": {"a": 6, "b": 14, "l_c": 2, "h1": 10, "t_w": 1.2, "t_c": 1.2, "alpha": 0.6, "H1": 16, "depth": 14},
      "material_file": "nf.json",
      "actuator": {"n_folds": 2.5, "area_a": 100}
    })";
    CHECK_THROWS_AS(io::config_from_json_text(fractional_folds, dir.path(), "frac"), ValidationError);
    CHECK_THROWS_AS(io::read_config(dir / "missing.json"), InputError);
}

TEST_CASE("shape CSV") {
    std::ostringstream out;
    io::write_shape_csv(out, backbone_shape(0.0, SegmentMask::all_constrained(2), 5.0));
    CHECK(out.str() == "x_mm,y_mm,heading_rad\n0,0,0\n5,0,0\n10,0,0\n");
}
