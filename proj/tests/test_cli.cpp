#include "doctest.h"

#include "coflat/errors.hpp"
#include "coflat/runner.hpp"
#include "coflat/structure_file.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace coflat;

namespace {

std::string data_path(const std::string& name) { return std::string(COFLAT_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

int run(const RunOptions& opt, std::string* summary = nullptr) {
    std::ostringstream os;
    int code = run_command(opt, os);
    if (summary) *summary = os.str();
    return code;
}

} // namespace

TEST_CASE("both renderings of the rotation structure share one digest") {
    StructureFile toml = load_structure(data_path("so3.toml"));
    StructureFile json = load_structure(data_path("so3.json"));
    CHECK(toml.digest == json.digest);
    CHECK(toml.digest.size() == 16);
    CHECK(canonical_dump(toml.tree) == canonical_dump(json.tree));
    REQUIRE(toml.lie_algebra.has_value());
    CHECK(toml.space->dim() == 3);
}

TEST_CASE("digests are stable under whitespace and comments") {
    std::string base = "[anchor]\ndimension = 3\nimages = [[\"0\", \"x3\", \"-x2\"],"
                       "[\"-x3\", \"0\", \"x1\"],[\"x2\", \"-x1\", \"0\"]]\n";
    std::string spaced = "# rotation structure\n\n[anchor]\n  dimension   =  3   # dim\n"
                         "images = [ [\"0\",   \"x3\", \"-x2\"],\n"
                         "           [\"-x3\", \"0\",  \"x1\"],\n"
                         "           [\"x2\",  \"-x1\", \"0\"] ]\n";
    StructureFile a = load_structure_text(base, false);
    StructureFile b = load_structure_text(spaced, false);
    CHECK(a.digest == b.digest);

    // The equivalent JSON rendering also agrees.
    std::string as_json = R"({"anchor": {"dimension": 3, "images": [["0", "x3", "-x2"],
        ["-x3", "0", "x1"], ["x2", "-x1", "0"]]}})";
    CHECK(load_structure_text(as_json, true).digest == a.digest);

    // Changing any payload character changes the digest.
    std::string changed = base;
    changed.replace(changed.find("x3\", \"-x2"), 2, "x2");
    CHECK(load_structure_text(changed, false).digest != a.digest);
}

TEST_CASE("structure round-trips parse -> canonical dump -> parse") {
    StructureFile a = load_structure(data_path("so3_chain.toml"));
    std::string dumped = canonical_dump(a.tree);
    StructureFile b = load_structure_text(dumped, true);
    CHECK(a.digest == b.digest);
    CHECK(a.tree == b.tree);
}

TEST_CASE("TOML errors carry line and column") {
    try {
        load_structure_text("[anchor\ndimension = 3\n", false);
        CHECK(false);
    } catch (const ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 1") != std::string::npos);
    }
    try {
        load_structure_text("[anchor]\ndimension = 3\nweight = 1.5\n", false);
        CHECK(false);
    } catch (const ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("rationals and floats as strings") != std::string::npos);
    }
    CHECK_THROWS_AS(load_structure_text("dimension = 3\n", false), ParseError);
    CHECK_THROWS_AS(load_structure_text("[anchor]\nkey = value\n", false), ParseError);
    CHECK_THROWS_AS(load_structure_text("[anchor]\nd = 1\n[anchor]\n", false), ParseError);
    CHECK_THROWS_AS(load_structure_text("[anchor]\nd = 1\nd = 2\n", false), ParseError);
}

TEST_CASE("semantic validation names the offending construct") {
    // Unknown variable inside a polynomial entry.
    std::string bad_var = "[anchor]\ndimension = 2\nimages = [[\"0\", \"x9\"], [\"-x9\", \"0\"]]\n";
    try {
        load_structure_text(bad_var, false);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("x9") != std::string::npos);
    }

    // Unknown section.
    CHECK_THROWS_AS(load_structure_text("[mystery]\nkey = 1\n", false), StructureError);
    // Unknown key inside a known section.
    CHECK_THROWS_AS(
        load_structure_text("[anchor]\ndimension = 2\nimages = [[\"0\", \"1\"], [\"-1\", \"0\"]]\nbogus = 1\n",
                            false),
        StructureError);
    // Two primary subjects.
    std::string two = "[anchor]\ndimension = 2\nimages = [[\"0\", \"1\"], [\"-1\", \"0\"]]\n"
                      "[lie_algebra]\ndimension = 3\nconstants = [[1, 2, 3, \"1\"]]\n";
    CHECK_THROWS_AS(load_structure_text(two, false), StructureError);
    // No primary subject at all.
    CHECK_THROWS_AS(load_structure_text("[chain]\nm0 = [\"1\"]\n", false), StructureError);
    // Ragged matrix.
    std::string ragged = "[anchor]\ndimension = 2\nimages = [[\"0\", \"1\"], [\"-1\"]]\n";
    CHECK_THROWS_AS(load_structure_text(ragged, false), StructureError);
}

TEST_CASE("lie algebra files use 1-based generator indices") {
    StructureFile f = load_structure(data_path("so3.toml"));
    REQUIRE(f.lie_algebra.has_value());
    // constants [[1,2,3,"1"], ...] mean [e1,e2] = e3.
    CHECK(f.lie_algebra->c(0, 1, 2) == Rational(1));
    CHECK(f.lie_algebra->c(1, 2, 0) == Rational(1));

    std::string bad = "[lie_algebra]\ndimension = 3\nconstants = [[0, 1, 2, \"1\"]]\n";
    CHECK_THROWS_AS(load_structure_text(bad, false), StructureError);
}

TEST_CASE("exit codes follow the pass/fail/usage/indeterminate contract") {
    std::string out;
    CHECK(run({.command = "check", .input = data_path("so3.toml")}, &out) == 0);
    CHECK(out.find("[pass]") != std::string::npos);
    CHECK(out.find("overall: pass") != std::string::npos);

    CHECK(run({.command = "check", .input = data_path("helicity.toml")}, &out) == 1);
    CHECK(out.find("[fail]") != std::string::npos);
    CHECK(out.find("x1 + x2 + x3") != std::string::npos);

    CHECK_THROWS_AS(run({.command = "check", .input = data_path("broken.toml")}), ParseError);
    CHECK_THROWS_AS(run({.command = "verify", .input = data_path("so3.toml")}), StructureError);
    CHECK_THROWS_AS(run({.command = "check", .input = data_path("does_not_exist.toml")}), Error);

    // Sampling-only evidence surfaces as exit 3.
    TempFile quad("coflat_quad_restrict.toml");
    {
        std::ofstream f(quad.path);
        f << "[anchor]\ndimension = 2\nimages = [[\"0\", \"x2^2\"], [\"-x2^2\", \"0\"]]\n"
          << "[restrict]\nA = [[\"1\"], [\"0\"]]\nx0 = [\"0\", \"0\"]\n";
    }
    CHECK(run({.command = "restrict", .input = quad.path}, &out) == 3);
    CHECK(out.find("indeterminate") != std::string::npos);
}

TEST_CASE("every command runs its packaged example") {
    std::string out;
    CHECK(run({.command = "check", .input = data_path("partial3.toml")}, &out) == 0);
    CHECK(run({.command = "check", .input = data_path("pn_so3.toml")}, &out) == 0);
    CHECK(run({.command = "check", .input = data_path("pomega4.toml")}, &out) == 0);
    CHECK(run({.command = "pencil", .input = data_path("pencil_canonical.toml")}, &out) == 0);
    CHECK(run({.command = "pencil", .input = data_path("so3_chain.toml")}, &out) == 0);
    CHECK(run({.command = "chain", .input = data_path("so3_chain.toml")}, &out) == 0);
    CHECK(out.find("link(1)") != std::string::npos);
    CHECK(run({.command = "casimir", .input = data_path("so3.toml")}, &out) == 0);
    CHECK(out.find("x1^2 + x2^2 + x3^2") != std::string::npos);
    CHECK(run({.command = "restrict", .input = data_path("canonical4_restrict.toml")}, &out) == 0);
    CHECK(run({.command = "project", .input = data_path("canonical4_project.toml")}, &out) == 0);
    CHECK(run({.command = "restrict", .input = data_path("so3_restrict_plane.toml")}, &out) == 1);
    CHECK(run({.command = "project", .input = data_path("so3_project.toml")}, &out) == 1);
    CHECK(out.find("x3") != std::string::npos);
}

TEST_CASE("reports are deterministic apart from timing") {
    TempFile rep1("coflat_rep1.json");
    TempFile rep2("coflat_rep2.json");
    RunOptions opt{.command = "check", .input = data_path("so3.toml")};
    opt.output = rep1.path;
    REQUIRE(run(opt) == 0);
    opt.output = rep2.path;
    REQUIRE(run(opt) == 0);

    Json a = Json::parse(slurp(rep1.path));
    Json b = Json::parse(slurp(rep2.path));
    auto strip_timing = [](Json& j) {
        for (auto& c : j.at("checks")) c.erase("timing_ms");
    };
    strip_timing(a);
    strip_timing(b);
    CHECK(a == b);

    CHECK(a.at("report_version") == 1);
    CHECK(a.at("tool") == "coflat 0.1.0");
    CHECK(a.at("command") == "check");
    CHECK(a.at("input_digest") == load_structure(data_path("so3.toml")).digest);
    CHECK(a.at("summary").at("overall") == "pass");
    CHECK(a.at("summary").at("fail") == 0);
    for (const auto& c : a.at("checks")) {
        CHECK(c.contains("name"));
        CHECK(c.contains("status"));
    }
}

TEST_CASE("failing reports carry witnesses in the JSON body") {
    TempFile rep("coflat_rep_fail.json");
    RunOptions opt{.command = "check", .input = data_path("helicity.toml")};
    opt.output = rep.path;
    REQUIRE(run(opt) == 1);
    Json j = Json::parse(slurp(rep.path));
    CHECK(j.at("summary").at("overall") == "fail");
    bool saw_witness = false;
    for (const auto& c : j.at("checks"))
        if (c.value("status", "") == "fail") {
            CHECK(c.contains("witness"));
            saw_witness = true;
        }
    CHECK(saw_witness);
}

TEST_CASE("kdv command honours parameter overrides and reports drift data") {
    TempFile rep("coflat_kdv_rep.json");
    RunOptions opt{.command = "kdv"};
    opt.kdv_n = 32;
    opt.kdv_steps = 100;
    opt.kdv_dt = "1e-4";
    opt.kdv_u0 = "zero";
    opt.output = rep.path;
    std::string out;
    CHECK(run(opt, &out) == 0);
    Json j = Json::parse(slurp(rep.path));
    CHECK(j.at("params").at("n") == 32);
    CHECK(j.at("params").at("u0") == "zero");
    CHECK(j.at("data").contains("drift"));
    CHECK(j.at("data").contains("lenard"));
    CHECK(j.at("data").contains("refinement"));
    bool saw_fixed_point = false;
    for (const auto& c : j.at("checks")) saw_fixed_point |= (c.at("name") == "zero_field_fixed_point");
    CHECK(saw_fixed_point);

    // The same run through a structure file picks up the file parameters.
    CHECK(run({.command = "kdv", .input = data_path("kdv.toml")}, &out) == 0);
    CHECK(out.find("mass_drift") != std::string::npos);

    // Bad parameters are usage errors.
    RunOptions bad{.command = "kdv"};
    bad.kdv_n = 3;
    CHECK_THROWS_AS(run(bad), StructureError);
    RunOptions bad_dt{.command = "kdv"};
    bad_dt.kdv_dt = "fast";
    CHECK_THROWS_AS(run(bad_dt), StructureError);
}

TEST_CASE("kdv structure files reject mixing with anchor sections") {
    std::string mixed = "[kdv]\nn = 16\n[anchor]\ndimension = 2\n"
                        "images = [[\"0\", \"1\"], [\"-1\", \"0\"]]\n";
    CHECK_THROWS_AS(load_structure_text(mixed, false), StructureError);
    // And anchor inputs cannot drive the kdv command.
    CHECK_THROWS_AS(run({.command = "kdv", .input = data_path("so3.toml")}), StructureError);
    // Nor can a kdv input drive check.
    CHECK_THROWS_AS(run({.command = "check", .input = data_path("kdv.toml")}), StructureError);
}

TEST_CASE("serial mode produces the same verdicts as parallel") {
    std::string out_par;
    std::string out_ser;
    RunOptions par{.command = "check", .input = data_path("pn_so3.toml")};
    RunOptions ser = par;
    ser.mode = ExecMode::serial;
    CHECK(run(par, &out_par) == 0);
    CHECK(run(ser, &out_ser) == 0);
    CHECK(out_par == out_ser);
}
