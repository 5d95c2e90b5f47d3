#include "torickit/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace torickit;

namespace {

JobSpec job(const std::string& command, const std::string& example) {
    JobSpec j;
    j.command = command;
    j.example = example;
    return j;
}

std::string data_file(const std::string& name) { return std::string(TORICKIT_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Catalog, ContainsTheExamples) {
    std::vector<std::string> names;
    for (const auto& e : catalog()) names.push_back(e.name);
    for (const char* n : {"conifold", "c2-diagonal", "kp2", "p12"})
        EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
    EXPECT_NE(catalog_entry("conifold").description.find("Atiyah flop"), std::string::npos);
    EXPECT_THROW(catalog_entry("nope"), InputError);
}

TEST(Json, CatalogRoundTrip) {
    for (const auto& e : catalog()) {
        const Json j = git_data_json(e.data, e.specialization);
        const auto back = git_data_from_json(Json::parse(j.dump()));
        EXPECT_EQ(back.data, e.data) << e.name;
        EXPECT_EQ(back.specialization.has_value(), e.specialization.has_value());
        if (e.specialization) {
            EXPECT_EQ(*back.specialization, *e.specialization);
        }
    }
}

TEST(Json, RationalsAreStrings) {
    const GITData data(1, IntMatrix{{1, 2}}, {make_rational(3, 2)});
    const Json j = git_data_json(data);
    EXPECT_EQ(j["omega"][0], "3/2");
    EXPECT_EQ(git_data_from_json(j).data.omega[0], make_rational(3, 2));
}

TEST(Json, RejectionsNameTheField) {
    auto message = [](const std::string& text) {
        try {
            git_data_from_json(Json::parse(text));
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string("accepted");
    };
    EXPECT_EQ(message(R"({"r":1,"m":1,"weights":[[1]],"omega":["1"],"colour":2})"), "colour: unknown field");
    EXPECT_EQ(message(R"({"r":1,"m":1,"weights":[[1]]})"), "omega: missing field");
    EXPECT_EQ(message(R"({"r":1,"m":2,"weights":[[1]],"omega":["1"]})").substr(0, 8), "weights:");
    EXPECT_EQ(message(R"({"r":1,"m":1,"weights":[[1]],"omega":["1/0"]})").substr(0, 6), "omega:");
    EXPECT_EQ(message(R"({"r":1,"m":1,"weights":[[1.5]],"omega":["1"]})").substr(0, 8), "weights:");
}

TEST(Json, ClassRoundTrip) {
    EquivClass E = EquivClass::line({Integer(2)}, {Integer(0), Integer(-1)}, 3) + EquivClass::twist(2, -1);
    EXPECT_EQ(class_from_json(Json::parse(class_json(E).dump()), 1, 2), E);
    EXPECT_THROW(class_from_json(Json::parse(R"([{"u":[1],"s":[0,0],"k":1}])"), 1, 2), InputError);
}

TEST(ClassSpec, Sugar) {
    EXPECT_EQ(parse_class("O(3)", 1, 4), EquivClass::twist(4, 3));
    EXPECT_EQ(parse_class("2*O(1) - O(-1)", 1, 2),
              EquivClass::twist(2, 1) + EquivClass::twist(2, 1) - EquivClass::twist(2, -1));
    EXPECT_EQ(parse_class(R"([{"u":[1],"s":[0,1],"coeff":1}])", 1, 2), EquivClass::line({Integer(1)}, {Integer(0), Integer(1)}));
    EXPECT_EQ(parse_class("O(0)", 0, 2), EquivClass::structure_sheaf(0, 2));
    EXPECT_THROW(parse_class("O(x)", 1, 2), InputError);
    EXPECT_THROW(parse_class("O(1", 1, 2), InputError);
    EXPECT_THROW(parse_class("O(1)", 2, 3), InputError);
    EXPECT_THROW(parse_class("/no/such/file.json", 1, 2), InputError);
}

TEST(Run, HrrCheckDiagonalPlane) {
    JobSpec j = job("hrr-check", "c2-diagonal");
    j.order = 4;
    const auto res = run(j);
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_NE(res.report.find("5/12"), std::string::npos);
    EXPECT_NE(res.report.find("-1/12*l"), std::string::npos);
    j.json = true;
    const Json out = Json::parse(run(j).report);
    EXPECT_TRUE(out["equal"].get<bool>());
    EXPECT_EQ(out["rhs"]["0"], "5/12");
    EXPECT_EQ(out["rhs"]["1"], "-1/12*l");
    EXPECT_TRUE(out["first_mismatch_degree"].is_null());
}

TEST(Run, TruncationFromEnvironment) {
    JobSpec j = job("hrr-check", "c2-diagonal");
    j.json = true;
    ::setenv("TORICKIT_TRUNCATION", "2", 1);
    const Json out = Json::parse(run(j).report);
    ::unsetenv("TORICKIT_TRUNCATION");
    EXPECT_TRUE(out["lhs"].contains("2"));
    EXPECT_FALSE(out["lhs"].contains("3"));
    ::setenv("TORICKIT_TRUNCATION", "many", 1);
    EXPECT_EQ(run(j).exit_code, 2);
    ::unsetenv("TORICKIT_TRUNCATION");
}

TEST(Run, AntiDiagonalIsRefused) {
    const auto res = run(job("euler", "c2-antidiagonal"));
    EXPECT_EQ(res.exit_code, 1);
    EXPECT_NE(res.report.find("convergence certificate failed"), std::string::npos);
}

TEST(Run, WallcrossConifold) {
    JobSpec j = job("wallcross", "conifold");
    const auto text = run(j);
    EXPECT_EQ(text.exit_code, 0);
    EXPECT_NE(text.report.find("(1,1,-1,-1,0)"), std::string::npos);
    EXPECT_NE(text.report.find("(-1,-1,0,0,1)"), std::string::npos);
    j.json = true;
    const Json out = Json::parse(run(j).report);
    for (const char* key : {"wall", "e", "crepant", "eta", "extended_weights", "chambers", "loci"})
        EXPECT_TRUE(out.contains(key)) << key;
    EXPECT_EQ(out["chambers"]["tilde"], "{s1+s2<0, s2<0}");
    EXPECT_EQ(out["loci"]["C~"], "{(z1,z2)!=0, (z3,z4)!=0}");
    EXPECT_EQ(out["eta"], Json::array({2, 2}));
}

TEST(Run, WindowsAndFm) {
    JobSpec j = job("windows", "kp2");
    j.lift = "O(3)";
    j.json = true;
    const Json out = Json::parse(run(j).report);
    EXPECT_TRUE(out["lift"]["restricts_to_input"].get<bool>());
    EXPECT_EQ(out["window"], "[0,3)");
    EXPECT_EQ(run(job("fm-check", "conifold")).exit_code, 0);
    JobSpec wrong = job("fm-check", "conifold");
    wrong.window_base = 1;
    EXPECT_EQ(run(wrong).exit_code, 1);
    JobSpec pair = job("windows", "conifold");
    pair.check_fm = std::make_pair("O(1)", "O(-1)");
    EXPECT_EQ(run(pair).exit_code, 0);
}

TEST(Run, CommandsOnFiles) {
    JobSpec j;
    j.command = "anticones";
    j.data_path = data_file("conifold.json");
    const auto res = run(j);
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_NE(res.report.find("semistable locus: {(z1,z2)!=0}"), std::string::npos);
    j.command = "validate";
    EXPECT_EQ(run(j).exit_code, 0);
    j.command = "fixed-points";
    EXPECT_EQ(run(j).exit_code, 0);
    j.command = "wallcross";
    j.omega_minus = "-1";
    EXPECT_EQ(run(j).exit_code, 0);
}

TEST(Run, InputErrorsExitTwo) {
    JobSpec j;
    j.command = "validate";
    j.data_path = data_file("malformed.json");
    EXPECT_EQ(run(j).exit_code, 2);
    j.data_path = data_file("missing.json");
    EXPECT_EQ(run(j).exit_code, 2);
    EXPECT_EQ(run(job("frobnicate", "conifold")).exit_code, 2);
    EXPECT_EQ(run(job("euler", "unknown-example")).exit_code, 2);
    JobSpec bad = job("wallcross", "conifold");
    bad.omega_minus = "2";
    EXPECT_EQ(run(bad).exit_code, 2);
    JobSpec noncrepant;
    noncrepant.command = "windows";
    noncrepant.data_path = data_file("noncrepant.json");
    noncrepant.omega_minus = "-1";
    EXPECT_EQ(run(noncrepant).exit_code, 2);
}

TEST(Run, EveryJsonReportParses) {
    for (const std::string cmd : {"validate", "anticones", "fixed-points", "euler", "hrr-check", "wallcross", "windows", "fm-check"}) {
        JobSpec j = job(cmd, "conifold");
        j.json = true;
        j.order = 2;
        const auto res = run(j);
        EXPECT_EQ(res.exit_code, 0) << cmd << ": " << res.report;
        EXPECT_TRUE(Json::accept(res.report)) << cmd;
    }
    JobSpec c;
    c.command = "catalog";
    c.json = true;
    EXPECT_TRUE(Json::parse(run(c).report).is_array());
}
