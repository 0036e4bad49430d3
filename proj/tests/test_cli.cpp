#include <filesystem>

#include <gtest/gtest.h>

#include "pipeline.hpp"
#include "problem.hpp"

using namespace noether;
using namespace noether::cli;

namespace {

const std::string kDir = NOETHER_FIXTURE_DIR;

const char* kSpin = R"(format = 1
[problem]
name = spin
coordinates = x
order = 2
lagrangian = 1/2*(x''^2 - \
              x'^2)   # continued
[numeric]
initial = 1, 1/2, -1, 1/5
t_end = 1
step = 0.01
[expected]
generators = 5
integral = x' + x'''
)";

std::string input_error(const std::string& text) {
    try {
        parse_problem(text, "f.noether");
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InputError);
        return e.detail();
    }
    ADD_FAILURE() << "accepted:\n" << text;
    return {};
}

std::string with(const std::string& extra) { return std::string(kSpin) + extra; }

}  // namespace

TEST(ProblemFile, ParsesSections) {
    const auto p = parse_problem(kSpin);
    EXPECT_EQ(p.name, "spin");
    EXPECT_EQ(p.order, 2);
    EXPECT_EQ(p.lagrangian.line, 6);
    EXPECT_EQ(parse_field(p, p.lagrangian, p.coordinates), parse("1/2*(x''^2 - x'^2)", {"x"}));
    ASSERT_TRUE(p.numeric.has_value());
    EXPECT_EQ(p.numeric->initial.front(), (std::vector<double>{1, 0.5, -1, 0.2}));
    EXPECT_EQ(p.expected_generators, 5);
    EXPECT_FALSE(p.ansatz.frequencies.has_value());
}

TEST(ProblemFile, AnsatzAndFrequencies) {
    auto p = parse_problem(with("[parameters]\nw = 3\n[ansatz]\nfrequencies = 1/2, w\ninverse_coords = true\n"));
    ASSERT_TRUE(p.ansatz.frequencies.has_value());
    EXPECT_EQ(*p.ansatz.frequencies, (std::vector<Rational>{Rational(1, 2), Rational(3)}));
    EXPECT_TRUE(p.ansatz.inverse_coords);
    p = parse_problem(with("[ansatz]\nfrequencies = none\n"));
    EXPECT_TRUE(p.ansatz.frequencies->empty());
}

TEST(ProblemFile, ErrorsCarryLineNumbers) {
    EXPECT_NE(input_error("[problem]\nname = a\n").find("format = 1"), std::string::npos);
    EXPECT_NE(input_error(with("[bogus]\n")).find("f.noether:15:"), std::string::npos);
    EXPECT_NE(input_error(with("[ansatz]\nzeta_degree = two\n")).find(":16:"), std::string::npos);
    EXPECT_NE(input_error(with("[ansatz]\nfrequencies = x\n")).find("not a rational constant"), std::string::npos);
    input_error(with("[parameters]\nx = 1\n"));
    input_error("format = 1\n[problem]\nname = a\ncoordinates = x\norder = 0\nlagrangian = x\n");
    input_error("format = 2\n");
}

TEST(ProblemFile, FieldErrorsPointAtTheLine) {
    const auto p = parse_problem(with("[transform]\nprimed_coordinates = u\nt_of = t\nx_of = u^\ncyclic = u\n"));
    try {
        parse_field(p, p.transform->x_of[0], p.transform->primed_coordinates);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
        EXPECT_NE(e.detail().find("<input>:18:"), std::string::npos) << e.what();
    }
}

TEST(Pipeline, SolveReport) {
    const auto res = run_solve(parse_problem(kSpin), RunOptions{});
    EXPECT_EQ(res.exit_code, kPass) << render_machine(res.report);
    const auto& r = res.report;
    EXPECT_EQ(r["sigma"], 1);
    EXPECT_EQ(r["determining_system"]["nullity"], 5);
    EXPECT_EQ(r["generators"].size(), 5u);
    EXPECT_TRUE(r["expected"]["integrals"][0]["contained"].get<bool>());
    EXPECT_FALSE(r.contains("timings_ms"));
    EXPECT_EQ(r["status"], "pass");
}

TEST(Pipeline, WrongExpectationsFailWithAssertionCode) {
    auto p = parse_problem(with("integral = x*x'\n"));
    auto res = run_solve(p, RunOptions{});
    EXPECT_EQ(res.exit_code, kAssertionFailure);
    p = parse_problem(std::string(kSpin).replace(std::string(kSpin).find("generators = 5"), 14, "generators = 4"));
    EXPECT_EQ(run_solve(p, RunOptions{}).exit_code, kAssertionFailure);
    // A tolerance below the achievable drift fails the numeric stage.
    RunOptions tight;
    tight.tol_abs = 0.0;
    tight.tol_rel = 0.0;
    EXPECT_EQ(run_verify(parse_problem(kSpin), tight).exit_code, kAssertionFailure);
}

TEST(Pipeline, ZeroHorizonWarns) {
    const auto p = parse_problem(std::string(kSpin).replace(std::string(kSpin).find("t_end = 1"), 9, "t_end = 0"));
    const auto res = run_verify(p, RunOptions{});
    EXPECT_EQ(res.exit_code, kPass);
    ASSERT_FALSE(res.report["warnings"].empty());
    EXPECT_NE(res.report["warnings"][0].get<std::string>().find("t_end = 0"), std::string::npos);
}

TEST(Pipeline, TransformNeedsSection) {
    try {
        run_transform(parse_problem(kSpin), RunOptions{});
        FAIL();
    } catch (const Error& e) {
        const auto res = error_result("transform", "spin", e);
        EXPECT_EQ(res.exit_code, kInputError);
        EXPECT_EQ(res.report["status"], "input_error");
    }
}

TEST(Pipeline, ReportsAreDeterministic) {
    const auto p = load_problem(kDir + "/cs_particle.noether");
    RunOptions o;
    o.seed = 42;
    EXPECT_EQ(render_machine(run_solve(p, o).report), render_machine(run_solve(p, o).report));
    const auto human = render_human(run_solve(p, o).report);
    EXPECT_NE(human.find("status: pass"), std::string::npos);
}

TEST(Pipeline, AllFixturesPass) {
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(kDir)) {
        if (entry.path().extension() != ".noether") continue;
        const auto p = load_problem(entry.path().string());
        const auto res = p.transform ? run_transform(p, RunOptions{}) : run_solve(p, RunOptions{});
        EXPECT_EQ(res.exit_code, kPass) << entry.path() << "\n" << render_machine(res.report);
        ++seen;
    }
    EXPECT_EQ(seen, 12);
}
