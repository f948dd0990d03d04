#include "uavmec/errors.hpp"
#include "uavmec/sweep.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace uavmec;
using namespace uavmec::sweep;

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
                cells.back() += line[++i];
            else if (c == '"')
                quoted = false;
            else
                cells.back() += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.emplace_back();
        } else {
            cells.back() += c;
        }
    }
    return cells;
}

std::string to_csv(const SweepSpec& s, const SweepResult& r)
{
    std::ostringstream out;
    write_csv(out, s, r);
    return out.str();
}

SweepSpec small_sweep()
{
    SweepSpec s;
    s.base = config::defaults();
    s.axis = "deployment.lambda_c";
    s.values = {1e-8, 1e-7, 1e-6};
    s.strategies = {parse_variant("B"), parse_variant("MR-B@10"), parse_variant("MR-C")};
    s.seeds = {1, 2};
    return s;
}

} // namespace

TEST_CASE("strategy variants")
{
    const auto v = parse_variant("MR-B@20");
    CHECK(v.strategy == scenario::Strategy::MoveReturnOffload);
    CHECK(v.velocity == 20.0);
    CHECK(v.label() == "MR-B@20");
    CHECK(parse_variant("C").label() == "C");
    CHECK_THROWS_AS(parse_variant("X@3"), ValidationError);
    CHECK_THROWS_AS(parse_variant("MR-B@fast"), ParseError);
}

TEST_CASE("grids")
{
    const auto g = log_space(1e-8, 1e-6, 41);
    REQUIRE(g.size() == 41);
    CHECK(g.front() == 1e-8);
    CHECK(g.back() == 1e-6);
    CHECK_THAT(g[20], Catch::Matchers::WithinRel(1e-7, 1e-12));
    const auto l = lin_space(0.1, 2.0, 20);
    CHECK(l.size() == 20);
    CHECK(l.back() == 2.0);
    CHECK(log_space(3.0, 5.0, 1) == std::vector<double>{3.0});
}

TEST_CASE("sweep validation")
{
    SweepSpec s = small_sweep();
    CHECK_NOTHROW(s.validate());
    s.values = {1e-6, 1e-8};
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s.values = {};
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = small_sweep();
    s.axis = "band.kind";
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s.axis = "no.such";
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = small_sweep();
    s.series_axis = "compute.c_cp";
    CHECK_THROWS_AS(s.validate(), ValidationError);
    CHECK_THROWS_AS(preset("fig9", config::defaults()), ValidationError);
}

TEST_CASE("preset shapes")
{
    const auto base = config::defaults();
    const auto f1 = preset("fig1", base);
    CHECK(f1.values.size() * f1.strategies.size() * f1.bands.size() == 246);
    const auto f2 = preset("fig2", base);
    CHECK(f2.values.size() * f2.strategies.size() == 123);
    const auto f3 = preset("fig3", base);
    CHECK(f3.axis == "q_bits");
    CHECK(f3.values.front() == 1e8);
    CHECK(f3.values.back() == 1e12);
    const auto f4 = preset("fig4", base);
    CHECK(f4.series_values.size() == 3);
    CHECK(f4.axis == "mass.m_cp");
}

TEST_CASE("a one-point sweep equals a direct evaluation")
{
    SweepSpec s;
    s.base = config::defaults();
    s.axis = "q_bits";
    s.values = {s.base.spec.q_bits};
    const auto r = run_sweep(s, 1);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].report.energy_j == scenario::evaluate(s.base.spec).energy_j);
    CHECK(r.rows[0].strategy == "MR-B");
}

TEST_CASE("rows come out in canonical order")
{
    const SweepSpec s = small_sweep();
    const auto r = run_sweep(s, 2);
    REQUIRE(r.rows.size() == 18);
    CHECK(r.rows[0].axis_value == 1e-8);
    CHECK(r.rows[0].strategy == "B");
    CHECK(r.rows[0].seed == 1);
    CHECK(r.rows[1].seed == 2);
    CHECK(r.rows[2].strategy == "MR-B@10");
    CHECK(r.rows[2].spec.velocity == 10.0);
    CHECK(r.rows[17].axis_value == 1e-6);
    CHECK(r.rows[17].strategy == "MR-C");
}

TEST_CASE("parallel output is byte-identical to the serial reference")
{
    const SweepSpec s = small_sweep();
    const std::string serial = to_csv(s, run_sweep_serial(s));
    CHECK(to_csv(s, run_sweep(s, 1)) == serial);
    CHECK(to_csv(s, run_sweep(s, 4)) == serial);
}

TEST_CASE("CSV layout")
{
    const SweepSpec s = small_sweep();
    std::istringstream in(to_csv(s, run_sweep(s, 1)));
    std::string comment, header, first;
    std::getline(in, comment);
    std::getline(in, header);
    std::getline(in, first);
    CHECK(comment.rfind("# uavmec 0.1.0 csv-v1 config-crc32=", 0) == 0);
    CHECK(comment.find("axis=deployment.lambda_c") != std::string::npos);
    CHECK(split_csv_line(header) == csv_columns());
    CHECK(split_csv_line(first).size() == csv_columns().size());

    SECTION("the hash follows the base configuration")
    {
        SweepSpec t = s;
        config::set_field(t.base, "q_bits", "3e9", config::Source::Flag);
        CHECK(csv_comment(t) != csv_comment(s));
        CHECK(csv_comment(s) == csv_comment(small_sweep()));
    }
}

TEST_CASE("every row re-evaluates from its config columns")
{
    SweepSpec s = small_sweep();
    s.bands = {channel::BandKind::Sub6, channel::BandKind::Thz};
    std::istringstream in(to_csv(s, run_sweep(s, 1)));
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    const auto header = split_csv_line(line);
    const auto energy_col = std::size_t(std::find(header.begin(), header.end(), "energy_j") - header.begin());
    int rows = 0;
    while (std::getline(in, line)) {
        const auto cells = split_csv_line(line);
        const auto spec = spec_from_row(header, cells);
        CHECK(config::format_number(scenario::evaluate(spec).energy_j) == cells[energy_col]);
        ++rows;
    }
    CHECK(rows == 36);
}

TEST_CASE("invalid points are skipped and logged")
{
    SweepSpec s;
    s.base = config::defaults(channel::BandKind::Thz);
    s.base.spec.strategy = scenario::Strategy::HoverOffload;
    s.axis = "geometry.h_u";
    s.values = {10.0, 30.0, 60.0};
    const auto tmp = std::filesystem::temp_directory_path() / "uavmec_skip_test.csv";
    auto side = tmp;
    side += ".skipped.log";

    const auto r = run_sweep(s, tmp, 1);
    CHECK(r.rows.size() == 2);
    REQUIRE(r.skipped.size() == 1);
    CHECK(r.skipped[0].axis_value == 10.0);
    REQUIRE(std::filesystem::exists(side));
    std::ifstream log(side);
    std::string text((std::istreambuf_iterator<char>(log)), std::istreambuf_iterator<char>());
    CHECK(text.find("axis=10") != std::string::npos);
    CHECK(text.find("22.5") != std::string::npos);

    s.values = {30.0};
    run_sweep(s, tmp, 1);
    CHECK_FALSE(std::filesystem::exists(side));
    std::filesystem::remove(tmp);
}

TEST_CASE("spec_from_row rejects a ragged row")
{
    CHECK_THROWS_AS(spec_from_row({"a", "b"}, {"1"}), ValidationError);
}
