#include "uavmec/config.hpp"
#include "uavmec/errors.hpp"

#include <catch_amalgamated.hpp>

#include <string>

using namespace uavmec;
using namespace uavmec::config;

TEST_CASE("empty text gives the reference defaults")
{
    const auto cfg = parse_config("");
    CHECK(canonical_text(cfg.spec) == canonical_text(defaults().spec));
    CHECK(cfg.spec.radio.band.kind == channel::BandKind::MmWave);
    CHECK(cfg.spec.deployment.bs_density == 2e-7);
    CHECK(cfg.spec.q_bits == 2e9);
    CHECK(cfg.source("deployment.lambda_c") == Source::Default);
}

TEST_CASE("band defaults follow band.kind")
{
    const auto sub6 = parse_config("band:\n  kind: sub6\n");
    CHECK(sub6.spec.radio.band.carrier_hz == 2e9);
    CHECK(sub6.spec.radio.band.bandwidth_hz == 1e6);
    CHECK(sub6.spec.radio.array.m_elems == 1);
    const auto thz = parse_config("band:\n  kind: thz\n");
    CHECK(thz.spec.radio.band.carrier_hz == 350e9);
    CHECK(thz.spec.radio.band.bandwidth_hz == 1e9);
    CHECK(thz.spec.radio.array.m_elems == 16);
    CHECK(thz.spec.radio.array.mismatch_sigma_deg == 3.0);
    CHECK(thz.source("band.kind") == Source::File);
    CHECK(thz.source("band.f_c") == Source::Default);

    SECTION("explicit values survive a band switch")
    {
        const auto cfg = parse_config("band:\n  bw: 400\n  kind: thz\n");
        CHECK(cfg.spec.radio.band.bandwidth_hz == 400e6);
        CHECK(cfg.spec.radio.band.carrier_hz == 350e9);
    }
}

TEST_CASE("command-line overrides win over the file")
{
    const auto cfg = parse_config("q_bits: 1e9\n", {{"q_bits", "4e9"}, {"v", "20"}});
    CHECK(cfg.spec.q_bits == 4e9);
    CHECK(cfg.spec.velocity == 20.0);
    CHECK(cfg.source("q_bits") == Source::Flag);
    CHECK(cfg.source("strategy") == Source::Default);
    const auto thz = parse_config("", {{"band.kind", "thz"}});
    CHECK(thz.spec.radio.band.carrier_hz == 350e9);
    CHECK(thz.source("band.kind") == Source::Flag);
}

TEST_CASE("invalid configurations")
{
    SECTION("carrier outside the THz fit")
    {
        CHECK_THROWS_AS(parse_config("band:\n  kind: thz\n  f_c: 200\n"), ValidationError);
        CHECK_NOTHROW(parse_config("band:\n  kind: thz\n  f_c: 200\n", {}, false));
    }
    SECTION("unknown field names the line")
    {
        try {
            parse_config("q_bits: 1e9\ndeployment:\n  lambda: 1e-7\n");
            FAIL("expected a ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
            CHECK(e.field() == "deployment.lambda");
        }
    }
    SECTION("malformed number")
    {
        try {
            parse_config("\nv: fast\n");
            FAIL("expected a ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(e.field() == "v");
        }
    }
    SECTION("bad enum and bad override")
    {
        CHECK_THROWS_AS(parse_config("strategy: D\n"), ParseError);
        CHECK_THROWS_AS(parse_config("", {{"nope", "1"}}), ParseError);
        CHECK_THROWS_AS(parse_config("v: -1\n"), ValidationError);
    }
}

TEST_CASE("describe annotates unit and source")
{
    auto cfg = parse_config("q_bits: 4e9\n", {{"v", "15"}});
    const std::string text = describe(cfg);
    CHECK(text.find("lambda_c: 2e-7  # 1/m² (default, reference)") != std::string::npos);
    CHECK(text.find("q_bits: 4e9  # bit (file)") != std::string::npos);
    CHECK(text.find("v: 15  # m/s (flag)") != std::string::npos);
    CHECK(text.find("f_c: 30  # GHz (default, reference)") != std::string::npos);
}

TEST_CASE("describe output parses back to the same configuration")
{
    for (auto overrides : {Overrides{}, Overrides{{"band.kind", "thz"}, {"q_bits", "1.234567891e10"}},
                           Overrides{{"band.kind", "sub6"}, {"deployment.r0_mode", "sampled"}, {"strategy", "C"}},
                           Overrides{{"band.f_c", "28.123456789"}, {"radio.p_tx", "0.1"}}}) {
        const auto cfg = parse_config("", overrides);
        const auto again = parse_config(describe(cfg));
        CHECK(canonical_text(again.spec) == canonical_text(cfg.spec));
    }
}

TEST_CASE("field registry")
{
    CHECK(find_field("deployment.lambda_c") != nullptr);
    CHECK(find_field("deployment.lambda") == nullptr);
    for (const auto& f : fields()) {
        CHECK_FALSE(f.path.empty());
        CHECK_FALSE(f.description.empty());
        if (f.numeric)
            CHECK_NOTHROW(get_numeric(defaults().spec, f.path));
    }
    CHECK_THROWS_AS(get_numeric(defaults().spec, "band.kind"), ValidationError);
    CHECK(get_field(defaults().spec, "band.kind") == "mmwave");
    CHECK(get_numeric(defaults().spec, "band.f_c") == 30e9);
}

TEST_CASE("number formatting round-trips")
{
    CHECK(format_number(2e-7) == "2e-7");
    CHECK(format_number(2e9) == "2e9");
    CHECK(format_number(10.0) == "10");
    CHECK(format_number(0.19952623149688797) == "0.19952623149688797");
    for (double x : {1e-300, 3.141592653589793, 123456789.125, 6.02214076e23, -0.5})
        CHECK(parse_number(format_number(x), "x") == x);
    CHECK_THROWS_AS(parse_number("1e9x", "q_bits"), ParseError);
    CHECK_THROWS_AS(parse_number("", "q_bits"), ParseError);
}
