#include "catch_amalgamated.hpp"

#include <filesystem>
#include <fstream>

#include "sumnorm/dataset_io.hpp"
#include "sumnorm/errors.hpp"

using namespace sumnorm;
using Catch::Matchers::ContainsSubstring;

namespace {

const std::filesystem::path kData{SUMNORM_DATA_DIR};

std::size_t count_outcome(const std::vector<Study>& studies, const std::string& outcome) {
    return static_cast<std::size_t>(std::count_if(studies.begin(), studies.end(),
                                                  [&](const Study& s) { return s.outcome == outcome; }));
}

}  // namespace

TEST_CASE("bundled datasets load", "[io]") {
    CHECK(parse_studies(kData / "zhang2017_leptin.csv").size() == 12);
    CHECK(parse_studies(kData / "zhang2017_adiponectin.csv").size() == 11);
    CHECK(parse_studies(kData / "ferretti2017_mmp9.csv").size() == 9);
    CHECK(parse_studies(kData / "ferretti2017_mmp3.csv").size() == 2);
    CHECK(parse_studies(kData / "ferretti2017_timp1.csv").size() == 3);
    CHECK(parse_studies(kData / "hawkins2017_bnp.csv").size() == 7);
    const auto lipids = parse_studies(kData / "banach2016_lipids.csv");
    CHECK(count_outcome(lipids, "total cholesterol") == 8);
    CHECK(count_outcome(lipids, "LDL-C") == 10);
    CHECK(count_outcome(lipids, "HDL-C") == 9);
    CHECK(count_outcome(lipids, "triglycerides") == 8);
    for (const auto& s : lipids) CHECK(s.warnings.empty());
}

TEST_CASE("multi-arm studies keep every subgroup", "[io]") {
    const auto studies = parse_studies(kData / "zhang2017_leptin.csv");
    const auto kim = std::find_if(studies.begin(), studies.end(), [](const Study& s) { return s.study_id == "Kim 2008"; });
    REQUIRE(kim != studies.end());
    CHECK(kim->case_groups.size() == 2);
    CHECK(kim->control_groups.size() == 1);
    CHECK(kim->case_groups[0].summary->q3 == 5.03);
}

TEST_CASE("csv details", "[io]") {
    const std::string text =
        "\xEF\xBB\xBF# comment\n"
        "outcome,study_id,arm,group_label,n,mean,sd,min,q1,median,q3,max\n"
        "\n"
        "y,\"Smith, 2001\",case,a,10,,NS,,1,2,3,\n"
        "y,\"Smith, 2001\",control,b,12,4.5,1.25,,,,,\n";
    const auto s = parse_studies_csv(text);
    REQUIRE(s.size() == 1);
    CHECK(s[0].study_id == "Smith, 2001");
    CHECK(s[0].case_groups[0].summary->median == 2.0);
    CHECK_FALSE(s[0].case_groups[0].reported_mean.has_value());
    CHECK(*s[0].control_groups[0].reported_sd == 1.25);
}

TEST_CASE("csv errors carry line numbers", "[io]") {
    CHECK_THROWS_AS(parse_studies_csv(""), ParseError);
    CHECK_THROWS_WITH(parse_studies_csv("study_id,outcome,arm,group_label,n,mean,sd,min,q1,median,q3,max\n"),
                      ContainsSubstring("no data rows"));
    try {
        (void)parse_studies_csv(
            "study_id,outcome,arm,group_label,n,mean,sd,min,q1,median,q3,max\n"
            "A,y,case,g,10,1,1,,,,,\n"
            "A,y,case,g,10,1,1,,,,\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_WITH(parse_studies_csv("study_id,outcome,arm,group_label,n,mean,sd,min,q1,median,q3,max\n"
                                        "A,y,case,g,10,1,1,,,,,\n"
                                        "A,y,control,g,10,1,1,,,,,\n"),
                      ContainsSubstring("line 3"));
    CHECK_THROWS_AS(parse_studies_csv("study_id,outcome,arm,group_label,n,mean,sd,min,q1,median,q3,max\n"
                                      "A,y,treated,g,10,1,1,,,,,\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_studies_csv("study_id,outcome,arm,group_label,n,mean,sd,min,q1,median,q3,max\n"
                                      "A,y,case,g,ten,1,1,,,,,\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_studies_csv("study_id,outcome,arm,group_label,n,mean,sd\nA,y,case,g,1,1,1\n"),
                    ParseError);
}

TEST_CASE("validation findings become warnings", "[io]") {
    const auto s = parse_studies_csv(
        "study_id,outcome,arm,group_label,n,mean,sd,min,q1,median,q3,max\n"
        "A,y,case,g,10,,,,5,4,6,\n");
    REQUIRE(s.size() == 1);
    REQUIRE(s[0].warnings.size() == 2);
    CHECK_THAT(s[0].warnings[0], ContainsSubstring("ordering violation"));
    CHECK_THAT(s[0].warnings[1], ContainsSubstring("control"));
}

TEST_CASE("json input mirrors csv", "[io]") {
    const std::string json = R"([
      {"study_id": "A", "outcome": "y", "arm": "case", "group_label": "g", "n": 26,
       "q1": 30, "median": 38, "q3": 60},
      {"study_id": "A", "outcome": "y", "arm": "control", "group_label": "h", "n": 50,
       "mean": 39.0, "sd": 12.5, "min": null}
    ])";
    const auto s = parse_studies_json(json);
    REQUIRE(s.size() == 1);
    CHECK(*s[0].case_groups[0].summary->q3 == 60.0);
    CHECK(*s[0].control_groups[0].reported_mean == 39.0);
    CHECK_THROWS_AS(parse_studies_json("[{\"study_id\": }"), ParseError);
    CHECK_THROWS_AS(parse_studies_json("{}"), ParseError);
}

TEST_CASE("round trip through csv and json", "[io]") {
    for (const char* name : {"zhang2017_leptin.csv", "zhang2017_adiponectin.csv", "banach2016_lipids.csv",
                             "ferretti2017_mmp9.csv", "ferretti2017_mmp3.csv", "ferretti2017_timp1.csv",
                             "hawkins2017_bnp.csv"}) {
        INFO(name);
        const auto original = parse_studies(kData / name);
        CHECK(parse_studies_csv(serialize_csv(original)) == original);
        CHECK(parse_studies_json(serialize_json(original)) == original);
    }
}

TEST_CASE("file-level errors name the path", "[io]") {
    CHECK_THROWS_WITH(parse_studies(kData / "does_not_exist.csv"), ContainsSubstring("does_not_exist.csv"));
    CHECK(format_from_path("x.JSON") == DataFormat::Json);
    CHECK(format_from_path("x.csv") == DataFormat::Csv);
}
