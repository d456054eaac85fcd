#include <doctest.h>

#include <cbgame/cbgame.h>

#include <json.hpp>

#include <string>

using nlohmann::json;

namespace {

const char* six_singletons =
    R"({"name":"six","ground":{"type":"finite","points":[0,1,2,3,4,5]},"covers":[{"label":"s","members":[{"set":[0]},{"set":[1]},{"set":[2]},{"set":[3]},{"set":[4]},{"set":[5]}]}]})";

} // namespace

TEST_CASE("space handles") {
    cbg_space* sp = nullptr;
    REQUIRE(cbg_space_parse(six_singletons, &sp) == CBG_II_WINS);
    REQUIRE(sp != nullptr);

    int covers = 0;
    CHECK(cbg_space_cover_count(sp, &covers) == CBG_II_WINS);
    CHECK(covers == 1);

    long long ground = 0;
    CHECK(cbg_space_ground_size(sp, &ground) == CBG_II_WINS);
    CHECK(ground == 6);

    char* fp1 = cbg_space_fingerprint(sp);
    char* fp2 = cbg_space_fingerprint(sp);
    REQUIRE(fp1 != nullptr);
    REQUIRE(fp2 != nullptr);
    CHECK(std::string(fp1) == fp2);
    CHECK(std::string(fp1).size() == 16);
    cbg_string_free(fp1);
    cbg_string_free(fp2);

    char* dump = cbg_space_dump(sp);
    REQUIRE(dump != nullptr);
    CHECK(json::parse(dump).at("name") == "six");
    cbg_string_free(dump);

    cbg_space_free(sp);
}

TEST_CASE("solve through the shared library") {
    cbg_space* sp = nullptr;
    REQUIRE(cbg_space_parse(six_singletons, &sp) == CBG_II_WINS);
    char* report = nullptr;
    int rc = cbg_solve(sp, R"({"horizon":5,"budgets":1,"win":{"type":"cover"}})", &report);
    CHECK(rc == CBG_I_WINS);
    REQUIRE(report != nullptr);
    CHECK(json::parse(report).at("verdict") == "I-wins");
    cbg_string_free(report);

    rc = cbg_solve(sp, R"({"horizon":6,"budgets":1,"win":{"type":"cover"}})", &report);
    CHECK(rc == CBG_II_WINS);
    cbg_string_free(report);
    cbg_space_free(sp);
}

TEST_CASE("play through the shared library") {
    cbg_space* sp = nullptr;
    REQUIRE(cbg_space_parse(six_singletons, &sp) == CBG_II_WINS);
    char* report = nullptr;
    int rc = cbg_play(sp, R"({"horizon":6,"budgets":1,"win":{"type":"cover"}})",
                      R"({"i-seq":[0,0,0,0,0,0],"strategy":"oracle"})", &report);
    CHECK(rc == CBG_II_WINS);
    REQUIRE(report != nullptr);
    auto j = json::parse(report);
    CHECK(j.at("transcripts").size() == 1);
    cbg_string_free(report);
    cbg_space_free(sp);
}

TEST_CASE("run specs and error codes") {
    char* report = nullptr;
    int rc = cbg_run_json(R"({"command":"corpus","params":{"max-x":2,"max-covers":1,"max-members":2}})", &report);
    CHECK(rc == CBG_II_WINS);
    CHECK(json::parse(report).at("count") == 4);
    cbg_string_free(report);

    rc = cbg_run_json("{not json", &report);
    CHECK(rc == CBG_EINPUT);
    CHECK(std::string(cbg_last_error()).size() > 0);
    cbg_string_free(report);

    rc = cbg_run_json(R"({"command":"solve"})", &report);
    CHECK(rc == CBG_EINPUT);
    CHECK(json::parse(report).at("exit") == 3);
    cbg_string_free(report);

    cbg_space* sp = nullptr;
    CHECK(cbg_space_parse("]", &sp) == CBG_EINPUT);
    CHECK(cbg_space_parse(R"({"ground":{"type":"finite","points":[]},"covers":[]})", &sp) == CBG_EINPUT);
}

TEST_CASE("version") {
    CHECK(cbg_version_major() >= 1);
    CHECK(cbg_version_minor() >= 0);
}
