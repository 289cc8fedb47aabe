#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "tarry/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = tarry::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

void leaves(const json& j, std::vector<std::string>& out) {
    if (j.is_structured()) {
        for (const auto& x : j) leaves(x, out);
    } else if (j.is_number()) {
        out.push_back(j.dump());
    }
}

std::vector<std::string> corpus_files() {
    std::vector<std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(TARRY_CORPUS_DIR))
        if (e.path().extension() == ".json") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("analyze the product example") {
        auto r = run({"analyze", "--poly", oracle::corpus("prod22.json")});
        REQUIRE(r.code == 0);
        auto d = r.doc();
        CHECK(d["schema"] == "tarry-report/1");
        CHECK(d["command"] == "analyze");
        CHECK(d["config"]["seed"] == 42);
        const auto& rep = d["report"];
        CHECK(rep["rho"] == 1);
        CHECK(rep["structure"] == json::array({1, 1}));
        CHECK(rep["real_thresholds"]["gamma_low"]["exact"] == "4");
        CHECK(rep["real_thresholds"]["gamma_high"]["exact"] == "4");
        CHECK(rep["senior_form"]["full"] == true);
        CHECK(rep["decomposition"]["decomposable"] == false);
        CHECK(rep["v_max"] == 0);
    }

    TEST_CASE("order the example set") {
        auto r = run({"order", "--poly", oracle::corpus("example9.json")});
        REQUIRE(r.code == 0);
        CHECK(r.doc()["report"]["monomials"] ==
              json::parse("[[0,1],[1,0],[0,2],[1,1],[2,0],[0,3],[1,2],[2,1],[3,0]]"));
        CHECK(r.doc()["report"]["high_member"] == json::array({3, 0}));
    }

    TEST_CASE("verify the Hessian identity") {
        auto r = run({"verify", "--lemma2", "--exponents", "1,1"});
        REQUIRE(r.code == 0);
        const auto c = r.doc()["report"]["checks"][0];
        CHECK(c["pass"] == true);
        CHECK(c["max_rel_err"].get<double>() < 1e-9);
        auto s = run({"verify", "--lemma2", "--exponents", "2,1", "--trials", "1000", "--seed", "7"});
        REQUIRE(s.code == 0);
        CHECK(s.doc()["report"]["checks"][0]["trials"] == 1000);
        CHECK(s.doc()["config"]["seed"] == 7);
    }

    TEST_CASE("verify records") {
        auto r = run({"verify", "--prop3", "--poly", oracle::corpus("example9.json"), "--trials", "200", "--lemma1", "4",
                      "3", "--singular", "--k", "5", "--lambda", "1e-12"});
        REQUIRE(r.code == 0);
        const auto checks = r.doc()["report"]["checks"];
        REQUIRE(checks.size() == 3);
        for (const auto& c : checks)
            for (auto key : {"check", "trials", "passes", "fraction", "pass"}) CHECK(c.contains(key));
        auto fail = run({"verify", "--singular", "--poly", oracle::corpus("prod22.json"), "--lambda", "inf", "--trials", "20"});
        CHECK(fail.code == 3);
        CHECK(fail.doc()["report"]["pass"] == false);
    }

    TEST_CASE("input errors are machine readable") {
        auto unknown = run({"bounds", "--poly", oracle::corpus("prod22.json"), "--bogus"});
        CHECK(unknown.code == 2);
        CHECK(unknown.doc()["error"]["kind"] == "usage");
        auto missing = run({"bounds", "--poly", "/nonexistent.json"});
        CHECK(missing.code == 2);
        CHECK(missing.doc()["error"]["kind"] == "input");

        const auto tmp = std::filesystem::temp_directory_path() / "tarry_bad_shape.json";
        std::ofstream(tmp) << R"({"r": 2, "monomials": [[1, 0], [0, 0]]})";
        auto bad = run({"analyze", "--poly", tmp.string()});
        CHECK(bad.code == 2);
        CHECK(bad.doc()["error"]["message"].get<std::string>().find("degree") != std::string::npos);
        std::filesystem::remove(tmp);

        CHECK(run({"verify"}).code == 2);
        CHECK(run({}).code == 2);
        CHECK(run({"estimate", "--poly", oracle::corpus("line1.json"), "--two-k", "3"}).code == 2);
        CHECK(run({"verify", "--singular", "--poly", oracle::corpus("line1.json"), "--lambda", "abc"}).code == 2);
        auto text = run({"bounds", "--format", "text", "--poly", "/nonexistent.json"});
        CHECK(text.code == 2);
        CHECK(text.out.find("error.kind: input") != std::string::npos);
    }

    TEST_CASE("json reports are stable and text is a projection") {
        for (const auto& f : corpus_files())
            for (auto cmd : {"analyze", "bounds", "order"}) {
                auto a = run({cmd, "--poly", f});
                auto b = run({cmd, "--poly", f});
                REQUIRE(a.code == 0);
                CHECK(a.out == b.out);
                auto t = run({cmd, "--poly", f, "--format", "text"});
                std::vector<std::string> nums;
                leaves(a.doc()["report"], nums);
                for (const auto& n : nums) CHECK_MESSAGE(t.out.find(n) != std::string::npos, f << " " << n);
            }
    }

    TEST_CASE("bounds text names the theorems") {
        auto t = run({"bounds", "--poly", oracle::corpus("line2.json"), "--format", "text"});
        CHECK(t.out.find("gamma_low = 4 (T1, T2)") != std::string::npos);
        CHECK(t.out.find("convergent for 2k >= 6 [T3]") != std::string::npos);
    }

    TEST_CASE("estimate report") {
        auto r = run({"estimate", "--poly", oracle::corpus("line1.json"), "--two-k", "4", "--samples", "512", "--shells",
                      "4", "--a-max", "16"});
        REQUIRE(r.code == 0);
        const auto rep = r.doc()["report"];
        CHECK(rep["shells"].size() == 4);
        for (auto key : {"slope", "classification", "agreement_with_bounds", "theta_truncated"}) CHECK(rep.contains(key));
    }
}
