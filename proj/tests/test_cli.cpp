#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sparsefactor/cli.hpp"
#include "support.hpp"

using json = nlohmann::json;

namespace {

const std::string kDir = SF_GOLDEN_DIR;

struct Run {
    int code;
    std::string out;
};

Run run(std::vector<std::string> args) {
    for (auto& a : args)
        if (!a.empty() && a[0] == '@') a = "@" + kDir + "/" + a.substr(1);
    std::ostringstream out, err;
    int code = sf::cli::run(args, out, err);
    return {code, out.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Compares with tests/golden/<name>.out; SF_UPDATE_GOLDEN=1 rewrites the file.
void golden(const std::string& name, const std::vector<std::string>& args, int want_code = 0) {
    Run r = run(args);
    CAPTURE(name);
    CHECK(r.code == want_code);
    const std::string path = kDir + "/" + name + ".out";
    if (std::getenv("SF_UPDATE_GOLDEN")) std::ofstream(path, std::ios::binary) << r.out;
    CHECK(r.out == slurp(path));
    CHECK(run(args).out == r.out);
}

}  // namespace

TEST_CASE("golden outputs") {
    golden("divides", {"divides", "--p", "7", "--d", "1", "--s", "2", "x1+1", "x1^2+2*x1+1"});
    golden("divisors_explicit", {"divisors", "--p", "5", "--d", "1", "--s", "4", "(x1+4)*(x2+4)"});
    golden("divisors_manifest", {"divisors", "--p", "5", "@product_f5.json"});
    golden("power_cube", {"power", "--p", "11", "--e", "3", "--manifest", kDir + "/cube_f11.json"});
    golden("power_square", {"power", "--p", "11", "--e", "2", "@cube_f11.json"});
    golden("factor_explicit", {"factor", "--p", "7", "--d", "2", "--s", "6", "(x1+1)^2*(x2+3)"});
    golden("factor_product", {"factor", "--p", "7", "@three_f7.json"});
    golden("factor_general", {"factor", "--general", "--p", "7", "@three_f7.json"});
    golden("multiquad", {"multiquad", "--p", "11", "@multiquad_f11.json"});
    golden("multiplicity", {"multiplicity", "--p", "11", "--d", "1", "--s", "2", "x1*x2+1", "@multiquad_f11.json"});
    golden("interp", {"interp", "--p", "5", "--d", "1", "--s", "2", "--fset", "x1+4", "--fset", "x2+4",
                      "@product_f5.json", "x2*(x2+4)"});
    golden("audit", {"audit", "--p", "5", "--d", "2", "--s", "4", "(x1^2-1)*(x2^2-1)"});
    golden("task_m", {"--task-m", "DIVISOR_ENUM", "--n", "2", "--s", "3", "--d", "1"});
    golden("selftest", {"selftest", "--count", "6", "--seed", "3", "--no-clock"});
    golden("bench", {"bench", "--p", "11", "--n", "2", "--d", "1", "--ell", "1", "--s-list", "2,3", "--no-clock"});
}

TEST_CASE("golden error outputs") {
    golden("err_syntax", {"factor", "--p", "7", "--d", "1", "--s", "2", "x1^"}, sf::cli::kUsageError);
    golden("err_not_prime", {"factor", "--p", "8", "--d", "1", "--s", "2", "x1+1"}, sf::cli::kUsageError);
    golden("err_char_mode", {"power", "--p", "2", "--k", "2", "--d", "1", "--e", "2", "x1+1"}, sf::cli::kAlgorithmError);
}

TEST_CASE("documented invocations") {
    Run a = run({"divides", "--p", "7", "--d", "1", "--s", "2", "x1+1", "x1^2+2*x1+1"});
    CHECK(json::parse(a.out)["divides"] == true);
    Run b = run({"divisors", "--p", "5", "--d", "1", "--s", "4", "@product_f5.json"});
    CHECK(json::parse(b.out)["count"] == 4);
    Run c = run({"power", "--p", "11", "--e", "3", "--manifest", kDir + "/cube_f11.json"});
    CHECK(json::parse(c.out)["is_power"] == true);
}

TEST_CASE("exit codes") {
    Run syn = run({"factor", "--p", "7", "--d", "1", "--s", "2", "x1^"});
    CHECK(syn.code == sf::cli::kUsageError);
    json j = json::parse(syn.out);
    CHECK(j["error_kind"] == "SyntaxError");
    CHECK(j["column"] == 4);
    CHECK(run({"factor", "--p", "7", "--d", "1", "--s", "2", "x1+9"}).code == sf::cli::kUsageError);
    CHECK(run({"factor", "--d", "1", "--s", "2", "x1+1"}).code == sf::cli::kUsageError);
    CHECK(run({"factor", "--p", "7", "--s", "2", "x1+1"}).code == sf::cli::kUsageError);
    CHECK(run({"factor", "--p", "7", "--d", "1", "--s", "2", "--bogus", "x1+1"}).code == sf::cli::kUsageError);
    CHECK(run({"nosuch"}).code == sf::cli::kUsageError);
    CHECK(run({"divides", "--p", "7", "--d", "1", "x1+1"}).code == sf::cli::kUsageError);
    CHECK(run({"divisors", "--p", "5", "@missing.json"}).code == sf::cli::kUsageError);
    CHECK(run({"power", "--p", "2", "--k", "2", "--d", "1", "--e", "2", "x1+1"}).code == sf::cli::kAlgorithmError);
    CHECK(run({"--help"}).code == sf::cli::kOk);
}

TEST_CASE("output is canonical JSON with the schema tag") {
    Run r = run({"factor", "--p", "7", "--d", "2", "--s", "6", "(x1+1)^2*(x2+3)"});
    json j = json::parse(r.out);
    CHECK(j["schema"] == "sparsefactor/1");
    CHECK(j["command"] == "factor");
    CHECK(j["generator"].contains("m"));
    CHECK(r.out == j.dump() + "\n");
}
