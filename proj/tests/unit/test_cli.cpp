#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "delaystab/cli.hpp"
#include "delaystab/error.hpp"
#include "delaystab/io.hpp"
#include "delaystab/plot.hpp"

using namespace delaystab;

namespace {

const std::string kData = DELAYSTAB_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("numbers and rationals", "[io]") {
  CHECK(io::parse_number(io::json(2.5)) == 2.5);
  CHECK(io::parse_number(io::json("163/20")) == 163.0 / 20);
  CHECK(io::parse_number(io::json("-31/20")) == -31.0 / 20);
  CHECK(io::parse_number(io::json("0.125")) == 0.125);
  CHECK_THROWS_AS(io::parse_number(io::json("1/0")), Error);
  CHECK_THROWS_AS(io::parse_number(io::json("abc")), Error);
  CHECK_THROWS_AS(io::parse_number(io::json("3/4x")), Error);
  CHECK_THROWS_AS(io::parse_number(io::json::array()), Error);
}

TEST_CASE("system files", "[io]") {
  const DelaySystem p = io::load_system(kData + "/example1.json");
  CHECK(p.coeffs()[1][2] == 163.0 / 20);
  const DelaySystem ss = io::load_system(kData + "/example1_ss.json");
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(ss.coeffs()[k][j] - p.coeffs()[k][j]) <= 1e-9 * std::max(1.0, std::abs(p.coeffs()[k][j])));

  const auto no_alpha = io::system_from_json(io::json::parse(R"({"P": [[1, 2]], "tau": 1})"));
  CHECK(no_alpha.alpha() == 1.0);
  CHECK(no_alpha.is_delay_free());

  CHECK_THROWS_AS(io::system_from_json(io::json::parse(R"({"P": [[1, 2]], "A0": [[1]], "tau": 1})")), Error);
  CHECK_THROWS_AS(io::system_from_json(io::json::parse(R"({"P": [[1, 2]], "tau": 1, "beta": 2})")), Error);
  CHECK_THROWS_AS(io::system_from_json(io::json::parse(R"({"P": [[1, 2]]})")), Error);
  CHECK_THROWS_AS(io::system_from_json(io::json::parse(R"({"P": [[1, 2], [0, 1]], "n": [1.5], "tau": 1})")), Error);
  CHECK_THROWS_AS(io::load_system(kData + "/missing.json"), Error);
}

TEST_CASE("analysis JSON uses the published keys", "[cli]") {
  const Run r = run({"analyze", kData + "/example1.json", "--format", "json"});
  REQUIRE(r.code == 0);
  const io::json doc = io::json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& item : doc.items()) keys.push_back(item.key());
  CHECK(keys == std::vector<std::string>{"Type", "AsympStability", "RootsNoDelay", "RootsChain",
                                         "CrossingTable", "ImaginaryRoots", "Warnings"});
  CHECK(doc["Type"] == "Retarded");
  CHECK(doc["CrossingTable"].size() == 1);
  CHECK(std::abs(doc["CrossingTable"][0][2].get<double>() - 3.37495433) < 1e-6);
  CHECK(doc["RootsNoDelay"][0].size() == 2);
}

TEST_CASE("JSON output round-trips byte for byte", "[cli][property]") {
  for (const char* cmd : {"analyze", "windows", "locus"}) {
    const Run r = run({cmd, kData + "/example2.json", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(io::json::parse(r.out).dump(2) + "\n" == r.out);
  }
  const Run p = run({"pade", kData + "/pade1.json", "--delta", "2", "--arg", "1", "--format", "json"});
  REQUIRE(p.code == 0);
  CHECK(io::json::parse(p.out).dump(2) + "\n" == p.out);
}

TEST_CASE("repeated runs give identical output", "[cli][property]") {
  for (const char* cmd : {"analyze", "locus"}) {
    const Run a = run({cmd, kData + "/example1.json", "--format", "json"});
    const Run b = run({cmd, kData + "/example1.json", "--format", "json"});
    CHECK(a.out == b.out);
  }
}

TEST_CASE("windows text output", "[cli]") {
  const Run r = run({"windows", kData + "/example2.json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("StabilityWindows:\n  [0.00000000 0.42100844 2.50000000]\n  [1.00000000 0.00000000 0.00000000]") !=
        std::string::npos);
  CHECK(r.out.find("[0.00000000 2.00000000 4.00000000 4.00000000]") != std::string::npos);
}

TEST_CASE("pade JSON output", "[cli]") {
  const Run r = run({"pade", kData + "/pade1.json", "--delta", "2", "--mode", "order", "--arg", "1",
                     "--format", "json"});
  REQUIRE(r.code == 0);
  const io::json doc = io::json::parse(r.out);
  CHECK(doc["num_approx"] == io::json::parse("[1.0, 9.0, 45.0, 79.0, 54.0, 12.0]"));
  CHECK(doc["den_approx"] == io::json::parse("[1.0, 10.0, 42.0, 88.0, 97.0, 54.0, 12.0]"));
  CHECK(doc["pade_order"] == 1);
  CHECK(std::abs(doc["error_norm"].get<double>() / 0.032917024033214635 - 1.0) < 1e-4);
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run({"analyze", kData + "/leading_zero.json"}).code == 1);
  CHECK(run({"analyze", kData + "/leading_zero.json"}).err.find("LeadingZero") != std::string::npos);
  CHECK(run({"analyze", kData + "/does_not_exist.json"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"pade", kData + "/example2.json", "--delta", "3"}).code == 1);
  CHECK(run({"pade", kData + "/pade1.json", "--delta", "2", "--mode", "norm", "--arg", "1e-300"}).code == 2);

  const auto axis = temp_file("delaystab_axis.json", R"({"P": [[1, 1], [1, 0.5]], "n": [1], "tau": 1})");
  const Run r = run({"locus", axis.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("NeutralAxisInRHP") != std::string::npos);
}

TEST_CASE("plots and CSV sidecars", "[cli]") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto svg = (dir / "delaystab_locus.svg").string();
  REQUIRE(run({"locus", kData + "/example1.json", "--plot", svg}).code == 0);
  std::ifstream in(svg);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.rfind("<?xml", 0) == 0);
  CHECK(text.find("<polyline") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);

  std::ifstream csv(plot::sidecar_path(svg));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "branch,conjugate,tau,re,im\r");

  const auto wsvg = (dir / "delaystab_windows.svg").string();
  REQUIRE(run({"windows", kData + "/example1.json", "--plot", wsvg}).code == 0);
  std::ifstream wcsv(plot::sidecar_path(wsvg));
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(wcsv, line)) lines.push_back(line);
  REQUIRE(lines.size() == 5);
  CHECK(lines[1] == "0,0,1\r");
  CHECK(lines[4].rfind("3,4,0", 0) == 0);
}
