#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "vacfree/cli.hpp"

using namespace vacfree;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("spectrum table") {
  const auto r = invoke({"spectrum", "--window", "-3:3", "--c", "1"});
  REQUIRE(r.code == cli::kExitPass);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0][0] == "p");
  CHECK(rows[1][0] == "-3");
  CHECK(std::stod(rows[1][1]) == doctest::Approx(1.0 - 2.0 * std::sqrt(3.0)));
  CHECK(rows[4][1] == "1");
  CHECK(std::stod(rows[7][1]) == doctest::Approx(1.0 + 2.0 * std::sqrt(3.0)));
}

TEST_CASE("uncertainty scan") {
  const auto r = invoke({"scan-uncertainty", "--choice", "1", "--rmax", "0.6", "--rsteps", "3"});
  REQUIRE(r.code == cli::kExitPass);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  const double expect[] = {0.5, 0.455, 0.32};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::stod(rows[static_cast<std::size_t>(i + 1)][2]) ==
          doctest::Approx(expect[i]).epsilon(1e-10));
  }
}

TEST_CASE("output is deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"coherent", "--choice", "3", "--z", "2,1"},
        std::vector<std::string>{"moments", "--choice", "3", "--format", "json"},
        std::vector<std::string>{"fock", "--fock-n", "12"}}) {
    const auto a = invoke(args);
    const auto b = invoke(args);
    CHECK(a.code == cli::kExitPass);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("json output carries decimal strings") {
  const auto r = invoke({"coherent", "--choice", "1", "--z", "0.6,0", "--format", "json"});
  REQUIRE(r.code == cli::kExitPass);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "coherent");
  const auto& row = doc["rows"][0];
  CHECK(row["normalization"].is_string());
  CHECK(std::stod(row["normalization"].get<std::string>()) == doctest::Approx(0.8));
  CHECK(std::stod(row["closed_form_normalization"].get<std::string>()) == doctest::Approx(0.8));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"nonsense"}).code == cli::kExitUsage);
  CHECK(invoke({"spectrum", "--window", "3:1"}).code == cli::kExitUsage);
  CHECK(invoke({"spectrum", "--window", "abc"}).code == cli::kExitUsage);
  CHECK(invoke({"spectrum", "--format", "xml"}).code == cli::kExitUsage);
  CHECK(invoke({"coherent", "--choice", "4"}).code == cli::kExitUsage);
  CHECK(invoke({"coherent", "--tol", "0"}).code == cli::kExitUsage);
  CHECK(invoke({"spectrum", "--c", "-1"}).code == cli::kExitUsage);
  const auto outside = invoke({"coherent", "--choice", "1", "--z", "1.2,0"});
  CHECK(outside.code == cli::kExitUsage);
  CHECK(outside.out.empty());
  CHECK_FALSE(outside.err.empty());
  CHECK(invoke({"scan-uncertainty", "--choice", "1", "--rmax", "1"}).code == cli::kExitUsage);
  CHECK(invoke({"moments", "--choice", "2"}).code == cli::kExitUsage);
  CHECK(invoke({"resolution", "--asteps", "4"}).code == cli::kExitUsage);
  CHECK(invoke({"moments", "--measure", "file:/nonexistent.csv"}).code == cli::kExitUsage);
}

TEST_CASE("verification failure exits with 1") {
  // the gaussian is the wrong measure for choice 2
  CHECK(invoke({"moments", "--choice", "2", "--measure", "choice3-gaussian", "--trunc", "4"}).code ==
        cli::kExitFail);
  CHECK(invoke({"resolution", "--choice", "1", "--measure", "choice3-gaussian", "--trunc", "3"})
            .code == cli::kExitFail);
}

TEST_CASE("measure file and out path") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto measure = dir / "vacfree_cli_measure.csv";
  const auto out = dir / "vacfree_cli_out.csv";
  {
    // (1/pi) r exp(-r^2) sampled finely enough for k <= 2
    std::ofstream f(measure);
    f << "r,density\n";
    for (int i = 0; i <= 4000; ++i) {
      const double r = i * 0.0025;
      f.precision(17);
      f << r << ',' << r * std::exp(-r * r) / M_PI << '\n';
    }
  }
  const auto r = invoke({"moments", "--choice", "3", "--measure", "file:" + measure.string(),
                         "--trunc", "2", "--out", out.string()});
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto rows = csv_rows(buf.str());
  REQUIRE(rows.size() == 4);
  CHECK(std::stod(rows[3][1]) == doctest::Approx(2.0).epsilon(1e-4));
  std::filesystem::remove(measure);
  std::filesystem::remove(out);
}

TEST_CASE("factorize and fock pass") {
  const auto f = invoke({"factorize"});
  CHECK(f.code == cli::kExitPass);
  CHECK(csv_rows(f.out).size() == 4);
  CHECK(invoke({"fock"}).code == cli::kExitPass);
  CHECK(invoke({"resolution"}).code == cli::kExitPass);
}
