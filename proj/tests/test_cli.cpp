#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "starkjc/states.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using starkjc::cli::main_entry;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "starkjc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / ("starkjc_cli_test_" + std::to_string(std::rand()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("photon-dist CSV reproduces the library values exactly") {
  const auto r = invoke({"photon-dist", "--alpha", "3.5", "--r", "1.5", "--kind", "single"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.front() == "n,p");
  const auto dist = starkjc::states::photon_dist({3.5, 1.5, starkjc::states::FieldKind::Single});
  REQUIRE(rows.size() == dist.probs.size() + 1);
  for (std::size_t n = 0; n < dist.probs.size(); ++n) {
    const auto comma = rows[n + 1].find(',');
    CHECK(std::stoul(rows[n + 1].substr(0, comma)) == n);
    CHECK(std::strtod(rows[n + 1].c_str() + comma + 1, nullptr) == dist.probs[n]);
  }
}

TEST_CASE("headers for every tabular command") {
  CHECK(lines(invoke({"inversion", "--alpha", "3.5", "--r", "1.5", "--delta", "1", "--chi", "0.5", "--tmax", "25"}).out)
            .front() == "t,w");
  CHECK(lines(invoke({"lineshape", "--alpha", "2", "--steps", "5"}).out).front() == "delta,w_avg");
  const auto h = invoke({"husimi", "--alpha", "1", "--resolution", "16"});
  const auto rows = lines(h.out);
  CHECK(rows.front() == "re_beta,im_beta,q");
  CHECK(rows.size() == 16 * 16 + 1);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::vector<std::string>> configs{
      {"photon-dist", "--alpha", "3.5", "--r", "1.5", "--kind", "plus"},
      {"inversion", "--alpha", "3.5", "--r", "1.5", "--delta", "1", "--chi", "0.5", "--prep", "ground"},
      {"lineshape", "--alpha", "3.5", "--r", "0.758", "--chi", "0.5", "--steps", "201"},
      {"husimi", "--alpha", "3.5", "--r", "1.5", "--kind", "minus", "--resolution", "64"},
      {"lineshape", "--alpha", "3.5", "--r", "0.3", "--kind", "plus", "--chi", "0.5", "--format", "json"},
  };
  for (const auto& cfg : configs) {
    const auto a = invoke(cfg);
    const auto b = invoke(cfg);
    CHECK(a.code == 0);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("json output carries meta") {
  const auto r = invoke({"photon-dist", "--alpha", "2", "--r", "0.3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["meta"]["config"]["alpha"] == 2.0);
  CHECK(j["meta"]["version"] == STARKJC_VERSION);
  CHECK(j["meta"]["truncation"].get<int>() + 1 == static_cast<int>(j["data"]["p"].size()));
  CHECK(j["data"]["n"][3] == 3);
}

TEST_CASE("optimize-r emits a single record") {
  const auto r = invoke({"optimize-r", "--alpha", "3.5", "--chi", "0.5", "--r-lo", "0.4", "--r-hi", "1.2", "--steps", "401"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 1);
  const auto j = json::parse(r.out);
  CHECK(j["r_star"].get<double>() == doctest::Approx(0.758).epsilon(2e-3));
  CHECK(j.contains("depth"));
  CHECK(j.contains("delta_star"));
}

TEST_CASE("config file values are overridden by flags") {
  const auto dir = scratch_dir();
  const auto cfg = dir / "run.ini";
  std::ofstream(cfg) << "# field\nalpha=2\nr=0.3\nkind=plus\nformat=json\n";
  const auto r = invoke({"photon-dist", "--config", cfg.string(), "--r", "0.5"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["meta"]["config"]["alpha"] == 2.0);
  CHECK(j["meta"]["config"]["r"] == 0.5);
  CHECK(j["meta"]["config"]["kind"] == "plus");
  fs::remove_all(dir);
}

TEST_CASE("--output writes the same bytes and leaves no temporary file") {
  const auto dir = scratch_dir();
  const auto path = dir / "lineshape.csv";
  const std::vector<std::string> base{"lineshape", "--alpha", "3.5", "--r", "0.758", "--chi", "0.5", "--steps", "51"};
  auto with_out = base;
  with_out.insert(with_out.end(), {"--output", path.string()});
  const auto written = invoke(with_out);
  REQUIRE(written.code == 0);
  CHECK(written.out.empty());
  std::ifstream f(path, std::ios::binary);
  const std::string body((std::istreambuf_iterator<char>(f)), {});
  CHECK(body == invoke(base).out);
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  fs::remove_all(dir);
}

TEST_CASE("exit codes and error records") {
  auto error_of = [](const Result& r) { return json::parse(lines(r.err).back())["error"]; };

  const auto big_r = invoke({"photon-dist", "--r", "9"});
  CHECK(big_r.code == 2);
  CHECK(big_r.out.empty());
  CHECK(error_of(big_r)["exit_code"] == 2);

  CHECK(invoke({"photon-dist", "--kind", "minus", "--r", "0"}).code == 2);
  CHECK(invoke({"photon-dist", "--kind", "bogus"}).code == 2);
  CHECK(invoke({"photon-dist", "--g", "0"}).code == 2);
  CHECK(invoke({"photon-dist", "--tol", "0.1"}).code == 2);
  CHECK(invoke({"lineshape", "--delta-min", "5", "--delta-max", "1"}).code == 2);
  CHECK(invoke({"inversion", "--tsteps", "1"}).code == 2);
  CHECK(invoke({"husimi", "--re-min", "3", "--re-max", "1"}).code == 2);
  CHECK(invoke({"optimize-r", "--r-lo", "1", "--r-hi", "0.5"}).code == 2);
  CHECK(invoke({"verify", "--criteria", "42"}).code == 2);
  CHECK(invoke({}).code == 2);

  const auto huge = invoke({"photon-dist", "--alpha", "60", "--r", "5"});
  CHECK(huge.code == 3);
  CHECK(error_of(huge)["category"] == "resource");

  const auto warn = invoke({"inversion", "--chi", "2", "--tsteps", "3"});
  CHECK(warn.code == 0);
  CHECK(warn.err.find("warning") != std::string::npos);

  // Criterion 4 fails by design (see README); verify must report that with exit 1.
  const auto v = invoke({"verify", "--criteria", "4"});
  CHECK(v.code == 1);
  CHECK(v.out.rfind("FAIL [4]", 0) == 0);
}
