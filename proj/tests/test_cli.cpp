#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kgres/cli.hpp"
#include "kgres/report_io.hpp"

using namespace kgres;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::path(KGRES_BINARY_DIR) / "cli_scratch";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

const std::string kBundled = std::string(KGRES_SOURCE_DIR) + "/configs/c5_resonant.conf";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("resonances") {
  const auto r = run({"resonances", "--c", "5"});
  CHECK(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["schema"] == "resonance-report/1");
  CHECK(doc["resonant_phases"] == json({"cc1+--", "c11+--"}));
  CHECK(std::abs(doc["outcome_radii"][0].get<double>() - 0.3535533906) < 1e-8);
  CHECK(std::abs(doc["outcome_radii"][1].get<double>() - 0.3603654667) < 1e-8);

  const auto bad = run({"resonances", "--c", "1"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("degenerate") != std::string::npos);

  const auto tight = run({"resonances", "--c", "5", "--tau-sep", "0.01"});
  CHECK(tight.code == 2);
  CHECK(json::parse(tight.out)["separated"] == false);

  CHECK(run({"resonances"}).code == 1);
  CHECK(run({"resonances", "--c", "abc"}).code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("output file") {
  const auto path = scratch("report.json");
  const auto r = run({"resonances", "--c", "2", "-o", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(io::report_from_json(nlohmann::ordered_json::parse(slurp(path))).c == 2.0);
}

TEST_CASE("sweep") {
  const auto a = run({"sweep", "--from", "2", "--to", "10", "--steps", "9"});
  CHECK(a.code == 0);
  std::istringstream in(a.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "c,separated,min_gap");
  const auto rep = scan_all(5.0);
  CHECK(rows[4] == "5,true," + io::format_double(rep.min_gap));
  CHECK(a.err.find("exceptional speeds:") != std::string::npos);

  const auto b = run({"sweep", "--from", "2", "--to", "10", "--steps", "9"});
  CHECK(a.out == b.out);

  CHECK(run({"sweep", "--from", "2", "--to", "10", "--steps", "0"}).code == 1);
  CHECK(run({"sweep", "--from", "0.5", "--to", "2", "--steps", "4"}).code == 1);
}

TEST_CASE("constants") {
  const auto ok = run({"constants", "--A", "10", "--n", "1"});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["feasible"] == true);
  const auto no = run({"constants", "--A", "1e9"});
  CHECK(no.code == 2);
  CHECK(json::parse(no.out)["budget"].is_null());
}

TEST_CASE("cutoff export") {
  const auto meta = scratch("meta.json");
  const auto r = run({"cutoff-export", "--c", "5", "--kind", "chi_R", "--rho", "0.01", "--nu", "5", "--nv", "4",
                      "--meta", meta.string()});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 21);
  const auto doc = json::parse(slurp(meta));
  CHECK(doc["schema"] == "cutoff-export/1");
  CHECK(doc["kind"] == "chi_R");
  CHECK(doc["components"].size() == 1);

  const auto plane = run({"cutoff-export", "--c", "5", "--kind", "theta", "--nu", "2", "--nv", "2", "--origin",
                          "0,0,0,0,0,0", "--u", "10,0,0,0,0,0", "--v", "0,0,0,0,0,1"});
  CHECK(plane.code == 0);
  CHECK(plane.out.find("\n10,0,0,0,0,0,0\n") != std::string::npos);
  CHECK(run({"cutoff-export", "--c", "5", "--kind", "chi_Q"}).code == 1);
}

TEST_CASE("operator probes are reproducible") {
  const std::vector<std::string> args{"--seed", "42", "operator-probe", "--probe", "holder", "--trials", "5"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto doc = json::parse(a.out);
  CHECK(doc["seed"] == 42);
  for (const auto& row : doc["results"]) CHECK(row["max_ratio_over_bound"].get<double>() <= 1.0 + 1e-6);
  const auto other = run({"--seed", "43", "operator-probe", "--probe", "holder", "--trials", "5"});
  CHECK(other.out != a.out);

  const auto bern = run({"operator-probe", "--probe", "bernstein", "--trials", "3", "--p", "4", "--q", "2"});
  CHECK(bern.code == 0);
  CHECK(json::parse(bern.out)["results"].size() == 6);
  CHECK(run({"operator-probe", "--probe", "nonsense"}).code == 1);
  CHECK(run({"operator-probe", "--probe", "cutoff-bounds"}).code == 1);
}

TEST_CASE("config parsing") {
  std::istringstream good("# comment\n c = 5 \n\nphase = c11+-- # trailing\n");
  const auto v = cli::parse_config(good);
  CHECK(v.at("c") == "5");
  CHECK(v.at("phase") == "c11+--");
  std::istringstream no_eq("c 5\n");
  CHECK_THROWS_AS(cli::parse_config(no_eq), cli::ConfigError);
  std::istringstream dup("c = 5\nc = 6\n");
  CHECK_THROWS_AS(cli::parse_config(dup), cli::ConfigError);
  CHECK_THROWS_AS(cli::simulate_config({{"colour", "red"}}), cli::ConfigError);
  CHECK_THROWS_AS(cli::simulate_config({{"dt", "fast"}}), cli::ConfigError);
  CHECK_THROWS_AS(cli::simulate_config({{"n", "-4"}}), cli::ConfigError);
  const auto cfg = cli::simulate_config(cli::load_config(kBundled));
  CHECK(cfg.c == 5.0);
  CHECK(cfg.experiment.coeffs.delta == 1.0);
  CHECK(to_string(*cfg.experiment.phase) == "c11+--");
}

TEST_CASE("simulate") {
  CHECK(run({"simulate", scratch("missing.conf").string()}).code == 1);
  CHECK(run({"simulate", write_file("bad.conf", "c = 5\nwidth = 3\n")}).code == 1);

  const auto csv = scratch("zero.csv");
  const auto zero = run({"simulate", write_file("zero.conf", "c = 5\ndelta = 0\nT_final = 20\n"), "--csv", csv.string()});
  CHECK(zero.code == 0);
  const auto doc = json::parse(zero.out);
  CHECK(std::abs(doc["growth_ratio"].get<double>() - 1.0) <= 1e-9);
  CHECK(slurp(csv).rfind("t,resonant_band_energy,detuned_band_energy\n", 0) == 0);

  const auto blow = run({"simulate", write_file("blow.conf", "c = 5\ndelta = 1\nalpha = 1\namplitude = 20\nT_final = 20\n")});
  CHECK(blow.code == 3);
  CHECK(json::parse(blow.out)["inconclusive"] == true);
}

TEST_CASE("bundled config") {
  const auto out = scratch("c5.json");
  const auto r = run({"simulate", kBundled, "-o", out.string()});
  CHECK(r.code == 0);
  const auto doc = json::parse(slurp(out));
  REQUIRE(doc.contains("growth_ratio"));
  const auto archived = json::parse(slurp(std::string(KGRES_SOURCE_DIR) + "/configs/c5_resonant.record.json"));
  CHECK(doc["growth_ratio"].get<double>() == doctest::Approx(archived["growth_ratio"].get<double>()).epsilon(1e-9));
}

}
