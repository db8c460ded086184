#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orni/sim.hpp"
#include "orni/telemetry.hpp"

using namespace orni;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("orni_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt", err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(ORNI_BIN) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string cfg() { return std::string("--config ") + ORNI_DEFAULT_CFG; }

std::string tmp(const std::string& name) { return (work_dir() / name).string(); }

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("fly").code == 2);
  CHECK(run("simulate").code == 2);
  CHECK(run("simulate " + cfg() + " --twist-deg abc").code == 2);
  CHECK(run("simulate " + cfg() + " --twist-deg 50").code == 2);
  CHECK(run("simulate --config /nonexistent.cfg").code == 2);
  CHECK(run("linkage --a 1 --b 1 --c 1 --d 0 --theta2-deg 3").code == 2);
  CHECK(run("linkage --a 1 --b 1 --c 1 --d 1 --theta2-deg 3 --branch sideways").code == 2);
  CHECK(run("correlate --log x --resample-dt 0").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("unknown config key exits 2 naming the key") {
  const std::string path = tmp("typo.cfg");
  write(path, "[geometry]\nspann_m = 0.3\n");
  const Run r = run("simulate --config " + path);
  CHECK(r.code == 2);
  CHECK(r.err.find("geometry.spann_m") != std::string::npos);
}

TEST_CASE("simulate writes the series and summary") {
  const std::string ts = tmp("ts.csv"), sum = tmp("s.json");
  const Run r = run("simulate " + cfg() + " --twist-deg 5 --out " + ts + " --summary " + sum);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(sum));
  for (const char* k : {"config_hash", "delta_a_deg", "l_bar", "m_bar", "n_bar", "thrust_bar", "lift_bar", "sign_l",
                        "cycles_used"}) {
    CHECK(j.contains(k));
  }
  CHECK(j["sign_l"] == 1);
  CHECK(j["cycles_used"] == 3);

  const auto rows = read_csv(ts);
  REQUIRE(rows.size() > 1);
  CHECK(slurp(ts).substr(0, slurp(ts).find('\n')) == "t,phi_deg,psi_deg,delta_a_deg,fx,fy,fz,mx,my,mz");

  // Values re-parse to the in-memory series.
  const sim::TimeSeries mem =
      sim::simulate_tethered(sim::VehicleConfig{}, TwistCommand::differential(deg_to_rad(5.0)), sim::SimSettings{});
  REQUIRE(rows.size() == mem.rows.size() + 1);
  for (std::size_t i = 0; i < mem.rows.size(); i += 97) {
    const auto& m = mem.rows[i];
    const std::vector<double> expect{m.t, rad_to_deg(m.phi), rad_to_deg(m.psi), rad_to_deg(m.delta_a),
                                     m.force.x, m.force.y, m.force.z, m.moment.x, m.moment.y, m.moment.z};
    for (std::size_t c = 0; c < expect.size(); ++c) {
      CHECK(std::abs(std::stod(rows[i + 1][c]) - expect[c]) <= 1e-9 * std::max(1.0, std::abs(expect[c])));
    }
  }
  CHECK(std::abs(j["l_bar"].get<double>() - sim::run_average(sim::VehicleConfig{}, deg_to_rad(5.0), {}).L_bar) == 0.0);

  // Byte-identical across runs.
  const std::string ts2 = tmp("ts2.csv"), sum2 = tmp("s2.json");
  REQUIRE(run("simulate " + cfg() + " --twist-deg 5 --out " + ts2 + " --summary " + sum2).code == 0);
  CHECK(slurp(ts) == slurp(ts2));
  CHECK(slurp(sum) == slurp(sum2));
}

TEST_CASE("simulate with no twist reports sign 0") {
  const std::string sum = tmp("s0.json");
  REQUIRE(run("simulate " + cfg() + " --twist-deg 0 --summary " + sum).code == 0);
  CHECK(nlohmann::json::parse(slurp(sum))["sign_l"] == 0);
}

TEST_CASE("compare table and CSV") {
  const std::string out = tmp("cmp.csv");
  const Run r = run("compare " + cfg() + " --twist-deg 5 --out " + out);
  REQUIRE(r.code == 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"variant", "l_bar", "sign"});
  CHECK(rows[1][0] == "plane");
  CHECK(rows[1][2] == "-");
  CHECK(rows[2][0] == "flapper_flat_cruise");
  CHECK(rows[2][2] == "-");
  CHECK(rows[3][0] == "flapper_flat_hover");
  CHECK(rows[3][2] == "-");
  CHECK(rows[4][0] == "flapper_articulated");
  CHECK(rows[4][2] == "+");
  CHECK(r.out.find("flapper_articulated") != std::string::npos);

  const std::string neg = tmp("cmpn.csv"), zero = tmp("cmp0.csv");
  REQUIRE(run("compare " + cfg() + " --twist-deg -5 --out " + neg).code == 0);
  REQUIRE(run("compare " + cfg() + " --twist-deg 0 --out " + zero).code == 0);
  const auto n = read_csv(neg), z = read_csv(zero);
  for (std::size_t i = 1; i < 5; ++i) {
    CHECK(n[i][2] == (rows[i][2] == "+" ? "-" : "+"));
    CHECK(z[i][2] == "0");
  }
}

TEST_CASE("sweep output, plot script and crossover") {
  const std::string out = tmp("sw.csv");
  const Run r = run("sweep " + cfg() + " --param psi_amp_deg --from 0 --to 80 --steps 17 --twist-deg 5 --out " + out);
  REQUIRE(r.code == 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 18);
  CHECK(rows[0] == std::vector<std::string>{"param", "value", "l_bar", "n_bar", "thrust_bar"});
  CHECK(rows[1][1] == "0");
  const auto flat = sim::run_average(sim::variant_config(sim::VehicleConfig{}, sim::Variant::flapper_flat_cruise),
                                     deg_to_rad(5.0), {});
  CHECK(std::stod(rows[1][2]) == flat.L_bar);
  CHECK(fs::exists(tmp("sw.gp")));
  CHECK(r.out.find("crossover psi_amp_deg ") != std::string::npos);
  CHECK(r.out.find("crossover psi_amp_deg none") == std::string::npos);

  CHECK(run("sweep " + cfg() + " --param psi_amp_deg --from 0 --to 80 --steps 1").code == 2);
  CHECK(run("sweep " + cfg() + " --param wingspan --from 0 --to 1 --steps 3").code == 2);
}

TEST_CASE("mstatic exit codes") {
  const Run zero = run("mstatic " + cfg() + " --twist-deg 0");
  CHECK(zero.code == 0);
  CHECK(zero.out.find("common_mode no") != std::string::npos);
  // The folded outer panels keep lateral forces of opposite sign, so the
  // common-mode check fails and the command reports it.
  const Run pos = run("mstatic " + cfg() + " --twist-deg 5");
  CHECK(pos.code == 1);
  CHECK(pos.err.find("common mode") != std::string::npos);
  CHECK(pos.out.find("total moment (+") != std::string::npos);
  const Run neg = run("mstatic " + cfg() + " --twist-deg -5");
  CHECK(neg.out.find("total moment (-") != std::string::npos);
}

TEST_CASE("linkage subcommand") {
  const Run p = run("linkage --a 1 --b 2 --c 1 --d 2 --theta2-deg 30");
  CHECK(p.code == 0);
  CHECK(p.out.find("theta4_deg  30.000000") != std::string::npos);
  CHECK(p.out.find("change_point") != std::string::npos);
  const Run cr = run("linkage --a 1 --b 4 --c 3 --d 3 --theta2-deg 45");
  CHECK(cr.code == 0);
  CHECK(cr.out.find("crank_rocker") != std::string::npos);
  const Run bad = run("linkage --a 1 --b 1 --c 1 --d 3.5 --theta2-deg 45");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("not assemblable") != std::string::npos);
}

TEST_CASE("roll log and correlate") {
  const std::string log = tmp("roll.csv");
  REQUIRE(run("roll " + cfg() + " --twist-deg 5 --period 4 --duration 16 --out " + log).code == 0);
  const Run c = run("correlate --log " + log + " --max-lag 1 --resample-dt 0.25");
  CHECK(c.code == 0);
  CHECK(c.out.find("sign       +") != std::string::npos);

  const std::string header_only = tmp("h.csv");
  write(header_only, "t,ctrl,roll_deg\n");
  const Run h = run("correlate --log " + header_only);
  CHECK(h.code == 1);
  CHECK(h.err.find("empty log") != std::string::npos);
  CHECK(run("correlate --log " + tmp("missing.csv")).code == 1);

  const std::string flat = tmp("flat.csv");
  std::string text = "t,ctrl,roll_deg\n";
  for (int i = 0; i <= 1000; ++i) text += std::to_string(i * 0.01) + ",0,0\n";
  write(flat, text);
  const Run ind = run("correlate --log " + flat);
  CHECK(ind.code == 0);
  CHECK(ind.out.find("indeterminate") != std::string::npos);
}
