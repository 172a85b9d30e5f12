#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracmra/cli.hpp"
#include "fracmra/errors.hpp"
#include "fracmra/frft.hpp"
#include "support.hpp"

using namespace fracmra;
using namespace fracmra::cli;
using testing::kPi;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("fracmra_cli_" + name);
  std::ofstream(path, std::ios::binary) << body;
  return path;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
  std::istringstream in(text);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("signal files load", "[cli]") {
  const auto ok = write_temp("ok.csv", "t,re,im\n0,1,0\n0.5,0.25,-1\n1,0,2e-3\n");
  const auto f = load_signal(ok.string());
  CHECK(f.values.size() == 3);
  CHECK(f.grid.step() == Catch::Approx(0.5));
  CHECK(f.values[2] == Complex(0.0, 2e-3));

  const auto crlf = write_temp("crlf.csv", "t,re,im\r\n-1,1,0\r\n0,2,0\r\n");
  CHECK(load_signal(crlf.string()).values.size() == 2);

  auto line_of = [](const std::string& body) {
    std::istringstream in(body);
    try {
      parse_signal(in);
    } catch (const FormatError& e) {
      return e.line();
    }
    return std::size_t{9999};
  };
  CHECK(line_of("0,1,0\n1,1,0\n") == 1);
  CHECK(line_of("t,re,im\n0,1,0\n1,1,0\n2.5,1,0\n3.5,1,0\n") == 4);
  CHECK(line_of("t,re,im\n0,1,0\n1,x,0\n") == 3);
  CHECK(line_of("t,re,im\n0,1\n") == 2);
  CHECK(line_of("t,re,im\n1,1,0\n0,1,0\n") == 3);
  CHECK_THROWS_AS(load_signal("/nonexistent/fracmra.csv"), Error);
}

TEST_CASE("numbers keep full precision", "[cli]") {
  for (double x : {0.1, kPi, -1e-300, 12345.678901234567, 0.0}) {
    CHECK(std::stod(format_number(x)) == x);
  }
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "null");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "null");
}

TEST_CASE("exit codes follow the verdict", "[cli]") {
  RunConfig good;
  good.command = Command::validate;
  good.alpha = kPi / 4;
  const auto pass = run(good);
  CHECK(pass.exit_code == kExitOk);
  CHECK(pass.error.empty());
  CHECK(pass.artifact.find("\"verdict\":true") != std::string::npos);

  RunConfig riesz = good;
  riesz.scaling = "bspline2";
  const auto fail = run(riesz);
  CHECK(fail.exit_code == kExitVerdictFalse);
  CHECK(fail.artifact.find("\"verdict\":false") != std::string::npos);

  RunConfig special = good;
  special.alpha = 0.0;
  const auto err = run(special);
  CHECK(err.exit_code == kExitFailure);
  CHECK(err.artifact.empty());
  CHECK(err.error.find("SpecialAngleError") != std::string::npos);

  RunConfig missing = good;
  missing.command = Command::frft;
  missing.signal = "/nonexistent/input.csv";
  CHECK(run(missing).exit_code == kExitFailure);

  RunConfig bad_file = missing;
  bad_file.signal = write_temp("bad.csv", "t,re,im\n0,1,0\n1,1,0\n2.5,1,0\n").string();
  const auto fmt = run(bad_file);
  CHECK(fmt.exit_code == kExitFailure);
  CHECK(fmt.error.find("FormatError") != std::string::npos);
  CHECK(fmt.error.find("\"line\":4") != std::string::npos);

  RunConfig grid = good;
  grid.grid_n = 1000;
  CHECK(run(grid).exit_code == kExitFailure);
}

TEST_CASE("artifacts are byte-identical across runs", "[cli]") {
  for (auto cmd : {Command::validate, Command::gram, Command::report}) {
    RunConfig c;
    c.command = cmd;
    c.alpha = 1.1;
    c.scaling = "bspline3";
    const auto a = run(c), b = run(c);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.artifact == b.artifact);
    CHECK_FALSE(a.artifact.empty());
  }
  RunConfig c;
  c.command = Command::frft;
  c.signal = "random";
  c.seed = 7;
  c.format = OutputFormat::csv;
  c.out_path = (std::filesystem::temp_directory_path() / "fracmra_cli_out.csv").string();
  const auto a = run(c);
  std::ifstream in(c.out_path, std::ios::binary);
  const std::string written((std::istreambuf_iterator<char>(in)), {});
  CHECK(written == a.artifact);
  CHECK(run(c).artifact == a.artifact);
}

TEST_CASE("frft CSV matches the quadrature transform", "[cli][oracle]") {
  RunConfig c;
  c.command = Command::frft;
  c.alpha = 0.7;
  c.grid_n = 256;
  c.domain_half_width = 12.0;
  c.format = OutputFormat::csv;
  c.signal = write_temp("in.csv", [] {
               std::string body = "t,re,im\n";
               const auto g = UniformGrid::centered(12.0, 256);
               for (std::size_t i = 0; i < g.count(); ++i) {
                 const double t = g.at(i);
                 const Complex v = std::exp(-0.4 * (t - 1) * (t - 1)) * std::polar(1.0, 0.3 * t);
                 body += format_number(t) + "," + format_number(v.real()) + "," + format_number(v.imag()) + "\n";
               }
               return body;
             }()).string();
  const auto out = run(c);
  REQUIRE(out.exit_code == kExitOk);
  std::string header;
  const auto rows = parse_csv(out.artifact, header);
  CHECK(header == "u,re,im");
  REQUIRE(rows.size() == 256);
  const auto f = load_signal(c.signal);
  const auto want = frft_quadrature(f, AngleParam(c.alpha), f.grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i][0] == Catch::Approx(want.grid.at(i)).margin(1e-12));
    worst = std::max(worst, std::abs(Complex(rows[i][1], rows[i][2]) - want.values[i]));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("config checks reject bad values", "[cli]") {
  RunConfig c;
  CHECK_NOTHROW(check_config(c));
  c.tol = 0.0;
  CHECK_THROWS_AS(check_config(c), SpecError);
  c = RunConfig{};
  c.trials = 0;
  CHECK_THROWS_AS(check_config(c), SpecError);
  c = RunConfig{};
  c.command = Command::frft;
  c.alpha = kPi;
  CHECK_NOTHROW(check_config(c));
}

TEST_CASE("builtin Gaussian spectrum matches the quadrature transform", "[cli][oracle]") {
  RunConfig c;
  c.command = Command::frft;
  c.alpha = 1.5707963267948966;
  c.format = OutputFormat::csv;
  const auto out = run(c);
  REQUIRE(out.exit_code == kExitOk);
  std::string header;
  const auto rows = parse_csv(out.artifact, header);
  const auto grid = UniformGrid::centered(c.domain_half_width, static_cast<std::size_t>(c.grid_n));
  const auto f = make_test_signal(TestSignalSpec{}, grid);
  const UniformGrid probe(grid.start(), 16 * grid.step(), grid.count() / 16);
  const auto want = frft_quadrature(f, AngleParam(c.alpha), probe);
  REQUIRE(rows.size() == grid.count());
  for (std::size_t i = 0; i < probe.count(); ++i) {
    const auto& r = rows[16 * i];
    CHECK(std::abs(Complex(r[1], r[2]) - want.values[i]) <= 1e-6);
  }
}
