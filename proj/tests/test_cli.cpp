#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vgm/cli.hpp"

using vgm::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

// The "value" field of each text record.
std::vector<double> text_values(const std::string& s) {
  std::vector<double> v;
  for (const auto& line : split(s, '\n'))
    if (line.rfind("value ", 0) == 0) v.push_back(std::stod(line.substr(line.find_last_of(' ') + 1)));
  return v;
}

const std::vector<std::string> kBase = {"moment", "--nu", "0.5", "--alpha", "2", "--beta",
                                        "1",      "--mu", "1",   "--absolute", "--order", "1"};

std::vector<std::string> with(std::vector<std::string> extra) {
  auto a = kBase;
  a.insert(a.end(), extra.begin(), extra.end());
  return a;
}

}  // namespace

TEST_CASE("moment subcommand") {
  const auto r = call(with({"-o", "json"}));
  CHECK(r.code == vgm::cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::fabs(j["value"].get<double>() - 1.6749645) < 1e-7);
  CHECK(j["method_used"] == "halfint");
  CHECK(j["inputs"]["params"]["alpha"].get<double>() == 2.0);
  CHECK(j["inputs"]["query"]["absolute"] == true);
  for (const char* key : {"terms_used", "error_bound", "elapsed_ms"}) CHECK(j.contains(key));

  const auto sym = call({"moment", "--nu", "1", "--alpha", "2", "--beta", "0", "--mu", "0",
                         "--order", "3", "--absolute", "--kind", "raw", "-o", "json"});
  CHECK(sym.code == 0);
  CHECK(nlohmann::json::parse(sym.out)["method_used"] == "mu-zero");
}

TEST_CASE("parameter forms") {
  const auto vg = call({"moment", "--nu", "0.5", "--alpha", "1.25", "--beta", "-0.75", "--mu",
                        "0.2", "--absolute", "--order", "1", "-o", "json"});
  const auto al = call({"moment", "--kappa", "2", "--sigma", "1.4142135623730951", "--location",
                        "0.2", "--absolute", "--order", "1", "-o", "json"});
  REQUIRE(vg.code == 0);
  REQUIRE(al.code == 0);
  CHECK(std::fabs(nlohmann::json::parse(vg.out)["value"].get<double>() -
                  nlohmann::json::parse(al.out)["value"].get<double>()) < 1e-14);

  const auto prod = call({"moment", "--sigma-u", "1", "--sigma-v", "1", "--rho", "0", "--n", "1",
                          "--absolute", "--order", "2", "-o", "json"});
  REQUIRE(prod.code == 0);
  CHECK(std::fabs(nlohmann::json::parse(prod.out)["value"].get<double>() - 1.0) < 1e-13);

  // Exactly one form.
  CHECK(call({"moment", "--order", "1"}).code == vgm::cli::kUsage);
  CHECK(call({"moment", "--nu", "1", "--alpha", "2", "--kappa", "1", "--sigma", "1", "--order",
              "1"})
            .code == vgm::cli::kUsage);
}

TEST_CASE("exit codes") {
  const auto bad = call({"moment", "--nu", "1", "--alpha", "1", "--beta", "2", "--order", "1"});
  CHECK(bad.code == vgm::cli::kUsage);
  CHECK(bad.err.find("|beta| < alpha") != std::string::npos);
  CHECK(call({"moment", "--nu", "1", "--alpha", "2", "--bogus"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call(with({"--method", "nope"})).code == 2);
  CHECK(call(with({"--method", "even"})).code == 2);
  CHECK(call({"--help"}).code == 0);

  const std::vector<std::string> steep = {"moment", "--nu", "1", "--alpha", "1",  "--beta",
                                          "0.9997", "--mu", "0.5", "--absolute", "--order", "1"};
  auto forced = steep;
  forced.insert(forced.end(), {"--method", "odd-series"});
  const auto conv = call(forced);
  CHECK(conv.code == vgm::cli::kNumerical);
  // In auto mode the same query falls back to quadrature and warns on stderr.
  const auto fb = call(steep);
  CHECK(fb.code == 0);
  CHECK(fb.err.find("warning") != std::string::npos);
}

TEST_CASE("output formats carry identical numbers") {
  std::vector<std::string> args(kBase.begin(), kBase.end() - 2);
  args.insert(args.end(), {"--order", "1,2,3", "--no-timing"});
  auto j = args, c = args, t = args;
  j.insert(j.end(), {"-o", "json"});
  c.insert(c.end(), {"-o", "csv"});
  t.insert(t.end(), {"-o", "text"});
  const auto rj = call(j), rc = call(c), rt = call(t);
  REQUIRE(rj.code == 0);
  REQUIRE(rc.code == 0);
  REQUIRE(rt.code == 0);

  std::vector<double> vj;
  for (const auto& line : split(rj.out, '\n'))
    if (!line.empty()) vj.push_back(nlohmann::json::parse(line)["value"].get<double>());
  const auto lines = split(rc.out, '\n');
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == vgm::cli::csv_header());
  std::vector<double> vc;
  for (std::size_t i = 1; i < lines.size(); ++i) vc.push_back(std::stod(split(lines[i], ',')[11]));
  const auto vt = text_values(rt.out);
  REQUIRE(vj.size() == 3);
  CHECK(vj == vc);
  CHECK(vj == vt);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 6.0814715213828595e-3, 1e-300, -2.5e17, 4999.749889069447}) {
    CHECK(std::stod(vgm::cli::format_double(v)) == v);
  }
}

TEST_CASE("deterministic output") {
  const auto args =
      with({"--order", "3", "--method", "mc", "--samples", "20000", "--seed", "5", "--no-timing"});
  const auto a = call(args);
  const auto b = call(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(call({"sp500", "--no-timing"}).out == call({"sp500", "--no-timing"}).out);
}

TEST_CASE("VGM_RELTOL") {
  ::setenv("VGM_RELTOL", "1e-6", 1);
  const auto r = call(with({"-o", "json"}));
  CHECK(nlohmann::json::parse(r.out)["inputs"]["query"]["rel_tol"].get<double>() == 1e-6);
  // An explicit flag wins.
  const auto f = call(with({"-o", "json", "--rel-tol", "1e-9"}));
  CHECK(nlohmann::json::parse(f.out)["inputs"]["query"]["rel_tol"].get<double>() == 1e-9);
  ::setenv("VGM_RELTOL", "abc", 1);
  CHECK(call(kBase).code == 2);
  ::unsetenv("VGM_RELTOL");
}

TEST_CASE("sp500 subcommand") {
  const auto r = call({"sp500", "-o", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::fabs(j["beta_over_alpha"].get<double>() + 8.64e-3) < 1e-5);
  CHECK(std::fabs(j["alpha_mu"].get<double>() - 7.01e-2) < 1e-4);
  CHECK(std::fabs(j["central_alpha_mu"].get<double>() - 4.09e-2) < 1e-4);
  const double raw = j["moments"]["raw_r1"]["rel_err"].get<double>();
  CHECK(std::fabs(raw - 6.60e-4) < 0.1 * 6.60e-4);
  for (const char* k : {"raw_r3", "central_r3"})
    CHECK(j["moments"][k]["rel_err"].get<double>() <= 1e-5);
  // The measured central figure, whatever it is, is reported.
  CHECK(j["moments"]["central_r1"]["rel_err"].get<double>() > 0.0);
}

TEST_CASE("validate subcommand") {
  const auto ok = call({"validate", "--grid", "quick"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find(" 0 failed") != std::string::npos);

  const auto fault = call({"validate", "--grid", "quick", "--tol", "1e-15"});
  CHECK(fault.code == vgm::cli::kValidationFailed);
  CHECK(fault.out.find("FAIL ") != std::string::npos);

  const auto js = call({"validate", "--grid", "quick", "--suite", "truncation", "-o", "json"});
  CHECK(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["failures"] == 0);
  CHECK(j["cases"].get<int>() > 0);
  CHECK(call({"validate", "--suite", "nope"}).code == 2);
}
