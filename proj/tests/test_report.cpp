#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "bigact/report.hpp"

using namespace bigact;
using namespace bigact::report;

namespace {

std::filesystem::path fresh_dir(const std::string &name) {
  auto d = std::filesystem::temp_directory_path() / ("bigact-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  return d;
}

RunConfig config(const std::string &cmd, int p = 3, int s = 1) {
  RunConfig c;
  c.commands = {cmd};
  c.p = p;
  c.s = s;
  c.samples = 8;
  return c;
}

} // namespace

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(config("verify", 2, 1)), UsageError);
  CHECK_THROWS_AS(validate(config("verify", 15, 1)), UsageError);
  CHECK_THROWS_AS(validate(config("verify", 3, 0)), UsageError);
  CHECK_THROWS_AS(validate(config("verify", 3, 9)), UsageError);
  auto c = config("verify");
  c.threads = 0;
  CHECK_THROWS_AS(validate(c), UsageError);
  CHECK_THROWS_AS(run(config("frobnicate")), UsageError);

  auto pr = config("prolong");
  pr.a_coords = {1, 0};
  CHECK_THROWS_AS(run(pr), UsageError);
  pr.a_coords = {1, 0, 3};
  CHECK_THROWS_AS(run(pr), UsageError);
  auto cd = config("conductor");
  cd.class_label = "nope";
  CHECK_THROWS_AS(run(cd), UsageError);
}

TEST_CASE("verify at (3,1)") {
  const auto out = run(config("verify"));
  const auto &r = out.report;
  CHECK(out.exit_code == audit_mismatch);
  CHECK(r.at("status").at("integrity_ok").get<bool>());
  CHECK(r.at("status").at("audit_mismatches") == 2);
  std::vector<int> cond;
  for (const auto &c : r.at("classes"))
    cond.push_back(c.at("conductor").get<int>());
  CHECK(cond == std::vector<int>{38, 254, 281, 308, 11, 12});
  CHECK_FALSE(r.at("big_action").at("big_action").get<bool>());
  CHECK(r.at("genus").at("genus_F") == "143210574");
  CHECK(r.at("uniformizer").at("residual_valuation") == 3402);
  CHECK(r.at("prolongations").at("samples").size() == 27);
  CHECK(r.at("presentation_equivalence").at(2).at("witness") == "y1*x");
  CHECK(r.at("presentation_equivalence").at(4).at("witness") == "y2*y1");
  CHECK_FALSE(r.contains("timings_s"));
  for (const auto &row : r.at("audit")) {
    const auto st = row.at("status").get<std::string>();
    CHECK((st == "MATCH" || st == "MISMATCH"));
  }
}

TEST_CASE("JSON is byte-identical across thread counts and key-sorted") {
  auto a = config("verify");
  a.threads = 1;
  auto b = config("verify");
  b.threads = 4;
  const auto ja = render(run(a).report, Format::json);
  const auto jb = render(run(b).report, Format::json);
  CHECK(ja == jb);
  const auto parsed = Json::parse(ja);
  std::string prev;
  for (const auto &[k, v] : parsed.items()) {
    CHECK(prev < k);
    prev = k;
  }
}

TEST_CASE("cache: cold and warm runs agree; flag beats the environment") {
  const auto dir = fresh_dir("cache");
  const auto env_dir = fresh_dir("env");
  ::setenv("BIGACT_CACHE_DIR", env_dir.c_str(), 1);

  auto c = config("genus");
  c.cache_dir = dir;
  CHECK(resolve_cache_dir(c) == dir);
  const auto cold = render(run(c).report, Format::json);
  const auto file = cache_file(dir, ff::Params(3, 1));
  CHECK(std::filesystem::exists(file));
  CHECK(file.filename().string().rfind("bigact-", 0) == 0);
  CHECK_FALSE(std::filesystem::exists(env_dir));

  bool hit = false;
  const ff::Params P(3, 1);
  const auto f = ff::Field::make(3, 3);
  const auto d = cached_uniformizer(P, f, dir, &hit);
  CHECK(hit);
  CHECK(d.residual == local::build_uniformizer(P, f).residual);
  CHECK(render(run(c).report, Format::json) == cold);

  // Corrupt entry: rebuilt silently, results unchanged.
  {
    std::ofstream os(file);
    os << "{not json";
  }
  CHECK(render(run(c).report, Format::json) == cold);
  cached_uniformizer(P, f, dir, &hit);
  CHECK(hit);

  auto e = config("genus");
  CHECK(resolve_cache_dir(e) == env_dir);
  run(e);
  CHECK(std::filesystem::exists(cache_file(env_dir, P)));
  ::unsetenv("BIGACT_CACHE_DIR");
  CHECK_FALSE(resolve_cache_dir(e).has_value());

  CHECK(cache_key(P) != cache_key(ff::Params(3, 2)));
  CHECK(cache_key(P) == cache_key(ff::Params(3, 1)));
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(env_dir);
}

TEST_CASE("uniformizer JSON round trip") {
  const ff::Params P(5, 1);
  const auto f = ff::Field::make(5, 3);
  const auto d = local::build_uniformizer(P, f);
  const auto back = uniformizer_from_json(Json::parse(uniformizer_to_json(d).dump()), P, f);
  CHECK(back.y_head == d.y_head);
  CHECK(back.residual == d.residual);
  CHECK(back.a2 == d.a2);
  CHECK_THROWS(uniformizer_from_json(uniformizer_to_json(d), ff::Params(3, 1), ff::Field::make(3, 3)));
}

TEST_CASE("subcommands") {
  auto cd = config("conductor");
  cd.class_label = "w";
  auto out = run(cd);
  CHECK(out.exit_code == ok);
  CHECK(out.report.at("classes").at(0).at("conductor") == 308);

  out = run(config("commutators", 5, 1));
  CHECK(out.exit_code == ok);
  CHECK(out.report.at("commutators").at("sigma_tau").size() == 3);

  auto pr = config("prolong");
  pr.a_coords = {1, 1, 0};
  out = run(pr);
  CHECK(out.exit_code == ok);
  CHECK(out.report.at("prolongations").at("samples").at(0).at("multiplicity") == "14348907");

  out = run(config("audit"));
  CHECK(out.exit_code == audit_mismatch);
  CHECK(out.report.at("audit").size() == 10);

  out = run(config("genus", 3, 2));
  CHECK(out.exit_code == ok);
  CHECK(out.report.at("big_action").at("big_action").get<bool>());
}

TEST_CASE("markdown rendering and atomic writes") {
  const auto out = run(config("verify"));
  const auto md = render(out.report, Format::md);
  CHECK(md.find("# bigact report: p = 3, s = 1") != std::string::npos);
  CHECK(md.find("| w | K(y1) |") != std::string::npos);
  CHECK(md.find("MISMATCH") != std::string::npos);
  CHECK(md.find("exit code 3") != std::string::npos);

  const auto dir = fresh_dir("out");
  const auto path = dir / "nested" / "report.md";
  write_atomic(path, md);
  std::ifstream is(path);
  std::string back((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(back == md);
  std::size_t files = 0;
  for (const auto &e : std::filesystem::directory_iterator(path.parent_path())) {
    (void)e;
    ++files;
  }
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("timings are opt-in") {
  auto c = config("commutators");
  c.timings = true;
  CHECK(run(c).report.contains("timings_s"));
}
