#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unistd.h>

#include "bigact/errors.hpp"
#include "bigact/report.hpp"
#include "bigact/version.hpp"

namespace bigact::report {

namespace {

std::uint64_t fnv1a(const std::string &s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Json terms_json(const laurent::LaurentPoly &a) {
  Json j = Json::array();
  for (const auto &t : a.terms())
    j.push_back({t.exp, t.coeff.v});
  return j;
}

laurent::LaurentPoly terms_from_json(const Json &j, const ff::FieldPtr &field) {
  std::vector<laurent::Term> terms;
  for (const auto &t : j) {
    const auto v = t.at(1).get<std::uint32_t>();
    if (v >= field->order())
      throw std::runtime_error("coefficient out of range");
    terms.push_back({t.at(0).get<std::int64_t>(), ff::Fq{v}});
  }
  return laurent::LaurentPoly(field, std::move(terms));
}

} // namespace

std::optional<std::filesystem::path> resolve_cache_dir(const RunConfig &cfg) {
  if (cfg.cache_dir)
    return cfg.cache_dir;
  if (const char *env = std::getenv("BIGACT_CACHE_DIR"); env && *env)
    return std::filesystem::path(env);
  return std::nullopt;
}

std::string cache_key(const ff::Params &params) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0')
     << fnv1a("bigact-uniformizer|p=" + std::to_string(params.p()) + "|s=" + std::to_string(params.s()) +
              "|v=" + kVersion);
  return os.str();
}

std::filesystem::path cache_file(const std::filesystem::path &dir, const ff::Params &params) {
  return dir / ("bigact-" + cache_key(params) + ".json");
}

Json uniformizer_to_json(const local::UniformizerData &d) {
  Json j;
  j["artifact_version"] = kVersion;
  j["p"] = d.params.p();
  j["s"] = d.params.s();
  j["a1"] = d.a1;
  j["a2"] = d.a2;
  j["b1"] = d.b1;
  j["b2"] = d.b2;
  j["x_of_z"] = terms_json(d.x_of_z);
  j["y_head"] = terms_json(d.y_head);
  j["residual"] = terms_json(d.residual);
  return j;
}

local::UniformizerData uniformizer_from_json(const Json &j, const ff::Params &params, const ff::FieldPtr &field) {
  if (j.at("artifact_version").get<std::string>() != kVersion || j.at("p").get<int>() != params.p() ||
      j.at("s").get<int>() != params.s())
    throw std::runtime_error("cache entry belongs to another configuration");
  local::UniformizerData d{params,
                           j.at("a1").get<std::int64_t>(),
                           j.at("a2").get<std::int64_t>(),
                           j.at("b1").get<std::int64_t>(),
                           j.at("b2").get<std::int64_t>(),
                           terms_from_json(j.at("x_of_z"), field),
                           terms_from_json(j.at("y_head"), field),
                           terms_from_json(j.at("residual"), field)};
  if (d.residual.is_zero() || d.residual_valuation() != params.q() * d.b1)
    throw std::runtime_error("cached residual has the wrong valuation");
  return d;
}

void write_atomic(const std::filesystem::path &path, const std::string &content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::filesystem::create_directories(dir);
  const auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os)
      throw std::runtime_error("cannot write " + tmp.string());
    os << content;
    os.flush();
    if (!os)
      throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

local::UniformizerData cached_uniformizer(const ff::Params &params, const ff::FieldPtr &field,
                                          const std::optional<std::filesystem::path> &dir, bool *hit) {
  if (hit)
    *hit = false;
  if (!dir)
    return local::build_uniformizer(params, field);

  const auto file = cache_file(*dir, params);
  if (std::filesystem::exists(file)) {
    try {
      std::ifstream is(file);
      auto d = uniformizer_from_json(Json::parse(is), params, field);
      if (hit)
        *hit = true;
      return d;
    } catch (const std::exception &) {
      // Unreadable or stale entry: rebuild and overwrite below.
    }
  }
  auto d = local::build_uniformizer(params, field);
  write_atomic(file, uniformizer_to_json(d).dump());
  return d;
}

} // namespace bigact::report
