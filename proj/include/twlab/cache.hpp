#ifndef TWLAB_CACHE_HPP
#define TWLAB_CACHE_HPP

// Persistence for series coefficients: a JSON file of decimal strings, exact
// round trip, with a checksum over the recursion parameters so a cache can
// never be replayed for a different state.

#include <twlab/bender_wu.hpp>
#include <twlab/numerics.hpp>

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace twlab {

constexpr int cache_format_version = 1;

namespace detail {

inline std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string cache_checksum(Well well, unsigned state, SeriesParity parity) {
  std::string canon = std::string("twlab-series|v") + std::to_string(cache_format_version) + "|" +
                      to_string(well) + "|" + std::to_string(state) + "|" + to_string(parity) +
                      "|closure=intermediate-normalisation";
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(canon)));
  return buf;
}

inline Integer parse_decimal_integer(const std::string& s) {
  Integer z;
  const char* p = s.c_str();
  if (mpz_set_str(z.backend().data(), p, 10) != 0)
    throw CacheError("cache: malformed integer literal '" + s + "'");
  return z;
}

}  // namespace detail

/// Writes the energy coefficients to `path`. Header carries the harmonic
/// coefficient; records hold c^[2m] for m = 1..order as decimal strings.
inline void save_series(const RationalSeries& s, const std::string& path) {
  nlohmann::ordered_json j;
  j["format_version"] = cache_format_version;
  j["well"] = to_string(s.well);
  j["state"] = s.state_index;
  j["parity"] = to_string(s.parity);
  j["max_order"] = s.order();
  j["checksum"] = detail::cache_checksum(s.well, s.state_index, s.parity);
  j["c0"] = {{"num", numerator(s.coefficients[0]).str()},
             {"den", denominator(s.coefficients[0]).str()}};
  auto& records = j["coefficients"] = nlohmann::ordered_json::array();
  for (unsigned m = 1; m <= s.order(); ++m) {
    records.push_back({{"m", m},
                       {"num", numerator(s.coefficients[m]).str()},
                       {"den", denominator(s.coefficients[m]).str()}});
  }
  std::ofstream out(path);
  if (!out) throw CacheError("cache: cannot open '" + path + "' for writing");
  out << j.dump(1) << '\n';
}

/// Loads a cache file; rejects version mismatches, checksum mismatches and
/// malformed records.
inline RationalSeries load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CacheError("cache: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CacheError(std::string("cache: parse failure: ") + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != cache_format_version)
      throw CacheError("cache: unsupported format version");
    RationalSeries s;
    std::string well = j.at("well").get<std::string>();
    s.well = well == "central" ? Well::central : Well::side;
    s.state_index = j.at("state").get<unsigned>();
    std::string parity = j.at("parity").get<std::string>();
    s.parity = parity == "even"  ? SeriesParity::even
               : parity == "odd" ? SeriesParity::odd
                                 : SeriesParity::not_applicable;
    if (j.at("checksum").get<std::string>() !=
        detail::cache_checksum(s.well, s.state_index, s.parity))
      throw CacheError("cache: checksum mismatch (file does not belong to this state)");
    unsigned order = j.at("max_order").get<unsigned>();
    s.coefficients.resize(order + 1);
    s.coefficients[0] = Rational(detail::parse_decimal_integer(j.at("c0").at("num")),
                                 detail::parse_decimal_integer(j.at("c0").at("den")));
    unsigned seen = 0;
    for (const auto& rec : j.at("coefficients")) {
      unsigned m = rec.at("m").get<unsigned>();
      if (m < 1 || m > order) throw CacheError("cache: record order out of range");
      s.coefficients[m] = Rational(detail::parse_decimal_integer(rec.at("num")),
                                   detail::parse_decimal_integer(rec.at("den")));
      ++seen;
    }
    if (seen != order) throw CacheError("cache: missing coefficient records");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw CacheError(std::string("cache: malformed file: ") + e.what());
  }
}

/// Directory used when no explicit cache path is given: $TWLAB_CACHE_DIR or
/// the working directory.
inline std::string default_cache_dir() {
  if (const char* dir = std::getenv("TWLAB_CACHE_DIR")) return dir;
  return ".";
}

inline std::string cache_filename(Well well, unsigned state) {
  return std::string(to_string(well)) + "_s" + std::to_string(state) + ".json";
}

/// Returns a series of at least `order` coefficients for the given state,
/// loading from the cache file when possible and regenerating (and saving)
/// otherwise.  An unreadable or foreign file is an error; an under-long one
/// is extended.
inline RationalSeries ensure_series(Well well, unsigned state, unsigned order,
                                    const std::string& path) {
  if (std::filesystem::exists(path)) {
    RationalSeries s = load_series(path);
    if (s.well != well || s.state_index != state)
      throw CacheError("cache: '" + path + "' holds a different state");
    if (s.order() >= order) return s;
  }
  RationalSeries fresh = well == Well::central ? central_series(state, state % 2, order).series
                                               : side_series(state, order).series;
  save_series(fresh, path);
  return fresh;
}

}  // namespace twlab

#endif  // TWLAB_CACHE_HPP
