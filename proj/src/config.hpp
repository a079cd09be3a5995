#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadrature.hpp"
#include "rational.hpp"

namespace frcone {

struct ConfigEntry {
  std::string value;
  int line = 0;    // 1-based; 0 for values set programmatically
  int column = 0;  // column of the first value character
};

/// Documentation of every accepted key, in file order.
struct ConfigKey {
  const char* section;
  const char* key;
  const char* help;
};

const std::vector<ConfigKey>& config_keys();
std::string config_help();

/// Flat INI document with sections [params], [spaces], [sampling], [output].
/// Operator parameters are exact rationals; decimal literals are rejected there.
class RunConfig {
 public:
  RunConfig();

  /// Throws ParseError with line and column.
  static RunConfig parse(std::string_view text);

  /// Throws ParseError for unknown sections or keys.
  void set(const std::string& section, const std::string& key, std::string value);

  bool has(const std::string& section, const std::string& key) const;
  const ConfigEntry* find(const std::string& section, const std::string& key) const;

  std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
  Rational rational(const std::string& section, const std::string& key) const;
  std::optional<Rational> optional_rational(const std::string& section, const std::string& key) const;
  RationalPair rational_pair(const std::string& section, const std::string& key) const;
  /// Pair whose entries may be "none".
  std::array<std::optional<Rational>, 2> optional_pair(const std::string& section, const std::string& key) const;
  std::vector<Rational> rational_list(const std::string& section, const std::string& key, char separator = ',') const;
  int integer(const std::string& section, const std::string& key, int fallback) const;

  /// The sampling block; an absent seed is drawn from entropy once, at construction.
  SamplingConfig sampling() const;
  bool seed_from_entropy() const noexcept { return seed_from_entropy_; }

  /// [output] dir, else $FRCONE_OUTPUT_DIR, else ".".
  std::string output_dir() const;
  std::string output_format() const;

  /// Canonical "section.key=value" lines (sorted), including the resolved seed.
  std::string canonical() const;

 private:
  const ConfigEntry& require(const std::string& section, const std::string& key) const;

  std::map<std::string, std::map<std::string, ConfigEntry>> sections_;
  std::uint64_t entropy_seed_ = 0;
  bool seed_from_entropy_ = true;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

}  // namespace frcone
