#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <random>
#include <sstream>

#include "errors.hpp"

namespace frcone {

namespace {

const std::vector<ConfigKey> kKeys = {
    {"params", "n", "dimension n >= 2 (integer)"},
    {"params", "a", "exponent pair a, e.g. \"1/1, 1/1\""},
    {"params", "b", "exponent pair b"},
    {"params", "c", "exponent pair c"},
    {"params", "theorem", "verdict queried by check (T1-necessary, T2-sufficient, T3i, ..., T5ii)"},
    {"params", "variant", "Schur variant for witness/verify schur (L22, L23, L24, L25); default from the shape of p"},
    {"params", "testfn.l", "test-function numerator exponents, entries may be \"none\""},
    {"params", "testfn.s", "test-function denominator exponents"},
    {"params", "testfn.variant", "both-factors | first-only | second-only | none (default from testfn.l)"},
    {"params", "R_grid", "shift heights r of R = (0', r), rationals, >= 4 increasing (default 1, 2, 4, 8)"},
    {"params", "blowup.factor", "factor whose c is perturbed (1 or 2)"},
    {"params", "blowup.epsilon", "offset of c from its c-equation value"},
    {"params", "tolerance", "slope tolerance for scaling (default 1/25) and blowup (default 3/50)"},
    {"params", "lemma.l", "exponent l of the reproducing integral"},
    {"params", "lemma.r", "exponent r"},
    {"params", "lemma.s", "exponent s"},
    {"params", "remark.s", "exponent s of the weighted power integral"},
    {"params", "remark.l", "exponent l"},
    {"params", "remark.heights", "shift heights, default 1, 2"},
    {"params", "side", "Schur side: first | second | both (default both)"},
    {"params", "duality.g", "second pairing function: testfn (default) | zero"},
    {"params", "probe1", "probe pair \"x, y | x', y'\" with 2n rationals per point; probe2, ... likewise"},
    {"params", "probe2", ""},
    {"params", "probe3", ""},
    {"params", "probe4", ""},
    {"params", "probe5", ""},
    {"params", "probe6", ""},
    {"spaces", "p", "source exponents p, 1 <= p"},
    {"spaces", "q", "target exponents q"},
    {"spaces", "alpha", "source weights alpha > -1"},
    {"spaces", "beta", "target weights beta > -1"},
    {"sampling", "seed", "unsigned 64-bit seed; drawn from entropy and recorded when absent"},
    {"sampling", "scale", "proposal scale (positive real)"},
    {"sampling", "batch_size", "samples per batch (default 4096)"},
    {"sampling", "base_samples", "samples at the first checkpoint (default 65536)"},
    {"sampling", "doublings", "checkpoints after the first (default 3)"},
    {"sampling", "inner_factor", "nested-norm inner samples per outer sample count (default 64)"},
    {"sampling", "pair_samples", "inner samples per outer point for operator images (default 1024)"},
    {"sampling", "image_samples", "outer samples at the first checkpoint for operator images (default 2048)"},
    {"sampling", "cauchy_tolerance", "relative Cauchy tolerance of the doubling schedule (default 0.1)"},
    {"sampling", "tail_threshold", "Hill tail index above which a mean is declared infinite (default 0.9)"},
    {"output", "dir", "report directory (else $FRCONE_OUTPUT_DIR, else .)"},
    {"output", "format", "json | csv (csv adds a table for scaling reports)"},
};

bool known(const std::string& section, const std::string& key) {
  return std::any_of(kKeys.begin(), kKeys.end(),
                     [&](const ConfigKey& k) { return section == k.section && key == k.key; });
}

bool known_section(const std::string& section) {
  return section == "params" || section == "spaces" || section == "sampling" || section == "output";
}

std::string_view trim(std::string_view s, std::size_t* leading = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  std::size_t b = s.size();
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  if (leading) *leading = a;
  return s.substr(a, b - a);
}

struct Piece {
  std::string_view text;
  int column;
};

std::vector<Piece> split(std::string_view value, int column, char separator) {
  std::vector<Piece> out;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= value.size(); ++k) {
    if (k == value.size() || value[k] == separator) {
      std::size_t lead = 0;
      const std::string_view piece = trim(value.substr(start, k - start), &lead);
      out.push_back({piece, column + static_cast<int>(start + lead)});
      start = k + 1;
    }
  }
  return out;
}

std::uint64_t parse_u64(const ConfigEntry& e) {
  std::uint64_t out = 0;
  const auto* first = e.value.data();
  const auto* last = first + e.value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last) throw ParseError("expected an unsigned integer", e.line, e.column);
  return out;
}

double parse_real(const ConfigEntry& e) {
  double out = 0.0;
  const auto* first = e.value.data();
  const auto* last = first + e.value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last) throw ParseError("expected a real number", e.line, e.column);
  return out;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() { return kKeys; }

std::string config_help() {
  std::ostringstream out;
  std::string section;
  for (const auto& k : kKeys) {
    if (*k.help == '\0') continue;
    if (section != k.section) {
      section = k.section;
      out << "[" << section << "]\n";
    }
    out << "  " << k.key << ": " << k.help << "\n";
  }
  return out.str();
}

RunConfig::RunConfig() {
  std::random_device device;
  entropy_seed_ = (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::size_t lead = 0;
    const std::string_view line = trim(raw, &lead);
    if (line.empty() || line[0] == '#' || line[0] == ';') {
      if (end == text.size()) break;
      continue;
    }
    const int col0 = static_cast<int>(lead) + 1;
    if (line[0] == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no, col0);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_section(section)) throw ParseError("unknown section [" + section + "]", line_no, col0);
    } else {
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no, col0);
      if (section.empty()) throw ParseError("key outside of a section", line_no, col0);
      const std::string key(trim(line.substr(0, eq)));
      std::size_t vlead = 0;
      const std::string_view value = trim(line.substr(eq + 1), &vlead);
      if (!known(section, key)) throw ParseError("unknown key '" + key + "' in [" + section + "]", line_no, col0);
      if (cfg.has(section, key)) throw ParseError("duplicate key '" + key + "'", line_no, col0);
      const int vcol = col0 + static_cast<int>(eq + 1 + vlead);
      cfg.sections_[section][key] = ConfigEntry{std::string(value), line_no, vcol};
    }
    if (end == text.size()) break;
  }
  if (cfg.has("sampling", "seed")) {
    parse_u64(cfg.require("sampling", "seed"));
    cfg.seed_from_entropy_ = false;
  }
  return cfg;
}

void RunConfig::set(const std::string& section, const std::string& key, std::string value) {
  if (!known_section(section)) throw ParseError("unknown section [" + section + "]");
  if (!known(section, key)) throw ParseError("unknown key '" + key + "' in [" + section + "]");
  ConfigEntry entry{std::string(trim(value)), 0, 0};
  if (section == "sampling" && key == "seed") {
    parse_u64(entry);
    seed_from_entropy_ = false;
  }
  sections_[section][key] = std::move(entry);
}

bool RunConfig::has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

const ConfigEntry* RunConfig::find(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

const ConfigEntry& RunConfig::require(const std::string& section, const std::string& key) const {
  const ConfigEntry* e = find(section, key);
  if (!e) throw ParseError("missing key '" + key + "' in [" + section + "]");
  return *e;
}

std::string RunConfig::text(const std::string& section, const std::string& key, const std::string& fallback) const {
  const ConfigEntry* e = find(section, key);
  return e ? e->value : fallback;
}

Rational RunConfig::rational(const std::string& section, const std::string& key) const {
  const ConfigEntry& e = require(section, key);
  return parse_rational(e.value, e.line, e.column - 1);
}

std::optional<Rational> RunConfig::optional_rational(const std::string& section, const std::string& key) const {
  if (!has(section, key)) return std::nullopt;
  return rational(section, key);
}

RationalPair RunConfig::rational_pair(const std::string& section, const std::string& key) const {
  const auto parts = optional_pair(section, key);
  const ConfigEntry& e = require(section, key);
  if (!parts[0] || !parts[1]) throw ParseError("'" + key + "' entries must be rationals", e.line, e.column);
  return {*parts[0], *parts[1]};
}

std::array<std::optional<Rational>, 2> RunConfig::optional_pair(const std::string& section,
                                                                const std::string& key) const {
  const ConfigEntry& e = require(section, key);
  std::string_view value = e.value;
  int column = e.column;
  if (!value.empty() && value.front() == '(') {
    if (value.back() != ')') throw ParseError("unbalanced parenthesis", e.line, e.column);
    value = value.substr(1, value.size() - 2);
    ++column;
  }
  const auto pieces = split(value, column, ',');
  if (pieces.size() != 2) throw ParseError("'" + key + "' needs exactly two entries", e.line, e.column);
  std::array<std::optional<Rational>, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    if (pieces[i].text == "none") continue;
    out[i] = parse_rational(pieces[i].text, e.line, pieces[i].column - 1);
  }
  return out;
}

std::vector<Rational> RunConfig::rational_list(const std::string& section, const std::string& key,
                                               char separator) const {
  const ConfigEntry& e = require(section, key);
  std::vector<Rational> out;
  for (const Piece& p : split(e.value, e.column, separator)) out.push_back(parse_rational(p.text, e.line, p.column - 1));
  return out;
}

int RunConfig::integer(const std::string& section, const std::string& key, int fallback) const {
  const ConfigEntry* e = find(section, key);
  if (!e) return fallback;
  const Rational r = parse_rational(e->value, e->line, e->column - 1);
  if (denominator(r) != 1) throw ParseError("'" + key + "' must be an integer", e->line, e->column);
  return static_cast<int>(numerator(r));
}

SamplingConfig RunConfig::sampling() const {
  SamplingConfig out;
  out.seed = seed_from_entropy_ ? entropy_seed_ : parse_u64(require("sampling", "seed"));
  if (const auto* e = find("sampling", "scale")) out.scale = parse_real(*e);
  if (const auto* e = find("sampling", "batch_size")) out.batch_size = parse_u64(*e);
  if (const auto* e = find("sampling", "base_samples")) out.base_samples = parse_u64(*e);
  if (const auto* e = find("sampling", "doublings")) out.doublings = static_cast<int>(parse_u64(*e));
  if (const auto* e = find("sampling", "inner_factor")) out.inner_factor = parse_u64(*e);
  if (const auto* e = find("sampling", "pair_samples")) out.pair_samples = parse_u64(*e);
  if (const auto* e = find("sampling", "image_samples")) out.image_samples = parse_u64(*e);
  if (const auto* e = find("sampling", "cauchy_tolerance")) out.cauchy_tolerance = parse_real(*e);
  if (const auto* e = find("sampling", "tail_threshold")) out.tail_threshold = parse_real(*e);
  try {
    out.validate();
  } catch (const DomainError& err) {
    throw ParseError(std::string("[sampling] ") + err.what());
  }
  return out;
}

std::string RunConfig::output_dir() const {
  if (const auto* e = find("output", "dir")) return e->value;
  if (const char* env = std::getenv("FRCONE_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

std::string RunConfig::output_format() const {
  const std::string format = text("output", "format", "json");
  if (format != "json" && format != "csv") {
    const ConfigEntry* e = find("output", "format");
    throw ParseError("output format must be json or csv", e ? e->line : 0, e ? e->column : 0);
  }
  return format;
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  for (const auto& [section, keys] : sections_) {
    if (section == "output") continue;
    for (const auto& [key, entry] : keys) {
      if (section == "sampling" && key == "seed") continue;
      out << section << '.' << key << '=' << entry.value << '\n';
    }
  }
  out << "sampling.seed=" << sampling().seed << '\n';
  return out.str();
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace frcone
