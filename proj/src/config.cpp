#include "parlmine/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "parlmine/error.hpp"
#include "parlmine/io.hpp"

namespace parlmine::config {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Reader {
 public:
  Reader(std::filesystem::path base) : base_(std::move(base)) {}

  RunConfig read(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      line_ = line_no;
      handle_line(trim(text.substr(pos, end - pos)));
      pos = end + 1;
    }
    if (config_.window_first_year > config_.window_last_year) fail("window_first_year exceeds window_last_year");
    return std::move(config_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(Errc::BadConfig, "line " + std::to_string(line_) + ": " + message, SourcePosition{line_, 0, 0});
  }

  std::filesystem::path path_value(std::string_view v) const {
    if (v.empty()) fail("empty path");
    std::filesystem::path p{std::string(v)};
    if (p.is_relative() && !base_.empty()) p = base_ / p;
    return p;
  }

  template <typename T>
  T integer(std::string_view v) const {
    T out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) fail("expected an integer, got '" + std::string(v) + "'");
    return out;
  }

  double number(std::string_view v) const {
    std::string s(v);
    char* end = nullptr;
    const double out = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(out)) fail("expected a number, got '" + s + "'");
    return out;
  }

  void handle_line(std::string_view line) {
    if (line.empty() || line.front() == '#' || line.front() == ';') return;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      if (name == "defaults") {
        profile_.reset();
      } else if (name.starts_with("profile.") && name.size() > 8) {
        std::string profile_name(name.substr(8));
        if (config_.find_profile(profile_name)) fail("duplicate profile '" + profile_name + "'");
        config_.profiles.emplace_back().name = std::move(profile_name);
        profile_ = config_.profiles.size() - 1;
      } else {
        fail("unknown section [" + std::string(name) + "]");
      }
      return;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (profile_) {
      profile_entry(key, value);
    } else {
      default_entry(key, value);
    }
  }

  void profile_entry(std::string_view key, std::string_view value) {
    Profile& p = config_.profiles[*profile_];
    if (key == "input") {
      p.inputs.push_back(path_value(value));
    } else if (key == "date_format") {
      if (value.empty()) fail("empty date format");
      p.date_formats.emplace_back(value);
    } else if (key == "relabel") {
      try {
        p.relabel_rules.push_back(parse_relabel_rule(std::string(value)));
      } catch (const Error& e) {
        fail(e.message());
      }
    } else if (key == "passed_activity") {
      if (value.empty()) fail("empty activity");
      p.passed_activities.emplace(value);
    } else if (key == "sidecar") {
      p.sidecars.push_back(path_value(value));
    } else {
      fail("unknown profile key '" + std::string(key) + "'");
    }
  }

  void default_entry(std::string_view key, std::string_view value) {
    auto& c = config_;
    if (key == "min_year") {
      c.cleaning.min_year = integer<int>(value);
    } else if (key == "max_year") {
      c.cleaning.max_year = integer<int>(value);
    } else if (key == "max_cycle_days") {
      c.cleaning.max_cycle_days = integer<long>(value);
    } else if (key == "fallback_attribute") {
      c.cleaning.fallback_attribute = std::string(value);
    } else if (key == "fallback_excluded") {
      c.cleaning.fallback_excluded_values.emplace(value);
    } else if (key == "filter_attribute") {
      c.filter_attribute = std::string(value);
    } else if (key == "filter_value") {
      c.filter_value = std::string(value);
    } else if (key == "window_first_year") {
      c.window_first_year = integer<int>(value);
    } else if (key == "window_last_year") {
      c.window_last_year = integer<int>(value);
    } else if (key == "delay_factor") {
      c.delay_factor = number(value);
      if (c.delay_factor <= 0) fail("delay_factor must be positive");
    } else if (key == "test_fraction") {
      c.induction.test_fraction = number(value);
      if (!(c.induction.test_fraction > 0 && c.induction.test_fraction < 1)) fail("test_fraction must be in (0, 1)");
    } else if (key == "seed") {
      c.induction.seed = integer<std::uint64_t>(value);
    } else if (key == "max_conditions") {
      c.induction.max_conditions = integer<std::size_t>(value);
    } else if (key == "beam_width") {
      c.induction.beam_width = integer<std::size_t>(value);
    } else if (key == "hide") {
      c.induction.hidden_patterns.emplace_back(value);
    } else if (key == "sidecar") {
      c.sidecars.push_back(path_value(value));
    } else if (key == "output") {
      c.output_dir = path_value(value);
    } else {
      fail("unknown key '" + std::string(key) + "'");
    }
  }

  std::filesystem::path base_;
  RunConfig config_;
  std::optional<std::size_t> profile_;
  std::size_t line_ = 0;
};

}  // namespace

const Profile* RunConfig::find_profile(std::string_view name) const {
  for (const auto& p : profiles) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  return Reader(base_dir).read(text);
}

RunConfig load_config(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  try {
    return parse_config(text, path.parent_path());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message(), e.where());
  }
}

}  // namespace parlmine::config
