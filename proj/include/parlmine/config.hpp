#pragma once

// Run configuration read from an INI-style file:
//
//   [defaults]
//   min_year = 1984
//   sidecar = data/doc_features.csv
//
//   [profile.berlin]
//   input = data/berlin/export.xml
//   date_format = dd.MM.yyyy
//   relabel = Plenarprotokoll | Titel ~ 1\. Lesung => 1. Lesung
//   passed_activity = Gesetz- und Verordnungsblatt
//
// Keys listed as repeatable accumulate; all others take the last value.
// Relative paths are resolved against the config file's directory.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "parlmine/cleaning.hpp"
#include "parlmine/deviance.hpp"
#include "parlmine/enrich.hpp"
#include "parlmine/eventlog.hpp"

namespace parlmine::config {

struct Profile {
  std::string name;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::string> date_formats;  // empty: default formats
  std::vector<RelabelRule> relabel_rules;
  std::set<std::string> passed_activities;
  std::vector<std::filesystem::path> sidecars;
};

struct RunConfig {
  std::vector<Profile> profiles;
  std::vector<std::filesystem::path> sidecars;  // shared by all profiles
  cleaning::CleaningPolicy cleaning;
  std::string filter_attribute = keys::kVSysL;
  std::string filter_value = "Gesetzgebung";
  int window_first_year = 2006;
  int window_last_year = 2020;
  double delay_factor = enrich::kDefaultDelayFactor;
  deviance::InductionConfig induction;
  std::filesystem::path output_dir;

  const Profile* find_profile(std::string_view name) const;
};

// Throws Error{BadConfig} with the line number of the offending entry.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace parlmine::config
