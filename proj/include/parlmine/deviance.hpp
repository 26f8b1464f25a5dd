#pragma once

// Conjunctive threshold rules explaining the delayed label: textual form,
// evaluation, simplification, and induction by beam search.
//
// Rule grammar (one rule per line in rule files, '#' starts a comment line):
//
//   rule    := cond (" and " cond)*
//   cond    := feature (">=" | "<=" | "=") literal
//   literal := number | True | False | "quoted text"
//
// Feature names may contain spaces, dots, colons and non-ASCII letters.
// ">=" and "<=" take numbers; "=" takes a flag or quoted text.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "parlmine/enrich.hpp"

namespace parlmine::deviance {

enum class Comparator { GreaterEqual, LessEqual, Equal };

using ConditionValue = std::variant<double, bool, std::string>;

struct Condition {
  std::string feature;
  Comparator comparator = Comparator::GreaterEqual;
  ConditionValue value = 0.0;

  // False when the feature is absent or has an incompatible type.
  bool holds(const AttributeMap& features) const;
  std::string to_string() const;

  bool operator==(const Condition&) const = default;
};

struct Rule {
  std::vector<Condition> conditions;

  bool matches(const enrich::FeatureRow& row) const;
  std::string to_string() const;

  bool operator==(const Rule&) const = default;
};

struct RuleEvaluation {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;

  double f1() const;
};

struct InductionConfig {
  double test_fraction = 0.33;
  std::uint64_t seed = 0;
  std::vector<std::string> hidden_patterns;  // case-insensitive substrings
  std::size_t max_conditions = 2;
  std::size_t beam_width = 10;
};

// Hiding presets: time-related features, and anything mentioning "Gesetz".
std::vector<std::string> hide_time_related();
std::vector<std::string> hide_gesetz();

bool is_hidden(std::string_view feature, const std::vector<std::string>& hidden_patterns);

struct TrainTestSplit {
  enrich::FeatureTable train;
  enrich::FeatureTable test;
};

// Seeded shuffle; the test part receives ceil(test_fraction * n) rows. Both
// parts keep the input's relative row order. Throws Error{EmptyTable} or
// Error{BadConfig}.
TrainTestSplit split_train_test(const enrich::FeatureTable& table, const InductionConfig& config);

struct InducedRule {
  Rule rule;
  RuleEvaluation train;
};

// Ranked by train F1, then fewer conditions, then feature names. Throws
// Error{SingleClassTrain}, Error{AllFeaturesHidden}, Error{UnlabeledTable}.
std::vector<InducedRule> induce_rules(const enrich::FeatureTable& train, const InductionConfig& config);

// Throws Error{UnlabeledTable} if any row lacks a label.
RuleEvaluation evaluate_rule(const Rule& rule, const enrich::FeatureTable& table);

// Throws Error{SyntaxError} with the byte offset of the problem.
Rule parse_rule(std::string_view text);
std::vector<Rule> parse_rule_file(std::string_view text);

// Throws Error{LastCondition} or Error{BadIndex}.
Rule simplify_rule(const Rule& rule, std::size_t drop_index);

// rule,precision,recall
std::string evaluations_to_csv(const std::vector<std::pair<Rule, RuleEvaluation>>& rows);

}  // namespace parlmine::deviance
