#include "parlmine/deviance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "parlmine/csv.hpp"
#include "parlmine/error.hpp"

namespace parlmine::deviance {

namespace {

std::string format_number(double v) {
  std::string s = fmt::format("{}", v);
  if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

const char* comparator_text(Comparator c) {
  switch (c) {
    case Comparator::GreaterEqual: return ">=";
    case Comparator::LessEqual: return "<=";
    case Comparator::Equal: return "=";
  }
  return "?";
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void require_labels(const enrich::FeatureTable& table) {
  for (const auto& row : table.rows) {
    if (!row.is_delayed) throw Error(Errc::UnlabeledTable, "row '" + row.case_id + "' has no delay label");
  }
}

bool condition_less(const Condition& a, const Condition& b) {
  return std::tie(a.feature, a.comparator, a.value) < std::tie(b.feature, b.comparator, b.value);
}

void canonicalize(Rule& rule) { std::sort(rule.conditions.begin(), rule.conditions.end(), condition_less); }

// Confusion counts of a candidate against the whole training set; fn and tn
// follow from the class totals.
struct Score {
  std::size_t tp = 0;
  std::size_t fp = 0;
};

// F1 = 2tp / (tp + fp + positives), compared exactly by cross-multiplication.
bool better_f1(const Score& a, const Score& b, std::size_t positives) {
  const unsigned long long lhs = 2ULL * a.tp * (b.tp + b.fp + positives);
  const unsigned long long rhs = 2ULL * b.tp * (a.tp + a.fp + positives);
  return lhs > rhs;
}

struct Ranked {
  Rule rule;
  Score score;
  std::vector<std::string> features;
  std::string text;
};

Ranked make_ranked(Rule rule, Score score) {
  canonicalize(rule);
  Ranked r{std::move(rule), score, {}, {}};
  for (const auto& c : r.rule.conditions) r.features.push_back(c.feature);
  r.text = r.rule.to_string();
  return r;
}

struct RankOrder {
  std::size_t positives;
  bool operator()(const Ranked& a, const Ranked& b) const {
    if (better_f1(a.score, b.score, positives)) return true;
    if (better_f1(b.score, a.score, positives)) return false;
    if (a.rule.conditions.size() != b.rule.conditions.size()) {
      return a.rule.conditions.size() < b.rule.conditions.size();
    }
    if (a.features != b.features) return a.features < b.features;
    return a.text < b.text;
  }
};

// A single-condition extension of a parent rule, before materialization.
struct Extension {
  std::size_t parent;
  Condition condition;
  Score score;
};

class Inducer {
 public:
  Inducer(const enrich::FeatureTable& train, const InductionConfig& config) : train_(train), config_(config) {
    for (const auto& name : train.feature_catalog) {
      if (!is_hidden(name, config.hidden_patterns)) features_.push_back(name);
    }
    if (features_.empty()) throw Error(Errc::AllFeaturesHidden, "every feature is hidden");
    columns_.assign(features_.size(), std::vector<const AttributeValue*>(train.rows.size(), nullptr));
    for (std::size_t i = 0; i < train.rows.size(); ++i) {
      const auto& row = train.rows[i];
      labels_.push_back(*row.is_delayed);
      positives_ += *row.is_delayed;
      for (std::size_t f = 0; f < features_.size(); ++f) {
        auto it = row.features.find(features_[f]);
        if (it != row.features.end()) columns_[f][i] = &it->second;
      }
    }
  }

  std::vector<InducedRule> run() {
    std::vector<Ranked> beam{Ranked{}};
    std::vector<Ranked> results;
    std::set<std::string> seen;
    for (std::size_t depth = 1; depth <= config_.max_conditions; ++depth) {
      std::vector<Extension> pool;
      for (std::size_t p = 0; p < beam.size(); ++p) extend(p, beam[p].rule, pool);
      beam = select(pool, beam, seen);
      if (beam.empty()) break;
      results.insert(results.end(), beam.begin(), beam.end());
    }
    std::sort(results.begin(), results.end(), RankOrder{positives_});
    std::vector<InducedRule> out;
    for (auto& r : results) {
      InducedRule induced{std::move(r.rule), {}};
      induced.train = evaluate_rule(induced.rule, train_);
      out.push_back(std::move(induced));
    }
    return out;
  }

 private:
  std::vector<char> match_mask(const Rule& rule) const {
    std::vector<char> mask(train_.rows.size(), 1);
    for (std::size_t i = 0; i < train_.rows.size(); ++i) mask[i] = rule.matches(train_.rows[i]) ? 1 : 0;
    return mask;
  }

  static bool redundant(const Rule& parent, const Condition& c) {
    return std::any_of(parent.conditions.begin(), parent.conditions.end(), [&](const Condition& existing) {
      return existing.feature == c.feature && existing.comparator == c.comparator;
    });
  }

  void push(std::size_t parent, const Rule& parent_rule, Condition c, Score s, std::vector<Extension>& pool) const {
    if (s.tp == 0 && s.fp == 0) return;
    if (redundant(parent_rule, c)) return;
    pool.push_back({parent, std::move(c), s});
  }

  void extend(std::size_t parent, const Rule& parent_rule, std::vector<Extension>& pool) const {
    const auto mask = match_mask(parent_rule);
    for (std::size_t f = 0; f < features_.size(); ++f) {
      const auto& column = columns_[f];
      std::vector<std::pair<double, bool>> numeric;
      std::map<bool, Score> flags;
      std::map<std::string, Score> texts;
      for (std::size_t i = 0; i < column.size(); ++i) {
        if (!mask[i] || column[i] == nullptr) continue;
        const AttributeValue& v = *column[i];
        const bool label = labels_[i];
        if (const auto* d = std::get_if<double>(&v)) {
          if (!std::isnan(*d)) numeric.emplace_back(*d, label);
        } else if (const auto* b = std::get_if<bool>(&v)) {
          auto& s = flags[*b];
          (label ? s.tp : s.fp) += 1;
        } else if (const auto* t = std::get_if<std::string>(&v)) {
          auto& s = texts[*t];
          (label ? s.tp : s.fp) += 1;
        }
      }
      for (const auto& [value, s] : flags) push(parent, parent_rule, {features_[f], Comparator::Equal, value}, s, pool);
      for (const auto& [value, s] : texts) push(parent, parent_rule, {features_[f], Comparator::Equal, value}, s, pool);
      if (numeric.size() < 2) continue;
      std::sort(numeric.begin(), numeric.end());
      std::size_t total_pos = 0;
      for (const auto& [v, label] : numeric) total_pos += label;
      const std::size_t total = numeric.size();
      std::size_t below = 0;
      std::size_t below_pos = 0;
      for (std::size_t i = 0; i + 1 < numeric.size(); ++i) {
        ++below;
        below_pos += numeric[i].second;
        if (numeric[i].first == numeric[i + 1].first) continue;
        const double threshold = numeric[i].first + (numeric[i + 1].first - numeric[i].first) / 2.0;
        const Score upper{total_pos - below_pos, (total - below) - (total_pos - below_pos)};
        const Score lower{below_pos, below - below_pos};
        push(parent, parent_rule, {features_[f], Comparator::GreaterEqual, threshold}, upper, pool);
        push(parent, parent_rule, {features_[f], Comparator::LessEqual, threshold}, lower, pool);
      }
    }
  }

  std::vector<Ranked> select(std::vector<Extension>& pool, const std::vector<Ranked>& parents,
                             std::set<std::string>& seen) const {
    const std::size_t k = config_.beam_width;
    if (pool.empty() || k == 0) return {};
    const std::size_t pos = positives_;
    // Everything scoring at least as well as the k-th best extension is a
    // finalist; ties at the boundary are resolved on the materialized rules.
    std::vector<Score> scores;
    scores.reserve(pool.size());
    for (const auto& e : pool) scores.push_back(e.score);
    const std::size_t nth = std::min(k, scores.size()) - 1;
    std::nth_element(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(nth), scores.end(),
                     [pos](const Score& a, const Score& b) { return better_f1(a, b, pos); });
    const Score cutoff = scores[nth];
    std::vector<Ranked> finalists;
    std::set<std::string> local;
    for (auto& e : pool) {
      if (better_f1(cutoff, e.score, pos)) continue;
      Rule rule = parents[e.parent].rule;
      rule.conditions.push_back(std::move(e.condition));
      Ranked r = make_ranked(std::move(rule), e.score);
      if (seen.contains(r.text) || !local.insert(r.text).second) continue;
      finalists.push_back(std::move(r));
    }
    std::sort(finalists.begin(), finalists.end(), RankOrder{pos});
    if (finalists.size() > k) finalists.resize(k);
    for (const auto& r : finalists) seen.insert(r.text);
    return finalists;
  }

  const enrich::FeatureTable& train_;
  const InductionConfig& config_;
  std::vector<std::string> features_;
  std::vector<std::vector<const AttributeValue*>> columns_;
  std::vector<bool> labels_;
  std::size_t positives_ = 0;
};

// Unbiased draw in [0, bound) from a 64-bit engine.
std::uint64_t draw_below(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine();
  while (x >= limit) x = engine();
  return x % bound;
}

class RuleParser {
 public:
  explicit RuleParser(std::string_view text) : text_(text) {}

  Rule parse() {
    Rule rule;
    skip_spaces();
    if (pos_ == text_.size()) fail("empty rule");
    while (true) {
      rule.conditions.push_back(condition());
      skip_spaces();
      if (pos_ == text_.size()) break;
      if (text_.substr(pos_, 3) != "and" || pos_ + 3 >= text_.size() || text_[pos_ + 3] != ' ') {
        fail("expected 'and'");
      }
      pos_ += 4;
      skip_spaces();
    }
    return rule;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::optional<std::size_t> at = std::nullopt) const {
    const std::size_t where = at.value_or(pos_);
    throw Error(Errc::SyntaxError, what + " at offset " + std::to_string(where), SourcePosition{0, 0, where});
  }

  void skip_spaces() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_boundary(std::size_t p) const { return p == text_.size() || text_[p] == ' ' || text_[p] == '\t'; }

  Condition condition() {
    const std::size_t start = pos_;
    std::size_t op_pos = std::string_view::npos;
    std::size_t op_len = 0;
    Comparator comparator = Comparator::Equal;
    for (std::size_t p = start; p < text_.size(); ++p) {
      if (text_.substr(p, 2) == ">=" || text_.substr(p, 3) == "\xE2\x89\xA5") {
        comparator = Comparator::GreaterEqual;
        op_len = text_[p] == '>' ? 2 : 3;
      } else if (text_.substr(p, 2) == "<=" || text_.substr(p, 3) == "\xE2\x89\xA4") {
        comparator = Comparator::LessEqual;
        op_len = text_[p] == '<' ? 2 : 3;
      } else if (text_[p] == '=') {
        comparator = Comparator::Equal;
        op_len = 1;
      } else {
        continue;
      }
      op_pos = p;
      break;
    }
    if (op_pos == std::string_view::npos) fail("expected a comparator", start);
    std::string_view feature = text_.substr(start, op_pos - start);
    while (!feature.empty() && (feature.back() == ' ' || feature.back() == '\t')) feature.remove_suffix(1);
    if (feature.empty()) fail("missing feature name", start);
    pos_ = op_pos + op_len;
    skip_spaces();
    const std::size_t literal_pos = pos_;
    ConditionValue value = literal();
    const bool numeric = std::holds_alternative<double>(value);
    if (comparator == Comparator::Equal && numeric) fail("'=' takes True, False or quoted text", literal_pos);
    if (comparator != Comparator::Equal && !numeric) fail("'>=' and '<=' take a number", literal_pos);
    return Condition{std::string(feature), comparator, std::move(value)};
  }

  ConditionValue literal() {
    if (pos_ == text_.size()) fail("missing literal");
    const char c = text_[pos_];
    if (c == '"') {
      std::string out;
      std::size_t p = pos_ + 1;
      while (p < text_.size() && text_[p] != '"') {
        if (text_[p] == '\\' && p + 1 < text_.size()) ++p;
        out += text_[p++];
      }
      if (p == text_.size()) fail("unterminated quoted text");
      pos_ = p + 1;
      if (!at_boundary(pos_)) fail("unexpected text after literal");
      return out;
    }
    for (std::string_view word : {std::string_view("True"), std::string_view("False")}) {
      if (text_.substr(pos_, word.size()) == word && at_boundary(pos_ + word.size())) {
        pos_ += word.size();
        return word == "True";
      }
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      std::size_t end = pos_;
      while (end < text_.size() && !at_boundary(end)) ++end;
      const std::string token(text_.substr(pos_, end - pos_));
      char* stop = nullptr;
      const double v = std::strtod(token.c_str(), &stop);
      if (stop == token.c_str() + token.size() && std::isfinite(v)) {
        pos_ = end;
        return v;
      }
    }
    fail("invalid literal");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

bool Condition::holds(const AttributeMap& features) const {
  auto it = features.find(feature);
  if (it == features.end()) return false;
  const AttributeValue& v = it->second;
  switch (comparator) {
    case Comparator::GreaterEqual:
    case Comparator::LessEqual: {
      const auto* d = std::get_if<double>(&v);
      const auto* threshold = std::get_if<double>(&value);
      if (!d || !threshold) return false;
      return comparator == Comparator::GreaterEqual ? *d >= *threshold : *d <= *threshold;
    }
    case Comparator::Equal:
      if (const auto* b = std::get_if<bool>(&value)) {
        const auto* actual = std::get_if<bool>(&v);
        return actual && *actual == *b;
      }
      if (const auto* s = std::get_if<std::string>(&value)) {
        const auto* actual = std::get_if<std::string>(&v);
        return actual && *actual == *s;
      }
      return false;
  }
  return false;
}

std::string Condition::to_string() const {
  std::string literal;
  if (const auto* d = std::get_if<double>(&value)) {
    literal = format_number(*d);
  } else if (const auto* b = std::get_if<bool>(&value)) {
    literal = *b ? "True" : "False";
  } else {
    literal = quote(std::get<std::string>(value));
  }
  return feature + " " + comparator_text(comparator) + " " + literal;
}

bool Rule::matches(const enrich::FeatureRow& row) const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [&](const Condition& c) { return c.holds(row.features); });
}

std::string Rule::to_string() const {
  std::string out;
  for (const auto& c : conditions) {
    if (!out.empty()) out += " and ";
    out += c.to_string();
  }
  return out;
}

double RuleEvaluation::f1() const {
  const double denom = static_cast<double>(2 * tp + fp + fn);
  return denom > 0.0 ? 2.0 * static_cast<double>(tp) / denom : 0.0;
}

std::vector<std::string> hide_time_related() { return {".delay", "start_", "workload"}; }

std::vector<std::string> hide_gesetz() { return {"Gesetz"}; }

bool is_hidden(std::string_view feature, const std::vector<std::string>& hidden_patterns) {
  const std::string name = lower_ascii(feature);
  return std::any_of(hidden_patterns.begin(), hidden_patterns.end(), [&](const std::string& pattern) {
    return !pattern.empty() && name.find(lower_ascii(pattern)) != std::string::npos;
  });
}

TrainTestSplit split_train_test(const enrich::FeatureTable& table, const InductionConfig& config) {
  if (table.rows.empty()) throw Error(Errc::EmptyTable, "cannot split an empty feature table");
  if (!(config.test_fraction > 0.0 && config.test_fraction < 1.0)) {
    throw Error(Errc::BadConfig, fmt::format("test fraction {} outside (0, 1)", config.test_fraction));
  }
  const std::size_t n = table.rows.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 engine(config.seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[draw_below(engine, i + 1)]);
  }
  // The epsilon keeps products such as 0.33 * 100 from rounding up to 34.
  const auto n_test = static_cast<std::size_t>(std::ceil(config.test_fraction * static_cast<double>(n) - 1e-9));
  std::vector<char> in_test(n, 0);
  for (std::size_t i = 0; i < n_test; ++i) in_test[order[i]] = 1;

  TrainTestSplit split;
  split.train.feature_catalog = table.feature_catalog;
  split.test.feature_catalog = table.feature_catalog;
  for (std::size_t i = 0; i < n; ++i) (in_test[i] ? split.test : split.train).rows.push_back(table.rows[i]);
  return split;
}

std::vector<InducedRule> induce_rules(const enrich::FeatureTable& train, const InductionConfig& config) {
  require_labels(train);
  const auto delayed = enrich::count_delayed(train);
  if (delayed == 0 || delayed == train.rows.size()) {
    throw Error(Errc::SingleClassTrain, "training rows must contain delayed and non-delayed cases");
  }
  return Inducer(train, config).run();
}

RuleEvaluation evaluate_rule(const Rule& rule, const enrich::FeatureTable& table) {
  require_labels(table);
  RuleEvaluation e;
  for (const auto& row : table.rows) {
    const bool predicted = rule.matches(row);
    const bool actual = *row.is_delayed;
    if (predicted && actual) {
      ++e.tp;
    } else if (predicted) {
      ++e.fp;
    } else if (actual) {
      ++e.fn;
    } else {
      ++e.tn;
    }
  }
  e.precision = e.tp + e.fp > 0 ? static_cast<double>(e.tp) / static_cast<double>(e.tp + e.fp) : 0.0;
  e.recall = e.tp + e.fn > 0 ? static_cast<double>(e.tp) / static_cast<double>(e.tp + e.fn) : 0.0;
  return e;
}

Rule parse_rule(std::string_view text) { return RuleParser(text).parse(); }

std::vector<Rule> parse_rule_file(std::string_view text) {
  std::vector<Rule> rules;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#') {
      try {
        rules.push_back(parse_rule(line));
      } catch (const Error& e) {
        const std::size_t column = e.where() ? e.where()->offset + 1 : 1;
        throw Error(Errc::SyntaxError, e.message(), SourcePosition{line_no, column, e.where() ? e.where()->offset : 0});
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return rules;
}

Rule simplify_rule(const Rule& rule, std::size_t drop_index) {
  if (rule.conditions.size() <= 1) throw Error(Errc::LastCondition, "cannot drop the only condition of a rule");
  if (drop_index >= rule.conditions.size()) {
    throw Error(Errc::BadIndex, fmt::format("condition index {} out of range for a rule with {} conditions",
                                            drop_index, rule.conditions.size()));
  }
  Rule out = rule;
  out.conditions.erase(out.conditions.begin() + static_cast<std::ptrdiff_t>(drop_index));
  return out;
}

std::string evaluations_to_csv(const std::vector<std::pair<Rule, RuleEvaluation>>& rows) {
  std::string out = csv::format_row({"rule", "precision", "recall"});
  for (const auto& [rule, eval] : rows) {
    out += csv::format_row({rule.to_string(), fmt::format("{:.3f}", eval.precision), fmt::format("{:.3f}", eval.recall)});
  }
  return out;
}

}  // namespace parlmine::deviance
