#include <doctest.h>

#include <cmath>
#include <limits>

#include "../support/random_log.hpp"
#include "parlmine/cleaning.hpp"
#include "parlmine/error.hpp"
#include "parlmine/enrich.hpp"

using namespace parlmine;
using namespace parlmine::enrich;

namespace {

Date day(int offset) { return Date{std::chrono::sys_days{make_date(2010, 1, 1)} + std::chrono::days{offset}}; }

Trace trace_of(std::string id, std::vector<std::pair<std::string, int>> events) {
  Trace t;
  t.case_id = std::move(id);
  for (auto& [a, d] : events) t.events.push_back(Event{a, day(d), {}});
  return t;
}

double num(const FeatureRow& row, const std::string& name) { return std::get<double>(row.features.at(name)); }

EventLog random_timed_log(std::uint64_t seed) {
  testing::LogGenerator gen(seed);
  testing::RandomLogShape shape;
  shape.missing_timestamp_rate = 0.0;
  shape.empty_activity_rate = 0.0;
  shape.rich_attributes = false;
  shape.first_year = 2006;
  shape.last_year = 2009;
  auto log = gen.log(shape, testing::default_activities());
  std::erase_if(log.traces, [](const Trace& t) { return t.events.empty(); });
  for (auto& t : log.traces) testing::order_by_time(t);
  return log;
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Io;
}

}  // namespace

TEST_SUITE("enrich") {
  TEST_CASE("basic features") {
    EventLog log;
    log.traces.push_back(trace_of("a", {{"1. Lesung", 0}, {"Sitzung", 30}, {"1. Lesung", 31}, {"Sitzung", 40},
                                        {"Gesetzblatt", 50}, {"x", 51}, {"x", 52}, {"x", 53}}));
    log.traces.push_back(trace_of("b", {{"Sitzung", 5}}));
    const auto table = extract_features(log, {}, {"Gesetzblatt"});
    const auto& a = table.rows[0];
    CHECK(num(a, "event_count") == 8);
    CHECK(num(a, "1. Lesung:Sitzung.delay") == 30);
    CHECK(num(a, "Sitzung:Gesetzblatt.delay") == 20);
    CHECK(num(a, "1. Lesung:x.delay") == 51);
    CHECK(num(a, "1. Lesung.count") == 2);
    CHECK(num(a, "x.count") == 3);
    CHECK(num(a, "start_month") == 1);
    CHECK(num(a, "start_year") == 2010);
    CHECK(std::get<bool>(a.features.at("is_passed_bill")));
    CHECK(num(a, "Sitzung:1. Lesung.delay") == 1);
    const auto& b = table.rows[1];
    CHECK(num(b, "event_count") == 1);
    CHECK(num(b, "1. Lesung.count") == 0);
    CHECK_FALSE(b.features.contains("1. Lesung:Sitzung.delay"));
    CHECK_FALSE(std::get<bool>(b.features.at("is_passed_bill")));
    CHECK(table.feature_catalog.contains("1. Lesung:Sitzung.delay"));
  }

  TEST_CASE("workload counts traces open at the start date") {
    EventLog log;
    log.traces.push_back(trace_of("a", {{"A", 0}, {"B", 10}}));
    log.traces.push_back(trace_of("b", {{"A", 10}, {"B", 20}}));
    log.traces.push_back(trace_of("c", {{"A", 11}}));
    log.traces.push_back(trace_of("d", {{"A", 25}}));
    const auto table = extract_features(log, {}, {});
    CHECK(num(table.rows[0], "workload") == 1);
    CHECK(num(table.rows[1], "workload") == 2);
    CHECK(num(table.rows[2], "workload") == 2);
    CHECK(num(table.rows[3], "workload") == 1);
  }

  TEST_CASE("feature invariants on random logs") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      const auto log = random_timed_log(seed);
      const auto table = extract_features(log, {}, {"Beschluss"});
      const auto activities = distinct_activities(log);
      REQUIRE(table.rows.size() == log.traces.size());
      for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        double total = 0;
        for (const auto& a : activities) total += num(row, count_feature(a));
        CHECK(total == num(row, "event_count"));
        for (const auto& [name, value] : row.features) {
          CHECK(table.feature_catalog.contains(name));
          if (name.ends_with(".delay")) CHECK(std::get<double>(value) >= 0.0);
        }
        // Brute-force workload.
        const auto start = std::chrono::sys_days{*log.traces[i].start()};
        double open = 0;
        for (const auto& t : log.traces) {
          const auto lo = std::chrono::sys_days{*t.events.front().timestamp};
          const auto hi = std::chrono::sys_days{*t.events.back().timestamp};
          if (lo <= start && start <= hi) open += 1;
        }
        CHECK(num(row, "workload") == open);
      }
      // Independent of trace order.
      auto reversed = log;
      std::reverse(reversed.traces.begin(), reversed.traces.end());
      auto other = extract_features(reversed, {}, {"Beschluss"});
      std::reverse(other.rows.begin(), other.rows.end());
      CHECK(other.feature_catalog == table.feature_catalog);
      for (std::size_t i = 0; i < table.rows.size(); ++i) CHECK(other.rows[i].features == table.rows[i].features);
    }
  }

  TEST_CASE("sidecar joins") {
    EventLog log;
    log.traces.push_back(trace_of("a", {{"A", 0}}));
    log.traces.push_back(trace_of("b", {{"A", 400}}));
    const auto years = parse_sidecar_csv("year,is_election_year,squire_index\n2010,1,0.25\n2011,0,\n", "years");
    const auto docs = parse_sidecar_csv("case_id,pdf_size,word_count\nb,1200,300\n", "docs");
    const auto table = extract_features(log, {years, docs}, {});
    CHECK(std::get<bool>(table.rows[0].features.at("is_election_year")));
    CHECK(num(table.rows[0], "squire_index") == 0.25);
    CHECK_FALSE(table.rows[0].features.contains("pdf_size"));
    CHECK_FALSE(std::get<bool>(table.rows[1].features.at("is_election_year")));
    CHECK_FALSE(table.rows[1].features.contains("squire_index"));
    CHECK(num(table.rows[1], "word_count") == 300);

    CHECK(code_of([] { parse_sidecar_csv("year,x\n2010,1\n2010,2\n", "dup"); }) == Errc::DuplicateSidecarKey);
    const auto bad = parse_sidecar_csv("month,x\n1,1\n", "m");
    CHECK(code_of([&] { extract_features(log, {bad}, {}); }) == Errc::BadConfig);
  }

  TEST_CASE("delay threshold") {
    metrics::LogSummary s;
    s.mean_cycle_days = 100.0;
    CHECK(compute_delay_threshold(s, 1.1) == doctest::Approx(110.0));
    CHECK(compute_delay_threshold(s, 1.0) == 100.0);
    s.mean_cycle_days = 61.1;
    CHECK(compute_delay_threshold(s) == doctest::Approx(67.21).epsilon(1e-12));
    s.mean_cycle_days = 0.0;
    CHECK(code_of([&] { compute_delay_threshold(s); }) == Errc::NonPositiveMean);
  }

  TEST_CASE("labeling") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const auto log = random_timed_log(seed);
      const auto table = extract_features(log, {}, {});
      CHECK(count_delayed(label_delayed(table, log, std::numeric_limits<double>::infinity())) == 0);
      std::size_t previous = std::numeric_limits<std::size_t>::max();
      for (double threshold : {-1.0, 0.0, 10.0, 67.21, 100.0, 400.0, 2000.0}) {
        const auto labeled = label_delayed(table, log, threshold);
        const auto delayed = count_delayed(labeled);
        CHECK(delayed <= previous);
        previous = delayed;
        for (std::size_t i = 0; i < labeled.rows.size(); ++i) {
          CHECK(*labeled.rows[i].is_delayed ==
                (static_cast<double>(cleaning::cycle_time_days(log.traces[i])) > threshold));
          CHECK(labeled.rows[i].features == table.rows[i].features);
        }
      }
    }
    EventLog log;
    log.traces.push_back(trace_of("a", {{"A", 0}}));
    FeatureTable table;
    table.rows.push_back(FeatureRow{"zzz", {}, std::nullopt});
    CHECK(code_of([&] { label_delayed(table, log, 1.0); }) == Errc::UnknownCase);
  }

  TEST_CASE("CSV round trip") {
    EventLog log;
    log.traces.push_back(trace_of("a,\"1\"", {{"A", 0}, {"B, C", 3}}));
    log.traces.push_back(trace_of("b", {{"A", 2}}));
    const auto years = parse_sidecar_csv("year,is_election_year,squire_index,note\n2010,True,0.125,hello\n", "y");
    const auto table = label_delayed(extract_features(log, {years}, {"B, C"}), log, 1.0);
    const auto text = to_csv(table);
    CHECK(text.starts_with("case_id,"));
    const auto back = parse_feature_csv(text);
    CHECK(back.feature_catalog == table.feature_catalog);
    REQUIRE(back.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < back.rows.size(); ++i) {
      CHECK(back.rows[i].case_id == table.rows[i].case_id);
      CHECK(back.rows[i].features == table.rows[i].features);
      CHECK(back.rows[i].is_delayed == table.rows[i].is_delayed);
    }
    CHECK(to_csv(back) == text);
  }
}
