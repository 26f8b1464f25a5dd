#include <doctest.h>

#include "../support/random_log.hpp"
#include "parlmine/cleaning.hpp"
#include "parlmine/error.hpp"

using namespace parlmine;
using namespace parlmine::cleaning;

namespace {

Trace trace_of(std::string id, std::vector<Event> events) {
  Trace t;
  t.case_id = std::move(id);
  t.events = std::move(events);
  return t;
}

Event ev(std::string activity, std::optional<Date> date, AttributeMap attrs = {}) {
  return Event{std::move(activity), date, std::move(attrs)};
}

}  // namespace

TEST_SUITE("cleaning") {
  TEST_CASE("one valid trace passes untouched") {
    EventLog log;
    log.traces.push_back(trace_of("a", {ev("Gesetz", make_date(2010, 1, 1))}));
    const auto result = clean(log);
    const FilterReport expected{1, 0, 0, 0, 0, 0, 1};
    CHECK(result.report == expected);
    CHECK(result.log.traces == log.traces);
  }

  TEST_CASE("empty log") {
    const auto result = clean(EventLog{});
    CHECK(result.report == FilterReport{});
  }

  TEST_CASE("cycle time") {
    CHECK(cycle_time_days(trace_of("a", {ev("x", make_date(2001, 1, 1))})) == 0);
    CHECK(cycle_time_days(trace_of("a", {ev("x", make_date(2001, 1, 1)), ev("y", make_date(2001, 1, 31))})) == 30);
    CHECK(cycle_time_days(trace_of("a", {ev("x", make_date(2001, 1, 1)), ev("y", std::nullopt)})) == 0);
    CHECK_THROWS_AS(cycle_time_days(trace_of("a", {ev("x", std::nullopt)})), Error);
    CHECK_THROWS_AS(cycle_time_days(trace_of("a", {})), Error);
  }

  TEST_CASE("a trace from 2001 with an event in 2011 exceeds the cap") {
    EventLog log;
    log.traces.push_back(trace_of("a", {ev("x", make_date(2001, 3, 1)), ev("y", make_date(2011, 3, 1))}));
    // Exactly five calendar years with one leap day stays within the cap.
    log.traces.push_back(trace_of("b", {ev("x", make_date(2001, 1, 1)), ev("y", make_date(2006, 1, 1))}));
    log.traces.push_back(trace_of("c", {ev("x", make_date(2001, 1, 1)), ev("y", make_date(2006, 1, 2))}));
    const auto r = clean(log).report;
    CHECK(r.invalid_date == 2);
    CHECK(r.remaining == 1);
  }

  TEST_CASE("year bounds are inclusive") {
    EventLog log;
    log.traces.push_back(trace_of("lo", {ev("x", make_date(1984, 1, 1))}));
    log.traces.push_back(trace_of("hi", {ev("x", make_date(2024, 12, 31))}));
    log.traces.push_back(trace_of("early", {ev("x", make_date(1983, 12, 31))}));
    log.traces.push_back(trace_of("late", {ev("x", make_date(2025, 1, 1))}));
    const auto result = clean(log);
    CHECK(result.report.invalid_date == 2);
    REQUIRE(result.log.traces.size() == 2);
    CHECK(result.log.traces[0].case_id == "lo");
    CHECK(result.log.traces[1].case_id == "hi");
  }

  TEST_CASE("activity correction from DokArtL") {
    EventLog log;
    log.traces.push_back(trace_of(
        "fixed", {ev("", make_date(2010, 1, 1), {{"DokArtL", std::string("Plenarprotokoll")}}),
                  ev("Gesetz", make_date(2010, 1, 2), {{"DokArtL", std::string("Beschluss")}})}));
    log.traces.push_back(trace_of("drucksache", {ev("  ", make_date(2010, 1, 1), {{"DokArtL", std::string("Drucksache")}})}));
    log.traces.push_back(trace_of("none", {ev("", make_date(2010, 1, 1))}));
    const auto result = clean(log);
    const auto& r = result.report;
    CHECK(r.no_activity_before_correction == 3);
    CHECK(r.no_activity_after_correction == 2);
    CHECK(r.removed_total == 2);
    REQUIRE(result.log.traces.size() == 1);
    CHECK(result.log.traces[0].events[0].activity == "Plenarprotokoll");
    // Non-empty activities are never rewritten.
    CHECK(result.log.traces[0].events[1].activity == "Gesetz");
  }

  TEST_CASE("overlapping failures are removed once") {
    EventLog log;
    log.traces.push_back(trace_of("all", {ev("", std::nullopt), ev("", make_date(1970, 1, 1))}));
    const auto r = clean(log).report;
    CHECK(r.missing_date == 1);
    CHECK(r.invalid_date == 1);
    CHECK(r.no_activity_after_correction == 1);
    CHECK(r.removed_total == 1);
    CHECK(r.remaining == 0);
  }

  TEST_CASE("cleaned logs satisfy the invariants and cleaning is idempotent") {
    testing::LogGenerator gen(1984);
    const CleaningPolicy policy;
    for (int round = 0; round < 300; ++round) {
      testing::RandomLogShape shape;
      shape.rich_attributes = false;
      shape.first_year = 1980 + static_cast<int>(gen.uniform(0, 30));
      shape.last_year = shape.first_year + static_cast<int>(gen.uniform(0, 12));
      const auto log = gen.log(shape, testing::default_activities());
      const auto first = clean(log, policy);
      const auto& r = first.report;
      CHECK(r.remaining == r.original - r.removed_total);
      CHECK(r.removed_total <= r.missing_date + r.invalid_date + r.no_activity_after_correction);
      CHECK(r.no_activity_after_correction <= r.no_activity_before_correction);
      for (const auto& t : first.log.traces) {
        for (const auto& e : t.events) {
          REQUIRE(e.timestamp);
          CHECK(year_of(*e.timestamp) >= policy.min_year);
          CHECK(year_of(*e.timestamp) <= policy.max_year);
          CHECK_FALSE(e.activity.empty());
        }
        if (!t.events.empty()) CHECK(cycle_time_days(t) <= policy.max_cycle_days);
      }
      const auto second = clean(first.log, policy);
      CHECK(second.log.traces == first.log.traces);
      const FilterReport unchanged{r.remaining, 0, 0, 0, 0, 0, r.remaining};
      CHECK(second.report == unchanged);
    }
  }

  TEST_CASE("report serialization") {
    const FilterReport r{109370, 4240, 10, 81, 54, 4279, 105091};
    const auto text = report_to_csv(r);
    CHECK(text.starts_with("field,label,traces\n"));
    CHECK(text.find("remaining,after processing,105091\n") != std::string::npos);
    CHECK(text.find("no_activity_after_correction,no activity name after correction,54\n") != std::string::npos);
    CHECK(report_to_json(r) ==
          "{\n  \"original\": 109370,\n  \"missing_date\": 4240,\n  \"invalid_date\": 10,\n"
          "  \"no_activity_before_correction\": 81,\n  \"no_activity_after_correction\": 54,\n"
          "  \"removed_total\": 4279,\n  \"remaining\": 105091\n}\n");
  }
}
