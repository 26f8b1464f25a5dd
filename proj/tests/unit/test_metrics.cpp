#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "../support/oracles.hpp"
#include "../support/random_log.hpp"
#include "parlmine/cleaning.hpp"
#include "parlmine/error.hpp"
#include "parlmine/metrics.hpp"

using namespace parlmine;
using namespace parlmine::metrics;

namespace {

Trace span_trace(std::string id, Date start, long days, std::vector<std::string> activities = {"A", "B"}) {
  Trace t;
  t.case_id = std::move(id);
  for (std::size_t i = 0; i < activities.size(); ++i) {
    const auto d = std::chrono::sys_days{start} + std::chrono::days{i + 1 == activities.size() ? days : 0};
    t.events.push_back(Event{activities[i], Date{d}, {}});
  }
  return t;
}

EventLog timed_log(std::uint64_t seed) {
  testing::LogGenerator gen(seed);
  testing::RandomLogShape shape;
  shape.missing_timestamp_rate = 0.0;
  shape.rich_attributes = false;
  auto log = gen.log(shape, testing::default_activities());
  std::erase_if(log.traces, [](const Trace& t) { return t.events.empty(); });
  return log;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("single single-event trace") {
    EventLog log;
    log.traces.push_back(span_trace("a", make_date(2010, 1, 1), 0, {"A"}));
    const auto s = summarize(log);
    CHECK(s.n_cases == 1);
    CHECK(s.n_events == 1);
    CHECK(s.n_variants == 1);
    CHECK(s.mean_cycle_days == 0.0);
    CHECK(s.median_cycle_days == 0.0);
    CHECK(s.std_cycle_days == 0.0);
  }

  TEST_CASE("empty log") { CHECK_THROWS_AS(summarize(EventLog{}), Error); }

  TEST_CASE("summary statistics against direct computation") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto log = timed_log(seed);
      if (log.traces.empty()) continue;
      const auto s = summarize(log);
      std::vector<double> cycles;
      std::set<std::vector<std::string>> variants;
      std::set<std::string> activities;
      std::size_t events = 0;
      for (const auto& t : log.traces) {
        cycles.push_back(static_cast<double>(cleaning::cycle_time_days(t)));
        std::vector<std::string> seq;
        for (const auto& e : t.events) {
          seq.push_back(e.activity);
          activities.insert(e.activity);
        }
        variants.insert(seq);
        events += t.events.size();
      }
      std::sort(cycles.begin(), cycles.end());
      const auto n = cycles.size();
      const double med = n % 2 ? cycles[n / 2] : (cycles[n / 2 - 1] + cycles[n / 2]) / 2.0;
      CHECK(s.n_cases == n);
      CHECK(s.n_events == events);
      CHECK(s.mean_events_per_case == doctest::Approx(static_cast<double>(events) / n));
      CHECK(s.n_activities == activities.size());
      CHECK(s.n_variants == variants.size());
      CHECK(s.n_variants <= s.n_cases);
      CHECK(s.mean_cycle_days == doctest::Approx(std::accumulate(cycles.begin(), cycles.end(), 0.0) / n));
      CHECK(s.median_cycle_days == med);
      CHECK(s.std_cycle_days == doctest::Approx(testing::sample_std(cycles)).epsilon(1e-12));

      // Permutation invariance.
      auto shuffled = log;
      std::reverse(shuffled.traces.begin(), shuffled.traces.end());
      const auto s2 = summarize(shuffled);
      CHECK(s2.n_variants == s.n_variants);
      CHECK(s2.median_cycle_days == s.median_cycle_days);
      CHECK(s2.std_cycle_days == doctest::Approx(s.std_cycle_days));

      // Yearly frequencies conserve the case count.
      const auto freq = yearly_frequencies(log);
      double total = 0;
      for (const auto& [y, v] : freq.points) total += v;
      CHECK(total == static_cast<double>(n));
    }
  }

  TEST_CASE("median averages the middle pair") {
    CHECK(median({1, 3, 2, 10}) == 2.5);
    CHECK(median({5}) == 5.0);
    CHECK(median({4, 1, 9}) == 4.0);
  }

  TEST_CASE("one variant") {
    EventLog log;
    for (int i = 0; i < 5; ++i) log.traces.push_back(span_trace(std::to_string(i), make_date(2010, 1, 1), i));
    CHECK(summarize(log).n_variants == 1);
  }

  TEST_CASE("yearly series") {
    EventLog log;
    CHECK(yearly_frequencies(log).points.empty());
    CHECK(yearly_mean_cycle_times(log).points.empty());
    log.traces.push_back(span_trace("a", make_date(2010, 3, 1), 10));
    log.traces.push_back(span_trace("b", make_date(2013, 3, 1), 20));
    log.traces.push_back(span_trace("c", make_date(2013, 5, 1), 40));
    const auto freq = yearly_frequencies(log);
    CHECK(freq.points == std::map<int, double>{{2010, 1}, {2011, 0}, {2012, 0}, {2013, 2}});
    const auto cycle = yearly_mean_cycle_times(log);
    CHECK(cycle.points == std::map<int, double>{{2010, 10}, {2013, 30}});
    CHECK(series_to_csv(cycle) == "year,value\n2010,10\n2013,30\n");
  }

  TEST_CASE("one trace of 10 days starting 2010") {
    EventLog log;
    log.traces.push_back(span_trace("a", make_date(2010, 6, 1), 10));
    CHECK(yearly_mean_cycle_times(log).points == std::map<int, double>{{2010, 10.0}});
  }

  TEST_CASE("summary CSV has the eight fields") {
    EventLog log;
    log.traces.push_back(span_trace("a", make_date(2010, 6, 1), 10));
    const auto text = summary_to_csv(summarize(log));
    CHECK(text.substr(0, text.find('\n')) ==
          "n_cases,n_events,mean_events_per_case,n_activities,n_variants,mean_cycle_days,median_cycle_days,"
          "std_cycle_days");
  }
}
