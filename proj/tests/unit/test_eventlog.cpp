#include <doctest.h>

#include <algorithm>
#include <random>

#include "../support/random_log.hpp"
#include "parlmine/error.hpp"
#include "parlmine/eventlog.hpp"

using namespace parlmine;
using parlmine::testing::LogGenerator;

namespace {

ingest::RawDocument doc(std::optional<std::string> typ, std::optional<std::string> date) {
  ingest::RawDocument d;
  d.dok_typ_l = std::move(typ);
  d.date_text = std::move(date);
  return d;
}

}  // namespace

TEST_SUITE("eventlog") {
  TEST_CASE("build_log maps processes and documents") {
    ingest::RawExport raw;
    raw.source_name = "be";
    ingest::RawProcess empty;
    ingest::RawProcess p;
    p.internal_id = "V9";
    p.v_sys_l = "Gesetzgebung";
    p.side_entries = {"b", "a"};
    auto d1 = doc("Gesetz", "04.05.2010");
    d1.authors = {"Zeta", "Alpha"};
    d1.extra_attributes["Wahlperiode"] = "16";
    p.documents = {doc("Spaet", "2010-06-01"), d1, doc("Ohne", std::nullopt), doc("Gleich", "2010-05-04")};
    raw.processes = {empty, p};

    const auto log = build_log(raw, default_date_formats());
    REQUIRE(log.traces.size() == 2);
    CHECK(log.traces[0].case_id == "be#1");
    CHECK(log.traces[0].events.empty());
    const auto& t = log.traces[1];
    CHECK(t.case_id == "V9");
    CHECK(std::get<std::string>(t.case_attributes.at("VSysL")) == "Gesetzgebung");
    CHECK(std::get<TextList>(t.case_attributes.at("Nebeneintrag")) == TextList{"a", "b"});
    REQUIRE(t.events.size() == 4);
    // Timestamp order, ties in document order, undated last.
    CHECK(t.events[0].activity == "Gesetz");
    CHECK(t.events[0].timestamp == make_date(2010, 5, 4));
    CHECK(t.events[1].activity == "Gleich");
    CHECK(t.events[2].activity == "Spaet");
    CHECK(t.events[3].activity == "Ohne");
    CHECK_FALSE(t.events[3].timestamp);
    CHECK(std::get<TextList>(t.events[0].attributes.at("Urheber")) == TextList{"Alpha", "Zeta"});
    CHECK(std::get<std::string>(t.events[0].attributes.at("Wahlperiode")) == "16");
    CHECK(log.event_count() == 4);
  }

  TEST_CASE("case ids stay unique") {
    ingest::RawExport raw;
    raw.source_name = "s";
    ingest::RawProcess a;
    a.internal_id = "s#2";
    ingest::RawProcess b;
    b.internal_id = "s#2";
    raw.processes = {a, b};
    const auto log = build_log(raw, default_date_formats());
    CHECK(log.traces[0].case_id == "s#2");
    CHECK(log.traces[1].case_id == "s#2~");
  }

  TEST_CASE("no date formats") {
    CHECK_THROWS_AS(build_log(ingest::RawExport{}, {}), Error);
  }

  TEST_CASE("sort_list_attributes is idempotent and order-insensitive") {
    LogGenerator gen(5);
    for (int round = 0; round < 200; ++round) {
      auto log = gen.log({}, testing::default_activities());
      auto shuffled = log;
      for (auto& t : shuffled.traces) {
        for (auto& e : t.events) {
          for (auto& [k, v] : e.attributes) {
            if (auto* l = std::get_if<TextList>(&v)) std::shuffle(l->begin(), l->end(), gen.rng());
          }
        }
      }
      const auto once = sort_list_attributes(log);
      CHECK(sort_list_attributes(once) == once);
      CHECK(sort_list_attributes(shuffled) == once);
    }
    Trace t;
    t.case_attributes["Urheber"] = TextList{"Zeta", "Alpha"};
    sort_list_attributes(t);
    CHECK(std::get<TextList>(t.case_attributes.at("Urheber")) == TextList{"Alpha", "Zeta"});
  }

  TEST_CASE("filter_by_case_attribute") {
    LogGenerator gen(6);
    for (int round = 0; round < 100; ++round) {
      const auto log = gen.log({}, testing::default_activities());
      const auto kept = filter_by_case_attribute(log, "VSysL", "Gesetzgebung");
      for (const auto& t : kept.traces) {
        CHECK(std::find(log.traces.begin(), log.traces.end(), t) != log.traces.end());
        CHECK(std::get<std::string>(t.case_attributes.at("VSysL")) == "Gesetzgebung");
      }
      CHECK(filter_by_case_attribute(kept, "VSysL", "Gesetzgebung").traces == kept.traces);
      CHECK(filter_by_case_attribute(log, "absent", "x").traces.empty());
    }
  }

  TEST_CASE("time window boundaries") {
    EventLog log;
    for (auto [id, date] : {std::pair{"a", make_date(2005, 12, 31)}, std::pair{"b", make_date(2006, 1, 1)},
                            std::pair{"c", make_date(2020, 12, 31)}, std::pair{"d", make_date(2021, 1, 1)}}) {
      Trace t;
      t.case_id = id;
      t.events.push_back(Event{"x", date, {}});
      log.traces.push_back(t);
    }
    const auto kept = filter_by_time_window(log, 2006, 2020);
    REQUIRE(kept.traces.size() == 2);
    CHECK(kept.traces[0].case_id == "b");
    CHECK(kept.traces[1].case_id == "c");
    CHECK(filter_by_time_window(log, 1900, 2100).traces == log.traces);
    try {
      filter_by_time_window(log, 2021, 2020);
      FAIL("expected BadWindow");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::BadWindow);
    }
  }

  TEST_CASE("relabel readings") {
    EventLog log;
    Trace t;
    t.case_id = "a";
    t.events.push_back(Event{"Lesung", make_date(2010, 1, 1), {{"Titel", std::string("1. Lesung des Entwurfs")}}});
    t.events.push_back(Event{"Lesung", make_date(2010, 2, 1), {{"Titel", std::string("2. Lesung des Entwurfs")}}});
    t.events.push_back(Event{"Lesung", make_date(2010, 3, 1), {}});
    t.events.push_back(Event{"Ausschuss", make_date(2010, 4, 1), {{"Titel", std::string("1.")}}});
    log.traces.push_back(t);

    CHECK(relabel_readings(log, {}) == log);

    const std::vector<RelabelRule> rules = {parse_relabel_rule(R"(Lesung | Titel ~ ^1\. => 1. Lesung)"),
                                            parse_relabel_rule(R"(Lesung | Titel ~ ^2\. => 2. Lesung)"),
                                            parse_relabel_rule(R"(Lesung|Titel~^1 => never reached)")};
    const auto out = relabel_readings(log, rules);
    CHECK(out.traces[0].events[0].activity == "1. Lesung");
    CHECK(out.traces[0].events[1].activity == "2. Lesung");
    CHECK(out.traces[0].events[2].activity == "Lesung");
    CHECK(out.traces[0].events[3].activity == "Ausschuss");

    const auto rule = parse_relabel_rule("Plenar.* => Sitzung");
    CHECK_FALSE(rule.attribute);
    CHECK(rule.activity_pattern == "Plenar.*");
    CHECK(rule.new_label == "Sitzung");

    for (const char* bad : {"Lesung", "( => x", "a | ~ b => c", "a | T ~ [ => c", "a => "}) {
      try {
        parse_relabel_rule(bad);
        FAIL("expected InvalidPattern for " << bad);
      } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidPattern);
      }
    }
  }

  TEST_CASE("merge_logs keeps case ids unique") {
    EventLog a;
    a.name = "a";
    a.traces.push_back(Trace{"1", {}, {}});
    EventLog b;
    b.name = "b";
    b.traces.push_back(Trace{"1", {}, {}});
    b.traces.push_back(Trace{"2", {}, {}});
    const std::vector<EventLog> logs = {a, b};
    const auto merged = merge_logs(logs, "ab");
    REQUIRE(merged.traces.size() == 3);
    CHECK(merged.traces[0].case_id == "1");
    CHECK(merged.traces[1].case_id == "b:1");
    CHECK(merged.traces[2].case_id == "2");
  }
}
