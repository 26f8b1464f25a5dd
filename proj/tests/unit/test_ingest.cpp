#include <doctest.h>

#include <random>
#include <string>

#include "parlmine/error.hpp"
#include "parlmine/ingest.hpp"

using namespace parlmine;
using namespace parlmine::ingest;

TEST_SUITE("ingest") {
  TEST_CASE("empty export") {
    const auto raw = parse_export(std::string_view("<Export/>"), "be-18");
    CHECK(raw.source_name == "be-18");
    CHECK(raw.processes.empty());
    CHECK(scan_export(raw).empty());
  }

  TEST_CASE("one process with two documents") {
    const auto raw = parse_export(std::string_view(R"(<?xml version="1.0" encoding="UTF-8"?>
<Export>
  <Vorgang VNr="V1" VTyp="G" VTypL="Gesetz" VSys="GG" VSysL="Gesetzgebung">
    <Nebeneintrag Desk="Haushalt"/>
    <Dokument DokTypL="Gesetzentwurf" DokDat="04.05.2010" Titel="Entwurf" LokURL="http://x/1.pdf"
              Urheber="Senat; Fraktion B" Wahlperiode="16"/>
    <Dokument>
      <DokTypL>Plenarprotokoll</DokTypL>
      <DokArtL>Drucksache</DokArtL>
      <DokDat>2010-06-01</DokDat>
      <Redner>Zeta</Redner>
      <Redner>Alpha</Redner>
      <Deskriptoren><Desk>Steuern</Desk><Desk>Haushalt</Desk></Deskriptoren>
    </Dokument>
  </Vorgang>
</Export>)"),
                                  "be");
    REQUIRE(raw.processes.size() == 1);
    const auto& p = raw.processes[0];
    CHECK(p.internal_id == "V1");
    CHECK(p.v_sys_l == "Gesetzgebung");
    CHECK(p.v_typ_l == "Gesetz");
    CHECK(p.side_entries == std::vector<std::string>{"Haushalt"});
    REQUIRE(p.documents.size() == 2);
    const auto& d0 = p.documents[0];
    CHECK(d0.dok_typ_l == "Gesetzentwurf");
    CHECK(d0.date_text == "04.05.2010");
    CHECK(d0.title == "Entwurf");
    CHECK(d0.url == "http://x/1.pdf");
    CHECK(d0.authors == std::vector<std::string>{"Senat", "Fraktion B"});
    CHECK(d0.extra_attributes == std::map<std::string, std::string>{{"Wahlperiode", "16"}});
    const auto& d1 = p.documents[1];
    CHECK(d1.dok_typ_l == "Plenarprotokoll");
    CHECK(d1.dok_art_l == "Drucksache");
    CHECK(d1.date_text == "2010-06-01");
    // File order is kept at this stage.
    CHECK(d1.speakers == std::vector<std::string>{"Zeta", "Alpha"});
    CHECK(d1.descriptors == std::vector<std::string>{"Steuern", "Haushalt"});
    CHECK(d1.extra_attributes.empty());
  }

  TEST_CASE("wrong root and malformed XML") {
    try {
      parse_export(std::string_view("<Vorgang/>"), "x");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::WrongRootElement);
    }
    try {
      parse_export(std::string_view("<Export>\n  <Vorgang>\n</Export>"), "x");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::MalformedXml);
      REQUIRE(e.where());
      CHECK(e.where()->line == 3);
    }
  }

  TEST_CASE("declared ISO-8859-1 and windows-1252 encodings") {
    const std::string latin1 = "<?xml version=\"1.0\" encoding=\"ISO-8859-1\"?><Export><Vorgang>"
                               "<Dokument DokTypL=\"Beschlussempfehlung \xe4\"/></Vorgang></Export>";
    auto raw = parse_export(std::string_view(latin1), "x");
    CHECK(raw.processes[0].documents[0].dok_typ_l == "Beschlussempfehlung \xc3\xa4");
    const std::string cp1252 = "<?xml version=\"1.0\" encoding=\"windows-1252\"?><Export><Vorgang>"
                               "<Dokument Titel=\"\x80 \x84quoted\x93\"/></Vorgang></Export>";
    raw = parse_export(std::string_view(cp1252), "x");
    CHECK(raw.processes[0].documents[0].title == "\xe2\x82\xac \xe2\x80\x9equoted\xe2\x80\x9c");
  }

  TEST_CASE("scan warnings are exact") {
    const auto raw = parse_export(std::string_view(R"(<Export>
  <Vorgang VNr="a"><Dokument DokTypL="X" DokDat="01.01.2000"/></Vorgang>
  <Vorgang VNr="b"><Dokument DokTypL="X"/><Dokument DokTypL="Y"/><Dokument DokArtL="Z" DokDat="01.01.2000"/></Vorgang>
  <Vorgang VNr="c"><Dokument DokDat="01.01.2000"/></Vorgang>
  <Vorgang VNr="d"/>
  <Vorgang VNr="e"><Beratungen><Sitzung/></Beratungen><Dokument DokTypL="X" DokDat="01.01.2000"/></Vorgang>
</Export>)"),
                                  "x");
    const auto warnings = scan_export(raw);
    CHECK(count_warnings(warnings, WarningKind::MissingDate) == 2);
    CHECK(count_flagged_processes(warnings, WarningKind::MissingDate) == 1);
    CHECK(count_warnings(warnings, WarningKind::MissingActivity) == 1);
    CHECK(count_warnings(warnings, WarningKind::EmptyProcess) == 1);
    CHECK(count_warnings(warnings, WarningKind::SkippedElement) == 1);
    CHECK(raw.processes[4].skipped_elements == std::vector<std::string>{"Beratungen"});
  }

  TEST_CASE("leaf children of a process are kept as extras") {
    const auto raw = parse_export(
        std::string_view("<Export><Vorgang><VNr>7</VNr><Initiative>Senat</Initiative><Initiative>CDU</Initiative>"
                         "</Vorgang></Export>"),
        "x");
    CHECK(raw.processes[0].internal_id == "7");
    CHECK(raw.processes[0].extra_attributes.at("Initiative") == "Senat; CDU");
  }

  TEST_CASE("element counts are preserved on random exports") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 100; ++round) {
      std::string xml = "<Export>";
      const int n_proc = static_cast<int>(rng() % 6);
      std::vector<std::size_t> docs;
      for (int p = 0; p < n_proc; ++p) {
        xml += (rng() % 2) ? "<Vorgang VNr=\"v" + std::to_string(p) + "\">" : "<Vorgang>";
        const std::size_t n_doc = rng() % 5;
        docs.push_back(n_doc);
        for (std::size_t d = 0; d < n_doc; ++d) {
          if (rng() % 3 == 0) xml += "<Nebeneintrag Desk=\"n\"/>";
          xml += (rng() % 2) ? "<Dokument DokTypL=\"A\"/>" : "<Dokument><Titel>t</Titel><Unbekannt>u</Unbekannt></Dokument>";
        }
        xml += "</Vorgang>";
      }
      xml += "</Export>";
      const auto raw = parse_export(std::string_view(xml), "r");
      REQUIRE(raw.processes.size() == docs.size());
      for (std::size_t p = 0; p < docs.size(); ++p) CHECK(raw.processes[p].documents.size() == docs[p]);
      CHECK(parse_export(std::string_view(xml), "r") == raw);
    }
  }
}
