#include <doctest.h>

#include <cstring>
#include <string>

#include "teamlogic/teamlogic.h"

namespace {
std::string take(char* s) {
  std::string out = s ? s : "";
  tl_string_free(s);
  return out;
}
}  // namespace

TEST_CASE("formula handles round-trip through the boundary") {
  tl_formula* f = nullptr;
  REQUIRE(tl_formula_parse("[] =(p,q)", &f) == TL_OK);
  char* text = nullptr;
  REQUIRE(tl_formula_render(f, &text) == TL_OK);
  CHECK(take(text) == "[] =(p,q)");
  char* frag = nullptr;
  REQUIRE(tl_formula_fragment(f, &frag) == TL_OK);
  CHECK(take(frag) == "MDL");
  char* vars = nullptr;
  REQUIRE(tl_formula_free_vars(f, &vars) == TL_OK);
  CHECK(take(vars) == "[\"p\",\"q\"]");
  tl_formula_free(f);
}

TEST_CASE("status codes carry the failure class") {
  tl_formula* f = nullptr;
  CHECK(tl_formula_parse("p &", &f) == TL_ERR_PARSE);
  CHECK(std::strlen(tl_last_error()) > 0);
  CHECK(tl_formula_parse(nullptr, &f) == TL_ERR_INVALID);

  tl_team* t = nullptr;
  CHECK(tl_team_parse("{]", &t) == TL_ERR_PARSE);
  CHECK(tl_team_parse(R"({"vars":["p"],"rows":[[7]]})", &t) == TL_ERR_INVALID);

  char* rep = nullptr;
  REQUIRE(tl_formula_parse("ind(;p;q)", &f) == TL_OK);
  tl_formula_free(f);
  CHECK(tl_decide("nonsense", nullptr, 0, "p", "", nullptr, &rep) == TL_ERR_INVALID);
  CHECK(tl_decide("valid", nullptr, 0, "<>ind(;p;q)", "", nullptr, &rep) == TL_ERR_FRAGMENT);
}

TEST_CASE("checking teams and models") {
  tl_formula* f = nullptr;
  REQUIRE(tl_formula_parse("=(p,q)", &f) == TL_OK);
  tl_team* good = nullptr;
  REQUIRE(tl_team_parse(R"({"vars":["p","q"],"rows":[[0,0],[1,1]]})", &good) == TL_OK);
  tl_team* bad = nullptr;
  REQUIRE(tl_team_parse(R"({"vars":["p","q"],"rows":[[0,0],[0,1]]})", &bad) == TL_OK);
  int verdict = -1;
  REQUIRE(tl_check_team(f, good, &verdict) == TL_OK);
  CHECK(verdict == 1);
  REQUIRE(tl_check_team(f, bad, &verdict) == TL_OK);
  CHECK(verdict == 0);
  tl_team_free(good);
  tl_team_free(bad);
  tl_formula_free(f);

  tl_formula* boxp = nullptr;
  REQUIRE(tl_formula_parse("[]p", &boxp) == TL_OK);
  tl_kripke* m = nullptr;
  REQUIRE(tl_kripke_parse(
              R"({"worlds":2,"edges":[[0,1]],"val":{"p":[1]},"team":[0]})", &m) == TL_OK);
  REQUIRE(tl_check_kripke(boxp, m, &verdict) == TL_OK);
  CHECK(verdict == 1);
  tl_kripke_free(m);
  tl_formula_free(boxp);
}

TEST_CASE("decide emits a machine-readable report") {
  const char* premises[] = {"=(p,q)", "=(q,r)"};
  char* rep = nullptr;
  REQUIRE(tl_decide("entail", premises, 2, "=(p,r)", "", nullptr, &rep) == TL_OK);
  std::string r = take(rep);
  CHECK(r.find("\"verdict\":true") != std::string::npos);
  CHECK(r.find("\"counters\"") != std::string::npos);
  CHECK(r.find("\"timing_ms\"") != std::string::npos);

  REQUIRE(tl_decide("valid", nullptr, 0, "inc(p, q)", "", nullptr, &rep) == TL_OK);
  r = take(rep);
  CHECK(r.find("\"verdict\":false") != std::string::npos);
  CHECK(r.find("\"team\"") != std::string::npos);

  // brute oracle override agrees
  REQUIRE(tl_decide("entail", premises, 2, "=(p,r)", "", "{\"oracle\":\"brute\"}", &rep) ==
          TL_OK);
  CHECK(take(rep).find("\"verdict\":true") != std::string::npos);

  // MLInd has no complete decider
  CHECK(tl_decide("valid", nullptr, 0, "[] ind(;p;q)", "", nullptr, &rep) == TL_ERR_FRAGMENT);
  REQUIRE(tl_decide("valid", nullptr, 0, "[] ind(;p;q)", "",
                    "{\"oracle\":\"brute\",\"bound\":2}", &rep) == TL_OK);
  take(rep);
}

TEST_CASE("reductions and generators through the boundary") {
  char* inst = nullptr;
  REQUIRE(tl_adqbf_generate("pi2", 7, 2, 2, 1, &inst) == TL_OK);
  std::string inst_json = take(inst);
  char* inst2 = nullptr;
  REQUIRE(tl_adqbf_generate("pi2", 7, 2, 2, 1, &inst2) == TL_OK);
  CHECK(take(inst2) == inst_json);  // deterministic per seed

  tl_adqbf* a = nullptr;
  REQUIRE(tl_adqbf_parse(inst_json.c_str(), &a) == TL_OK);
  int truth = -1;
  REQUIRE(tl_adqbf_eval(a, &truth) == TL_OK);
  tl_adqbf_free(a);

  char* red = nullptr;
  REQUIRE(tl_reduce("pi2-to-pdl", inst_json.c_str(), &red) == TL_OK);
  std::string bundle = take(red);
  CHECK(bundle.find("\"sigma\"") != std::string::npos);
  CHECK(bundle.find("\"psi\"") != std::string::npos);
  CHECK(bundle.find("\"varmap\"") != std::string::npos);

  REQUIRE(tl_reduce("inc-to-ind", "inc(p, q)", &red) == TL_OK);
  CHECK(take(red).find("ind(") != std::string::npos);

  REQUIRE(tl_reduce("prenex", "(E p . p & q) & r", &red) == TL_OK);
  CHECK(take(red).find("E p") != std::string::npos);

  char* formula = nullptr;
  REQUIRE(tl_formula_generate("MDL", 5, 8, 3, &formula) == TL_OK);
  std::string ftext = take(formula);
  tl_formula* parsed = nullptr;
  REQUIRE(tl_formula_parse(ftext.c_str(), &parsed) == TL_OK);
  tl_formula_free(parsed);

  CHECK(tl_reduce("no-such", "x", &red) == TL_ERR_INVALID);
}

TEST_CASE("version string") {
  CHECK(std::string(tl_version()).find("teamlogic") != std::string::npos);
}
