#include <doctest.h>

#include <map>

#include "krawlp/error.hpp"
#include "krawlp/lp_model.hpp"

using namespace krawlp;

namespace {

// a_g by enumerating ordered pairs of l-tuples directly.
std::map<std::vector<int>, Rational> brute_profile(const CodeSet& code, int level) {
  const auto words = code.words();
  const std::size_t m = words.size();
  std::size_t tuples = 1;
  for (int j = 0; j < level; ++j) tuples *= m;
  std::map<std::vector<int>, Rational> out;
  for (std::size_t a = 0; a < tuples; ++a) {
    for (std::size_t b = 0; b < tuples; ++b) {
      std::vector<Word> diff;
      std::size_t ia = a, ib = b;
      for (int j = 0; j < level; ++j) {
        diff.push_back(words[ia % m] ^ words[ib % m]);
        ia /= m;
        ib /= m;
      }
      const auto g = config_of_tuple(WordTuple(code.blocklength(), diff));
      out[std::vector<int>(g.entries().begin(), g.entries().end())] += 1;
    }
  }
  for (auto& [g, v] : out) v /= Rational(static_cast<long>(tuples));
  return out;
}

Rational row_value(const LpRow& row, const std::vector<Rational>& x) {
  Rational acc = 0;
  for (std::size_t v = 0; v < x.size(); ++v) acc += row.coeffs[v] * x[v];
  return acc;
}

}  // namespace

TEST_CASE("Delsarte program structure") {
  const auto lp = build_delsarte(1, 1);
  CHECK(lp.num_variables() == 2);
  REQUIRE(lp.rows.size() == 3);
  CHECK(lp.rows[0].name == "NORM");
  CHECK(lp.rows[0].relation == Relation::Equal);
  CHECK(lp.rows[1].name == "MW_0");
  CHECK(lp.rows[1].coeffs == std::vector<Rational>{1, 1});
  CHECK(lp.rows[2].coeffs == std::vector<Rational>{1, -1});

  const auto d3 = build_delsarte(4, 3);
  CHECK(d3.variables == std::vector<std::size_t>{0, 3, 4});
  CHECK(d3.variable_names == std::vector<std::string>{"a_0", "a_3", "a_4"});
  CHECK(d3.rows.size() == 6);  // MW rows for every weight, forbidden ones too
  for (int d : {0, 6}) CHECK_THROWS_AS(build_delsarte(4, d), Error);
  CHECK_NOTHROW(build_delsarte(4, 5));
}

TEST_CASE("MW row coefficients are classical Krawtchouk values") {
  const auto lp = build_delsarte(5, 2);
  for (std::size_t r = 1; r < lp.rows.size(); ++r)
    for (std::size_t v = 0; v < lp.num_variables(); ++v)
      CHECK(lp.rows[r].coeffs[v] ==
            Rational(classical_krawtchouk(static_cast<int>(r - 1), static_cast<int>(lp.variables[v]), 5)));
}

TEST_CASE("level 1 hierarchy equals Delsarte row for row") {
  for (int n = 1; n <= 8; ++n) {
    for (int d = 1; d <= n + 1; ++d) {
      const auto del = build_delsarte(n, d);
      for (const bool linear : {false, true}) {
        const auto h = build_hierarchy_lp(n, d, 1, linear);
        CHECK(same_program(h, del));
        CHECK(h.rows == del.rows);
        CHECK(h.variable_names == del.variable_names);
      }
    }
  }
}

TEST_CASE("hierarchy variables") {
  const auto gen = build_hierarchy_lp(4, 3, 2, false);
  const auto lin = build_hierarchy_lp(4, 3, 2, true);
  CHECK(lin.num_variables() < gen.num_variables());
  CHECK(gen.rows.size() == 1 + 35);
  CHECK(lin.rows.size() == 1 + 35);
  // Every surviving variable passes the matching predicate.
  const ConfigSpace space(4, 2);
  for (const auto idx : gen.variables) CHECK_FALSE(is_forbidden(space.sd(idx), 3, false));
  for (const auto idx : lin.variables) CHECK_FALSE(is_forbidden(space.sd(idx), 3, true));
  CHECK(gen.num_variables() + forbidden_configs(4, 3, 2, false).size() == 35);
  CHECK(lin.num_variables() + forbidden_configs(4, 3, 2, true).size() == 35);

  // d = 3 forbids weights 1 and 2, so only a_0 is left at n = 2.
  CHECK(build_hierarchy_lp(2, 3, 1, false).variables == std::vector<std::size_t>{0});
  CHECK(build_hierarchy_lp(2, 2, 1, false).variables == std::vector<std::size_t>{0, 2});
}

TEST_CASE("profiles: examples") {
  const CodeSet rep2(2, {0b00, 0b11});
  const auto p1 = profile_of_code(rep2, 1, false);
  CHECK(p1.values == std::vector<Rational>{1, 0, 1});
  CHECK(profile_of_code(rep2, 1, true).values == p1.values);
  CHECK(profile_of_code(rep2, 2, false).total() == 4);
  const auto zero = profile_of_code(CodeSet(3, {0}), 2, false);
  CHECK(zero.values[0] == 1);
  CHECK(zero.total() == 1);
  CHECK_THROWS_AS(profile_of_code(CodeSet(3, {0b001, 0b010}), 2, true), Error);
}

TEST_CASE("profiles: general formula against pair enumeration") {
  const std::vector<CodeSet> codes{CodeSet(3, {0b000, 0b011, 0b101}), CodeSet(4, {0b0001, 0b0110, 0b1111}),
                                   CodeSet(3, {0b111}), CodeSet(4, {0b0000, 0b1100, 0b0011, 0b1111})};
  for (const auto& code : codes) {
    for (int level = 1; level <= 2; ++level) {
      const ConfigSpace space(code.blocklength(), level);
      const auto profile = profile_of_code(code, space, false);
      const auto ref = brute_profile(code, level);
      Rational listed = 0;
      for (std::size_t i = 0; i < space.size(); ++i) {
        const auto e = space.sd(i).entries();
        const auto it = ref.find(std::vector<int>(e.begin(), e.end()));
        CHECK(profile.values[i] == (it == ref.end() ? Rational(0) : it->second));
        listed += profile.values[i];
      }
      Rational size_l = 1;
      for (int j = 0; j < level; ++j) size_l *= static_cast<long>(code.size());
      CHECK(listed == size_l);
      CHECK(profile.values[0] == 1);
    }
  }
}

TEST_CASE("profiles: span and general formulas agree on linear codes") {
  const std::vector<CodeSet> codes{CodeSet::span(5, std::vector<Word>{0b00111, 0b11001}),
                                   CodeSet::span(4, std::vector<Word>{0b1111}), CodeSet::span(3, std::vector<Word>{0b011, 0b110})};
  for (const auto& c : codes)
    for (int level = 1; level <= 2; ++level)
      CHECK(profile_of_code(c, level, true).values == profile_of_code(c, level, false).values);
}

TEST_CASE("check_feasibility") {
  const auto lp = build_delsarte(3, 3);
  const auto rep = profile_of_code(CodeSet(3, {0b000, 0b111}), 1, false);
  const auto ok = check_feasibility(lp, rep);
  CHECK(ok.feasible());
  CHECK(ok.objective == 2);
  for (const auto& row : lp.rows) {
    std::vector<Rational> x;
    for (const auto idx : lp.variables) x.push_back(rep.values[idx]);
    CHECK(row_value(row, x) >= row.rhs);
  }

  std::vector<Rational> full;
  for (int w = 0; w <= 3; ++w) full.emplace_back(w == 0 || w == 3 ? 1 : 3);
  const auto bad = check_feasibility(build_delsarte(3, 2), full);
  CHECK(bad.kind == VerdictKind::DistanceViolated);

  for (const bool linear : {false, true}) {
    const auto h = build_hierarchy_lp(3, 2, 2, linear);
    std::vector<Rational> unit(h.index_size, Rational(0));
    unit[0] = 1;
    const auto v = check_feasibility(h, unit);
    CHECK(v.feasible());
    CHECK(v.objective == 1);
  }

  std::vector<Rational> negative(4, Rational(0));
  negative[0] = 1;
  negative[3] = -1;
  CHECK(check_feasibility(build_delsarte(3, 3), negative).kind == VerdictKind::BoundViolated);
  std::vector<Rational> heavy(4, Rational(0));
  heavy[0] = 1;
  heavy[3] = 2;
  CHECK(check_feasibility(build_delsarte(3, 3), heavy).kind == VerdictKind::RowViolated);
  CHECK_THROWS_AS(check_feasibility(build_delsarte(3, 3), std::vector<Rational>(2)), Error);
}

TEST_CASE("export: structure, determinism, round trip") {
  const auto lp = build_delsarte(1, 1);
  const auto text = export_lp(lp, LpFormat::LpText);
  CHECK(text == export_lp(lp, LpFormat::LpText));
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find(" NORM: a_0 = 1") != std::string::npos);
  CHECK(text.find(" MW_0: a_0 + a_1 >= 0") != std::string::npos);
  CHECK(text.find(" MW_1: a_0 - a_1 >= 0") != std::string::npos);
  CHECK(text.find("\\ exact=true") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);

  for (const auto& p : {build_delsarte(5, 3), build_hierarchy_lp(3, 2, 2, true)}) {
    const auto json = export_lp(p, LpFormat::Json);
    CHECK(json == export_lp(p, LpFormat::Json));
    const auto back = lp_from_json(nlohmann::json::parse(json));
    CHECK(same_program(back, p));
    CHECK(export_lp(back, LpFormat::Json) == json);
  }

  LinearProgram frac = build_delsarte(1, 1);
  frac.rows[1].coeffs[1] = Rational(1, 3);
  CHECK(export_lp(frac, LpFormat::LpText).find("\\ exact=false") != std::string::npos);
  frac.rows[1].coeffs[1] = Rational(1, 4);
  CHECK(export_lp(frac, LpFormat::LpText).find("\\ exact=true") != std::string::npos);
  CHECK(export_lp(frac, LpFormat::Json).find("\"1/4\"") != std::string::npos);
  CHECK_THROWS_AS(lp_from_json(nlohmann::json{{"schema", "other"}}), Error);
}
