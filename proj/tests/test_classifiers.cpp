#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fplab/classifiers.hpp"
#include "fplab/corpus.hpp"
#include "fplab/generator.hpp"
#include "rational_oracle.hpp"

using namespace fplab;

namespace {

oracle::Kind to_oracle(ContractionKind k) {
  switch (k) {
    case ContractionKind::Banach: return oracle::Kind::Banach;
    case ContractionKind::Kannan: return oracle::Kind::Kannan;
    case ContractionKind::Chatterjea: return oracle::Kind::Chatterjea;
    case ContractionKind::PerimeterTriangle: return oracle::Kind::PerimeterTriangle;
    case ContractionKind::OrbitalTriangular: return oracle::Kind::OrbitalTriangular;
    case ContractionKind::OrbitalTriangularStrict:
      return oracle::Kind::OrbitalTriangularStrict;
    case ContractionKind::OrbitalKannan: return oracle::Kind::OrbitalKannan;
    case ContractionKind::OrbitalChatterjea: return oracle::Kind::OrbitalChatterjea;
  }
  return oracle::Kind::Banach;
}

oracle::IntSystem int_system(const corpus::Instance& inst) {
  const int n = inst.space.size();
  std::vector<std::vector<long long>> d(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d[i][j] = static_cast<long long>(inst.space.dist(i, j));
  return oracle::IntSystem(std::move(d), inst.map.table());
}

// Random integer metric: symmetric draws in [1,9] closed under
// shortest paths, exact in integer arithmetic.
oracle::IntSystem random_int_system(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long long> draw(1, 9);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<std::vector<long long>> d(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = draw(rng);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  std::vector<int> image(n);
  for (int i = 0; i < n; ++i) image[i] = pick(rng);
  return oracle::IntSystem(std::move(d), std::move(image));
}

corpus::Instance to_instance(const oracle::IntSystem& s) {
  const int n = s.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  std::vector<std::string> labels;
  std::vector<int> image;
  for (int i = 0; i < n; ++i) {
    labels.push_back("q" + std::to_string(i));
    image.push_back(s.image(i));
    for (int j = 0; j < n; ++j) d[i][j] = static_cast<double>(s.dist(i, j));
  }
  return corpus::make_instance(std::move(labels), d, std::move(image));
}

}  // namespace

TEST_CASE("class thresholds") {
  CHECK(threshold(ContractionKind::Banach) == 1.0);
  CHECK(threshold(ContractionKind::Kannan) == 0.5);
  CHECK(threshold(ContractionKind::Chatterjea) == 0.5);
  CHECK(threshold(ContractionKind::PerimeterTriangle) == 1.0);
  CHECK(threshold(ContractionKind::OrbitalTriangular) == 1.0);
  CHECK(threshold(ContractionKind::OrbitalTriangularStrict) == 1.0);
  CHECK(threshold(ContractionKind::OrbitalKannan) == Catch::Approx(2.0 / 3.0));
  CHECK(threshold(ContractionKind::OrbitalChatterjea) == 0.5);
}

TEST_CASE("lhs_rhs reproduces the worked values") {
  const auto fig1 = corpus::fig1();
  const auto f = fig1.view();
  CHECK(lhs_rhs(ContractionKind::OrbitalKannan, f, 0, 1) ==
        std::pair{2.0, 4.0});
  CHECK(lhs_rhs(ContractionKind::OrbitalKannan, f, 0, 3) ==
        std::pair{2.0, 4.0});
  CHECK(lhs_rhs(ContractionKind::Kannan, f, 1, 3) == std::pair{2.0, 0.0});
  CHECK(lhs_rhs(ContractionKind::Banach, f, 1, 3) == std::pair{2.0, 2.0});

  const auto chat = corpus::chatterjea4();
  const auto c = chat.view();
  CHECK(lhs_rhs(ContractionKind::OrbitalChatterjea, c, 0, 1) ==
        std::pair{0.0, 2.0});  // 0 + d(1,0) + 0 + d(1,0) + 0
  CHECK(lhs_rhs(ContractionKind::OrbitalChatterjea, c, 0, 3) ==
        std::pair{4.0, 10.0});
  CHECK(lhs_rhs(ContractionKind::Chatterjea, c, 2, 3) == std::pair{2.0, 3.0});
}

TEST_CASE("lhs_rhs rejects inadmissible tuples") {
  const auto fig1 = corpus::fig1();
  const auto f = fig1.view();
  CHECK_THROWS_AS(lhs_rhs(ContractionKind::Banach, f, 1, 1), InadmissibleTuple);
  // (B, y) has x = Tx, inadmissible for the pairwise-distinct classes
  CHECK_THROWS_AS(lhs_rhs(ContractionKind::OrbitalKannan, f, 1, 0),
                  InadmissibleTuple);
  // y = TA = C
  CHECK_THROWS_AS(lhs_rhs(ContractionKind::OrbitalTriangular, f, 0, 2),
                  InadmissibleTuple);
  CHECK_THROWS_AS(lhs_rhs(ContractionKind::PerimeterTriangle, f, 0, 0, 1),
                  InadmissibleTuple);
}

TEST_CASE("minimal constants on the worked examples") {
  const auto fig1 = corpus::fig1();
  const auto f = fig1.view();

  const auto banach = minimal_constant(ContractionKind::Banach, f);
  CHECK(banach.minimal_constant == 1.0);
  CHECK_FALSE(banach.member);
  CHECK(banach.witness.idx == std::array{1, 3, -1});  // (B,D)

  const auto kannan = minimal_constant(ContractionKind::Kannan, f);
  CHECK(kannan.infinite);
  CHECK_FALSE(kannan.member);
  CHECK(kannan.witness.idx == std::array{1, 3, -1});

  const auto ok = minimal_constant(ContractionKind::OrbitalKannan, f);
  CHECK(ok.minimal_constant == 0.5);
  CHECK(ok.member);
  CHECK(ok.admissible_count == 2);  // (A,B) and (A,D)

  const auto chat4 = corpus::chatterjea4();
  const auto c = chat4.view();

  const auto chat = minimal_constant(ContractionKind::Chatterjea, c);
  CHECK(chat.minimal_constant == Catch::Approx(2.0 / 3.0).margin(1e-15));
  CHECK_FALSE(chat.member);
  CHECK(chat.witness.idx == std::array{2, 3, -1});

  const auto oc = minimal_constant(ContractionKind::OrbitalChatterjea, c);
  CHECK(oc.minimal_constant == 0.4);
  CHECK(oc.member);
  CHECK(oc.witness.idx == std::array{0, 3, -1});
  CHECK(oc.admissible_count == 9);
}

TEST_CASE("constant map is a Banach contraction with constant 0") {
  const auto inst = corpus::make_instance(
      {"a", "b", "c"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {1, 1, 1});
  const auto r = minimal_constant(ContractionKind::Banach, inst.view());
  CHECK(r.minimal_constant == 0.0);
  CHECK(r.member);
}

TEST_CASE("vacuous classes") {
  const auto swap = corpus::two_point_swap();
  const auto orb = minimal_constant(ContractionKind::OrbitalTriangular, swap.view());
  CHECK(orb.vacuous);
  CHECK(orb.member);
  CHECK(orb.admissible_count == 0);
  CHECK(orb.witness.arity == 0);

  const auto ident = corpus::identity_line4();
  const auto strict =
      minimal_constant(ContractionKind::OrbitalTriangularStrict, ident.view());
  CHECK(strict.vacuous);
  // the non-strict orbital class is not vacuous on the identity
  const auto orb2 = minimal_constant(ContractionKind::OrbitalTriangular, ident.view());
  CHECK_FALSE(orb2.vacuous);
  CHECK(orb2.minimal_constant == 1.0);
  CHECK_FALSE(orb2.member);
}

TEST_CASE("classify_all is complete and ordered") {
  const auto fig1 = corpus::fig1();
  const auto reports = classify_all(fig1.view());
  REQUIRE(reports.size() == kAllKinds.size());
  for (size_t i = 0; i < reports.size(); ++i)
    CHECK(reports[i].kind == kAllKinds[i]);
  CHECK_FALSE(reports[0].member);  // banach
  CHECK_FALSE(reports[1].member);  // kannan
  CHECK(reports[6].member);        // orbital_kannan
}

TEST_CASE("implementation agrees with the exact rational oracle") {
  SECTION("paper instances") {
    for (const auto& inst : {corpus::fig1(), corpus::chatterjea4(),
                             corpus::two_point_swap(), corpus::identity_line4()}) {
      const auto sys = inst.view();
      const auto isys = int_system(inst);
      for (ContractionKind kind : kAllKinds) {
        const auto got = minimal_constant(kind, sys);
        const auto want = oracle::classify(to_oracle(kind), isys);
        INFO("class " << kind_name(kind));
        CHECK(got.admissible_count == want.admissible);
        CHECK(got.vacuous == want.vacuous);
        CHECK(got.infinite == want.infinite);
        if (!want.vacuous && want.any && !want.infinite) {
          CHECK(got.minimal_constant == Catch::Approx(want.ratio()).margin(1e-12));
          CHECK(got.witness.idx == want.tuple);
        }
      }
    }
  }
  SECTION("random integer instances") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> size(2, 8);
    for (int trial = 0; trial < 200; ++trial) {
      const auto isys = random_int_system(rng, size(rng));
      const auto inst = to_instance(isys);
      const auto sys = inst.view();
      for (ContractionKind kind : kAllKinds) {
        const auto got = minimal_constant(kind, sys);
        const auto want = oracle::classify(to_oracle(kind), isys);
        INFO("trial " << trial << " class " << kind_name(kind));
        REQUIRE(got.admissible_count == want.admissible);
        REQUIRE(got.vacuous == want.vacuous);
        REQUIRE(got.infinite == want.infinite);
        REQUIRE(got.witness_lhs >= 0.0);
        REQUIRE(got.witness_rhs >= 0.0);
        if (!want.vacuous && want.any && !want.infinite)
          REQUIRE(got.minimal_constant ==
                  Catch::Approx(want.ratio()).margin(1e-12));
      }
    }
  }
}

TEST_CASE("parallel scan matches serial bit for bit") {
  GeneratorConfig cfg;
  cfg.n = 40;
  cfg.style = MapStyle::Uniform;
  for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
    cfg.seed = seed;
    const auto inst = generate_instance(cfg);
    const SpaceMapView sys(inst.space, inst.map);
    for (ContractionKind kind : kAllKinds) {
      const auto serial = minimal_constant(kind, sys, kDefaultTol, 1);
      for (int threads : {2, 3, 8}) {
        const auto par = minimal_constant(kind, sys, kDefaultTol, threads);
        CHECK(par.minimal_constant == serial.minimal_constant);
        CHECK(par.witness.idx == serial.witness.idx);
        CHECK(par.admissible_count == serial.admissible_count);
        CHECK(par.member == serial.member);
        CHECK(par.infinite == serial.infinite);
        CHECK(par.vacuous == serial.vacuous);
      }
    }
  }
}

TEST_CASE("inclusion inequalities hold on random instances") {
  auto key = [](const ClassificationReport& r) { return constant_order_key(r); };
  GeneratorConfig cfg;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    for (MapStyle style : {MapStyle::Uniform, MapStyle::ContractiveBiased,
                           MapStyle::WithFixedPoint}) {
      cfg.n = 3 + static_cast<int>(seed % 8);
      cfg.seed = seed;
      cfg.style = style;
      const auto inst = generate_instance(cfg);
      const SpaceMapView sys(inst.space, inst.map);
      const auto banach = minimal_constant(ContractionKind::Banach, sys);
      const auto kannan = minimal_constant(ContractionKind::Kannan, sys);
      const auto chat = minimal_constant(ContractionKind::Chatterjea, sys);
      const auto perim = minimal_constant(ContractionKind::PerimeterTriangle, sys);
      const auto orb = minimal_constant(ContractionKind::OrbitalTriangular, sys);
      const auto strict =
          minimal_constant(ContractionKind::OrbitalTriangularStrict, sys);
      const auto ok = minimal_constant(ContractionKind::OrbitalKannan, sys);
      const auto oc = minimal_constant(ContractionKind::OrbitalChatterjea, sys);
      CHECK(key(orb) <= key(banach) + 1e-9);
      CHECK(key(strict) <= key(perim) + 1e-9);
      CHECK(key(ok) <= 2.0 * key(kannan) + 1e-9);
      CHECK(key(oc) <= key(chat) + 1e-9);
      ++checked;
    }
  }
  CHECK(checked == 180);
}

TEST_CASE("grid falsification on the discontinuous example") {
  const auto grid = corpus::remark4(500);  // 0.25 = 125/500 on the grid

  const auto pass = grid_falsify(grid, ContractionKind::OrbitalTriangular, 2.0 / 3.0);
  CHECK(pass.pass);
  CHECK(pass.scan.minimal_constant == Catch::Approx(1.0 / 3.0).margin(1e-9));

  const auto tight = grid_falsify(grid, ContractionKind::OrbitalTriangular,
                                  1.0 / 3.0);
  CHECK(tight.pass);

  const auto banach = grid_falsify(grid, ContractionKind::Banach, 0.99);
  CHECK_FALSE(banach.pass);
  CHECK(banach.scan.minimal_constant > 1.0);
}
