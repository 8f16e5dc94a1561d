#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mrfq/dictionary.hpp"
#include "mrfq/rng.hpp"

using namespace mrfq;

TEST_CASE("paper grid has the stated dimensions", "[dictionary]") {
    const ParameterGrid g = build_grid(paper_grid_spec());
    REQUIRE(g.t1_values.size() == 61);
    REQUIRE(g.t2_values.size() == 29);
    REQUIRE(g.df_values.size() == 115);
    REQUIRE(g.df_values.front() == -250.0);
    REQUIRE(g.df_values.back() == 250.0);
    REQUIRE(g.t1_values.front() == 800.0);
    REQUIRE(g.t1_values.back() == 2000.0);
    for (std::size_t i = 1; i < g.df_values.size(); ++i)
        REQUIRE(g.df_values[i] > g.df_values[i - 1]);
}

TEST_CASE("desk grid is 16 x 8 x 21", "[dictionary]") {
    const ParameterGrid g = build_grid(desk_grid_spec());
    REQUIRE(g.t1_values.size() == 16);
    REQUIRE(g.t2_values.size() == 8);
    REQUIRE(g.df_values.size() == 21);
}

TEST_CASE("degenerate single-value range", "[dictionary]") {
    GridSpec s;
    s.t1 = AxisSpec::uniform(800.0, 20.0, 800.0);
    s.t2 = AxisSpec::uniform(40.0, 10.0, 40.0);
    s.df = AxisSpec::uniform(0.0, 1.0, 0.0);
    const ParameterGrid g = build_grid(s);
    REQUIRE(g.t1_values == std::vector<double>{800.0});
}

TEST_CASE("inverted and bad ranges rejected", "[dictionary]") {
    GridSpec s;
    s.t1 = AxisSpec::uniform(2000.0, 20.0, 800.0);
    s.t2 = AxisSpec::uniform(20.0, 10.0, 300.0);
    s.df = AxisSpec::uniform(0.0, 1.0, 0.0);
    REQUIRE_THROWS_AS(build_grid(s), std::invalid_argument);
    s.t1 = AxisSpec::uniform(800.0, -20.0, 2000.0);
    REQUIRE_THROWS_AS(build_grid(s), std::invalid_argument);
    s.t1 = AxisSpec{};
    REQUIRE_THROWS_AS(build_grid(s), std::invalid_argument);
}

namespace {

GridSpec tiny_grid_spec() {
    GridSpec s;
    s.t1 = AxisSpec::uniform(800.0, 200.0, 1400.0);  // 4
    s.t2 = AxisSpec::uniform(40.0, 80.0, 280.0);     // 4
    s.df = AxisSpec::uniform(-40.0, 20.0, 40.0);     // 5
    return s;
}

}  // namespace

TEST_CASE("dictionary build: unit norms, ordering, determinism", "[dictionary]") {
    const ParameterGrid grid = build_grid(tiny_grid_spec());
    const Schedule schedule = generate_schedule(11, 80);
    const FingerprintDictionary dict = build_dictionary(grid, schedule);
    REQUIRE(dict.size() == 4 * 4 * 5);
    REQUIRE(dict.n_points() == 80);
    for (int k = 0; k < dict.size(); ++k)
        REQUIRE(std::abs(dict.atoms.col(k).norm() - 1.0) < 1e-12);

    // k=0 is (t1 min, t2 min, df min) under lexicographic df-fastest order.
    const TissueParams p0 = index_to_params(dict, 0);
    REQUIRE(p0.t1_ms == 800.0);
    REQUIRE(p0.t2_ms == 40.0);
    REQUIRE(p0.df_hz == -40.0);
    // df varies fastest
    const TissueParams p1 = index_to_params(dict, 1);
    REQUIRE(p1.t1_ms == 800.0);
    REQUIRE(p1.t2_ms == 40.0);
    REQUIRE(p1.df_hz == -20.0);

    const FingerprintDictionary again = build_dictionary(grid, schedule);
    REQUIRE(again.atoms == dict.atoms);
    REQUIRE(again.schedule_id == dict.schedule_id);
}

TEST_CASE("t2 > t1 grid points are excluded with honest index tables", "[dictionary]") {
    GridSpec s;
    s.t1 = AxisSpec::uniform(100.0, 100.0, 300.0);  // 100, 200, 300
    s.t2 = AxisSpec::uniform(50.0, 100.0, 250.0);   // 50, 150, 250
    s.df = AxisSpec::uniform(0.0, 10.0, 10.0);      // 0, 10
    const ParameterGrid grid = build_grid(s);
    const Schedule schedule = generate_schedule(2, 40);
    const FingerprintDictionary dict = build_dictionary(grid, schedule);
    // Retained (t1, t2) pairs: (100,50) (200,50) (200,150) (300,50) (300,150) (300,250)
    REQUIRE(dict.size() == 6 * 2);
    for (int k = 0; k < dict.size(); ++k) {
        const TissueParams p = index_to_params(dict, k);
        REQUIRE(p.t2_ms <= p.t1_ms);
        REQUIRE(params_to_index(dict, p) == k);
    }
    REQUIRE_THROWS_AS(params_to_index(dict, TissueParams{100.0, 150.0, 0.0}),
                      std::invalid_argument);
}

TEST_CASE("gamma round trip over all retained points", "[dictionary]") {
    const ParameterGrid grid = build_grid(tiny_grid_spec());
    const Schedule schedule = generate_schedule(13, 60);
    const FingerprintDictionary dict = build_dictionary(grid, schedule);
    for (int k = 0; k < dict.size(); ++k)
        REQUIRE(params_to_index(dict, index_to_params(dict, k)) == k);
    REQUIRE_THROWS_AS(index_to_params(dict, dict.size()), std::out_of_range);
    REQUIRE_THROWS_AS(index_to_params(dict, -1), std::out_of_range);
}

TEST_CASE("single grid point dictionary", "[dictionary]") {
    GridSpec s;
    s.t1 = AxisSpec::uniform(1000.0, 1.0, 1000.0);
    s.t2 = AxisSpec::uniform(100.0, 1.0, 100.0);
    s.df = AxisSpec::uniform(5.0, 1.0, 5.0);
    const FingerprintDictionary dict =
        build_dictionary(build_grid(s), generate_schedule(3, 32));
    REQUIRE(dict.size() == 1);
    REQUIRE(std::abs(dict.atoms.col(0).norm() - 1.0) < 1e-12);
}

TEST_CASE("atoms are pairwise distinct on a random sample", "[dictionary]") {
    const ParameterGrid grid = build_grid(desk_grid_spec());
    const Schedule schedule = generate_schedule(42, 120);
    const FingerprintDictionary dict = build_dictionary(grid, schedule);
    Rng rng(1);
    std::vector<int> sample;
    for (int i = 0; i < 64; ++i)
        sample.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(dict.size()))));
    for (std::size_t a = 0; a < sample.size(); ++a)
        for (std::size_t b = a + 1; b < sample.size(); ++b) {
            if (sample[a] == sample[b]) continue;
            REQUIRE((dict.atoms.col(sample[a]) - dict.atoms.col(sample[b])).norm() > 0.0);
        }
}

TEST_CASE("dictionary build parallelism does not change results", "[dictionary]") {
    const ParameterGrid grid = build_grid(tiny_grid_spec());
    const Schedule schedule = generate_schedule(8, 50);
    const FingerprintDictionary one = build_dictionary(grid, schedule, 1);
    const FingerprintDictionary two = build_dictionary(grid, schedule, 2);
    REQUIRE(one.atoms == two.atoms);
}
