#include "mhcolor/constructions.hpp"
#include "mhcolor/json_io.hpp"
#include "mhcolor/solver.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace mhc;

namespace {

MixedHypergraph product(std::vector<int> dims)
{
    return product_bihypergraph(DimsSpec(std::move(dims)));
}

std::vector<Partition> canonical_set(const DimsSpec& d)
{
    std::vector<Partition> out;
    for (std::size_t axis = 1; axis <= d.size(); ++axis)
        out.push_back(canonical_coloring(d, axis));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string serialize(const std::vector<Partition>& ps)
{
    Json j = Json::array();
    for (const auto& p : ps)
        j.push_back(partition_to_json(p));
    return j.dump();
}

}  // namespace

TEST_CASE("H(4,3) has exactly the two canonical partitions")
{
    const DimsSpec d({4, 3});
    const auto parts = enumerate_feasible_partitions(product_bihypergraph(d));
    REQUIRE(parts.size() == 2);
    CHECK(parts == canonical_set(d));
    std::vector<std::size_t> classes{parts[0].class_count(), parts[1].class_count()};
    std::sort(classes.begin(), classes.end());
    CHECK(classes == std::vector<std::size_t>{3, 4});
}

TEST_CASE("edgeless hypergraph on 3 vertices has all 5 partitions")
{
    const auto parts = enumerate_feasible_partitions(MixedHypergraph::make_indexed(3, {}, {}));
    CHECK(parts.size() == 5);
    CHECK(std::is_sorted(parts.begin(), parts.end()));
}

TEST_CASE("H(3,3): two 3-class partitions, agreeing with brute force")
{
    const auto h = product({3, 3});
    const auto parts = enumerate_feasible_partitions(h);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].class_count() == 3);
    CHECK(parts[1].class_count() == 3);
    const auto oracle = brute_force_spectrum(h);
    CHECK(oracle == ChromaticSpectrum({0, 0, 2}));
    CHECK(chromatic_spectrum(h) == oracle);
}

TEST_CASE("spectra of small products")
{
    CHECK(chromatic_spectrum(product({4, 3})) == ChromaticSpectrum({0, 0, 1, 1}));
    CHECK(chromatic_spectrum(product({4, 3, 3})) == ChromaticSpectrum({0, 0, 2, 1}));
    CHECK(chromatic_spectrum(product({5, 4})) == ChromaticSpectrum({0, 0, 0, 1, 1}));
}

TEST_CASE("an extra diagonal bi-edge on H(3,3) leaves no strict coloring")
{
    const DimsSpec d({3, 3});
    const auto h = product_bihypergraph(d);
    const Edge diag{box_index(d, Vertex{{1, 1}}), box_index(d, Vertex{{2, 2}}),
                    box_index(d, Vertex{{3, 3}})};
    const auto extended = h.with_edge(diag, true, true);
    CHECK(chromatic_spectrum(extended).empty());
    CHECK(brute_force_spectrum(extended).empty());
    CHECK_THROWS_AS(chromatic_numbers(extended), NoStrictColoring);
    CHECK(feasible_set(extended).empty());
}

TEST_CASE("feasible sets and chromatic numbers")
{
    CHECK(feasible_set(product({4, 3})) == std::vector<std::size_t>{3, 4});
    CHECK(chromatic_numbers(product({4, 3})) == std::pair<std::size_t, std::size_t>{3, 4});
    CHECK(feasible_set(product({5, 4, 3})) == std::vector<std::size_t>{3, 4, 5});
    for (std::size_t n = 1; n <= 7; ++n) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 1);
        const auto h = MixedHypergraph::make_indexed(n, {}, {});
        CHECK(feasible_set(h) == all);
        CHECK(chromatic_numbers(h) == std::pair<std::size_t, std::size_t>{1, n});
    }
}

TEST_CASE("brute-force oracle on trivial inputs")
{
    CHECK(brute_force_spectrum(MixedHypergraph::make_indexed(3, {{0, 1, 2}}, {{0, 1, 2}})) ==
          ChromaticSpectrum({0, 3}));
    CHECK(brute_force_spectrum(MixedHypergraph::make_indexed(4, {}, {})) ==
          ChromaticSpectrum({1, 7, 6, 1}));
    CHECK(brute_force_spectrum(MixedHypergraph::make_indexed(1, {}, {})) == ChromaticSpectrum({1}));
    CHECK_THROWS_AS(brute_force_spectrum(MixedHypergraph::make_indexed(13, {}, {})), CapExceeded);
}

TEST_CASE("oracle equivalence on random mixed hypergraphs")
{
    std::mt19937 rng(12345);
    int agreements = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 2 + rng() % 8;  // 2..9 vertices
        const auto h = mhc::testing::random_mixed(rng, n, 20);
        CAPTURE(hypergraph_to_json(h).dump());
        const auto result = enumerate(h);
        CHECK(result.spectrum == brute_force_spectrum(h));
        CHECK(result.partitions.size() == result.spectrum.total());
        for (const auto& p : result.partitions)
            CHECK(is_proper_coloring(h, p));
        agreements += result.spectrum == brute_force_spectrum(h);
    }
    CHECK(agreements == 150);
}

TEST_CASE("edgeless spectra are Stirling numbers of the second kind")
{
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto r = chromatic_spectrum(MixedHypergraph::make_indexed(n, {}, {}));
        REQUIRE(r.counts().size() == n);
        for (std::size_t k = 1; k <= n; ++k)
            CHECK(r[k] == mhc::testing::stirling2(n, k));
    }
}

TEST_CASE("output is identical across worker counts")
{
    std::mt19937 rng(99);
    std::vector<MixedHypergraph> cases{product({4, 3}), product({4, 3, 3}),
                                       MixedHypergraph::make_indexed(8, {}, {})};
    for (int i = 0; i < 10; ++i)
        cases.push_back(mhc::testing::random_mixed(rng, 9, 12));
    for (const auto& h : cases) {
        std::string reference;
        for (unsigned workers : {1u, 2u, 8u}) {
            EnumerationConfig cfg;
            cfg.parallel = workers;
            const auto result = enumerate(h, cfg);
            const auto text = serialize(result.partitions) + spectrum_to_json(result.spectrum).dump();
            if (reference.empty())
                reference = text;
            CHECK(text == reference);
        }
    }
}

TEST_CASE("counts-only mode matches collected mode")
{
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
        const auto h = mhc::testing::random_mixed(rng, 8, 10);
        EnumerationConfig counts_only;
        counts_only.collect_partitions = false;
        const auto a = enumerate(h, counts_only);
        const auto b = enumerate(h);
        CHECK(a.partitions.empty());
        CHECK(a.spectrum == b.spectrum);
    }
}

TEST_CASE("products: feasible partitions are exactly the canonical colorings")
{
    for (const auto& dims : mhc::testing::product_dims_up_to(36)) {
        CAPTURE(dims);
        const DimsSpec d(dims);
        const auto parts = enumerate_feasible_partitions(product_bihypergraph(d));
        CHECK(parts == canonical_set(d));
    }
}

TEST_CASE("search order is a permutation starting from a highest-degree vertex")
{
    const auto h = MixedHypergraph::make_indexed(5, {{1, 2, 3}, {1, 4}}, {{0, 1}});
    const auto order = search_order(h);
    CHECK(order.front() == 1);
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<VertexIndex>{0, 1, 2, 3, 4});
}

TEST_CASE("caps abort explicitly")
{
    EnumerationConfig small;
    small.max_vertices = 8;
    CHECK_THROWS_AS(enumerate(product({3, 3}), small), CapExceeded);

    EnumerationConfig tight;
    tight.time_budget = std::chrono::milliseconds(1);
    tight.collect_partitions = false;
    const auto wide = MixedHypergraph::make_indexed(14, {}, {});  // Bell(14) ~ 1.9e8 leaves
    CHECK_THROWS_AS(enumerate(wide, tight), BudgetExceeded);
    tight.parallel = 4;
    try {
        enumerate(wide, tight);
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.stats().nodes > 0);
    }

    EnumerationConfig zero;
    zero.parallel = 0;
    CHECK_THROWS_AS(enumerate(product({3, 3}), zero), InvalidArgument);
}

TEST_CASE("edge maximality, enumerate mode on H(3,3)")
{
    const auto report = verify_edge_maximality(DimsSpec({3, 3}), MaximalityMode::enumerate);
    CHECK(report.tested_triples == 48);
    CHECK(report.failures.empty());
    CHECK(report.monotonicity_violations.empty());
    CHECK(report.emptied == 12);  // frozen from the independent oracle
    CHECK(report.base_spectrum == ChromaticSpectrum({0, 0, 2}));
    CHECK(report.holds());
}

TEST_CASE("edge maximality, proof mode")
{
    const auto r43 = verify_edge_maximality(DimsSpec({4, 3}), MaximalityMode::proof);
    CHECK(r43.tested_triples == 148);
    CHECK(r43.failures.empty());
    const auto r433 = verify_edge_maximality(DimsSpec({4, 3, 3}), MaximalityMode::proof);
    CHECK(r433.tested_triples == 7140 - 1728);
    CHECK(r433.failures.empty());
    // tested = C(n,3) - |B|: existing edges are never tried.
    CHECK(r43.tested_triples + r43.edge_count == 220);
}

TEST_CASE("edge maximality, enumerate mode agrees with proof mode on H(4,3)")
{
    const auto report = verify_edge_maximality(DimsSpec({4, 3}), MaximalityMode::enumerate);
    CHECK(report.tested_triples == 148);
    CHECK(report.holds());
    EnumerationConfig small;
    small.max_vertices = 10;
    CHECK_THROWS_AS(verify_edge_maximality(DimsSpec({4, 3}), MaximalityMode::enumerate, small),
                    CapExceeded);
}

TEST_CASE("reduced equivalence")
{
    SUBCASE("(5,4): both sides enumerated")
    {
        const auto r = verify_reduced_equivalence(DimsSpec({5, 4}));
        CHECK(r.equal());
        CHECK_FALSE(r.full_predicted);
        CHECK(r.reduced == ChromaticSpectrum({0, 0, 0, 1, 1}));
        CHECK(r.reduced_vertex_count == 14);
        CHECK(r.partitions_match_canonical);
    }
    SUBCASE("(6,5,4): full side predicted")
    {
        const auto r = verify_reduced_equivalence(DimsSpec({6, 5, 4}));
        CHECK(r.equal());
        CHECK(r.full_predicted);
        CHECK(r.reduced == ChromaticSpectrum({0, 0, 0, 1, 1, 1}));
        CHECK(r.reduced_vertex_count == 18);
    }
    SUBCASE("(4,4): repeated leading dims")
    {
        const auto r = verify_reduced_equivalence(DimsSpec({4, 4}));
        CHECK(r.equal());
        CHECK(r.reduced == ChromaticSpectrum({0, 0, 0, 2}));
    }
    SUBCASE("invalid dims")
    {
        CHECK_THROWS_AS(verify_reduced_equivalence(DimsSpec({4, 4, 3})), InvalidArgument);
    }
}

TEST_CASE("reduced spectrum of (5,4) matches the brute-force count frozen offline")
{
    // Bell(14) is beyond the in-process oracle cap; {4:1,5:1} was frozen by
    // tests/oracle/freeze_values.py.
    CHECK(chromatic_spectrum(reduced_bihypergraph(DimsSpec({5, 4}))) ==
          ChromaticSpectrum({0, 0, 0, 1, 1}));
}
