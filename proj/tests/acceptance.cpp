// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include "mhcolor/constructions.hpp"
#include "mhcolor/isomorphism.hpp"
#include "mhcolor/json_io.hpp"
#include "mhcolor/solver.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

using namespace mhc;
using Clock = std::chrono::steady_clock;
using Seconds = std::chrono::duration<double>;

namespace {

// Time limits per criterion, in seconds.
constexpr double kLimitH43 = 1.0;
constexpr double kLimitH54 = 10.0;
constexpr double kLimitH433 = 120.0;
constexpr double kLimitH543 = 600.0;
constexpr double kLimitMaxEnumerate = 60.0;
constexpr double kLimitMaxProof = 5.0;
constexpr double kLimitReduced = 30.0;
constexpr double kLimitSizeSweep = 5.0;
constexpr double kLimitIsomorphism = 5.0;

constexpr int kRandomOracleCases = 200;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body)
{
    Outcome o;
    const auto start = Clock::now();
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = Seconds(Clock::now() - start).count();
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.3fs", secs);
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "AC" << id << " " << name << ": " << o.detail
              << " (" << elapsed << ")" << std::endl;
    if (!o.pass)
        ++failures;
}

unsigned workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

Outcome timed_spectrum(std::vector<int> dims, const ChromaticSpectrum& expected, double limit,
                       std::size_t max_vertices)
{
    EnumerationConfig cfg;
    cfg.max_vertices = max_vertices;
    cfg.parallel = workers();
    cfg.time_budget = std::chrono::duration_cast<std::chrono::milliseconds>(Seconds(limit));
    const DimsSpec d(std::move(dims));
    const auto start = Clock::now();
    const auto result = enumerate(product_bihypergraph(d), cfg);
    const double secs = Seconds(Clock::now() - start).count();
    std::ostringstream s;
    s << "H" << to_string(d) << " R=" << to_string(result.spectrum) << ", expected "
      << to_string(expected) << ", " << result.stats.nodes << " nodes, limit " << limit << "s";
    return {result.spectrum == expected && secs < limit, s.str()};
}

template <class F>
double seconds_of(F&& f)
{
    const auto start = Clock::now();
    f();
    return Seconds(Clock::now() - start).count();
}

std::string serialize(const EnumerationResult& r)
{
    Json j = Json::array();
    for (const auto& p : r.partitions)
        j.push_back(partition_to_json(p));
    return j.dump() + spectrum_to_json(r.spectrum).dump();
}

}  // namespace

int main()
{
    report(1, "product (4,3) spectrum", [] {
        return timed_spectrum({4, 3}, ChromaticSpectrum({0, 0, 1, 1}), kLimitH43, 64);
    });

    report(2, "product (5,4) spectrum", [] {
        return timed_spectrum({5, 4}, ChromaticSpectrum({0, 0, 0, 1, 1}), kLimitH54, 64);
    });

    report(3, "product (4,3,3) spectrum", [] {
        return timed_spectrum({4, 3, 3}, ChromaticSpectrum({0, 0, 2, 1}), kLimitH433, 64);
    });

    report(4, "product (5,4,3) spectrum [stretch]", [] {
        return timed_spectrum({5, 4, 3}, ChromaticSpectrum({0, 0, 1, 1, 1}), kLimitH543, 64);
    });

    report(5, "edge maximality", [] {
        EnumerationConfig cfg;
        cfg.parallel = workers();
        MaximalityReport e33;
        const double t33 = seconds_of(
            [&] { e33 = verify_edge_maximality(DimsSpec({3, 3}), MaximalityMode::enumerate, cfg); });
        MaximalityReport p43, p433;
        const double t43 =
            seconds_of([&] { p43 = verify_edge_maximality(DimsSpec({4, 3}), MaximalityMode::proof); });
        const double t433 = seconds_of(
            [&] { p433 = verify_edge_maximality(DimsSpec({4, 3, 3}), MaximalityMode::proof); });
        std::ostringstream s;
        s << "enumerate (3,3): " << e33.tested_triples << " tested, " << e33.failures.size()
          << " failures, " << e33.emptied << " emptied; proof (4,3): " << p43.tested_triples
          << " tested, " << p43.failures.size() << " failures; proof (4,3,3): "
          << p433.tested_triples << " tested, " << p433.failures.size() << " failures";
        const bool ok = e33.tested_triples == 48 && e33.holds() && t33 < kLimitMaxEnumerate &&
                        p43.holds() && p433.holds() && t43 < kLimitMaxProof &&
                        t433 < kLimitMaxProof;
        return Outcome{ok, s.str()};
    });

    report(6, "reduced sub-hypergraph equivalence", [] {
        ReducedEquivalenceReport a, b;
        const double ta = seconds_of([&] { a = verify_reduced_equivalence(DimsSpec({5, 4})); });
        const double tb = seconds_of([&] { b = verify_reduced_equivalence(DimsSpec({6, 5, 4})); });
        std::ostringstream s;
        s << "(5,4): R(H*)=" << to_string(a.reduced) << " R(H)=" << to_string(a.full)
          << (a.full_predicted ? " predicted" : " enumerated") << "; (6,5,4): |X*|="
          << b.reduced_vertex_count << " R(H*)=" << to_string(b.reduced) << " R(H)="
          << to_string(b.full) << (b.full_predicted ? " predicted" : " enumerated");
        const bool ok = a.equal() && !a.full_predicted &&
                        a.reduced == ChromaticSpectrum({0, 0, 0, 1, 1}) && b.equal() &&
                        b.reduced_vertex_count == 18 &&
                        b.reduced == ChromaticSpectrum({0, 0, 0, 1, 1, 1}) && ta < kLimitReduced &&
                        tb < kLimitReduced;
        return Outcome{ok, s.str()};
    });

    report(7, "reduced vertex count sweep", [] {
        std::size_t cases = 0, matched = 0;
        const auto start = Clock::now();
        for (int s = 2; s <= 4; ++s) {
            std::vector<int> d(s);
            std::function<void(int)> fill = [&](int i) {
                if (i == s) {
                    const DimsSpec dims(d);
                    if (!dims.is_reduced_valid())
                        return;
                    ++cases;
                    matched += reduced_vertex_set(dims).size() ==
                               static_cast<std::size_t>(2 * d[0] + d[1] + s - 2);
                    return;
                }
                for (int n = 4; n <= 9; ++n) {
                    d[i] = n;
                    fill(i + 1);
                }
            };
            fill(0);
        }
        const double secs = Seconds(Clock::now() - start).count();
        std::ostringstream s;
        s << matched << "/" << cases << " dims match 2n1+n2+s-2";
        return Outcome{cases > 0 && matched == cases && secs < kLimitSizeSweep, s.str()};
    });

    report(8, "oracle equivalence", [] {
        std::vector<MixedHypergraph> cases;
        const DimsSpec d33({3, 3});
        const auto h33 = product_bihypergraph(d33);
        cases.push_back(h33);
        cases.push_back(derived_subhypergraph(h33, std::vector<VertexIndex>{0, 1, 2, 3, 4, 5}));
        cases.push_back(h33.with_edge({0, 4, 8}, true, true));
        cases.push_back(MixedHypergraph::make_indexed(3, {{0, 1, 2}}, {{0, 1, 2}}));
        std::mt19937 rng(20240917);
        for (int i = 0; i < kRandomOracleCases; ++i)
            cases.push_back(mhc::testing::random_mixed(rng, 1 + rng() % 9, 20));
        std::size_t agree = 0;
        for (const auto& h : cases)
            agree += chromatic_spectrum(h) == brute_force_spectrum(h);
        std::ostringstream s;
        s << agree << "/" << cases.size() << " agree with the brute-force oracle";
        return Outcome{agree == cases.size(), s.str()};
    });

    report(9, "structural properties", [] {
        std::size_t improper = 0, checked = 0;
        std::mt19937 rng(7);
        std::vector<MixedHypergraph> cases{product_bihypergraph(DimsSpec({4, 3})),
                                           product_bihypergraph(DimsSpec({4, 3, 3})),
                                           reduced_bihypergraph(DimsSpec({5, 4}))};
        for (int i = 0; i < 30; ++i)
            cases.push_back(mhc::testing::random_mixed(rng, 9, 12));
        std::size_t nondeterministic = 0;
        for (const auto& h : cases) {
            std::string reference;
            for (unsigned w : {1u, 2u, 8u}) {
                EnumerationConfig cfg;
                cfg.parallel = w;
                const auto r = enumerate(h, cfg);
                for (const auto& p : r.partitions) {
                    ++checked;
                    improper += !is_proper_coloring(h, p);
                }
                const auto text = serialize(r);
                if (reference.empty())
                    reference = text;
                nondeterministic += text != reference;
            }
        }
        std::size_t stirling_bad = 0;
        for (std::size_t n = 1; n <= 8; ++n) {
            const auto r = chromatic_spectrum(MixedHypergraph::make_indexed(n, {}, {}));
            for (std::size_t k = 1; k <= n; ++k)
                stirling_bad += r[k] != mhc::testing::stirling2(n, k);
        }
        std::ostringstream s;
        s << checked << " partitions revalidated (" << improper << " improper), " << stirling_bad
          << " Stirling mismatches, " << nondeterministic << " worker-count differences";
        return Outcome{improper == 0 && stirling_bad == 0 && nondeterministic == 0, s.str()};
    });

    report(10, "diagonal isomorphism", [] {
        const auto big = product_bihypergraph(DimsSpec({4, 3, 3}));
        std::vector<VertexIndex> diagonal;
        for (VertexIndex v = 0; v < big.vertex_count(); ++v)
            if (big.vertex(v)[1] == big.vertex(v)[2])
                diagonal.push_back(v);
        const auto sub = derived_subhypergraph(big, diagonal);
        const auto small = product_bihypergraph(DimsSpec({4, 3}));
        const auto start = Clock::now();
        const auto witness = find_isomorphism(sub, small);
        const double secs = Seconds(Clock::now() - start).count();
        const bool valid = witness && is_isomorphism(sub, small, *witness);
        std::ostringstream s;
        s << "diagonal of (4,3,3): " << sub.vertex_count() << " vertices, "
          << sub.c_edges().size() << " bi-edges; witness " << (valid ? "found and validated" : "missing");
        return Outcome{valid && secs < kLimitIsomorphism, s.str()};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
