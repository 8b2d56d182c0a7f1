#pragma once

#include "mhcolor/core.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mhc {

/// Hard ceiling on vertices the search supports (color-domain width).
inline constexpr std::size_t kSolverVertexLimit = 256;

struct EnumerationConfig {
    std::size_t max_vertices = 64;
    /// Wall-clock cap; nullopt = unlimited.
    std::optional<std::chrono::milliseconds> time_budget;
    unsigned parallel = 1;
    /// false = only count partitions per class count.
    bool collect_partitions = true;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t solutions = 0;
    std::size_t subtrees = 0;
    std::chrono::milliseconds elapsed{0};
};

std::string to_string(const SearchStats& s);

/// Thrown when the time budget runs out. Carries progress statistics; no
/// partial answer is ever returned.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, SearchStats stats)
        : std::runtime_error(what), stats_(stats)
    {
    }
    const SearchStats& stats() const { return stats_; }

private:
    SearchStats stats_;
};

/// Thrown by chromatic_numbers on a hypergraph with no strict coloring.
class NoStrictColoring : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an exact count overflows 64 bits.
class CountOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

struct EnumerationResult {
    /// Canonical forms, sorted by restricted-growth string. Empty when
    /// collect_partitions is false.
    std::vector<Partition> partitions;
    ChromaticSpectrum spectrum;
    SearchStats stats;
};

/// Exhaustive backtracking over restricted-growth assignments with
/// forward checking on edges that have a single uncolored member.
EnumerationResult enumerate(const MixedHypergraph& h, const EnumerationConfig& cfg = {});

std::vector<Partition> enumerate_feasible_partitions(const MixedHypergraph& h,
                                                     const EnumerationConfig& cfg = {});
ChromaticSpectrum chromatic_spectrum(const MixedHypergraph& h, const EnumerationConfig& cfg = {});
std::vector<std::size_t> feasible_set(const MixedHypergraph& h, const EnumerationConfig& cfg = {});
/// (lower, upper). Throws NoStrictColoring on an empty spectrum.
std::pair<std::size_t, std::size_t> chromatic_numbers(const MixedHypergraph& h,
                                                      const EnumerationConfig& cfg = {});

/// Search order used by enumerate(), exposed for tests.
std::vector<VertexIndex> search_order(const MixedHypergraph& h);

/// Independent oracle: every restricted-growth string on the vertex set,
/// filtered by is_proper_coloring, with no pruning.
inline constexpr std::size_t kBruteForceVertexLimit = 12;
ChromaticSpectrum brute_force_spectrum(const MixedHypergraph& h);

// ------------------------------------------------------------- verifiers

enum class MaximalityMode { proof, enumerate };

struct MaximalityReport {
    MaximalityMode mode = MaximalityMode::proof;
    DimsSpec dims;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::uint64_t tested_triples = 0;
    /// Non-edges whose addition left the spectrum unchanged.
    std::vector<Edge> failures;
    /// Enumeration mode only: how many additions leave no strict coloring.
    std::uint64_t emptied = 0;
    /// Enumeration mode only: additions that gained a feasible partition.
    std::vector<Edge> monotonicity_violations;
    ChromaticSpectrum base_spectrum;

    bool holds() const { return failures.empty() && monotonicity_violations.empty(); }
};

/// Adds every non-edge triple to H_{dims} in turn and checks the spectrum
/// changes. Proof mode shows some canonical coloring c_m stops being proper
/// (the triple is rainbow or monochromatic in coordinate m); enumerate mode
/// recomputes the full spectrum of H + B.
MaximalityReport verify_edge_maximality(const DimsSpec& d, MaximalityMode mode,
                                        const EnumerationConfig& cfg = {});

struct ReducedEquivalenceReport {
    DimsSpec dims;
    std::size_t reduced_vertex_count = 0;
    std::size_t reduced_edge_count = 0;
    std::size_t size_bound = 0;
    ChromaticSpectrum reduced;
    ChromaticSpectrum full;
    /// true when `full` is the predicted multiplicity spectrum rather than
    /// an enumerated one (the full product exceeded the vertex cap).
    bool full_predicted = false;
    /// Every reduced partition is the restriction of a canonical coloring.
    bool partitions_match_canonical = false;

    bool equal() const { return reduced == full; }
};

/// Enumerates H* and compares with H, enumerated when it fits cfg,
/// otherwise with the predicted spectrum. The reduced side must fit.
ReducedEquivalenceReport verify_reduced_equivalence(const DimsSpec& d,
                                                    const EnumerationConfig& cfg = {});

}  // namespace mhc
