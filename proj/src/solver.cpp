#include "mhcolor/solver.hpp"

#include "mhcolor/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <bitset>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace mhc {

std::string to_string(const SearchStats& s)
{
    std::ostringstream os;
    os << s.nodes << " nodes, " << s.solutions << " solutions, " << s.subtrees << " subtrees, "
       << s.elapsed.count() << " ms";
    return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;
using ColorMask = std::bitset<kSolverVertexLimit>;

void checked_add(std::uint64_t& into, std::uint64_t amount)
{
    if (__builtin_add_overflow(into, amount, &into))
        throw CountOverflow("partition count overflowed 64 bits");
}

void merge_counts(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from)
{
    if (into.size() < from.size())
        into.resize(from.size(), 0);
    for (std::size_t i = 0; i < from.size(); ++i)
        checked_add(into[i], from[i]);
}

/// Read-only search data shared by all workers.
struct Problem {
    struct Constraint {
        std::uint32_t begin = 0;
        std::uint32_t size = 0;
        bool needs_common = false;    // C side
        bool needs_distinct = false;  // D side
    };

    std::size_t n = 0;
    std::vector<VertexIndex> members;
    std::vector<Constraint> constraints;
    std::vector<std::vector<std::uint32_t>> incident;
    std::vector<VertexIndex> order;
    std::vector<ColorMask> prefix;  // prefix[k] has bits 0..k-1

    explicit Problem(const MixedHypergraph& h) : n(h.vertex_count())
    {
        // An edge present in both families becomes a single constraint
        // carrying both requirements.
        const auto& c = h.c_edges();
        const auto& d = h.d_edges();
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < c.size() || j < d.size()) {
            if (j == d.size() || (i < c.size() && c[i] < d[j])) {
                add(c[i++], true, false);
            } else if (i == c.size() || d[j] < c[i]) {
                add(d[j++], false, true);
            } else {
                add(c[i], true, true);
                ++i;
                ++j;
            }
        }
        incident.resize(n);
        for (std::uint32_t id = 0; id < constraints.size(); ++id)
            for (std::uint32_t k = 0; k < constraints[id].size; ++k)
                incident[members[constraints[id].begin + k]].push_back(id);
        order = search_order(h);
        prefix.resize(n + 2);
        for (std::size_t k = 1; k < prefix.size(); ++k) {
            prefix[k] = prefix[k - 1];
            if (k - 1 < kSolverVertexLimit)
                prefix[k].set(k - 1);
        }
    }

    void add(const Edge& e, bool common, bool distinct)
    {
        constraints.push_back({static_cast<std::uint32_t>(members.size()),
                               static_cast<std::uint32_t>(e.size()), common, distinct});
        members.insert(members.end(), e.begin(), e.end());
    }
};

struct SubtreeResult {
    std::vector<std::uint64_t> counts;
    std::vector<Partition> partitions;
    std::uint64_t nodes = 0;
};

/// Per-worker search state: colors, color domains, and an undo trail.
class Engine {
public:
    Engine(const Problem& p, bool collect, Clock::time_point deadline, bool has_deadline,
           std::atomic<bool>& stop)
        : p_(p), collect_(collect), deadline_(deadline), has_deadline_(has_deadline), stop_(stop)
    {
        color_.assign(p.n, kUncolored);
        domain_.assign(p.n, ColorMask{}.set());
        std::size_t widest = 0;
        for (const auto& con : p.constraints)
            widest = std::max<std::size_t>(widest, con.size);
        colors_.resize(widest);
    }

    /// Applies the recorded prefix colors for order[0..prefix.size()).
    bool replay(const std::vector<std::uint32_t>& prefix)
    {
        for (std::size_t pos = 0; pos < prefix.size(); ++pos)
            if (!assign(p_.order[pos], prefix[pos]))
                return false;
        return true;
    }

    /// Explores the subtree below `depth`. With split_depth set, nodes at
    /// that depth are reported through `on_frontier` instead of expanded.
    template <typename Frontier>
    void descend(std::size_t depth, std::size_t split_depth, Frontier&& on_frontier)
    {
        if (depth == p_.n) {
            record();
            return;
        }
        if (depth == split_depth) {
            std::vector<std::uint32_t> prefix(depth);
            for (std::size_t pos = 0; pos < depth; ++pos)
                prefix[pos] = static_cast<std::uint32_t>(color_[p_.order[pos]]);
            on_frontier(std::move(prefix));
            return;
        }
        tick();
        const VertexIndex v = p_.order[depth];
        const ColorMask allowed = domain_[v] & p_.prefix[classes_ + 1];
        for (std::uint32_t c = 0; c <= classes_; ++c) {
            if (!allowed.test(c))
                continue;
            const std::size_t mark = trail_.size();
            const std::uint32_t saved_classes = classes_;
            if (assign(v, c))
                descend(depth + 1, split_depth, on_frontier);
            undo(v, mark, saved_classes);
        }
    }

    SubtreeResult take_result() { return std::move(result_); }

private:
    static constexpr std::int32_t kUncolored = -1;

    bool assign(VertexIndex v, std::uint32_t c)
    {
        color_[v] = static_cast<std::int32_t>(c);
        if (c == classes_)
            ++classes_;
        auto& colors = colors_;
        for (std::uint32_t id : p_.incident[v]) {
            const auto& con = p_.constraints[id];
            std::uint32_t colored = 0;
            std::uint32_t uncolored = 0;
            VertexIndex open = 0;
            bool repeat = false;
            bool differ = false;
            for (std::uint32_t k = 0; k < con.size; ++k) {
                const VertexIndex u = p_.members[con.begin + k];
                const std::int32_t cu = color_[u];
                if (cu == kUncolored) {
                    ++uncolored;
                    open = u;
                    continue;
                }
                const auto cc = static_cast<std::uint32_t>(cu);
                for (std::uint32_t m = 0; m < colored && !repeat; ++m)
                    repeat = colors[m] == cc;
                if (colored > 0 && colors[0] != cc)
                    differ = true;
                colors[colored++] = cc;
            }
            const bool c_open = con.needs_common && !repeat;
            const bool d_open = con.needs_distinct && !differ;
            if (!c_open && !d_open)
                continue;
            if (uncolored == 0)
                return false;
            if (uncolored > 1)
                continue;
            // One slot left: it must reuse a color (C side) and must not
            // match the single color seen so far (D side).
            ColorMask narrowed = domain_[open];
            if (c_open) {
                ColorMask seen;
                for (std::uint32_t m = 0; m < colored; ++m)
                    seen.set(colors[m]);
                narrowed &= seen;
            }
            if (d_open)
                narrowed.reset(colors[0]);
            if (narrowed != domain_[open]) {
                trail_.emplace_back(open, domain_[open]);
                domain_[open] = narrowed;
                if ((narrowed & p_.prefix[classes_ + 1]).none())
                    return false;
            }
        }
        return true;
    }

    void undo(VertexIndex v, std::size_t mark, std::uint32_t saved_classes)
    {
        while (trail_.size() > mark) {
            domain_[trail_.back().first] = trail_.back().second;
            trail_.pop_back();
        }
        classes_ = saved_classes;
        color_[v] = kUncolored;
    }

    void record()
    {
        if (result_.counts.size() < classes_)
            result_.counts.resize(classes_, 0);
        checked_add(result_.counts[classes_ - 1], 1);
        if (collect_) {
            std::vector<std::uint32_t> labels(color_.begin(), color_.end());
            result_.partitions.push_back(Partition::from_labels(std::span<const std::uint32_t>(labels)));
        }
    }

    void tick()
    {
        ++result_.nodes;
        if ((result_.nodes & 1023) != 0)
            return;
        if (stop_.load(std::memory_order_relaxed))
            throw Stopped{};
        if (has_deadline_ && Clock::now() > deadline_) {
            stop_.store(true);
            throw Stopped{};
        }
    }

public:
    struct Stopped {};

private:
    const Problem& p_;
    bool collect_;
    Clock::time_point deadline_;
    bool has_deadline_;
    std::atomic<bool>& stop_;

    std::vector<std::int32_t> color_;
    std::vector<ColorMask> domain_;
    std::vector<std::pair<VertexIndex, ColorMask>> trail_;
    std::vector<std::uint32_t> colors_;
    std::uint32_t classes_ = 0;
    SubtreeResult result_;
};

std::size_t split_depth_for(std::size_t n, unsigned workers)
{
    if (workers <= 1 || n < 4)
        return n + 1;  // never split
    return std::min<std::size_t>(n - 1, 6);
}

}  // namespace

// ------------------------------------------------------------ search order

std::vector<VertexIndex> search_order(const MixedHypergraph& h)
{
    const std::size_t n = h.vertex_count();
    std::vector<const Edge*> edges;
    for (const auto& e : h.c_edges())
        edges.push_back(&e);
    for (const auto& e : h.d_edges())
        if (!h.has_c_edge(e))
            edges.push_back(&e);

    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t id = 0; id < edges.size(); ++id)
        for (VertexIndex v : *edges[id])
            incident[v].push_back(id);

    std::vector<std::size_t> placed_in_edge(edges.size(), 0);
    std::vector<bool> placed(n, false);
    // closes: edges this vertex would complete; touches: edges already
    // holding a placed vertex.
    std::vector<std::size_t> closes(n, 0);
    std::vector<std::size_t> touches(n, 0);
    std::vector<VertexIndex> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (VertexIndex v = 0; v < n; ++v) {
            if (placed[v])
                continue;
            if (best == n) {
                best = v;
                continue;
            }
            auto key = [&](std::size_t u) {
                return std::tuple(closes[u], touches[u], incident[u].size());
            };
            if (key(v) > key(best))
                best = v;
        }
        placed[best] = true;
        order.push_back(static_cast<VertexIndex>(best));
        for (std::size_t id : incident[best]) {
            const std::size_t before = placed_in_edge[id]++;
            const std::size_t size = edges[id]->size();
            for (VertexIndex u : *edges[id]) {
                if (placed[u])
                    continue;
                if (before == 0)
                    ++touches[u];
                if (placed_in_edge[id] == size - 1)
                    ++closes[u];
            }
        }
    }
    return order;
}

// ------------------------------------------------------------- enumerate

EnumerationResult enumerate(const MixedHypergraph& h, const EnumerationConfig& cfg)
{
    const std::size_t n = h.vertex_count();
    if (cfg.max_vertices == 0 || cfg.parallel == 0)
        throw InvalidArgument("enumeration caps and worker count must be positive");
    if (cfg.time_budget && cfg.time_budget->count() <= 0)
        throw InvalidArgument("time budget must be positive");
    if (n > cfg.max_vertices || n > kSolverVertexLimit)
        throw CapExceeded("enumeration refuses " + std::to_string(n) + " vertices (cap " +
                          std::to_string(std::min(cfg.max_vertices, kSolverVertexLimit)) + ")");

    const auto start = Clock::now();
    const bool has_deadline = cfg.time_budget.has_value();
    const auto deadline = has_deadline ? start + *cfg.time_budget : Clock::time_point::max();
    const Problem problem(h);
    std::atomic<bool> stop{false};

    SearchStats stats;
    std::vector<SubtreeResult> blocks;
    auto elapsed = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    };
    auto budget_error = [&] {
        stats.elapsed = elapsed();
        return BudgetExceeded("time budget of " + std::to_string(cfg.time_budget->count()) +
                                  " ms exceeded after " + to_string(stats),
                              stats);
    };

    const std::size_t split = split_depth_for(n, cfg.parallel);
    std::vector<std::vector<std::uint32_t>> frontier;
    {
        Engine root(problem, cfg.collect_partitions, deadline, has_deadline, stop);
        try {
            root.descend(0, split, [&](std::vector<std::uint32_t> prefix) {
                frontier.push_back(std::move(prefix));
            });
        } catch (const Engine::Stopped&) {
            stats.nodes = root.take_result().nodes;
            throw budget_error();
        }
        blocks.push_back(root.take_result());
        stats.nodes = blocks.front().nodes;
    }

    if (!frontier.empty()) {
        std::vector<SubtreeResult> results(frontier.size());
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        bool timed_out = false;
        std::mutex failure_mutex;
        auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= frontier.size() || failed.load())
                    return;
                Engine engine(problem, cfg.collect_partitions, deadline, has_deadline, stop);
                try {
                    if (!engine.replay(frontier[i]))
                        throw std::logic_error("frontier prefix failed to replay");
                    engine.descend(frontier[i].size(), n + 1, [](auto&&) {});
                    results[i] = engine.take_result();
                } catch (const Engine::Stopped&) {
                    std::lock_guard lock(failure_mutex);
                    timed_out = true;
                    results[i].nodes = engine.take_result().nodes;
                    failed = true;
                    return;
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    failed = true;
                    stop = true;
                    return;
                }
            }
        };
        const unsigned workers =
            static_cast<unsigned>(std::min<std::size_t>(cfg.parallel, frontier.size()));
        std::vector<std::thread> threads;
        for (unsigned t = 1; t < workers; ++t)
            threads.emplace_back(worker);
        worker();
        for (auto& t : threads)
            t.join();
        stats.subtrees = frontier.size();
        for (auto& r : results)
            stats.nodes += r.nodes;
        if (failure)
            std::rethrow_exception(failure);
        if (timed_out)
            throw budget_error();
        for (auto& r : results)
            blocks.push_back(std::move(r));
    } else {
        stats.subtrees = 1;
    }

    EnumerationResult out;
    std::vector<std::uint64_t> counts;
    for (auto& b : blocks) {
        merge_counts(counts, b.counts);
        if (cfg.collect_partitions)
            for (auto& p : b.partitions)
                out.partitions.push_back(std::move(p));
    }
    std::sort(out.partitions.begin(), out.partitions.end());
    out.spectrum = ChromaticSpectrum(std::move(counts));
    stats.solutions = out.spectrum.total();
    stats.elapsed = elapsed();
    out.stats = stats;
    return out;
}

std::vector<Partition> enumerate_feasible_partitions(const MixedHypergraph& h,
                                                     const EnumerationConfig& cfg)
{
    auto c = cfg;
    c.collect_partitions = true;
    return enumerate(h, c).partitions;
}

ChromaticSpectrum chromatic_spectrum(const MixedHypergraph& h, const EnumerationConfig& cfg)
{
    return enumerate(h, cfg).spectrum;
}

std::vector<std::size_t> feasible_set(const MixedHypergraph& h, const EnumerationConfig& cfg)
{
    auto c = cfg;
    c.collect_partitions = false;
    return enumerate(h, c).spectrum.feasible_set();
}

std::pair<std::size_t, std::size_t> chromatic_numbers(const MixedHypergraph& h,
                                                      const EnumerationConfig& cfg)
{
    auto c = cfg;
    c.collect_partitions = false;
    const auto spectrum = enumerate(h, c).spectrum;
    if (spectrum.empty())
        throw NoStrictColoring("hypergraph has no strict coloring");
    return {*spectrum.lower_chromatic_number(), *spectrum.upper_chromatic_number()};
}

// ------------------------------------------------------------------ oracle

ChromaticSpectrum brute_force_spectrum(const MixedHypergraph& h)
{
    const std::size_t n = h.vertex_count();
    if (n > kBruteForceVertexLimit)
        throw CapExceeded("brute-force oracle refuses " + std::to_string(n) + " vertices (cap " +
                          std::to_string(kBruteForceVertexLimit) + ")");
    // a is a restricted-growth string; top[i] = max(a[0..i]).
    std::vector<std::uint32_t> a(n, 0);
    std::vector<std::uint32_t> top(n, 0);
    std::vector<std::uint64_t> counts(n, 0);
    while (true) {
        const auto p = Partition::from_labels(std::span<const std::uint32_t>(a));
        if (is_proper_coloring(h, p))
            ++counts[p.class_count() - 1];
        std::size_t i = n;
        while (i-- > 1) {
            if (a[i] <= top[i - 1])
                break;
        }
        if (i == 0)
            break;
        ++a[i];
        top[i] = std::max(top[i - 1], a[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            a[j] = 0;
            top[j] = top[i];
        }
    }
    return ChromaticSpectrum(std::move(counts));
}

// --------------------------------------------------------------- verifiers

MaximalityReport verify_edge_maximality(const DimsSpec& d, MaximalityMode mode,
                                        const EnumerationConfig& cfg)
{
    d.require_product_valid();
    const auto box = d.box_size();
    if (!box || (mode == MaximalityMode::enumerate && *box > cfg.max_vertices))
        throw CapExceeded("maximality check in enumerate mode refuses " + to_string(d) +
                          " (cap " + std::to_string(cfg.max_vertices) + " vertices)");
    const auto h = product_bihypergraph(d);
    const auto n = static_cast<VertexIndex>(h.vertex_count());

    MaximalityReport report;
    report.mode = mode;
    report.dims = d;
    report.vertex_count = n;
    report.edge_count = h.c_edges().size();

    std::vector<Partition> canonical;
    std::vector<Partition> base_partitions;
    if (mode == MaximalityMode::proof) {
        for (std::size_t m = 1; m <= d.size(); ++m)
            canonical.push_back(canonical_coloring(d, m));
        report.base_spectrum = ChromaticSpectrum(d.multiplicities());
    } else {
        auto c = cfg;
        c.collect_partitions = true;
        auto base = enumerate(h, c);
        base_partitions = std::move(base.partitions);
        report.base_spectrum = base.spectrum;
    }

    for (VertexIndex a = 0; a < n; ++a)
        for (VertexIndex b = a + 1; b < n; ++b)
            for (VertexIndex c = b + 1; c < n; ++c) {
                const Edge triple{a, b, c};
                if (h.has_c_edge(triple))
                    continue;
                ++report.tested_triples;
                if (mode == MaximalityMode::proof) {
                    // c_m is improper on H + B when B is rainbow or
                    // monochromatic under it.
                    bool killed = false;
                    for (const auto& p : canonical) {
                        const auto la = p.label(a), lb = p.label(b), lc = p.label(c);
                        const bool mono = la == lb && lb == lc;
                        const bool rainbow = la != lb && lb != lc && la != lc;
                        if (mono || rainbow) {
                            killed = true;
                            break;
                        }
                    }
                    if (!killed)
                        report.failures.push_back(triple);
                } else {
                    auto c2 = cfg;
                    c2.collect_partitions = true;
                    const auto extended = enumerate(h.with_edge(triple, true, true), c2);
                    if (extended.spectrum == report.base_spectrum)
                        report.failures.push_back(triple);
                    if (extended.spectrum.empty())
                        ++report.emptied;
                    for (const auto& p : extended.partitions)
                        if (!std::binary_search(base_partitions.begin(), base_partitions.end(), p)) {
                            report.monotonicity_violations.push_back(triple);
                            break;
                        }
                }
            }
    return report;
}

ReducedEquivalenceReport verify_reduced_equivalence(const DimsSpec& d, const EnumerationConfig& cfg)
{
    d.require_reduced_valid();
    const auto reduced_h = reduced_bihypergraph(d);

    ReducedEquivalenceReport report;
    report.dims = d;
    report.reduced_vertex_count = reduced_h.vertex_count();
    report.reduced_edge_count = reduced_h.c_edges().size();
    report.size_bound = reduced_size_bound(d);

    auto c = cfg;
    c.collect_partitions = true;
    const auto reduced = enumerate(reduced_h, c);
    report.reduced = reduced.spectrum;

    std::vector<Partition> expected;
    for (std::size_t axis = 1; axis <= d.size(); ++axis) {
        std::vector<std::uint32_t> labels;
        for (const auto& v : reduced_h.vertices())
            labels.push_back(static_cast<std::uint32_t>(v[axis - 1]));
        expected.push_back(Partition::from_labels(std::span<const std::uint32_t>(labels)));
    }
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    report.partitions_match_canonical = expected == reduced.partitions;

    const auto box = d.box_size();
    if (box && *box <= cfg.max_vertices && *box <= kSolverVertexLimit) {
        auto full_cfg = cfg;
        full_cfg.collect_partitions = false;
        report.full = enumerate(product_bihypergraph(d), full_cfg).spectrum;
        report.full_predicted = false;
    } else {
        report.full = ChromaticSpectrum(d.multiplicities());
        report.full_predicted = true;
    }
    return report;
}

}  // namespace mhc
