#include "mhcolor/cli.hpp"

#include "mhcolor/constructions.hpp"
#include "mhcolor/json_io.hpp"
#include "mhcolor/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace mhc::cli {

namespace {

struct Options {
    bool json = false;
    std::string out_file;
    std::optional<std::size_t> max_vertices;
    std::optional<double> time_budget_s;
    unsigned parallel = 1;
    std::string mode = "proof";
    bool partitions = false;

    std::string construct_kind;
    std::vector<int> dims;
    std::string set;
    std::string input;
    std::string claim;
};

EnumerationConfig make_config(const Options& o, std::size_t default_cap)
{
    EnumerationConfig cfg;
    cfg.max_vertices = o.max_vertices.value_or(default_cap);
    cfg.parallel = o.parallel;
    if (o.time_budget_s) {
        if (*o.time_budget_s <= 0)
            throw InvalidArgument("--time-budget must be positive");
        cfg.time_budget = std::chrono::milliseconds(
            static_cast<long long>(*o.time_budget_s * 1000.0 + 0.5));
    }
    return cfg;
}

DimsSpec sorted_dims(std::vector<int> dims, std::ostream& err)
{
    if (!std::is_sorted(dims.begin(), dims.end(), std::greater<>())) {
        std::sort(dims.begin(), dims.end(), std::greater<>());
        err << "warning: dims re-sorted to descending order " << to_string(DimsSpec(dims)) << '\n';
    }
    return DimsSpec(std::move(dims));
}

SpectrumTarget parse_target(const std::string& text)
{
    std::vector<std::pair<int, int>> entries;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw InvalidArgument("--set entries must look like n:s, got \"" + item + "\"");
        try {
            std::size_t used_n = 0;
            std::size_t used_s = 0;
            const int n = std::stoi(item.substr(0, colon), &used_n);
            const int s = std::stoi(item.substr(colon + 1), &used_s);
            if (used_n != colon || used_s != item.size() - colon - 1)
                throw std::invalid_argument(item);
            entries.emplace_back(n, s);
        } catch (const std::logic_error&) {
            throw InvalidArgument("--set entries must look like n:s, got \"" + item + "\"");
        }
    }
    return SpectrumTarget(std::move(entries));
}

std::string edge_count_text(const MixedHypergraph& h)
{
    if (h.is_bihypergraph())
        return std::to_string(h.c_edges().size()) + " bi-edges";
    return std::to_string(h.c_edges().size()) + " C-edges, " + std::to_string(h.d_edges().size()) +
           " D-edges";
}

// ---------------------------------------------------------------- commands

int cmd_construct(const Options& o, std::ostream& out, std::ostream& err)
{
    MixedHypergraph h;
    std::string label;
    if (o.construct_kind == "product") {
        const auto d = sorted_dims(o.dims, err);
        h = product_bihypergraph(d);
        label = "product H" + to_string(d);
    } else if (o.construct_kind == "reduced") {
        const auto d = sorted_dims(o.dims, err);
        h = reduced_bihypergraph(d);
        label = "reduced H*" + to_string(d);
    } else {
        if (o.set.empty())
            throw InvalidArgument("construct spectrum-instance needs --set n:s,...");
        const auto target = parse_target(o.set);
        auto [d, inst] = spectrum_instance(target);
        h = std::move(inst);
        label = "spectrum instance H" + to_string(d);
    }
    if (!o.out_file.empty())
        write_hypergraph(o.out_file, h);
    if (o.json) {
        out << hypergraph_to_json(h).dump() << '\n';
    } else {
        out << label << ": " << h.vertex_count() << " vertices, " << edge_count_text(h) << '\n';
        if (!o.out_file.empty())
            out << "wrote " << o.out_file << '\n';
    }
    return kOk;
}

int cmd_spectrum(const Options& o, std::ostream& out, bool feasible_only)
{
    const auto h = read_hypergraph(o.input);
    auto cfg = make_config(o, EnumerationConfig{}.max_vertices);
    cfg.collect_partitions = o.partitions && !feasible_only;
    const auto result = enumerate(h, cfg);
    const auto& r = result.spectrum;
    if (o.json) {
        auto j = spectrum_to_json(r);
        if (feasible_only) {
            Json f;
            f["feasible_set"] = j["feasible_set"];
            f["chi"] = j["chi"];
            f["chi_bar"] = j["chi_bar"];
            j = f;
        } else if (o.partitions) {
            j["partitions"] = Json::array();
            for (const auto& p : result.partitions)
                j["partitions"].push_back(partition_to_json(p));
        }
        out << j.dump() << '\n';
        return kOk;
    }
    out << "vertices: " << h.vertex_count() << ", " << edge_count_text(h) << '\n';
    std::string fs;
    for (std::size_t k : r.feasible_set())
        fs += (fs.empty() ? "" : ",") + std::to_string(k);
    out << "feasible set: {" << fs << "}\n";
    if (r.empty()) {
        out << "no strict coloring\n";
    } else {
        out << "chi = " << *r.lower_chromatic_number() << ", chi_bar = "
            << *r.upper_chromatic_number() << '\n';
    }
    if (!feasible_only) {
        out << "  k  r_k\n";
        for (std::size_t k = 1; k <= r.counts().size(); ++k)
            out << (k < 10 ? "  " : " ") << k << "  " << r[k] << '\n';
        out << "feasible partitions: " << r.total() << '\n';
        for (const auto& p : result.partitions)
            out << "  " << p.class_count() << " classes: " << to_string(p) << '\n';
    }
    return kOk;
}

int cmd_export(const Options& o, std::ostream& out)
{
    const auto h = read_hypergraph(o.input);
    auto j = hypergraph_to_json(h);
    if (o.partitions) {
        auto cfg = make_config(o, EnumerationConfig{}.max_vertices);
        cfg.collect_partitions = true;
        const auto result = enumerate(h, cfg);
        j["partitions"] = Json::array();
        for (const auto& p : result.partitions)
            j["partitions"].push_back(partition_to_json(p));
    }
    if (o.out_file.empty()) {
        out << j.dump() << '\n';
    } else {
        std::ofstream f(o.out_file);
        if (!f)
            throw InvalidArgument("cannot write " + o.out_file);
        f << j.dump() << '\n';
    }
    return kOk;
}

// ------------------------------------------------------------------ verify

constexpr std::size_t kVerifyDefaultCap = 40;

struct Verdict {
    std::string claim;
    std::string instance;
    std::vector<std::string> notes;
    bool verified = false;
    std::string summary;
    Json details = Json::object();
};

int emit(const Verdict& v, const Options& o, std::ostream& out)
{
    if (o.json) {
        Json j;
        j["claim"] = v.claim;
        j["instance"] = v.instance;
        j["verified"] = v.verified;
        j["summary"] = v.summary;
        j["notes"] = v.notes;
        j["details"] = v.details;
        out << j.dump() << '\n';
    } else {
        out << "claim: " << v.claim << '\n';
        out << "instance: " << v.instance << '\n';
        for (const auto& n : v.notes)
            out << "note: " << n << '\n';
        out << (v.verified ? "VERIFIED: " : "FAILED: ") << v.summary << '\n';
    }
    return v.verified ? kOk : kVerificationFailed;
}

/// Enumerates the product on d and checks its feasible partitions are
/// exactly the canonical colorings, hence R = dims multiplicities.
Verdict verify_product_spectrum(const DimsSpec& d, const Options& o, std::string claim,
                                bool needs_distinct_dims)
{
    d.require_product_valid();
    Verdict v;
    v.claim = std::move(claim);
    const auto h = product_bihypergraph(d);
    v.instance = "dims " + to_string(d) + ", " + std::to_string(h.vertex_count()) + " vertices, " +
                 edge_count_text(h);
    if (needs_distinct_dims && !d.is_strictly_decreasing())
        v.notes.push_back("repeated dims: outside stated hypotheses (strictly decreasing dims)");
    auto cfg = make_config(o, kVerifyDefaultCap);
    cfg.collect_partitions = true;
    const auto result = enumerate(h, cfg);

    std::vector<Partition> canonical;
    for (std::size_t axis = 1; axis <= d.size(); ++axis)
        canonical.push_back(canonical_coloring(d, axis));
    std::sort(canonical.begin(), canonical.end());
    canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());

    const ChromaticSpectrum expected(d.multiplicities());
    const bool spectrum_ok = result.spectrum == expected;
    const bool partitions_ok = result.partitions == canonical;
    v.verified = spectrum_ok && partitions_ok;
    v.summary = "R(H)=" + to_string(result.spectrum) + (spectrum_ok ? "" : " expected " + to_string(expected)) +
                ", " + std::to_string(result.partitions.size()) + " feasible partitions" +
                (partitions_ok ? " = canonical colorings" : " differ from canonical colorings");
    v.details["spectrum"] = spectrum_to_json(result.spectrum);
    v.details["expected"] = spectrum_to_json(expected);
    v.details["partitions_are_canonical"] = partitions_ok;
    v.details["search"] = to_string(result.stats);
    return v;
}

Verdict verify_maximality(const DimsSpec& d, const Options& o)
{
    if (o.mode != "proof" && o.mode != "enumerate")
        throw InvalidArgument("--mode must be proof or enumerate");
    const auto mode = o.mode == "proof" ? MaximalityMode::proof : MaximalityMode::enumerate;
    Verdict v;
    v.claim = "adding any non-edge triple to the product bi-hypergraph changes its chromatic "
              "spectrum";
    const auto cfg = make_config(o, kVerifyDefaultCap);
    const auto report = verify_edge_maximality(d, mode, cfg);
    v.instance = "dims " + to_string(d) + ", " + std::to_string(report.vertex_count) +
                 " vertices, " + std::to_string(report.edge_count) + " bi-edges, mode " + o.mode;
    if (mode == MaximalityMode::proof)
        v.notes.push_back("base spectrum " + to_string(report.base_spectrum) +
                          " is predicted; proof mode shows a canonical coloring is lost");
    v.verified = report.holds();
    v.summary = std::to_string(report.tested_triples) + " non-edges tested, " +
                std::to_string(report.failures.size()) + " failures";
    if (mode == MaximalityMode::enumerate)
        v.summary += ", " + std::to_string(report.emptied) + " additions leave no strict coloring";
    if (!report.monotonicity_violations.empty())
        v.summary += ", " + std::to_string(report.monotonicity_violations.size()) +
                     " monotonicity violations";
    v.details["tested_triples"] = report.tested_triples;
    v.details["failures"] = report.failures;
    v.details["base_spectrum"] = spectrum_to_json(report.base_spectrum);
    if (mode == MaximalityMode::enumerate)
        v.details["emptied"] = report.emptied;
    return v;
}

Verdict verify_reduced(const DimsSpec& d, const Options& o)
{
    Verdict v;
    v.claim = "the reduced sub-hypergraph H* on 2n1+n2+s-2 vertices has the same feasible set "
              "and chromatic spectrum as H";
    const auto report = verify_reduced_equivalence(d, make_config(o, kVerifyDefaultCap));
    v.instance = "dims " + to_string(d) + ", |X*|=" + std::to_string(report.reduced_vertex_count) +
                 ", " + std::to_string(report.reduced_edge_count) + " bi-edges in H*";
    const bool size_ok = report.reduced_vertex_count == report.size_bound;
    v.verified = report.equal() && size_ok && report.partitions_match_canonical;
    if (report.full_predicted) {
        v.notes.push_back("full product exceeds the vertex cap; R(H) is the predicted spectrum");
        v.summary = "R(H*)=" + to_string(report.reduced) +
                    (report.equal() ? " = predicted R(H)=" : " != predicted R(H)=") +
                    to_string(report.full);
    } else if (report.equal()) {
        v.summary = "R(H*)=R(H)=" + to_string(report.full);
    } else {
        v.summary = "R(H*)=" + to_string(report.reduced) + " != R(H)=" + to_string(report.full);
    }
    v.summary += ", |X*|=" + std::to_string(report.reduced_vertex_count);
    if (!size_ok)
        v.summary += " (expected " + std::to_string(report.size_bound) + ")";
    if (!report.partitions_match_canonical)
        v.summary += ", partitions of H* are not the restricted canonical colorings";
    v.details["reduced"] = spectrum_to_json(report.reduced);
    v.details["full"] = spectrum_to_json(report.full);
    v.details["full_predicted"] = report.full_predicted;
    v.details["reduced_vertex_count"] = report.reduced_vertex_count;
    v.details["size_bound"] = report.size_bound;
    return v;
}

Verdict verify_size_bound(const Options& o, std::ostream& err)
{
    Verdict v;
    v.claim = "|X*| = 2n1+n2+s-2 for every valid reduced dims";
    std::vector<DimsSpec> cases;
    if (!o.dims.empty()) {
        cases.push_back(sorted_dims(o.dims, err));
        cases.back().require_reduced_valid();
        v.instance = "dims " + to_string(cases.back());
    } else {
        // n1 >= n2 > ... > ns > 3, entries <= 9, 2 <= s <= 4
        std::function<void(std::vector<int>&, std::size_t)> grow = [&](std::vector<int>& d,
                                                                      std::size_t s) {
            if (d.size() == s) {
                cases.emplace_back(d);
                return;
            }
            const int hi = d.empty() ? 9 : (d.size() == 1 ? d[0] : d.back() - 1);
            for (int n = hi; n >= 4; --n) {
                d.push_back(n);
                grow(d, s);
                d.pop_back();
            }
        };
        for (std::size_t s = 2; s <= 4; ++s) {
            std::vector<int> d;
            grow(d, s);
        }
        v.instance = "sweep of all " + std::to_string(cases.size()) +
                     " reduced dims with s <= 4 and entries <= 9";
    }
    std::size_t bad = 0;
    Json mismatches = Json::array();
    for (const auto& d : cases) {
        const auto size = reduced_vertex_set(d).size();
        if (size != reduced_size_bound(d)) {
            ++bad;
            mismatches.push_back({{"dims", d.values()}, {"size", size}});
        }
    }
    v.verified = bad == 0;
    v.summary = std::to_string(cases.size() - bad) + "/" + std::to_string(cases.size()) +
                " dims match the bound";
    if (cases.size() == 1)
        v.summary += ", |X*|=" + std::to_string(reduced_vertex_set(cases.front()).size());
    v.details["cases"] = cases.size();
    v.details["mismatches"] = mismatches;
    return v;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err)
{
    const std::string& c = o.claim;
    if (c == "size-bound")
        return emit(verify_size_bound(o, err), o, out);
    if (c == "thm23") {
        if (o.set.empty())
            throw InvalidArgument("verify thm23 needs --set n:s,...");
        const auto target = parse_target(o.set);
        return emit(verify_product_spectrum(
                        target.dims(), o,
                        "repeating n_i exactly s_i times yields feasible set {n_i} with r_{n_i} = "
                        "s_i",
                        false),
                    o, out);
    }
    if (o.dims.empty())
        throw InvalidArgument("verify " + c + " needs dims");
    const auto d = sorted_dims(o.dims, err);
    if ((c == "lemma21" || c == "lemma31") && d.size() != 2)
        throw InvalidArgument("verify " + c + " takes exactly two dims");
    if (c == "lemma21" || c == "thm22")
        return emit(verify_product_spectrum(
                        d, o,
                        "the product bi-hypergraph on dims n1 > ... > ns >= 3 has feasible set "
                        "{n1,...,ns} and each r_ni = 1",
                        true),
                    o, out);
    if (c == "thm24")
        return emit(verify_maximality(d, o), o, out);
    return emit(verify_reduced(d, o), o, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Exact coloring toolkit for mixed hypergraphs", "mhcolor"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o.json, "machine-readable JSON output");
    app.add_option("--out", o.out_file, "write hypergraph JSON to FILE");
    app.add_option("--max-vertices", o.max_vertices, "enumeration vertex cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--time-budget", o.time_budget_s, "wall-clock budget in seconds");
    app.add_option("--parallel", o.parallel, "worker threads")->check(CLI::PositiveNumber);

    auto* construct = app.add_subcommand("construct", "build a bi-hypergraph family");
    construct->require_subcommand(1);
    for (const char* kind : {"product", "reduced"}) {
        auto* sub = construct->add_subcommand(kind, std::string("build the ") + kind +
                                                        " family on the given dims");
        sub->add_option("dims", o.dims, "n1 n2 ... ns")->required();
        sub->callback([&o, kind] { o.construct_kind = kind; });
    }
    auto* instance = construct->add_subcommand("spectrum-instance",
                                               "dims realizing multiplicities n:s,...");
    instance->add_option("--set", o.set, "n1:s1,n2:s2,...")->required();
    instance->callback([&o] { o.construct_kind = "spectrum-instance"; });

    auto* spectrum = app.add_subcommand("spectrum", "chromatic spectrum of a hypergraph file");
    spectrum->add_option("file", o.input)->required();
    spectrum->add_flag("--partitions", o.partitions, "list every feasible partition");

    auto* feasible = app.add_subcommand("feasible", "feasible set and chromatic numbers");
    feasible->add_option("file", o.input)->required();

    auto* verify = app.add_subcommand("verify", "machine-check one of the family's claims");
    verify->add_option("claim", o.claim)
        ->required()
        ->check(CLI::IsMember(
            {"lemma21", "thm22", "thm23", "thm24", "lemma31", "thm32", "size-bound"}));
    verify->add_option("dims", o.dims, "n1 n2 ... ns");
    verify->add_option("--set", o.set, "n1:s1,n2:s2,... (thm23)");
    verify->add_option("--mode", o.mode, "proof or enumerate (thm24)")
        ->check(CLI::IsMember({"proof", "enumerate"}));

    auto* exporter = app.add_subcommand("export", "re-emit a hypergraph file in canonical form");
    exporter->add_option("file", o.input)->required();
    exporter->add_flag("--partitions", o.partitions, "append the feasible partitions");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\nrun with --help for usage\n";
        return kUsageError;
    }

    try {
        if (construct->parsed())
            return cmd_construct(o, out, err);
        if (spectrum->parsed())
            return cmd_spectrum(o, out, false);
        if (feasible->parsed())
            return cmd_spectrum(o, out, true);
        if (verify->parsed())
            return cmd_verify(o, out, err);
        return cmd_export(o, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const CapExceeded& e) {
        err << "aborted: " << e.what() << '\n';
        return kCapExceeded;
    } catch (const BudgetExceeded& e) {
        err << "aborted: " << e.what() << '\n';
        return kCapExceeded;
    } catch (const CountOverflow& e) {
        err << "aborted: " << e.what() << '\n';
        return kCapExceeded;
    }
}

}  // namespace mhc::cli
