// Command-line surface for the sieving cost laboratory: resource estimates,
// dimension sweeps, desk-scale sieve simulations, and history replays.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "sievecost/json_io.hpp"
#include "sievecost/version.hpp"

using namespace sievecost;
using estimator::Architecture;
using estimator::EstimateOptions;
using estimator::EstimateRecord;
using estimator::PhysicalAssumptions;
using estimator::ScenarioAssumptions;
using hashing::HashFamily;
using hashing::SieveAlg;

namespace {

struct CommonFlags {
    double pphy = 1e-5;
    double code_cycle_ns = 100.0;
    double reaction_us = 1.0;
    double c_ccz = 65.0;
    int kappa = 32;
    std::string arch = "active-volume";
    bool no_qram = false;
    double maxdepth_log2 = 0.0;
};

double env_or(const char* name, double fallback) {
    const char* v = std::getenv(name);
    return v ? std::atof(v) : fallback;
}

void add_phys_flags(CLI::App* cmd, CommonFlags& f) {
    f.pphy = env_or("SIEVECOST_PPHY", f.pphy);
    f.code_cycle_ns = env_or("SIEVECOST_CODE_CYCLE_NS", f.code_cycle_ns);
    f.reaction_us = env_or("SIEVECOST_REACTION_US", f.reaction_us);
    f.c_ccz = env_or("SIEVECOST_CCZ_AV", f.c_ccz);
    cmd->add_option("--pphy", f.pphy, "physical error rate");
    cmd->add_option("--code-cycle-ns", f.code_cycle_ns, "code cycle in ns");
    cmd->add_option("--reaction-us", f.reaction_us, "reaction time in us");
    cmd->add_option("--cccz-av", f.c_ccz, "active volume per distilled CCZ state");
    cmd->add_option("--kappa", f.kappa, "fixed-point bit width");
}

PhysicalAssumptions make_phys(const CommonFlags& f) {
    PhysicalAssumptions p;
    p.p_phy = f.pphy;
    p.code_cycle_s = f.code_cycle_ns * 1e-9;
    p.reaction_time_s = f.reaction_us * 1e-6;
    p.c_ccz = f.c_ccz;
    return p;
}

Architecture parse_arch(const std::string& s) {
    if (s == "baseline") return Architecture::baseline;
    if (s == "active-volume") return Architecture::active_volume;
    throw CLI::ValidationError("--arch", "must be baseline or active-volume");
}

SieveAlg parse_sieve(const std::string& s) {
    if (s == "nv") return SieveAlg::nv;
    if (s == "gauss") return SieveAlg::gauss;
    throw CLI::ValidationError("--sieve", "must be nv or gauss");
}

HashFamily parse_hash(const std::string& s) {
    if (s == "none") return HashFamily::none;
    if (s == "angular") return HashFamily::angular;
    if (s == "spherical-lsh") return HashFamily::spherical_lsh;
    if (s == "spherical-lsf") return HashFamily::spherical_lsf;
    throw CLI::ValidationError("--hash",
                               "must be none, angular, spherical-lsh or spherical-lsf");
}

json provenance(const json& config) {
    return json{{"tool", "sievecost"},
                {"version", kVersion},
                {"config_hash", fnv1a(config.dump())},
                {"assumptions", config}};
}

void write_or_print(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot open " + out);
        f << text;
    }
}

// ---------------------------------------------------------------------------
// table: reproduce the D=400 per-search resource tables
// ---------------------------------------------------------------------------

std::string format_sig(double v) {
    if (v == 0.0) return "-";
    if (v == std::floor(v) && std::abs(v) < 1e6) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

int cmd_table(int d, const CommonFlags& flags, const std::string& out,
              const std::string& format) {
    const PhysicalAssumptions phys = make_phys(flags);
    const std::vector<HashFamily> fams = {HashFamily::none, HashFamily::angular,
                                          HashFamily::spherical_lsh,
                                          HashFamily::spherical_lsf};
    json all = json::object();
    std::ostringstream text;
    for (SieveAlg alg : {SieveAlg::nv, SieveAlg::gauss}) {
        std::vector<EstimateRecord> base, av;
        for (HashFamily h : fams) {
            ScenarioAssumptions sc;
            sc.sieve = alg;
            sc.hash = h;
            sc.d = d;
            sc.gate = circuit::GateParams(flags.kappa, flags.c_ccz);
            base.push_back(estimator::heuristic_estimate(sc, phys, Architecture::baseline));
            av.push_back(estimator::heuristic_estimate(sc, phys, Architecture::active_volume));
        }
        const std::string name = alg == SieveAlg::nv ? "NVSieve" : "GaussSieve";
        text << "One Grover search (M=1, worst-case list), " << name
             << ", D=" << d << "\n";
        auto row = [&](const std::string& label, auto get) {
            text << "  " << label;
            for (std::size_t i = label.size(); i < 28; ++i) text << ' ';
            for (std::size_t c = 0; c < fams.size(); ++c) {
                const std::string cell = get(c);
                text << ' ';
                for (std::size_t i = cell.size(); i < 12; ++i) text << ' ';
                text << cell;
            }
            text << "\n";
        };
        row("variant", [&](std::size_t c) {
            return std::string(hashing::family_name(fams[c]));
        });
        row("list size", [&](std::size_t c) { return format_sig(base[c].list_size); });
        row("hash length k", [&](std::size_t c) {
            return base[c].params.has_hash ? format_sig(base[c].params.sol.k)
                                           : std::string("-");
        });
        row("hash tables t", [&](std::size_t c) {
            return base[c].params.has_hash
                       ? format_sig(std::exp(base[c].params.sol.log_t))
                       : std::string("-");
        });
        row("filter threshold alpha", [&](std::size_t c) {
            return fams[c] == HashFamily::spherical_lsf
                       ? format_sig(base[c].params.sol.alpha)
                       : std::string("-");
        });
        row("logical qubits", [&](std::size_t c) {
            return format_sig(base[c].search.logical_qubits);
        });
        row("Toffoli count", [&](std::size_t c) {
            return format_sig(base[c].search.total.toffoli);
        });
        row("Toffoli width", [&](std::size_t c) {
            return format_sig(base[c].search.total.toffoli_width);
        });
        row("active volume", [&](std::size_t c) {
            return format_sig(base[c].search.total.active_volume);
        });
        row("reaction depth", [&](std::size_t c) {
            return format_sig(base[c].search.total.reaction_depth);
        });
        row("reaction limit (h)", [&](std::size_t c) {
            return format_sig(base[c].search_ft.reaction_limit_s / 3600.0);
        });
        text << "  -- baseline --\n";
        row("code distance", [&](std::size_t c) {
            return format_sig(base[c].search_ft.code_distance);
        });
        row("distillation factories", [&](std::size_t c) {
            return format_sig(base[c].search_ft.factories);
        });
        row("physical qubits", [&](std::size_t c) {
            return format_sig(base[c].search_ft.physical_qubits);
        });
        row("circuit time (h)", [&](std::size_t c) {
            return format_sig(base[c].search_ft.circuit_time_s / 3600.0);
        });
        row("final time (h)", [&](std::size_t c) {
            return format_sig(base[c].search_ft.final_time_s / 3600.0);
        });
        text << "  -- active volume --\n";
        row("code distance", [&](std::size_t c) {
            return format_sig(av[c].search_ft.code_distance);
        });
        row("physical qubits", [&](std::size_t c) {
            return format_sig(av[c].search_ft.physical_qubits);
        });
        row("circuit time (h)", [&](std::size_t c) {
            return format_sig(av[c].search_ft.circuit_time_s / 3600.0);
        });
        row("final time (h)", [&](std::size_t c) {
            return format_sig(av[c].search_ft.final_time_s / 3600.0);
        });
        text << "\n";
        json cols = json::object();
        for (std::size_t c = 0; c < fams.size(); ++c) {
            cols[hashing::family_name(fams[c])] =
                json{{"baseline", base[c]}, {"active-volume", av[c]}};
        }
        all[alg == SieveAlg::nv ? "nvsieve" : "gausssieve"] = cols;
    }
    json config{{"command", "table"}, {"D", d}, {"phys", phys}};
    json doc{{"provenance", provenance(config)}, {"tables", all}};
    if (format == "json") {
        write_or_print(out, doc.dump(2) + "\n");
    } else {
        std::ostringstream full;
        full << "# sievecost " << kVersion << " table D=" << d
             << " config_hash=" << fnv1a(config.dump()) << "\n"
             << text.str();
        write_or_print(out, full.str());
        if (!out.empty()) {
            std::ofstream jf(out + ".json");
            jf << doc.dump(2) << "\n";
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

int cmd_estimate(const ScenarioAssumptions& sc, const CommonFlags& flags,
                 const std::string& out) {
    const PhysicalAssumptions phys = make_phys(flags);
    EstimateOptions opts;
    opts.with_qram = !flags.no_qram;
    if (flags.maxdepth_log2 > 0.0)
        opts.maxdepth = std::pow(2.0, flags.maxdepth_log2);
    const auto rec = estimator::heuristic_estimate(sc, phys, parse_arch(flags.arch), opts);
    const auto cls = estimator::classical_estimate(sc);
    json config{{"command", "estimate"},
                {"sieve", estimator::sieve_name(sc.sieve)},
                {"hash", hashing::family_name(sc.hash)},
                {"D", sc.d},
                {"arch", flags.arch},
                {"with_qram", opts.with_qram},
                {"maxdepth", opts.maxdepth},
                {"phys", phys}};
    json doc{{"provenance", provenance(config)},
             {"estimate", rec},
             {"classical", cls}};
    write_or_print(out, doc.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int cmd_sweep(int dmin, int dmax, int step, const std::vector<std::string>& sieves,
              const std::vector<std::string>& hashes, const CommonFlags& flags,
              const std::string& out, const std::string& format, int jobs) {
    const PhysicalAssumptions phys = make_phys(flags);
    EstimateOptions opts;
    opts.with_qram = !flags.no_qram;
    if (flags.maxdepth_log2 > 0.0)
        opts.maxdepth = std::pow(2.0, flags.maxdepth_log2);
    std::vector<SieveAlg> algs;
    for (const auto& s : sieves) algs.push_back(parse_sieve(s));
    std::vector<HashFamily> fams;
    for (const auto& h : hashes) fams.push_back(parse_hash(h));
    ScenarioAssumptions proto;
    proto.gate = circuit::GateParams(flags.kappa, flags.c_ccz);
    const auto grid = estimator::sweep_grid(dmin, dmax, step, algs, fams,
                                            {parse_arch(flags.arch)}, proto, opts);
    std::vector<EstimateRecord> records(grid.size());
    std::vector<estimator::ClassicalEstimate> classical(grid.size());
    std::vector<std::string> errors(grid.size());
    {
        std::mutex mu;
        std::size_t next = 0;
        auto worker = [&] {
            while (true) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= grid.size()) return;
                    i = next++;
                }
                try {
                    records[i] = estimator::heuristic_estimate(
                        grid[i].scenario, phys, grid[i].arch, grid[i].options);
                    classical[i] = estimator::classical_estimate(grid[i].scenario);
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        };
        std::vector<std::thread> pool;
        const int n = std::max(1, jobs);
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!errors[i].empty())
            throw std::runtime_error("sweep point D=" +
                                     std::to_string(grid[i].scenario.d) + " " +
                                     hashing::family_name(grid[i].scenario.hash) +
                                     ": " + errors[i]);
    }
    json config{{"command", "sweep"}, {"dmin", dmin},   {"dmax", dmax},
                {"step", step},       {"arch", flags.arch},
                {"with_qram", opts.with_qram},          {"maxdepth", opts.maxdepth},
                {"phys", phys}};
    if (format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < grid.size(); ++i)
            rows.push_back(json{{"estimate", records[i]}, {"classical", classical[i]}});
        json doc{{"provenance", provenance(config)}, {"rows", rows}};
        write_or_print(out, doc.dump(2) + "\n");
        return 0;
    }
    std::ostringstream csv;
    csv << "# sievecost " << kVersion << " sweep config_hash=" << fnv1a(config.dump())
        << "\n";
    csv << "D,sieve,hash,arch,with_qram,maxdepth,list_size,k,t,alpha,"
           "logical_qubits,toffoli_count,toffoli_width,active_volume,"
           "reaction_depth,reaction_limit_h,code_distance,"
           "distillation_factories,physical_qubits,circuit_time_h,final_time_h,"
           "run_physical_qubits,run_quantum_time_h,run_hashing_time_h,"
           "run_total_time_h,classical_time_h\n";
    char buf[512];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& r = records[i];
        const auto& sc = grid[i].scenario;
        std::snprintf(
            buf, sizeof(buf),
            "%d,%s,%s,%s,%d,%.17g,%.9e,%d,%.9e,%.6g,%.9e,%.9e,%.9e,%.9e,%.9e,"
            "%.9e,%d,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e\n",
            sc.d, estimator::sieve_name(sc.sieve), hashing::family_name(sc.hash),
            ft::arch_name(grid[i].arch), opts.with_qram ? 1 : 0, opts.maxdepth,
            r.list_size, r.params.has_hash ? r.params.sol.k : 0,
            r.params.has_hash ? std::exp(r.params.sol.log_t) : 0.0,
            r.params.has_hash ? r.params.sol.alpha : 0.0,
            r.search.logical_qubits, r.search.total.toffoli,
            r.search.total.toffoli_width, r.search.total.active_volume,
            r.search.total.reaction_depth, r.search_ft.reaction_limit_s / 3600.0,
            r.search_ft.code_distance, r.search_ft.factories,
            r.search_ft.physical_qubits, r.search_ft.circuit_time_s / 3600.0,
            r.search_ft.final_time_s / 3600.0, r.physical_qubits,
            r.quantum_time_s / 3600.0, r.hashing_time_s / 3600.0,
            r.total_time_s / 3600.0, classical[i].seconds / 3600.0);
        csv << buf;
    }
    write_or_print(out, csv.str());
    return 0;
}

// ---------------------------------------------------------------------------
// simulate / replay / params
// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& basis_path, int d, std::int64_t bmax,
                 std::uint64_t seed, const sieve::SieveConfig& cfg,
                 const std::string& out, const std::string& report_path) {
    lattice::LatticeBasis basis;
    if (basis_path.empty()) {
        Rng rng(seed);
        basis = lattice::random_basis(d, bmax, rng);
    } else {
        basis = lattice::load_basis(basis_path);
    }
    const auto rep = sieve::run_sieve(basis, cfg, Rng(seed + 0x9e3779b9));
    json config{{"command", "simulate"},
                {"sieve", cfg.alg == SieveAlg::nv ? "nv" : "gauss"},
                {"hash", hashing::family_name(cfg.hash)},
                {"D", basis.d},
                {"seed", seed},
                {"gamma", cfg.gamma},
                {"zeta", cfg.zeta},
                {"kappa", cfg.kappa}};
    std::ostringstream prov;
    prov << "sievecost " << kVersion << " simulate config_hash="
         << fnv1a(config.dump());
    if (!out.empty()) sieve::export_history(rep.history, out, prov.str());
    json report{{"provenance", provenance(config)},
                {"shortest_norm2", rep.shortest.norm2},
                {"shortest", rep.shortest.c},
                {"iterations", rep.iterations},
                {"collisions", rep.collisions},
                {"max_list_size", rep.max_list_size},
                {"search_events", rep.history.size()}};
    write_or_print(report_path, report.dump(2) + "\n");
    return 0;
}

int cmd_replay(const std::string& history_path, int d, const CommonFlags& flags,
               const std::string& out) {
    const auto events = sieve::import_history(history_path);
    ScenarioAssumptions sc;
    sc.d = d;
    sc.gate = circuit::GateParams(flags.kappa, flags.c_ccz);
    const PhysicalAssumptions phys = make_phys(flags);
    EstimateOptions opts;
    opts.with_qram = !flags.no_qram;
    const auto rec = estimator::replay_history(events, sc, phys,
                                               parse_arch(flags.arch), opts);
    json config{{"command", "replay"}, {"history", history_path}, {"D", d},
                {"arch", flags.arch},  {"phys", phys}};
    json doc{{"provenance", provenance(config)}, {"replay", rec}};
    write_or_print(out, doc.dump(2) + "\n");
    return 0;
}

int cmd_params(const std::string& family, const std::string& sieve_name, int d,
               double epsilon, bool classical, const std::string& out) {
    ScenarioAssumptions sc;
    sc.sieve = parse_sieve(sieve_name);
    sc.hash = parse_hash(family);
    sc.d = d;
    sc.epsilon = epsilon;
    sc.lsf_optimize_alpha = true;
    if (sc.hash == HashFamily::none)
        throw CLI::ValidationError("--family", "params needs a hashing family");
    const auto sol = estimator::solve_params(
        sc, classical ? hashing::CostMode::classical : hashing::CostMode::quantum);
    json config{{"command", "params"},  {"family", family}, {"sieve", sieve_name},
                {"D", d},               {"epsilon", epsilon},
                {"mode", classical ? "classical" : "quantum"}};
    json doc{{"provenance", provenance(config)},
             {"solution", sol.sol},
             {"candidate_list_size", std::exp(sc.log_base_list() +
                                              sol.sol.log_candidate_fraction)}};
    write_or_print(out, doc.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sievecost: classical/quantum cost laboratory for lattice sieving"};
    app.require_subcommand(1);

    // table
    auto* table = app.add_subcommand("table", "per-search resource tables at one dimension");
    CommonFlags tf;
    int table_d = 400;
    std::string table_out, table_format = "text";
    table->add_option("-D,--dimension", table_d, "lattice dimension");
    table->add_option("--out", table_out, "output path");
    table->add_option("--format", table_format, "text or json");
    add_phys_flags(table, tf);

    // estimate
    auto* est = app.add_subcommand("estimate", "full-run resource estimate");
    CommonFlags ef;
    std::string est_sieve = "gauss", est_hash = "none", est_out;
    int est_d = 400;
    bool est_lsf_opt = false;
    est->add_option("--sieve", est_sieve, "nv or gauss");
    est->add_option("--hash", est_hash, "none, angular, spherical-lsh, spherical-lsf");
    est->add_option("-D,--dimension", est_d, "lattice dimension");
    est->add_option("--arch", ef.arch, "baseline or active-volume");
    est->add_flag("--no-qram", ef.no_qram, "zero out all QRAM contributions");
    est->add_option("--maxdepth", ef.maxdepth_log2,
                    "log2 of the reaction-depth cap (40..96)");
    est->add_flag("--optimize-alpha", est_lsf_opt,
                  "optimise the LSF threshold instead of alpha = 1/2");
    est->add_option("--out", est_out, "output path");
    add_phys_flags(est, ef);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "grid of estimates over dimensions");
    CommonFlags wf;
    int dmin = 50, dmax = 1000, dstep = 25, sweep_jobs = 2;
    std::vector<std::string> sweep_sieves{"gauss"};
    std::vector<std::string> sweep_hashes{"none", "angular", "spherical-lsh",
                                          "spherical-lsf"};
    std::string sweep_out, sweep_format = "csv";
    sweep->add_option("--dmin", dmin, "first dimension");
    sweep->add_option("--dmax", dmax, "last dimension");
    sweep->add_option("--step", dstep, "dimension step");
    sweep->add_option("--sieve", sweep_sieves, "sieves to sweep");
    sweep->add_option("--hash", sweep_hashes, "hash families to sweep");
    sweep->add_option("--arch", wf.arch, "baseline or active-volume");
    sweep->add_flag("--no-qram", wf.no_qram, "zero out all QRAM contributions");
    sweep->add_option("--maxdepth", wf.maxdepth_log2, "log2 reaction-depth cap");
    sweep->add_option("--jobs", sweep_jobs, "worker threads");
    sweep->add_option("--out", sweep_out, "output path");
    sweep->add_option("--format", sweep_format, "csv or json");
    add_phys_flags(sweep, wf);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a desk-scale sieve");
    std::string sim_sieve = "gauss", sim_hash = "none", sim_basis, sim_out, sim_report;
    int sim_d = 40, sim_k = 1, sim_t = 1, sim_zeta = 500;
    std::int64_t sim_bmax = 1000;
    std::uint64_t sim_seed = 1;
    double sim_gamma = 0.97, sim_alpha = 0.5;
    int sim_kappa = 32;
    sim->add_option("--sieve", sim_sieve, "nv or gauss");
    sim->add_option("--hash", sim_hash, "none, angular, spherical-lsh, spherical-lsf");
    sim->add_option("-D,--dimension", sim_d, "dimension for a random basis");
    sim->add_option("--basis", sim_basis, "basis file (overrides -D)");
    sim->add_option("--bmax", sim_bmax, "random basis entry bound");
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--gamma", sim_gamma, "NV contraction parameter");
    sim->add_option("--zeta", sim_zeta, "Gauss collision termination count");
    sim->add_option("--kappa", sim_kappa, "coordinate bit width");
    sim->add_option("--hash-k", sim_k, "hash length per table");
    sim->add_option("--hash-t", sim_t, "number of hash tables / filters");
    sim->add_option("--hash-alpha", sim_alpha, "LSF filter threshold");
    sim->add_option("--out", sim_out, "history CSV path");
    sim->add_option("--report", sim_report, "report JSON path (default stdout)");

    // replay
    auto* rep = app.add_subcommand("replay", "estimate resources from a history CSV");
    CommonFlags rf;
    std::string rep_history, rep_out;
    int rep_d = 40;
    rep->add_option("--history", rep_history, "history CSV")->required();
    rep->add_option("-D,--dimension", rep_d, "lattice dimension")->required();
    rep->add_option("--arch", rf.arch, "baseline or active-volume");
    rep->add_flag("--no-qram", rf.no_qram, "zero out all QRAM contributions");
    rep->add_option("--out", rep_out, "output path");
    add_phys_flags(rep, rf);

    // params
    auto* par = app.add_subcommand("params", "solve hashing parameters (k, t, alpha)");
    std::string par_family = "angular", par_sieve = "gauss", par_out;
    int par_d = 400;
    double par_eps = 1e-3;
    bool par_classical = false;
    par->add_option("--family", par_family, "angular, spherical-lsh, spherical-lsf");
    par->add_option("--sieve", par_sieve, "nv or gauss");
    par->add_option("-D,--dimension", par_d, "lattice dimension");
    par->add_option("--epsilon", par_eps, "miss probability");
    par->add_flag("--classical", par_classical, "balance for the classical sieve");
    par->add_option("--out", par_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (table->parsed()) return cmd_table(table_d, tf, table_out, table_format);
        if (est->parsed()) {
            ScenarioAssumptions sc;
            sc.sieve = parse_sieve(est_sieve);
            sc.hash = parse_hash(est_hash);
            sc.d = est_d;
            sc.gate = circuit::GateParams(ef.kappa, ef.c_ccz);
            sc.lsf_optimize_alpha = est_lsf_opt;
            return cmd_estimate(sc, ef, est_out);
        }
        if (sweep->parsed())
            return cmd_sweep(dmin, dmax, dstep, sweep_sieves, sweep_hashes, wf,
                             sweep_out, sweep_format, sweep_jobs);
        if (sim->parsed()) {
            sieve::SieveConfig cfg;
            cfg.alg = parse_sieve(sim_sieve);
            cfg.hash = parse_hash(sim_hash);
            cfg.gamma = sim_gamma;
            cfg.zeta = sim_zeta;
            cfg.kappa = sim_kappa;
            cfg.hash_k = sim_k;
            cfg.hash_t = sim_t;
            cfg.hash_alpha = sim_alpha;
            return cmd_simulate(sim_basis, sim_d, sim_bmax, sim_seed, cfg, sim_out,
                                sim_report);
        }
        if (rep->parsed()) return cmd_replay(rep_history, rep_d, rf, rep_out);
        if (par->parsed())
            return cmd_params(par_family, par_sieve, par_d, par_eps, par_classical,
                              par_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
