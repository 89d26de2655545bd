// isingq command line: identity verification, enumeration, reversibility
// checks, and simulation for the blocking Ising chain and its stood-up
// particle systems. Outputs are deterministic for fixed seeds.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "isingq/dynamics_lr.hpp"
#include "isingq/dynamics_nn.hpp"
#include "isingq/identities.hpp"
#include "isingq/io.hpp"
#include "isingq/reversibility.hpp"

using namespace isingq;

namespace {

interaction_kernel parse_kernel(const std::string& spec) {
    if (spec == "constant") return nn_kernel::constant();
    if (spec == "linear") return nn_kernel::linear();
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string kind = spec.substr(0, colon), file = spec.substr(colon + 1);
        std::ifstream in(file);
        if (!in) throw domain_error("cannot open kernel file: " + file);
        nlohmann::json j = nlohmann::json::parse(in);
        interaction_kernel k = kernel_from_json(j);
        if (kind == "table" && !is_nn(k)) throw domain_error("table: file holds a long-range kernel");
        if (kind == "longrange" && is_nn(k))
            throw domain_error("longrange: file holds a nearest-neighbour kernel");
        return k;
    }
    throw domain_error("unknown kernel: " + spec + " (constant|linear|table:FILE|longrange:FILE)");
}

std::ostream& output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw domain_error("cannot open output file: " + path);
    return file;
}

struct model_cli {
    std::string model = "standup";
    std::string kernel = "constant";
    std::string u = "1/2", q = "1/3", c = "0";
    long n = 0;
    long rank = 6;
    std::string params_file;

    model_params params() const {
        if (!params_file.empty()) {
            std::ifstream in(params_file);
            if (!in) throw domain_error("cannot open params file: " + params_file);
            return params_from_json(nlohmann::json::parse(in), num_mode::exact);
        }
        return model_params::make(num_mode::exact, rat_from_string(u), rat_from_string(q),
                                  rat_from_string(c), n, parse_kernel(kernel));
    }
    void add_flags(CLI::App* cmd) {
        cmd->add_option("--model", model, "ising|standup|lr|restricted|natural");
        cmd->add_option("--kernel", kernel, "constant|linear|table:FILE|longrange:FILE");
        cmd->add_option("--u", u, "e^{-beta} as p/q");
        cmd->add_option("--q", q, "asymmetry q as p/q");
        cmd->add_option("--c", c, "field offset c as p/q");
        cmd->add_option("--n", n, "conserved-quantity sector");
        cmd->add_option("--rank", rank, "truncation rank");
        cmd->add_option("--params", params_file, "JSON parameter file (overrides the flags)");
    }
};

// assemble (states, generator, weight) for each model over the rank truncation
struct spin_setup {
    std::vector<spin_config> states;
    generator_fn<spin_config> gen;
    weight_fn<spin_config> wf;
};
struct particle_setup {
    std::vector<particle_config> states;
    generator_fn<particle_config> gen;
    weight_fn<particle_config> wf;
};

spin_setup make_spin_setup(const model_cli& m, const model_params& p) {
    spin_setup s;
    const long cap = m.rank + p.n * (p.n + 1) / 2;
    s.states = enumerate_spin_sector(p.n, cap);
    if (m.model == "ising")
        s.gen = [p, cap](const spin_config& x) { return ising_transitions(x, p, cap); };
    else
        s.gen = [p, cap](const spin_config& x) { return lr_ising_transitions(x, p, cap); };
    s.wf = [p](const spin_config& x) { return weight(x, p); };
    return s;
}

particle_setup make_particle_setup(const model_cli& m, const model_params& p) {
    particle_setup s;
    const long cap = m.rank;
    s.states = enumerate_particles(cap);
    if (m.model == "standup") {
        s.gen = [p, cap](const particle_config& x) { return standup_transitions(x, p, p.n, cap); };
        s.wf = [p](const particle_config& x) { return particle_weight(x, p); };
    } else if (m.model == "restricted") {
        s.gen = [p, cap](const particle_config& x) {
            return restricted_transitions(x, p, p.n, cap);
        };
        s.wf = [p](const particle_config& x) { return particle_weight(x, p); };
    } else {  // natural
        s.gen = [p, cap](const particle_config& x) { return natural_transitions(x, p, cap); };
        s.wf = [p](const particle_config& x) { return kappa_weight(x, p); };
    }
    return s;
}

int run_check_db(const model_cli& m, bool as_json, const std::string& outfile,
                 const std::string& dumpfile) {
    auto p = m.params();
    std::ofstream f;
    std::ostream& os = output(f, outfile);
    ojson j;
    bool ok = false;
    if (m.model == "ising" || m.model == "lr") {
        auto s = make_spin_setup(m, p);
        auto rep = check_detailed_balance<spin_config>(s.states, s.gen, s.wf);
        ok = rep.ok();
        j = balance_to_json(rep);
        if (!dumpfile.empty()) {
            std::ofstream d(dumpfile);
            write_transitions_csv<spin_config>(d, s.states, s.gen);
        }
    } else {
        auto s = make_particle_setup(m, p);
        auto rep = check_detailed_balance<particle_config>(s.states, s.gen, s.wf);
        ok = rep.ok();
        j = balance_to_json(rep);
        if (!dumpfile.empty()) {
            std::ofstream d(dumpfile);
            write_transitions_csv<particle_config>(d, s.states, s.gen);
        }
    }
    j["model"] = m.model;
    j["rank"] = m.rank;
    if (as_json)
        os << j.dump(2) << "\n";
    else
        os << m.model << " detailed balance: " << (ok ? "PASS" : "FAIL") << " ("
           << j["pairs_checked"] << " pairs)\n";
    return ok ? 0 : 1;
}

int run_stationarity(const model_cli& m, bool as_json, const std::string& outfile) {
    auto p = m.params();
    std::ofstream f;
    std::ostream& os = output(f, outfile);
    scalar res = scalar::exact(0);
    if (m.model == "ising" || m.model == "lr") {
        auto s = make_spin_setup(m, p);
        res = stationarity_check<spin_config>(s.states, s.gen, s.wf);
    } else {
        auto s = make_particle_setup(m, p);
        res = stationarity_check<particle_config>(s.states, s.gen, s.wf);
    }
    bool ok = res.is_zero();
    if (as_json) {
        ojson j;
        j["model"] = m.model;
        j["residual"] = res.str();
        j["status"] = ok ? "PASS" : "FAIL";
        os << j.dump(2) << "\n";
    } else {
        os << m.model << " stationarity residual: " << res.str() << "\n";
    }
    return ok ? 0 : 1;
}

int run_simulate(const model_cli& m, std::uint64_t seed, long events, int nseeds, int threads,
                 bool as_json, const std::string& outfile, const std::string& csvfile) {
    auto p = m.params();
    if (m.model != "standup" && m.model != "natural")
        throw domain_error("simulate supports --model standup|natural");
    auto s = make_particle_setup(m, p);
    auto exact = conditional_measure_of(s.states, s.wf);
    std::vector<trajectory_stats> stats(static_cast<size_t>(nseeds));
    std::ofstream trace;
    if (!csvfile.empty()) {
        trace.open(csvfile);
        if (!trace) throw domain_error("cannot open trace file: " + csvfile);
        trace << "time,state_id\n";
    }
    auto work = [&](int t0, int stride) {
        for (int i = t0; i < nseeds; i += stride)
            stats[static_cast<size_t>(i)] =
                simulate<particle_config>(s.states, s.gen, exact, 0, seed + static_cast<unsigned>(i),
                                          events, (i == 0 && trace.is_open()) ? &trace : nullptr);
    };
    if (threads > 1 && nseeds > 1) {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& th : pool) th.join();
    } else {
        work(0, 1);
    }
    std::vector<double> tvs;
    for (const auto& st : stats) tvs.push_back(st.tv_distance);
    std::sort(tvs.begin(), tvs.end());
    double median = tvs[tvs.size() / 2];
    std::ofstream f;
    std::ostream& os = output(f, outfile);
    if (as_json) {
        ojson j;
        j["model"] = m.model;
        j["events"] = events;
        j["runs"] = ojson::array();
        for (const auto& st : stats) j["runs"].push_back(trajectory_to_json(st));
        j["median_tv"] = median;
        os << j.dump(2) << "\n";
    } else {
        for (const auto& st : stats)
            os << "seed " << st.seed << ": events=" << st.events << " tv=" << st.tv_distance
               << "\n";
        os << "median tv: " << median << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blocking Ising chains, stood-up particle systems, and their q-series"};
    app.require_subcommand(1);

    // verify
    std::string identity = "thm1";
    int degree = 12;
    long vn = 0;
    bool vjson = false;
    std::string vout;
    auto* cverify = app.add_subcommand("verify", "coefficientwise identity verification");
    cverify->add_option("--identity", identity, "thm1|thm2|cor1_2|jtp|lemma4|remark2_1")
        ->required();
    cverify->add_option("--degree", degree, "Q-degree cap");
    cverify->add_option("--n", vn, "sector (thm2)");
    cverify->add_flag("--json", vjson);
    cverify->add_option("--out", vout);

    // enumerate
    std::string what = "spins";
    long en = 0, erank = 6, ecolors = 2;
    std::string ekernel = "constant", eout;
    bool ejson = false;
    auto* cenum = app.add_subcommand("enumerate", "state and partition enumeration");
    cenum->add_option("--what", what, "spins|partitions|overpartitions|fp");
    cenum->add_option("--n", en, "sector / integer to partition");
    cenum->add_option("--rank", erank, "rank cap for spins, total for fp tables");
    cenum->add_option("--colors", ecolors, "decorations per size for overpartitions");
    cenum->add_option("--kernel", ekernel);
    cenum->add_flag("--json", ejson);
    cenum->add_option("--out", eout);

    // check-db / stationarity
    model_cli mdb, mst;
    bool dbjson = false, stjson = false;
    std::string dbout, stout;
    std::string dbdump;
    auto* cdb = app.add_subcommand("check-db", "exact detailed-balance verification");
    mdb.add_flags(cdb);
    cdb->add_flag("--json", dbjson);
    cdb->add_option("--out", dbout);
    cdb->add_option("--dump", dbdump, "write the truncated generator as CSV");
    auto* cst = app.add_subcommand("stationarity", "residual of pi G on the truncation");
    mst.add_flags(cst);
    cst->add_flag("--json", stjson);
    cst->add_option("--out", stout);

    // simulate
    model_cli msim;
    std::uint64_t seed = 42;
    long events = 100000;
    int nseeds = 1, threads = 1;
    bool simjson = false;
    std::string simout, simcsv;
    auto* csim = app.add_subcommand("simulate", "event-driven simulation with TV comparison");
    msim.add_flags(csim);
    csim->add_option("--seed", seed);
    csim->add_option("--events", events);
    csim->add_option("--seeds", nseeds, "number of independent seeds");
    csim->add_option("--threads", threads);
    csim->add_flag("--json", simjson);
    csim->add_option("--out", simout);
    csim->add_option("--csv", simcsv, "stream the first trajectory as time,state_id");

    // concentration
    model_cli mconc;
    long horizon = 50;
    bool concjson = false;
    std::string concout;
    auto* cconc = app.add_subcommand("concentration", "summability-condition evaluation");
    mconc.add_flags(cconc);
    cconc->add_option("--horizon", horizon);
    cconc->add_flag("--json", concjson);
    cconc->add_option("--out", concout);

    // export-coeffs
    std::string sname = "theta", sout;
    int sdeg = 12;
    long sn = 0;
    auto* cexp = app.add_subcommand("export-coeffs", "series coefficients as CSV");
    cexp->add_option("--series", sname,
                     "theta|blocking|jtp|zj1|zji|partition-function|fp|brute-const|brute-linear");
    cexp->add_option("--degree", sdeg);
    cexp->add_option("--n", sn, "sector (zji)");
    cexp->add_option("--out", sout);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cverify->parsed()) {
            verify_report r =
                verify(identity, degree, identity == "thm2" ? std::optional<long>(vn) : std::nullopt);
            std::ofstream f;
            std::ostream& os = output(f, vout);
            if (vjson)
                os << report_to_json(r).dump(2) << "\n";
            else
                os << r.identity << " degree " << r.degree << ": " << (r.pass ? "PASS" : "FAIL")
                   << " - " << r.detail << "\n";
            return r.pass ? 0 : 1;
        }
        if (cenum->parsed()) {
            std::ofstream f;
            std::ostream& os = output(f, eout);
            if (what == "spins") {
                write_enumeration_jsonl(os, en, erank + en * (en + 1) / 2, parse_kernel(ekernel));
            } else if (what == "partitions" || what == "overpartitions") {
                long count = what == "partitions" ? static_cast<long>(partitions_of(en).size())
                                                  : overpartition_count(en, ecolors);
                if (ejson) {
                    ojson j;
                    j["what"] = what;
                    j["n"] = en;
                    if (what == "overpartitions") j["colors"] = ecolors;
                    j["count"] = count;
                    os << j.dump() << "\n";
                } else {
                    os << count << "\n";
                }
            } else if (what == "fp") {
                write_fp_counts_csv(os, static_cast<int>(erank));
            } else {
                throw domain_error("unknown enumeration: " + what);
            }
            return 0;
        }
        if (cdb->parsed()) return run_check_db(mdb, dbjson, dbout, dbdump);
        if (cst->parsed()) return run_stationarity(mst, stjson, stout);
        if (csim->parsed())
            return run_simulate(msim, seed, events, nseeds, threads, simjson, simout, simcsv);
        if (cconc->parsed()) {
            auto rep = concentration_report(mconc.params(), horizon);
            std::ofstream f;
            std::ostream& os = output(f, concout);
            if (concjson)
                os << concentration_to_json(rep).dump(2) << "\n";
            else
                os << rep.condition << ": " << rep.verdict << " (partial sum " << rep.partial_sum
                   << ", late ratio " << rep.decay_ratio << ")\n";
            return 0;
        }
        if (cexp->parsed()) {
            std::ofstream f;
            std::ostream& os = output(f, sout);
            series s(sdeg);
            if (sname == "theta")
                s = theta(sdeg);
            else if (sname == "blocking")
                s = blocking_product(sdeg);
            else if (sname == "jtp")
                s = jtp_product(sdeg);
            else if (sname == "zj1")
                s = z_j1(sdeg);
            else if (sname == "zji")
                s = z_ji(sn, sdeg);
            else if (sname == "partition-function")
                s = ising_partition_function_runs(sdeg);
            else if (sname == "fp")
                s = fp_gen_function(sdeg);
            else if (sname == "brute-const")
                s = brute_force_partition_function(sdeg, nn_kernel::constant());
            else if (sname == "brute-linear")
                s = brute_force_partition_function(sdeg, nn_kernel::linear());
            else
                throw domain_error("unknown series: " + sname);
            write_series_csv(os, s);
            return 0;
        }
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
