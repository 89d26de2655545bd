#pragma once

#include <ostream>
#include <string>

#include "combinatorics.hpp"
#include "dynamics_lr.hpp"
#include "identities.hpp"
#include "qseries.hpp"
#include "reversibility.hpp"

#include <json.hpp>

namespace isingq {

using ojson = nlohmann::ordered_json;

inline std::string y_exp_str(long uexp) {
    if (uexp % 2 == 0) return std::to_string(uexp / 2);
    return std::to_string(uexp) + "/2";
}

// CSV rows (q_degree, z_exp, y_exp, numerator, denominator)
inline void write_series_csv(std::ostream& os, const series& s) {
    os << "q_degree,z_exp,y_exp,numerator,denominator\n";
    for (long d = 0; d <= s.cap(); ++d)
        for (const auto& [k, v] : s.coeff(d))
            os << d << "," << k.z << "," << y_exp_str(k.u) << "," << v.get_num().get_str() << ","
               << v.get_den().get_str() << "\n";
}

// JSON lines, one per enumerated configuration of the sector
inline void write_enumeration_jsonl(std::ostream& os, long n, long cap,
                                    const interaction_kernel& kernel) {
    for (const auto& s : enumerate_spin_sector(n, cap)) {
        particle_config w = stand_up(s, n);
        ojson row;
        row["sector"] = n;
        row["rank"] = f0_half(s);
        row["spins"] = s.str();
        ojson om = ojson::object();
        for (const auto& [r, v] : w.occ) om[std::to_string(-r)] = v;
        row["omega"] = om;
        row["weight_Q_exponent"] = f0_half(s);
        rat h = is_nn(kernel) ? hamiltonian_nn(s, as_nn(kernel))
                              : hamiltonian_lr(s, as_lr(kernel));
        row["weight_u_exponent"] = h.get_str();
        os << row.dump() << "\n";
    }
}

template <class State>
void write_transitions_csv(std::ostream& os, const std::vector<State>& states,
                           const generator_fn<State>& gen) {
    auto idx = rev_detail::index_of(states);
    os << "source_id,target_id,move,rate_num,rate_den\n";
    for (size_t i = 0; i < states.size(); ++i)
        for (const auto& t : gen(states[i])) {
            auto it = idx.find(t.to);
            long j = it == idx.end() ? -1 : static_cast<long>(it->second);
            if (t.rate.is_exact())
                os << i << "," << j << "," << t.move.str() << ","
                   << t.rate.ratio().get_num().get_str() << ","
                   << t.rate.ratio().get_den().get_str() << "\n";
            else
                os << i << "," << j << "," << t.move.str() << "," << t.rate.value() << ",1\n";
        }
}

// count table (n, m, k, count) of offset-m Frobenius partitions by statistic
inline void write_fp_counts_csv(std::ostream& os, int cap) {
    series s = fp_gen_function(cap);
    os << "n,m,k,count\n";
    for (long d = 0; d <= cap; ++d)
        for (const auto& [key, v] : s.coeff(d))
            os << d << "," << key.z << "," << key.u / 2 << "," << v.get_str() << "\n";
}

inline ojson report_to_json(const verify_report& r) {
    ojson j;
    j["identity"] = r.identity;
    j["degree"] = r.degree;
    if (r.n) j["n"] = *r.n;
    j["status"] = r.pass ? "PASS" : "FAIL";
    j["detail"] = r.detail;
    if (r.mismatch) {
        ojson m;
        m["q_degree"] = r.mismatch->qdeg;
        m["z_exp"] = r.mismatch->key.z;
        m["y_exp"] = y_exp_str(r.mismatch->key.u);
        m["lhs"] = r.mismatch->lhs.get_str();
        m["rhs"] = r.mismatch->rhs.get_str();
        j["first_mismatch"] = m;
    }
    return j;
}

template <class State>
ojson balance_to_json(const balance_report<State>& r) {
    ojson j;
    j["pairs_checked"] = r.pairs_checked;
    j["mode"] = r.mode == num_mode::exact ? "exact" : "float";
    j["failures"] = ojson::array();
    for (const auto& f : r.failures) {
        ojson e;
        e["from"] = f.from.str();
        e["to"] = f.to.str();
        e["lhs"] = f.lhs.str();
        e["rhs"] = f.rhs.str();
        j["failures"].push_back(e);
    }
    j["status"] = r.ok() ? "PASS" : "FAIL";
    return j;
}

inline ojson concentration_to_json(const concentration_report_t& r) {
    ojson j;
    j["condition"] = r.condition;
    j["partial_sums"] = ojson::array();
    double acc = 0;
    for (double t : r.terms_neg) {
        acc += t;
        j["partial_sums"].push_back(acc);
    }
    for (double t : r.terms_pos) {
        acc += t;
        j["partial_sums"].push_back(acc);
    }
    j["decay_ratio"] = r.decay_ratio;
    j["verdict"] = r.verdict;
    return j;
}

inline ojson trajectory_to_json(const trajectory_stats& st) {
    ojson j;
    j["seed"] = st.seed;
    j["events"] = st.events;
    j["total_time"] = st.total_time;
    j["tv_distance"] = st.tv_distance;
    return j;
}

}  // namespace isingq
