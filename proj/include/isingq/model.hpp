#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "rational.hpp"

#include <json.hpp>

namespace isingq {

enum class nn_kind { constant, linear, table };

/* Nearest-neighbour coupling J : Z -> Q. Table kernels are given on a
 * contiguous site range and extrapolate affinely with the boundary slope,
 * so J(i) has a finite description for every i. */
struct nn_kernel {
    nn_kind kind = nn_kind::constant;
    std::map<long, rat> table;

    static nn_kernel constant() { return {nn_kind::constant, {}}; }
    static nn_kernel linear() { return {nn_kind::linear, {}}; }
    static nn_kernel from_table(std::map<long, rat> t) {
        if (t.empty()) throw domain_error("empty table kernel");
        long expect = t.begin()->first;
        for (const auto& [site, v] : t) {
            if (site != expect++) throw domain_error("table kernel sites must be contiguous");
            (void)v;
        }
        return {nn_kind::table, std::move(t)};
    }

    rat at(long i) const {
        switch (kind) {
            case nn_kind::constant: return rat(1);
            case nn_kind::linear: return rat(i);
            case nn_kind::table: break;
        }
        const long lo = table.begin()->first;
        const long hi = table.rbegin()->first;
        if (i >= lo && i <= hi) return table.at(i);
        if (i < lo) {
            rat slope = table.size() > 1 ? table.at(lo + 1) - table.at(lo) : rat(0);
            return table.at(lo) + rat(i - lo) * slope;
        }
        rat slope = table.size() > 1 ? table.at(hi) - table.at(hi - 1) : rat(0);
        return table.at(hi) + rat(i - hi) * slope;
    }

    bool integer_valued() const {
        if (kind != nn_kind::table) return true;
        for (const auto& [site, v] : table) {
            (void)site;
            if (!rat_is_integer(v)) return false;
        }
        return true;
    }
};

/* Long-range pair coupling with J(i,j) = J(j,i) >= 0 and J(i,i) = 0.
 * Two finite descriptions: a distance profile (translation invariant,
 * support |i-j| <= by_distance.size()), or an embedded nearest-neighbour
 * kernel J(i,j) = nn(min(i,j)) 1{|i-j|=1} used to cross-check against the
 * six-case rates. An optional decay tail c*d^{-alpha} beyond the profile
 * is honoured in float mode only. */
struct lr_kernel {
    std::vector<rat> by_distance;
    std::optional<nn_kernel> nn_embedded;
    double tail_c = 0.0;
    double tail_alpha = 0.0;
    bool has_tail = false;

    static lr_kernel from_profile(std::vector<rat> v) {
        for (const rat& x : v)
            if (x < 0) throw domain_error("long-range kernel values must be nonnegative");
        lr_kernel k;
        k.by_distance = std::move(v);
        return k;
    }
    static lr_kernel embed_nn(nn_kernel nn) {
        lr_kernel k;
        k.nn_embedded = std::move(nn);
        return k;
    }

    long range() const { return nn_embedded ? 1 : static_cast<long>(by_distance.size()); }

    rat at(long i, long j) const {
        long d = i > j ? i - j : j - i;
        if (d == 0) return rat(0);
        if (nn_embedded) return d == 1 ? nn_embedded->at(std::min(i, j)) : rat(0);
        if (d <= static_cast<long>(by_distance.size())) return by_distance[d - 1];
        return rat(0);  // tail handled separately in float paths
    }

    double tail_at(long d) const {
        if (!has_tail || d <= range()) return 0.0;
        return tail_c * std::pow(static_cast<double>(d), -tail_alpha);
    }

    // sum over a != x of J(a, x); finite for both descriptions
    rat row_sum(long x) const {
        if (nn_embedded) return nn_embedded->at(x - 1) + nn_embedded->at(x);
        rat s(0);
        for (const rat& v : by_distance) s += 2 * v;
        return s;
    }
};

using interaction_kernel = std::variant<nn_kernel, lr_kernel>;

inline bool is_nn(const interaction_kernel& k) { return std::holds_alternative<nn_kernel>(k); }
inline const nn_kernel& as_nn(const interaction_kernel& k) {
    if (!is_nn(k)) throw domain_error("nearest-neighbour kernel required");
    return std::get<nn_kernel>(k);
}
inline const lr_kernel& as_lr(const interaction_kernel& k) {
    if (is_nn(k)) throw domain_error("long-range kernel required");
    return std::get<lr_kernel>(k);
}

/* u = e^{-beta} in (0,1], q in (0,1), field offset c, conserved-quantity
 * sector n. With the linear kernel J(i)=i the concentration condition
 * needs u < q, enforced at construction. */
struct model_params {
    num_mode mode = num_mode::exact;
    scalar u, q, c;
    long n = 0;
    interaction_kernel kernel = nn_kernel::constant();

    static model_params make(num_mode mode, const rat& u, const rat& q, const rat& c, long n,
                             interaction_kernel kernel) {
        if (!(q > 0 && q < 1)) throw domain_error("q must lie in (0,1)");
        if (!(u > 0 && u <= 1)) throw domain_error("u = e^{-beta} must lie in (0,1]");
        if (is_nn(kernel) && std::get<nn_kernel>(kernel).kind == nn_kind::linear && !(u < q))
            throw domain_error("kernel J(i)=i requires u < q");
        model_params p;
        p.mode = mode;
        if (mode == num_mode::exact) {
            p.u = scalar::exact(u);
            p.q = scalar::exact(q);
            p.c = scalar::exact(c);
        } else {
            p.u = scalar::approx(u.get_d());
            p.q = scalar::approx(q.get_d());
            p.c = scalar::approx(c.get_d());
        }
        p.n = n;
        p.kernel = std::move(kernel);
        return p;
    }

    scalar q_pow(long e) const { return q.pow(e); }
    scalar u_pow(long e) const { return u.pow(e); }
    scalar one() const { return mode == num_mode::exact ? scalar::exact(1) : scalar::approx(1.0); }

    // u^x / (1 + u^x)  ==  (1 - tanh(beta x / 2)) / 2, exact for integer x
    scalar half_one_minus_tanh(const rat& x) const {
        if (mode == num_mode::exact) {
            if (!rat_is_integer(x))
                throw domain_error("exact mode needs integer interaction differences; got " +
                                   x.get_str());
            scalar ux = u.pow(rat_to_long(x));
            return ux / (one() + ux);
        }
        double xv = x.get_d();
        double ux = std::pow(u.value(), xv);
        return scalar::approx(ux / (1.0 + ux));
    }
    // 1 / (1 + u^x)  ==  (1 + tanh(beta x / 2)) / 2
    scalar half_one_plus_tanh(const rat& x) const { return half_one_minus_tanh(-x); }

    // (q^{-2c})^e; exact mode requires 2c integral
    scalar z_pow(long e) const {
        if (e == 0) return one();
        if (mode == num_mode::exact) {
            rat twoc = 2 * c.ratio();
            if (!rat_is_integer(twoc))
                throw domain_error("exact numeric mode requires 2c integral (got c = " +
                                   c.ratio().get_str() + "); use float mode or series mode");
            return q.pow(-rat_to_long(twoc) * e);
        }
        return scalar::approx(std::pow(q.value(), -2.0 * c.value() * e));
    }
};

// ---- JSON encodings -------------------------------------------------------
// kernel: {"type":"constant"|"linear"|"table"|"longrange", ...}
// params: {"u":"p/q","q":"p/q","c":"p/q","n":int,"kernel":{...}}

inline interaction_kernel kernel_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "constant") return nn_kernel::constant();
    if (type == "linear") return nn_kernel::linear();
    if (type == "table") {
        std::map<long, rat> t;
        for (const auto& [site, v] : j.at("values").items())
            t[std::stol(site)] = rat_from_string(v.get<std::string>());
        return nn_kernel::from_table(std::move(t));
    }
    if (type == "longrange") {
        if (j.contains("nn")) return lr_kernel::embed_nn(std::get<nn_kernel>(kernel_from_json(j.at("nn"))));
        std::vector<rat> v;
        for (const auto& x : j.at("by_distance")) v.push_back(rat_from_string(x.get<std::string>()));
        lr_kernel k = lr_kernel::from_profile(std::move(v));
        if (j.contains("tail")) {
            k.has_tail = true;
            k.tail_c = j.at("tail").at("c").get<double>();
            k.tail_alpha = j.at("tail").at("alpha").get<double>();
            if (k.tail_alpha <= 2.0)
                throw domain_error("long-range tail must decay faster than |i-j|^{-2}");
        }
        return k;
    }
    throw domain_error("unknown kernel type: " + type);
}

inline model_params params_from_json(const nlohmann::json& j, num_mode mode) {
    return model_params::make(mode, rat_from_string(j.at("u").get<std::string>()),
                              rat_from_string(j.at("q").get<std::string>()),
                              rat_from_string(j.at("c").get<std::string>()),
                              j.at("n").get<long>(), kernel_from_json(j.at("kernel")));
}

}  // namespace isingq
