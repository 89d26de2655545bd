#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isingq/dynamics_lr.hpp"
#include "isingq/dynamics_nn.hpp"
#include "isingq/io.hpp"
#include "isingq/reversibility.hpp"
#include <sstream>

using namespace isingq;

namespace {
model_params params_const() {
    return model_params::make(num_mode::exact, rat(1, 2), rat(1, 3), rat(0), 0,
                              nn_kernel::constant());
}
}  // namespace

TEST_CASE("fault injection: a perturbed rate is reported, and only it") {
    auto p = params_const();
    auto states = enumerate_particles(4);
    particle_config marked;
    marked.set(1, 1);
    generator_fn<particle_config> gen = [&](const particle_config& w) {
        auto ts = standup_transitions(w, p, 0, 4);
        for (auto& t : ts)
            if (w == marked && t.move.k == move_info::kind::boundary_in)
                t.rate = t.rate * scalar::exact(2);  // deliberate corruption
        return ts;
    };
    weight_fn<particle_config> wf = [&](const particle_config& w) {
        return particle_weight(w, p);
    };
    auto rep = check_detailed_balance<particle_config>(states, gen, wf);
    CHECK(!rep.ok());
    REQUIRE(rep.failures.size() == 1);
    particle_config two;
    two.set(1, 2);
    CHECK(((rep.failures[0].from == marked && rep.failures[0].to == two) ||
           (rep.failures[0].from == two && rep.failures[0].to == marked)));
}

TEST_CASE("closure violations are reported as errors") {
    auto p = params_const();
    auto states = enumerate_particles(2);
    generator_fn<particle_config> gen = [&](const particle_config& w) {
        return standup_transitions(w, p, 0, 3);  // cap beyond the state set
    };
    weight_fn<particle_config> wf = [&](const particle_config& w) {
        return particle_weight(w, p);
    };
    CHECK_THROWS_AS(check_detailed_balance<particle_config>(states, gen, wf), domain_error);
}

TEST_CASE("stationarity residual vanishes exactly") {
    auto p = params_const();
    // ising sector 0, rank <= 4
    {
        auto states = enumerate_spin_sector(0, 4);
        generator_fn<spin_config> gen = [&](const spin_config& s) {
            return ising_transitions(s, p, 4);
        };
        weight_fn<spin_config> wf = [&](const spin_config& s) { return weight(s, p); };
        CHECK(stationarity_check<spin_config>(states, gen, wf) == scalar::exact(0));
    }
    // stood-up process, rank <= 4
    {
        auto states = enumerate_particles(4);
        generator_fn<particle_config> gen = [&](const particle_config& w) {
            return standup_transitions(w, p, 0, 4);
        };
        weight_fn<particle_config> wf = [&](const particle_config& w) {
            return particle_weight(w, p);
        };
        CHECK(stationarity_check<particle_config>(states, gen, wf) == scalar::exact(0));
    }
    // natural dynamics under kappa, rank <= 4
    {
        auto states = enumerate_particles(4);
        generator_fn<particle_config> gen = [&](const particle_config& w) {
            return natural_transitions(w, p, 4);
        };
        weight_fn<particle_config> wf = [&](const particle_config& w) {
            return kappa_weight(w, p);
        };
        CHECK(stationarity_check<particle_config>(states, gen, wf) == scalar::exact(0));
    }
}

TEST_CASE("an absorbing state raises an error") {
    std::vector<particle_config> states = {particle_config{}};
    generator_fn<particle_config> gen = [](const particle_config&) {
        return std::vector<transition<particle_config>>{};
    };
    std::vector<scalar> exact = {scalar::exact(1)};
    CHECK_THROWS_AS(simulate<particle_config>(states, gen, exact, 0, 1, 10), domain_error);
}

TEST_CASE("simulation determinism and the zero-length run") {
    auto p = params_const();
    auto states = enumerate_particles(5);
    generator_fn<particle_config> gen = [&](const particle_config& w) {
        return standup_transitions(w, p, 0, 5);
    };
    auto exact = conditional_measure(states, p);
    auto a = simulate<particle_config>(states, gen, exact, 0, 42, 20000);
    auto b = simulate<particle_config>(states, gen, exact, 0, 42, 20000);
    CHECK(a.total_time == b.total_time);
    CHECK(a.tv_distance == b.tv_distance);
    auto c = simulate<particle_config>(states, gen, exact, 3, 42, 0);
    CHECK(c.empirical[3] == 1.0);
    CHECK(c.total_time == 0.0);
}

TEST_CASE("occupation is consistent and TV shrinks with run length") {
    auto p = params_const();
    auto states = enumerate_particles(6);
    generator_fn<particle_config> gen = [&](const particle_config& w) {
        return standup_transitions(w, p, 0, 6);
    };
    auto exact = conditional_measure(states, p);
    std::vector<double> tv_short, tv_long;
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        auto s = simulate<particle_config>(states, gen, exact, 0, seed, 10000);
        auto l = simulate<particle_config>(states, gen, exact, 0, seed, 1000000);
        double occ = 0;
        for (double x : s.occupation) occ += x;
        CHECK(occ == doctest::Approx(s.total_time));
        tv_short.push_back(s.tv_distance);
        tv_long.push_back(l.tv_distance);
    }
    std::sort(tv_short.begin(), tv_short.end());
    std::sort(tv_long.begin(), tv_long.end());
    CHECK(tv_long[2] < tv_short[2]);  // medians over five seeds, 1e4 vs 1e6 events
    CHECK(tv_long[2] < 0.02);
}

TEST_CASE("exports are well formed") {
    auto p = params_const();
    auto states = enumerate_particles(3);
    generator_fn<particle_config> gen = [&](const particle_config& w) {
        return standup_transitions(w, p, 0, 3);
    };
    std::ostringstream csv;
    write_transitions_csv<particle_config>(csv, states, gen);
    std::string out = csv.str();
    CHECK(out.rfind("source_id,target_id,move,rate_num,rate_den\n", 0) == 0);
    CHECK(out.find("in(->-1,m=1)") != std::string::npos);
    std::ostringstream ser;
    write_series_csv(ser, theta(3));
    CHECK(ser.str().find("0,-1,0,1,1") != std::string::npos);
    std::ostringstream jsonl;
    write_enumeration_jsonl(jsonl, -1, 2, nn_kernel::constant());
    CHECK(jsonl.str().find("\"sector\":-1") != std::string::npos);
    CHECK(jsonl.str().find("\"weight_u_exponent\":\"3\"") != std::string::npos);
}
