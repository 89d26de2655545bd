#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "isingq/observables.hpp"
#include "isingq/standup.hpp"
#include "test_helpers.hpp"

using namespace isingq;
using isingq::test::cfg;
using isingq::test::worked_example;

namespace {
// wide-window reference implementations, independent of the ray formulas
long ref_N(const spin_config& s) {
    long nm = 0, np = 0;
    for (long i = 1; i <= 200; ++i)
        if (s.spin(i) < 0) ++nm;
    for (long i = -200; i <= 0; ++i)
        if (s.spin(i) > 0) ++np;
    return nm - np;
}
long ref_f0_half(const spin_config& s) {
    long acc = 0;
    for (long i = 1; i <= 200; ++i)
        if (s.spin(i) < 0) acc += i;
    for (long i = -200; i <= 0; ++i)
        if (s.spin(i) > 0) acc -= i;
    return acc;
}
}  // namespace

TEST_CASE("worked example observables") {
    spin_config s = worked_example();
    CHECK(hamiltonian_nn(s, nn_kernel::constant()) == 7);
    CHECK(field_fc(s, rat(0)) == 18);
    CHECK(conserved_N(s) == -1);
}

TEST_CASE("step profile observables") {
    for (long n = -4; n <= 4; ++n) {
        spin_config s = step_profile(n);
        CHECK(hamiltonian_nn(s, nn_kernel::constant()) == 1);
        CHECK(hamiltonian_nn(s, nn_kernel::linear()) == n);
        CHECK(field_fc(s, rat(1, 2)) == rat(n * (n + 1)) - n);  // n(n+1) - 2nc
        CHECK(conserved_N(s) == n);
    }
    CHECK(hamiltonian_nn(step_profile(0), nn_kernel::linear()) == 0);
}

TEST_CASE("ray formulas match the brute-force window sums") {
    std::mt19937 rng(3);
    for (int it = 0; it < 300; ++it) {
        long start = static_cast<long>(rng() % 13) - 6;
        std::vector<signed char> w;
        size_t len = rng() % 10;
        for (size_t i = 0; i < len; ++i) w.push_back(rng() % 2 ? +1 : -1);
        spin_config s = canonicalize(start, std::move(w));
        CHECK(conserved_N(s) == ref_N(s));
        CHECK(f0_half(s) == ref_f0_half(s));
    }
}

TEST_CASE("disagreement counts at a distance match the direct scan") {
    std::mt19937 rng(17);
    for (int it = 0; it < 150; ++it) {
        std::vector<signed char> w;
        size_t len = rng() % 9;
        for (size_t i = 0; i < len; ++i) w.push_back(rng() % 2 ? +1 : -1);
        spin_config s = canonicalize(static_cast<long>(rng() % 9) - 4, std::move(w));
        for (long d = 1; d <= 10; ++d) {
            long direct = 0;
            for (long i = -80; i <= 80; ++i)
                if (s.spin(i) != s.spin(i + d)) ++direct;
            CHECK(disagreements_at_distance(s, d) == direct);
        }
    }
}

TEST_CASE("shift identities") {
    CHECK(shift(worked_example(), 0) == worked_example());
    CHECK(shift(step_profile(3), 1) == step_profile(2));
    std::mt19937 rng(11);
    for (int it = 0; it < 100; ++it) {
        std::vector<signed char> w;
        size_t len = 1 + rng() % 8;
        for (size_t i = 0; i < len; ++i) w.push_back(rng() % 2 ? +1 : -1);
        spin_config s = canonicalize(static_cast<long>(rng() % 9) - 4, std::move(w));
        rat c(3, 7);
        for (long k = -3; k <= 3; ++k) {
            spin_config t = shift(s, k);
            CHECK(conserved_N(t) == conserved_N(s) - k);
            CHECK(field_fc(t, c) ==
                  2 * k * c - 2 * k * conserved_N(s) + k * (k - 1) + field_fc(s, c));
        }
    }
}

TEST_CASE("shifted hamiltonian correction") {
    std::mt19937 rng(5);
    for (int it = 0; it < 60; ++it) {
        std::vector<signed char> w;
        size_t len = 1 + rng() % 8;
        for (size_t i = 0; i < len; ++i) w.push_back(rng() % 2 ? +1 : -1);
        spin_config s = canonicalize(static_cast<long>(rng() % 9) - 4, std::move(w));
        for (long n = -3; n <= 3; ++n) {
            // J == 1: the correction vanishes
            CHECK(shifted_hamiltonian_correction(s, nn_kernel::constant(), n) == 0);
            // J(i) = i: the correction is n times the disagreement count
            CHECK(shifted_hamiltonian_correction(s, nn_kernel::linear(), n) ==
                  n * hamiltonian_nn(s, nn_kernel::constant()));
            // H_J(tau^{-n} sigma) = H_J(sigma) + H_J^{(n)}(sigma)
            for (const auto& J : {nn_kernel::linear(), nn_kernel::from_table({{0, rat(2)},
                                                                              {1, rat(5)}})}) {
                CHECK(hamiltonian_nn(shift(s, -n), J) ==
                      hamiltonian_nn(s, J) + shifted_hamiltonian_correction(s, J, n));
            }
        }
    }
    CHECK(shifted_hamiltonian_correction(step_profile(0), nn_kernel::linear(), 5) == 5);
}

TEST_CASE("sector enumeration") {
    CHECK(enumerate_spin_sector(0, 0).size() == 1);
    CHECK(enumerate_spin_sector(0, 0)[0] == step_profile(0));
    CHECK(enumerate_spin_sector(0, 4).size() == 12);  // 1 + p(1) + ... + p(4)
    for (long n : {-2L, 0L, 3L}) {
        long layer = 7 + n * (n + 1) / 2;
        long count = 0;
        for (const auto& s : enumerate_spin_sector(n, layer)) {
            CHECK(conserved_N(s) == n);
            if (f0_half(s) == layer) ++count;
        }
        CHECK(count == 15);  // p(7) = 15
    }
    // every enumerated state appears exactly once
    auto states = enumerate_spin_sector(-1, 6);
    std::set<spin_config> uniq(states.begin(), states.end());
    CHECK(uniq.size() == states.size());
}

TEST_CASE("weights") {
    auto p = model_params::make(num_mode::exact, rat(1, 2), rat(1, 3), rat(0), 2,
                                nn_kernel::constant());
    CHECK(weight(step_profile(2), p) == p.u.pow(1) * p.q.pow(6));
    auto plin = model_params::make(num_mode::exact, rat(1, 4), rat(1, 3), rat(1, 2), 2,
                                   nn_kernel::linear());
    CHECK(weight(step_profile(2), plin) ==
          plin.u.pow(2) * plin.q.pow(6) * plin.z_pow(2));
    CHECK(particle_weight(particle_config{}, p) == p.u.pow(1));       // omega^0 at n = 2, J == 1
    CHECK(particle_weight(particle_config{}, plin) == plin.u.pow(2));  // u^{J(n)}
}

TEST_CASE("particle weight over weight is constant on a sector") {
    for (auto kernel : {interaction_kernel(nn_kernel::constant()),
                        interaction_kernel(nn_kernel::linear())}) {
        for (long n : {-2L, 0L, 1L}) {
            auto p = model_params::make(num_mode::exact, rat(1, 4), rat(1, 3), rat(1), n, kernel);
            std::optional<scalar> ratio;
            for (const auto& s : enumerate_spin_sector(n, 6 + n * (n + 1) / 2)) {
                scalar r = particle_weight(stand_up(s, n), p) / weight(s, p);
                if (!ratio)
                    ratio = r;
                else
                    CHECK(*ratio == r);
            }
        }
    }
}
