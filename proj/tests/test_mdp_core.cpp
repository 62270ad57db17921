#include <doctest.h>

#include <cmath>

#include "curl/flow.hpp"
#include "curl/kernels.hpp"
#include "curl/rng.hpp"
#include "support.hpp"

using namespace curl;
using namespace curl::testing;

namespace {

// Deterministic cycle kernel x -> x+1 mod |X| for every action and step.
TransitionKernel cycle_kernel(const MdpShape& shape) {
    TransitionKernel kernel(shape);
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x)
            for (Index a = 0; a < shape.num_actions; ++a)
                kernel.at(n, x, a, (x + 1) % shape.num_states) = 1.0;
    return kernel;
}

} // namespace

TEST_SUITE("mdp-core") {

TEST_CASE("shape and type invariants") {
    CHECK_THROWS_AS((MdpShape{0, 1, 1}).validate(), ParameterError);
    CHECK_THROWS_AS((MdpShape{1, 0, 1}).validate(), ParameterError);
    CHECK_THROWS_AS((MdpShape{1, 1, 0}).validate(), ParameterError);

    const MdpShape shape{2, 2, 2};
    TransitionKernel bad(shape);
    CHECK_THROWS_AS(bad.validate(), ParameterError); // all-zero rows
    Policy pi = Policy::uniform(shape);
    CHECK_NOTHROW(pi.validate());
    pi.at(1, 0, 0) = 0.6;
    CHECK_THROWS_AS(pi.validate(), ParameterError);
}

TEST_CASE("single-cell simplex gives the constant all-ones sequence") {
    const MdpShape shape{1, 1, 5};
    TransitionKernel kernel(shape);
    for (Index n = 1; n <= 5; ++n) kernel.at(n, 0, 0, 0) = 1.0;
    const auto mu = occupancy_from_policy(Policy::uniform(shape), kernel,
                                          InitialDistribution::dirac(1, 1, 0, 0));
    for (Index n = 0; n <= 5; ++n) CHECK(mu.at(n, 0, 0) == 1.0);
}

TEST_CASE("deterministic chain is a moving dirac") {
    const MdpShape shape{4, 2, 6};
    const TransitionKernel kernel = cycle_kernel(shape);
    Policy pi(shape); // always action 1
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x) pi.at(n, x, 1) = 1.0;
    const auto mu = occupancy_from_policy(pi, kernel, InitialDistribution::dirac(4, 2, 0, 0));
    for (Index n = 0; n <= shape.horizon; ++n) {
        const Index expect_x = n % 4;
        const Index expect_a = n == 0 ? 0 : 1;
        CHECK(mu.at(n, expect_x, expect_a) == 1.0);
        CHECK(kernels::sum(mu.slice(n)) == doctest::Approx(1.0));
    }
}

TEST_CASE("forward flow matches trajectory enumeration") {
    const MdpShape shape{3, 2, 3};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SplitMix64 rng(seed);
        const auto kernel = random_kernel(shape, rng);
        const auto pi = random_policy(shape, rng);
        const auto mu0 = random_initial(shape, rng);
        const auto fast = occupancy_from_policy(pi, kernel, mu0);
        const auto slow = occupancy_by_enumeration(pi, kernel, mu0);
        CHECK(norm_inf_1(fast, slow) < 1e-12);
        CHECK_NOTHROW(fast.validate());
    }
}

TEST_CASE("shape mismatch raises a dimension error") {
    const MdpShape shape{3, 2, 3};
    SplitMix64 rng(7);
    const auto kernel = random_kernel(MdpShape{3, 2, 4}, rng);
    CHECK_THROWS_AS(
        occupancy_from_policy(Policy::uniform(shape), kernel, InitialDistribution::uniform(3, 2)),
        DimensionError);
    CHECK_THROWS_AS(occupancy_from_policy(Policy::uniform(shape),
                                          random_kernel(shape, rng),
                                          InitialDistribution::uniform(4, 2)),
                    DimensionError);
}

TEST_CASE("policy recovery: uniform rows and unvisited states") {
    const MdpShape shape{3, 4, 2};
    SplitMix64 rng(3);
    const auto kernel = random_kernel(shape, rng);
    const auto mu = occupancy_from_policy(Policy::uniform(shape), kernel,
                                          InitialDistribution::uniform(3, 4));
    const Policy pi = policy_from_occupancy(mu);
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x)
            for (Index a = 0; a < shape.num_actions; ++a)
                CHECK(pi.at(n, x, a) == doctest::Approx(0.25).epsilon(1e-12));

    // A state with zero marginal gets the uniform row.
    OccupancyMeasure sparse(shape);
    for (Index n = 0; n <= shape.horizon; ++n) sparse.at(n, 0, 0) = 1.0;
    const Policy rec = policy_from_occupancy(sparse);
    for (Index a = 0; a < shape.num_actions; ++a)
        CHECK(rec.at(1, 2, a) == 0.25);
}

TEST_CASE("bijection roundtrips on 100 seeded instances") {
    const MdpShape shape{3, 2, 3};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SplitMix64 rng(seed * 31 + 1);
        const auto kernel = random_kernel(shape, rng);
        const auto pi = random_policy(shape, rng);
        const auto mu0 = random_initial(shape, rng);

        // policy -> occupancy -> policy at every positive-mass state
        const auto mu = occupancy_from_policy(pi, kernel, mu0);
        const Policy back = policy_from_occupancy(mu);
        for (Index n = 1; n <= shape.horizon; ++n)
            for (Index x = 0; x < shape.num_states; ++x) {
                if (mu.state_marginal(n, x) <= 0.0) continue;
                for (Index a = 0; a < shape.num_actions; ++a)
                    CHECK(std::fabs(back.at(n, x, a) - pi.at(n, x, a)) < 1e-12);
            }

        // occupancy -> policy -> occupancy for flow members
        const auto mu2 = occupancy_from_policy(back, kernel, mu0);
        CHECK(norm_inf_1(mu, mu2) < 1e-9);
    }
}

TEST_CASE("bellman flow check accepts flows and rejects perturbations") {
    const MdpShape shape{3, 2, 3};
    SplitMix64 rng(17);
    const auto kernel = random_kernel(shape, rng);
    const auto pi = random_policy(shape, rng);
    const auto mu0 = random_initial(shape, rng);
    auto mu = occupancy_from_policy(pi, kernel, mu0);
    CHECK(check_bellman_flow(mu, kernel, mu0, 1e-9));

    SUBCASE("perturb one entry and renormalize the slice") {
        mu.at(2, 1, 0) += 1e-3;
        const double s = kernels::sum(mu.slice(2));
        for (double& v : mu.slice(2)) v /= s;
        CHECK_FALSE(check_bellman_flow(mu, kernel, mu0, 1e-6));
    }

    SUBCASE("flow of a different kernel fails against this one") {
        auto other = random_kernel(shape, rng);
        // force a visible gap at one row
        auto row = other.row(1, 0, 0);
        row[0] = 0.9;
        row[1] = 0.1;
        row[2] = 0.0;
        auto base = kernel.row(1, 0, 0);
        REQUIRE(kernels::l1_distance(row, base) > 0.2);
        const auto mu_q = occupancy_from_policy(pi, other, mu0);
        CHECK_FALSE(check_bellman_flow(mu_q, kernel, mu0, 1e-6));
    }
}

TEST_CASE("gamma divergence: identical arguments and the closed-form pair") {
    const MdpShape tiny{1, 2, 1};
    // single state, rho_1 = 1, pi = (1/2, 1/2), pi' = (3/4, 1/4)
    OccupancyMeasure mu(tiny), mu_ref(tiny);
    mu.at(0, 0, 0) = 1.0;
    mu_ref.at(0, 0, 0) = 1.0;
    mu.at(1, 0, 0) = 0.5;
    mu.at(1, 0, 1) = 0.5;
    mu_ref.at(1, 0, 0) = 0.75;
    mu_ref.at(1, 0, 1) = 0.25;
    const double expected = 0.5 * std::log(2.0 / 3.0) + 0.5 * std::log(2.0);
    CHECK(gamma_divergence(mu, mu_ref) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.14384).epsilon(1e-4));
    CHECK(gamma_divergence(mu, mu) == 0.0);
}

TEST_CASE("gamma divergence: zero reference mass is a domain error") {
    const MdpShape tiny{1, 2, 1};
    OccupancyMeasure mu(tiny), mu_ref(tiny);
    mu.at(0, 0, 0) = mu_ref.at(0, 0, 0) = 1.0;
    mu.at(1, 0, 0) = 0.5;
    mu.at(1, 0, 1) = 0.5;
    mu_ref.at(1, 0, 0) = 1.0; // reference policy puts nothing on action 1
    CHECK_THROWS_AS(gamma_divergence(mu, mu_ref), DomainError);
    CHECK_THROWS_WITH(gamma_divergence(mu, mu_ref),
                      doctest::Contains("(n=1, x=0, a=1)"));
}

TEST_CASE("gamma equals its Bregman decomposition on 100 positive pairs") {
    const MdpShape shape{3, 2, 3};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SplitMix64 rng(seed + 1000);
        const auto kernel = random_kernel(shape, rng);
        const auto mu0 = random_initial(shape, rng);
        const auto mu = occupancy_from_policy(random_policy(shape, rng), kernel, mu0);
        const auto mu_ref = occupancy_from_policy(random_policy(shape, rng), kernel, mu0);
        CHECK(gamma_divergence(mu, mu_ref) ==
              doctest::Approx(gamma_divergence_decomposed(mu, mu_ref)).epsilon(1e-10));
    }
}

TEST_CASE("gamma equals the joint-trajectory KL on enumerable instances") {
    const MdpShape shapes[] = {{3, 2, 3}, {2, 3, 2}, {2, 2, 3}};
    for (const auto& shape : shapes) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            SplitMix64 rng(seed * 7 + 5);
            const auto kernel = random_kernel(shape, rng);
            const auto mu0 = random_initial(shape, rng);
            const auto pi = random_policy(shape, rng);
            const auto pi_ref = random_policy(shape, rng);
            const auto mu = occupancy_from_policy(pi, kernel, mu0);
            const auto mu_ref = occupancy_from_policy(pi_ref, kernel, mu0);
            const auto joint = joint_trajectory_distribution(pi, kernel, mu0);
            const auto joint_ref = joint_trajectory_distribution(pi_ref, kernel, mu0);
            CHECK(gamma_divergence(mu, mu_ref) ==
                  doctest::Approx(kl_divergence(joint, joint_ref)).epsilon(1e-9));
        }
    }
}

TEST_CASE("pinsker-type strong convexity on 1000 positive pairs") {
    const MdpShape shape{4, 3, 4};
    SplitMix64 rng(99);
    const auto kernel = random_kernel(shape, rng);
    const auto mu0 = random_initial(shape, rng);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto mu = occupancy_from_policy(random_policy(shape, rng), kernel, mu0);
        const auto mu_ref = occupancy_from_policy(random_policy(shape, rng), kernel, mu0);
        const double gamma = gamma_divergence(mu, mu_ref);
        const double dist = norm_inf_1(mu, mu_ref);
        CHECK(gamma >= 0.5 * dist * dist - 1e-12);
        CHECK(gamma >= 0.0);
    }
}

TEST_CASE("norm_inf_1 basics") {
    const MdpShape shape{3, 2, 2};
    OccupancyMeasure a(shape), b(shape);
    for (Index n = 0; n <= 2; ++n) {
        a.at(n, 0, 0) = 1.0;
        b.at(n, 0, 0) = 1.0;
    }
    CHECK(norm_inf_1(a, a) == 0.0);
    // disjoint diracs at one slice -> 2
    b.at(1, 0, 0) = 0.0;
    b.at(1, 2, 1) = 1.0;
    CHECK(norm_inf_1(a, b) == doctest::Approx(2.0));
    SplitMix64 rng(5);
    const auto x = random_occupancy(shape, rng);
    const auto y = random_occupancy(shape, rng);
    CHECK(norm_inf_1(x, y) <= 2.0 + 1e-12);
    CHECK_THROWS_AS(norm_inf_1(x, OccupancyMeasure(MdpShape{3, 2, 3})), DimensionError);
}

} // TEST_SUITE
