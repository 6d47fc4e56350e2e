#include "sca5/rules.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>
#include <vector>

using namespace sca5;

namespace {

int table_index(int w, int x, int y, int z) { return w << 3 | x << 2 | y << 1 | z; }

Ring step_v_starts(const Ring& v, std::vector<int> starts) {
    return step_stochastic_v(v, FiringMask{std::move(starts)});
}

}  // namespace

TEST_CASE("deterministic flux table") {
    // value per (w,x,y,z) from 1111 down to 0000
    const int expected[16] = {0, 0, 0, 0, 0, 0, 1, 0,  // 0000..0111
                              0, 0, 0, 0, 1, 1, 1, 1};  // 1000..1111
    for (int bits = 0; bits < 16; ++bits)
        CHECK(q0_flux(bits >> 3 & 1, bits >> 2 & 1, bits >> 1 & 1, bits & 1) == expected[bits]);
    CHECK(q0_flux(1, 1, 1, 1) == 1);
    CHECK(q0_flux(0, 1, 1, 0) == 1);
    CHECK(q0_flux(0, 0, 0, 0) == 0);
    CHECK(q0_flux(0, 1, 1, 1) == 0);
}

TEST_CASE("stochastic tables") {
    // u-table differs from the deterministic one only at 0111, where it is a.
    for (int bits = 0; bits < 16; ++bits) {
        const int w = bits >> 3 & 1, x = bits >> 2 & 1, y = bits >> 1 & 1, z = bits & 1;
        CHECK(q1_flux(w, x, y, z, 0) == q0_flux(w, x, y, z));
        if (bits != table_index(0, 1, 1, 1))
            CHECK(q1_flux(w, x, y, z, 1) == q0_flux(w, x, y, z));
    }
    CHECK(q1_flux(0, 1, 1, 1, 1) == 1);

    // v-table: 1 at x10 patterns x=0, b at 1110, 0 elsewhere.
    CHECK(q_flux(1, 1, 1, 0, 1) == 1);
    CHECK(q_flux(1, 1, 1, 0, 0) == 0);
    CHECK(q_flux(0, 0, 1, 0, 0) == 1);
    CHECK(q_flux(1, 0, 1, 0, 0) == 1);
    CHECK(q_flux(1, 1, 1, 1, 1) == 0);
    CHECK(q_flux(0, 1, 1, 0, 1) == 0);
}

TEST_CASE("deterministic u-step moves all but the leftmost of a block") {
    CHECK(step_deterministic_u(Ring::from_string("01110000")).to_string() == "01011000");
    CHECK(step_deterministic_u(Ring::zeros(10)) == Ring::zeros(10));
    CHECK(step_deterministic_u(Ring::ones(10)) == Ring::ones(10));
    // 0110: both particles move
    CHECK(step_deterministic_u(Ring::from_string("011000")).to_string() == "001100");
    // isolated particle remains
    CHECK(step_deterministic_u(Ring::from_string("010000")).to_string() == "010000");
}

TEST_CASE("v-step on the worked transition row") {
    const Ring v = Ring::from_string("0011100111");
    const auto starts = occurrence_starts(v, "1110");
    REQUIRE(starts == std::vector<int>{2, 7});

    CHECK(step_v_starts(v, {}) == v);  // no isolated particles, nothing fires
    CHECK(step_v_starts(v, {2}).to_string() == "0011010111");
    CHECK(step_v_starts(v, {7}).canonical_rotation().to_string() == "0011010111");
    CHECK(step_v_starts(v, {2, 7}).canonical_rotation().to_string() == "0101101011");
    CHECK_THROWS_AS(step_v_starts(v, {3}), std::invalid_argument);
}

TEST_CASE("frozen and isolated motion") {
    // 0110 blocks persist under any mask
    const Ring frozen = Ring::from_string("01100110");
    CHECK(occurrence_starts(frozen, "1110").empty());
    CHECK(step_v_starts(frozen, {}) == frozen);
    // an isolated particle always advances
    CHECK(step_v_starts(Ring::from_string("001000"), {}).to_string() == "000100");
    // wrap-around hop of an isolated particle
    CHECK(step_v_starts(Ring::from_string("100000"), {}).to_string() == "010000");
    // a block wrapping the seam only moves when its 1110 occurrence fires
    const Ring wrap_block = Ring::from_string("100011");
    REQUIRE(occurrence_starts(wrap_block, "1110") == std::vector<int>{4});
    CHECK(step_v_starts(wrap_block, {}) == wrap_block);
    CHECK(step_v_starts(wrap_block, {4}).to_string() == "010011");
}

TEST_CASE("sampled steps at the degenerate noise levels") {
    const Ring v = Ring::from_string("0011100111");
    Rng rng(1);
    const auto all_fire = step_sampled_v(v, NoiseParam{Rational(1)}, rng);
    CHECK(all_fire.next == step_v_starts(v, {2, 7}));
    CHECK(all_fire.fired == 2);
    const auto none_fire = step_sampled_v(v, NoiseParam{Rational(0)}, rng);
    CHECK(none_fire.next == step_v_starts(v, {}));
    CHECK(none_fire.fired == 0);
    CHECK(none_fire.moved == 0);
}

TEST_CASE("sampled trajectories are reproducible") {
    const Ring v0 = Ring::from_string("0011011011101111");
    const NoiseParam alpha{Rational(1, 2)};
    Rng a(42), b(42);
    Ring xa = v0, xb = v0;
    for (int n = 0; n < 100; ++n) {
        xa = step_sampled_v(xa, alpha, a).next;
        xb = step_sampled_v(xb, alpha, b).next;
        REQUIRE(xa == xb);
    }
}

TEST_CASE("u and v trajectories are conjugate under coupled noise") {
    const int L = 10;
    const Ring u0 = Ring::from_string("0001101111");
    Ring u = u0;
    Ring v = transform_u_to_v(u0, 0);
    Rng rng(2024);
    const NoiseParam alpha{Rational(1, 2)};
    for (long n = 0; n < 50; ++n) {
        // draw one b per 1110 occurrence of v; the u-system runs a = 1 - b at
        // the mirrored 0111 window
        std::vector<int> v_fires, u_a_ones;
        for (int s : occurrence_starts(v, firing_pattern_v)) {
            const bool b = bernoulli(rng, alpha);
            if (b)
                v_fires.push_back(s);
            else
                u_a_ones.push_back(int(((n - s - 3) % L + L) % L));
        }
        v = step_stochastic_v(v, FiringMask{v_fires});
        u = step_stochastic_u(u, u_a_ones);
        REQUIRE(transform_u_to_v(u, n + 1) == v);
    }
}

TEST_CASE("coordinate transform is an involution") {
    const Ring u = Ring::from_string("0010110111");
    for (long n : {0L, 1L, 5L, 9L, 10L, 23L}) {
        const Ring v = transform_u_to_v(u, n);
        CHECK(transform_u_to_v(v, n) == u);
    }
    // n = 0 is the pure reflection j -> -j
    const Ring v0 = transform_u_to_v(u, 0);
    for (int j = 0; j < u.length(); ++j) CHECK(v0.bit(j) == u.bit(-j));
}

TEST_CASE("single-step distribution matches the exact row probabilities") {
    const Ring v = Ring::from_string("0011100111");
    const NoiseParam alpha{Rational(1, 2)};
    Rng rng(20240810);
    const int samples = 100000;
    std::map<std::string, int> histogram;
    for (int i = 0; i < samples; ++i)
        ++histogram[step_sampled_v(v, alpha, rng).next.canonical_rotation().to_string()];

    // exact class probabilities: (1-a)^2 self, 2a(1-a) single hop, a^2 double
    const auto check3sigma = [&](const std::string& cls, double p) {
        const double sigma = std::sqrt(p * (1 - p) * samples);
        CHECK(std::abs(histogram[cls] - p * samples) <= 3 * sigma);
    };
    check3sigma("0011100111", 0.25);
    check3sigma("0011010111", 0.5);
    check3sigma("0101101011", 0.25);
}
