#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "tmsr/errors.h"
#include "tmsr/signal_model.h"
#include "tmsr/units.h"

namespace tmsr {
namespace {

const double kOmegaA = hz_to_angular(7.2284e9);
const double kOmegaB = hz_to_angular(9.7056e9);

TEST(EncodeInput, SymmetricAboutPlusQ) {
    const double theta = deg_to_rad(53.7);
    const auto g = encode_input(90.0, theta, QubitState::ground);
    const auto e = encode_input(90.0, theta, QubitState::excited);
    EXPECT_NEAR(g.i_a, 4.2847878540290792, 1e-13);
    EXPECT_NEAR(g.q_a, 8.4640766209885458, 1e-13);
    EXPECT_EQ(e.i_a, -g.i_a);
    EXPECT_EQ(e.q_a, g.q_a);
    EXPECT_EQ(g.i_b, 0.0);
    EXPECT_EQ(g.q_b, 0.0);
    EXPECT_NEAR(g.i_a * g.i_a + g.q_a * g.q_a, 90.0, 1e-12);
}

TEST(EncodeInput, ZeroPhotonsIsOrigin) {
    EXPECT_EQ(encode_input(0.0, 1.0, QubitState::ground), QuadMeans{});
    EXPECT_THROW(encode_input(-1.0, 1.0, QubitState::ground), DomainError);
}

TEST(DispersiveInput, ResonatorLoss) {
    const auto in = DispersiveInput::from_resonator(100.0, 0.9, 0.5, QubitState::excited);
    EXPECT_DOUBLE_EQ(in.nbar_in, 90.0);
    EXPECT_EQ(in.state, QubitState::excited);
    EXPECT_THROW(DispersiveInput::from_resonator(100.0, 0.0, 0.5, QubitState::ground), DomainError);
    EXPECT_THROW(DispersiveInput::from_resonator(100.0, 1.01, 0.5, QubitState::ground), DomainError);
}

TEST(OutputChain, ConversionFactor) {
    const OutputChain chain(3.4e6, 28.2, kOmegaA, 1e-6);
    EXPECT_NEAR(chain.photon_energy(), 4.7897165440840087e-24, 1e-36);
    EXPECT_NEAR(chain.conversion_factor() / 4175612443016672.2, 1.0, 1e-12);

    const OutputChain doubled(3.4e6, 28.2, kOmegaA, 2e-6);
    EXPECT_NEAR(doubled.conversion_factor() / chain.conversion_factor(), 2.0, 1e-14);
}

TEST(OutputChain, RejectsInvalidParameters) {
    EXPECT_THROW(OutputChain(0.0, 1.0, kOmegaA, 1e-6), DomainError);
    EXPECT_THROW(OutputChain(1.0, -1.0, kOmegaA, 1e-6), DomainError);
    EXPECT_THROW(OutputChain(1.0, 1.0, 0.0, 1e-6), DomainError);
    EXPECT_THROW(OutputChain(1.0, 1.0, kOmegaA, 0.0), DomainError);
    EXPECT_THROW(OutputChain(1.0, 1.0, kOmegaA, 1e-6, -50.0), DomainError);
}

TEST(OutputChain, SystemTemperatures) {
    EXPECT_NEAR(OutputChain(3.4e6, 28.2, kOmegaA, 1e-6).system_temperature(), 9.7834279692285271, 1e-10);
    EXPECT_NEAR(OutputChain(1.7e7, 13.4, kOmegaB, 1e-6).system_temperature(), 6.2420458343543987, 1e-10);
    EXPECT_NEAR(noise_photons_from_temperature(9.7834279692285271, kOmegaA), 28.2, 1e-10);
}

TEST(Referral, RoomTemperatureToAmplifierOutput) {
    const OutputChain chain(3.4e6, 28.2, kOmegaA, 1e-6);
    const auto p = refer_to_amplifier_output({1844.0, 0.0}, chain);
    EXPECT_NEAR(p.i, 1.000049410544005, 1e-12);
    EXPECT_EQ(p.q, 0.0);
}

TEST(Referral, RoundTrips) {
    const OutputChain chain(1.7e7, 13.4, kOmegaB, 1e-6);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-1e-3, 1e-3);
    for (int k = 0; k < 100; ++k) {
        const IqPair v{u(gen), u(gen)};
        const auto back = photon_units_to_volts(volts_to_photon_units(v, chain), chain);
        EXPECT_NEAR(back.i, v.i, 1e-15);
        EXPECT_NEAR(back.q, v.q, 1e-15);
        const auto there = refer_to_room_temperature(refer_to_amplifier_output(v, chain), chain);
        EXPECT_NEAR(there.i, v.i, 1e-15);
    }
}

TEST(Alignment, MovesMidpointOntoPlusQ) {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int k = 0; k < 100; ++k) {
        const IqPair g{u(gen), u(gen)};
        const IqPair e{u(gen), u(gen)};
        const double angle = alignment_angle(g, e);
        const auto rg = rotate(g, angle);
        const auto re = rotate(e, angle);
        const double mi = 0.5 * (rg.i + re.i);
        const double mq = 0.5 * (rg.q + re.q);
        EXPECT_NEAR(mi, 0.0, 1e-12);
        EXPECT_GT(mq, 0.0);
    }
    EXPECT_THROW(alignment_angle({1.0, 1.0}, {-1.0, -1.0}), DomainError);
}

TEST(ProcessRaw, RecoversAmplifierPlaneQuadratures) {
    const ProcessingFrame frame{OutputChain(3.4e6, 28.2, kOmegaA, 1e-6), OutputChain(1.7e7, 13.4, kOmegaB, 1e-6),
                                0.3, -1.1};
    const QuadVector expected{6.06, 11.97, -4.28, 8.46};

    // Build the voltages the digitizer would record for `expected`.
    auto to_volts = [](IqPair amp, const OutputChain &chain, double rotation) {
        return rotate(photon_units_to_volts(refer_to_room_temperature(amp, chain), chain), -rotation);
    };
    const auto va = to_volts({expected.i_a, expected.q_a}, frame.chain_a, frame.rotation_a);
    const auto vb = to_volts({expected.i_b, expected.q_b}, frame.chain_b, frame.rotation_b);

    const auto got = process_raw({va.i, va.q, vb.i, vb.q}, frame);
    EXPECT_NEAR(got.i_a, expected.i_a, 1e-10);
    EXPECT_NEAR(got.q_a, expected.q_a, 1e-10);
    EXPECT_NEAR(got.i_b, expected.i_b, 1e-10);
    EXPECT_NEAR(got.q_b, expected.q_b, 1e-10);
}

TEST(Units, Conversions) {
    EXPECT_NEAR(db_to_linear(3.0), 1.9952623149688795, 1e-15);
    EXPECT_NEAR(linear_to_db(db_to_linear(17.3)), 17.3, 1e-13);
    EXPECT_NEAR(rad_to_deg(deg_to_rad(53.7)), 53.7, 1e-13);
}

}  // namespace
}  // namespace tmsr
