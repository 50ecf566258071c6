#include <gtest/gtest.h>

#include "qca/asymptotics.hpp"

using namespace qca;

TEST(LegendreSeqInvMerit, KnownPoints) {
    EXPECT_EQ(legendre_seq_inv_merit(Rat(1, 4)), Rat(1, 6));
    EXPECT_EQ(legendre_seq_inv_merit(Rat(0)), Rat(2, 3)); // 1/6 + 1/2
    EXPECT_EQ(legendre_seq_inv_merit(Rat(-1, 4)), legendre_seq_inv_merit(Rat(1, 4)));
    EXPECT_NEAR(legendre_seq_inv_merit(0.25), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(legendre_seq_inv_merit(0.5), 1.0 / 6.0 + 0.5, 1e-15);
}

TEST(TernaryLegendreSidelobe, KnownPointsAndRelation) {
    EXPECT_EQ(ternary_legendre_sidelobe(Rat(1, 4)), Rat(7, 6));
    EXPECT_EQ(ternary_legendre_sidelobe(Rat(1, 2)), Rat(5, 3)); // 7/6 + 1/2
    for (int k = -8; k <= 8; ++k) {
        Rat s(k, 16);
        EXPECT_EQ(ternary_legendre_sidelobe(s), legendre_seq_inv_merit(s) + Rat(1));
    }
}

TEST(LegendreArrayInvMerit, KnownPointsAndSymmetry) {
    EXPECT_EQ(legendre_array_inv_merit(Rat(1, 4), Rat(1, 4)), Rat(13, 36));
    EXPECT_EQ(legendre_array_inv_merit(Rat(0), Rat(0)), Rat(16, 9)); // (5/3)^2 - 1
    for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b)
            EXPECT_EQ(legendre_array_inv_merit(Rat(a, 8), Rat(b, 8)), legendre_array_inv_merit(Rat(b, 8), Rat(a, 8)));
}

TEST(QrArrayInvMerit, KnownPoints) {
    EXPECT_EQ(qr_array_inv_merit(Rat(1, 4), Rat(1, 4)), Rat(13, 36)); // 1/9 + 1/4
    EXPECT_EQ(qr_array_inv_merit(Rat(0), Rat(0)), Rat(10, 9));
    EXPECT_NEAR(qr_array_inv_merit(0.25, -0.25), 13.0 / 36.0, 1e-15);
}

TEST(Formulas, EvenAndPeriodicInBothArguments) {
    for (int a = -6; a <= 6; ++a) {
        Rat s(a, 12);
        EXPECT_EQ(legendre_seq_inv_merit(s), legendre_seq_inv_merit(-s));
        EXPECT_EQ(legendre_seq_inv_merit(s), legendre_seq_inv_merit(s + Rat(1)));
        EXPECT_EQ(legendre_seq_inv_merit(s), legendre_seq_inv_merit(s - Rat(2)));
        for (int b = -6; b <= 6; ++b) {
            Rat t(b, 12);
            EXPECT_EQ(qr_array_inv_merit(s, t), qr_array_inv_merit(-s, t + Rat(1)));
            EXPECT_EQ(legendre_array_inv_merit(s, t), legendre_array_inv_merit(-s, -t));
        }
    }
}

TEST(ComposeProductMerit, BarkerCompositions) {
    EXPECT_EQ(compose_product_merit(Rat(169, 12), Rat(169, 12)), Rat(28561, 4200));
    EXPECT_NEAR(compose_product_merit(Rat(169, 12), Rat(169, 12)).to_double(), 6.80, 0.005);
    EXPECT_EQ(compose_product_merit(Rat(169, 12), Rat(121, 10)), Rat(20449, 3262));
    EXPECT_NEAR(compose_product_merit(Rat(169, 12), Rat(121, 10)).to_double(), 6.27, 0.005);
    EXPECT_NEAR(compose_product_merit(Rat(121, 10), Rat(121, 10)).to_double(), 5.81, 0.005);
    // F(AxB) -> F(A) as F(B) grows.
    Rat fa(169, 12);
    Rat huge(1000000000);
    EXPECT_NEAR(compose_product_merit(fa, huge).to_double(), fa.to_double(), 1e-6);
    EXPECT_THROW(compose_product_merit(Rat(0), Rat(1)), std::domain_error);
}

TEST(OptimalRotation, CanonicalOptima) {
    auto legendre = optimal_rotation(Family::legendre_array);
    EXPECT_EQ(legendre.f_max, Rat(36, 13));
    ASSERT_EQ(legendre.rotations.size(), 4u);
    auto qr = optimal_rotation(Family::qr_array);
    EXPECT_EQ(qr.f_max, Rat(36, 13));
    for (const auto& r : qr.rotations) {
        EXPECT_EQ(abs(r.s), Rat(1, 4));
        EXPECT_EQ(abs(r.t), Rat(1, 4));
        // Closed under sign flips: the flipped rotation is also present.
        bool found = false;
        for (const auto& other : qr.rotations) found = found || (other.s == -r.s && other.t == -r.t);
        EXPECT_TRUE(found);
        // And each optimum attains the maximum in both formulas.
        EXPECT_EQ(Rat(1) / qr_array_inv_merit(r.s, r.t), Rat(36, 13));
        EXPECT_EQ(Rat(1) / legendre_array_inv_merit(r.s, r.t), Rat(36, 13));
    }
    auto seq = optimal_rotation(Family::legendre_seq);
    EXPECT_EQ(seq.f_max, Rat(6));
    ASSERT_EQ(seq.rotations.size(), 2u);
    EXPECT_EQ(abs(seq.rotations[0].s), Rat(1, 4));
    EXPECT_THROW(optimal_rotation(Family::ternary_legendre_seq), std::domain_error);
}

TEST(GridScan, MinimumMatchesAnalyticOptimum) {
    // 1001-point grid on (-1/2, 1/2] containing 1/4 exactly.
    double best_seq = 1e9, best_leg = 1e9, best_qr = 1e9;
    Rat best_leg_exact(1000);
    for (int k = -500; k <= 500; ++k) {
        Rat s(k, 1000);
        best_seq = std::min(best_seq, legendre_seq_inv_merit(s.to_double()));
        for (int l : {-250, 0, 250, 500}) {
            Rat t(l, 1000);
            Rat leg = legendre_array_inv_merit(s, t);
            if (leg < best_leg_exact) best_leg_exact = leg;
            best_leg = std::min(best_leg, legendre_array_inv_merit(s.to_double(), t.to_double()));
            best_qr = std::min(best_qr, qr_array_inv_merit(s.to_double(), t.to_double()));
        }
    }
    EXPECT_NEAR(best_seq, 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(best_leg, 13.0 / 36.0, 1e-12);
    EXPECT_NEAR(best_qr, 13.0 / 36.0, 1e-12);
    EXPECT_EQ(best_leg_exact, Rat(13, 36));
}

TEST(Dominance, QrNeverWorseThanLegendreArray) {
    // Exact rational scan of a coarse grid; the full 1001^2 scan runs in the
    // acceptance suite. Equality exactly at |s| = |t| = 1/4.
    for (int a = -50; a <= 50; ++a)
        for (int b = -50; b <= 50; ++b) {
            Rat s(a, 100), t(b, 100);
            Rat qr = qr_array_inv_merit(s, t);
            Rat leg = legendre_array_inv_merit(s, t);
            EXPECT_TRUE(qr <= leg);
            bool at_optimum = abs(s) == Rat(1, 4) && abs(t) == Rat(1, 4);
            EXPECT_EQ(qr == leg, at_optimum) << "s=" << s.to_string() << " t=" << t.to_string();
        }
}

TEST(PredictedInvMerit, DispatchesPerFamily) {
    EXPECT_NEAR(predicted_inv_merit(Family::legendre_seq, Rat(1, 4), Rat(0)), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(predicted_inv_merit(Family::ternary_legendre_seq, Rat(1, 4), Rat(0)), 7.0 / 6.0, 1e-15);
    EXPECT_NEAR(predicted_inv_merit(Family::legendre_array, Rat(0), Rat(0)), 16.0 / 9.0, 1e-15);
    EXPECT_NEAR(predicted_inv_merit(Family::qr_array, Rat(0), Rat(0)), 10.0 / 9.0, 1e-15);
}
