// Prints the merit factors of a few classical arrays next to the product
// composition rule and the asymptotic optimum.

#include <cstdio>

#include "qca/qca.hpp"

int main() {
    using namespace qca;

    TernaryArray barker13(13, 1, {1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1});
    TernaryArray barker11(11, 1, {1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1});

    auto f13 = merit_factor(barker13).merit;
    auto f11 = merit_factor(barker11).merit;
    std::printf("Barker-13:            F = %s = %.4f\n", f13.to_string().c_str(), f13.to_double());
    std::printf("Barker-11:            F = %s = %.4f\n", f11.to_string().c_str(), f11.to_double());

    auto product = merit_factor(product_array(barker13, barker11)).merit;
    auto composed = compose_product_merit(f13, f11);
    std::printf("Barker-13 x Barker-11: F = %s = %.4f (composition rule: %s)\n", product.to_string().c_str(),
                product.to_double(), composed.to_string().c_str());

    PrimeModulus p(101);
    TernaryArray rotated = rotate(legendre_sequence(p), Rotation(Rat(1, 4), Rat(0)));
    auto f_leg = merit_factor(rotated).merit;
    std::printf("Legendre-101 at s=1/4: F = %.4f (limit 6)\n", f_leg.to_double());

    TernaryArray qr = qr_array(p, make_ext_field(p), 1);
    auto f_qr = merit_factor(rotate(qr, Rotation(Rat(1, 4), Rat(1, 4)))).merit;
    std::printf("QR-101 at (1/4,1/4):   F = %.4f (limit 36/13 = %.4f)\n", f_qr.to_double(), 36.0 / 13.0);
    return 0;
}
