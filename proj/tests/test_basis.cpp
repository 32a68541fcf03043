#include <random>

#include "doctest.h"

#include "stirap/basis.hpp"
#include "stirap/errors.hpp"
#include "stirap/model.hpp"

using namespace stirap;

namespace {

BasisState ket(AtomLevel a, BecLevel b, std::array<std::uint8_t, 4> c = {}, std::array<std::uint8_t, 2> f = {}) {
    return BasisState{a, b, c, f};
}

}  // namespace

TEST_CASE("canonical indices of named states") {
    CHECK(index_of(ket(AtomLevel::ga, BecLevel::G0)).value() == 0);
    CHECK(index_of(ket(AtomLevel::gL, BecLevel::GR)).value() == 10);
    CHECK(index_of(ket(AtomLevel::gR, BecLevel::GL)).value() == 11);
    CHECK(index_of(ket(AtomLevel::e0, BecLevel::G0)).value() == 1);
}

TEST_CASE("label_of endpoints and range") {
    CHECK(label_of(0) == ket(AtomLevel::ga, BecLevel::G0));
    CHECK(label_of(13) == ket(AtomLevel::gR, BecLevel::G0));
    CHECK_THROWS_AS(label_of(14), std::out_of_range);
    CHECK_THROWS_AS(label_of(-1), std::out_of_range);
    CHECK_THROWS_AS(BasisIndex(14), std::out_of_range);
}

TEST_CASE("index_of and label_of are inverse") {
    for (int i = 0; i < kDim; ++i) {
        CHECK(index_of(label_of(i)).value() == i);
        CHECK(label_of(index_of(label_of(i))) == label_of(i));
    }
}

TEST_CASE("inadmissible combinations name the violating field") {
    SUBCASE("two material excitations") {
        try {
            index_of(ket(AtomLevel::e0, BecLevel::EL));
            FAIL("expected BasisError");
        } catch (const BasisError& e) {
            CHECK(e.field() == "bec");
        }
    }
    SUBCASE("two photons") {
        try {
            index_of(ket(AtomLevel::gL, BecLevel::G0, {1, 0, 0, 0}, {1, 0}));
            FAIL("expected BasisError");
        } catch (const BasisError& e) {
            CHECK(e.field() == "photons");
        }
    }
    SUBCASE("double occupation") {
        CHECK_THROWS_AS(index_of(ket(AtomLevel::gL, BecLevel::G0, {2, 0, 0, 0})), BasisError);
    }
    SUBCASE("single excitation outside the chains") {
        // atom in g_L with the photon in the wrong polarization
        CHECK_THROWS_AS(index_of(ket(AtomLevel::gL, BecLevel::G0, {1, 0, 0, 0})), BasisError);
        CHECK_THROWS_AS(index_of(ket(AtomLevel::ga, BecLevel::GR)), BasisError);
    }
}

TEST_CASE("excitation number is one on the chains and zero on the sinks") {
    CHECK(excitation_number(label_of(phi::p1)) == 1);
    CHECK(excitation_number(label_of(phi::p3)) == 1);
    CHECK(excitation_number(label_of(phi::p13)) == 0);
    CHECK(excitation_number(label_of(phi::p14)) == 0);
    for (int i = 0; i < 12; ++i) CHECK(excitation_number(label_of(i)) == 1);
}

TEST_CASE("excitation operator commutes with H(t) for random draws") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Matrix ne = excitation_operator().cast<Complex>();
    for (int draw = 0; draw < 100; ++draw) {
        SystemParams p;
        p.gA = 20.0 * u(rng);
        p.gB = 20.0 * u(rng);
        p.nu = 1000.0 * u(rng);
        p.N = 1 + static_cast<std::int64_t>(1e5 * u(rng));
        p.t0 = 40.0 * u(rng);
        const double t = -50.0 + 120.0 * u(rng);
        const Matrix h = hamiltonian(t, p, default_schedule(p));
        const Matrix comm = ne * h - h * ne;
        CHECK(comm.norm() <= 1e-12 * h.norm());
    }
}

TEST_CASE("labels serialize as phiN") {
    CHECK(label_name(0) == "phi1");
    CHECK(label_name(13) == "phi14");
    CHECK_THROWS_AS(label_name(14), std::out_of_range);
    CHECK(describe(label_of(phi::p11)) == "|g_L,G_R,0000,00>");
}
