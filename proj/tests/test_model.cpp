#include <cmath>
#include <random>

#include "doctest.h"

#include "stirap/basis.hpp"
#include "stirap/errors.hpp"
#include "stirap/model.hpp"

using namespace stirap;
using doctest::Approx;

namespace {

// Constant drives, for evaluating H and D at prescribed Rabi frequencies.
PulseSchedule constant(double omA, double omB) {
    return PulseSchedule{[omA](double) { return omA; }, [omB](double) { return omB; }, "constant"};
}

// Operator norm via the largest singular value.
double op_norm(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues()(0); }

// Null vector of H restricted to the L<->R symmetric sector, excluding the
// decoupled sinks. Computed from an SVD of H stacked with the constraint rows.
Vector symmetric_null_vector(const Matrix& h) {
    using namespace phi;
    Eigen::Matrix<Complex, kDim + 7, kDim> a = Eigen::Matrix<Complex, kDim + 7, kDim>::Zero();
    a.topRows(kDim) = h;
    const std::array<std::pair<int, int>, 5> mirror = {{{p3, p4}, {p5, p6}, {p7, p8}, {p9, p10}, {p11, p12}}};
    for (std::size_t k = 0; k < mirror.size(); ++k) {
        a(kDim + static_cast<int>(k), mirror[k].first) = 1.0;
        a(kDim + static_cast<int>(k), mirror[k].second) = -1.0;
    }
    a(kDim + 5, p13) = 1.0;
    a(kDim + 6, p14) = 1.0;
    Eigen::JacobiSVD<decltype(a)> svd(a, Eigen::ComputeFullV);
    Vector v = svd.matrixV().col(kDim - 1);
    CHECK(svd.singularValues()(kDim - 1) < 1e-12 * svd.singularValues()(0));
    CHECK(svd.singularValues()(kDim - 2) > 1e-6 * svd.singularValues()(0));  // one-dimensional
    return v * (std::abs(v(p1)) / v(p1));                                    // fix the phase: <phi1|v> > 0
}

}  // namespace

TEST_CASE("Omega_A envelope") {
    const SystemParams p = SystemParams::reference();
    CHECK(pulse_omega_A(20.0, p) == Approx(1.0).epsilon(1e-15));
    CHECK(pulse_omega_A(0.0, p) == Approx(0.1353352832366127).epsilon(1e-14));
    CHECK(pulse_omega_A(-1e6, p) == 0.0);
}

TEST_CASE("Omega_B envelope and the pulse-ratio limits") {
    SystemParams p = SystemParams::reference();
    CHECK(pulse_omega_B(0.0, p) == Approx(1.0676676416183064).epsilon(1e-14));
    // late-time ratio Omega_B / Omega_A -> 1/2
    CHECK(pulse_omega_B(200.0, p) / pulse_omega_A(200.0, p) == Approx(0.5).epsilon(1e-12));
    // early-time ratio gB Omega_A / (gA Omega_B) -> 0
    CHECK(p.gB * pulse_omega_A(-100.0, p) / (p.gA * pulse_omega_B(-100.0, p)) < 1e-9);

    SUBCASE("compensated second lobe follows the effective coupling") {
        p.apply_overlap = true;
        p.compensate_drive = true;
        const double lobe = p.gB_eff() / (2.0 * p.gA);
        CHECK(pulse_omega_B(200.0, p) / pulse_omega_A(200.0, p) == Approx(lobe).epsilon(1e-12));
        p.compensate_drive = false;
        CHECK(pulse_omega_B(200.0, p) / pulse_omega_A(200.0, p) == Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("Hamiltonian matrix elements") {
    using namespace phi;
    const SystemParams p = SystemParams::reference();
    const PulseSchedule s = default_schedule(p);
    const Matrix h = hamiltonian(p.t0, p, s);

    CHECK(h(p2, p1).real() == Approx(1.0));
    CHECK(h(p5, p3).real() == Approx(500.0));
    CHECK(h(p2, p3).real() == 5.0);
    CHECK(h(p2, p4).real() == 5.0);
    CHECK(h(p9, p7).real() == Approx(500.0));  // sqrt(1e4) * 5
    CHECK(h(p10, p8).real() == Approx(500.0));
    CHECK(h(p9, p11).real() == Approx(100.0 * pulse_omega_B(p.t0, p)));
    CHECK(h(p1, p11) == Complex{});
    CHECK(h.row(p13).isZero(0.0));
    CHECK(h.row(p14).isZero(0.0));
    CHECK(h.col(p13).isZero(0.0));
    CHECK(h == h.adjoint());

    int nonzero = 0;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) nonzero += h(i, j) != Complex{} ? 1 : 0;
    CHECK(nonzero == 22);
}

TEST_CASE("Hamiltonian is exactly Hermitian for random draws") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int draw = 0; draw < 200; ++draw) {
        SystemParams p;
        p.gA = 10 * u(rng);
        p.gB = 10 * u(rng);
        p.nu = 800 * u(rng);
        const Matrix h = hamiltonian(-50 + 120 * u(rng), p, default_schedule(p));
        CHECK(h == h.adjoint());
    }
}

TEST_CASE("dark state with Omega_A = 0 is phi1") {
    SystemParams p;
    p.gA = p.gB = 5.0;
    const DarkState d = dark_state(0.0, p, constant(0.0, 1.0));
    CHECK(d.amplitudes.amplitudes() == StateVector::basis(phi::p1).amplitudes());
}

TEST_CASE("dark state at g = 5, Omega_A = 1, Omega_B = 1/2") {
    using namespace phi;
    SystemParams p;
    p.gA = p.gB = 5.0;
    const PulseSchedule s = constant(1.0, 0.5);
    const DarkState d = dark_state(0.0, p, s);
    const Vector& v = d.amplitudes.amplitudes();

    const double r = std::sqrt(76.0);
    CHECK(v(p1).real() == Approx(5.0 / r));
    CHECK(v(p1).real() == Approx(0.5735393346764044));
    CHECK(v(p3).real() == Approx(-0.5 / r));
    CHECK(v(p4).real() == Approx(-0.5 / r));
    CHECK(v(p7).real() == Approx(0.5 / r));
    CHECK(v(p8).real() == Approx(0.5 / r));
    CHECK(v(p11).real() == Approx(-5.0 / r));
    CHECK(v(p12).real() == Approx(-5.0 / r));
    CHECK(d.normalization == Approx(1.0 / r));
    for (int i : {p2, p5, p6, p9, p10, p13, p14}) CHECK(v(i) == Complex{});

    // independent route: null space of the assembled H
    const Vector oracle = symmetric_null_vector(hamiltonian(0.0, p, s));
    CHECK((oracle - v).norm() < 1e-12);
}

TEST_CASE("dark-state nullity over random draws") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int draw = 0; draw < 1000; ++draw) {
        SystemParams p;
        p.gA = 20.0 * u(rng);
        p.gB = 20.0 * u(rng);
        p.nu = 1000.0 * u(rng);
        p.N = 1 + static_cast<std::int64_t>(2e5 * u(rng));
        p.tau = 0.5 + 2.0 * u(rng);
        p.t0 = 40.0 * u(rng);
        p.apply_overlap = u(rng) < 0.5;
        const double t = -50.0 + 120.0 * u(rng);
        const PulseSchedule s = default_schedule(p);
        const DarkState d = dark_state(t, p, s);
        const Matrix h = hamiltonian(t, p, s);
        CHECK((h * d.amplitudes.amplitudes()).norm() <= 1e-10 * std::max(1.0, op_norm(h)));
        CHECK(d.amplitudes.is_normalized(1e-12));
    }
}

TEST_CASE("dark state is undefined when every coupling vanishes") {
    SystemParams p;
    p.gA = p.gB = 0.0;
    CHECK_THROWS_AS(dark_state(0.0, p, constant(0.0, 0.0)), DomainError);
}

TEST_CASE("strong coupling suppresses photon admixture in the dark state") {
    using namespace phi;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int draw = 0; draw < 500; ++draw) {
        const double omA = u(rng), omB = u(rng);
        SystemParams p;
        p.gA = 20.0 * std::max(omA, omB) * (1.0 + 2.0 * u(rng));
        p.gB = 20.0 * std::max(omA, omB) * (1.0 + 2.0 * u(rng));
        const Vector v = dark_state(0.0, p, constant(omA, omB)).amplitudes.amplitudes();
        const double photons = std::norm(v(p3)) + std::norm(v(p4)) + std::norm(v(p7)) + std::norm(v(p8));
        const double ground = std::norm(v(p1)) + std::norm(v(p11)) + std::norm(v(p12));
        CHECK(photons <= ground / 400.0);
    }
}

TEST_CASE("late-time dark state is the equal three-way superposition") {
    using namespace phi;
    for (std::int64_t n : {std::int64_t{1}, std::int64_t{2500}, std::int64_t{10000}, std::int64_t{200000}}) {
        for (bool overlap : {false, true}) {
            SystemParams p;
            p.gA = p.gB = 20.0;
            p.N = n;
            p.apply_overlap = overlap;
            p.compensate_drive = true;
            const Vector v = dark_state(70.0, p, default_schedule(p)).amplitudes.amplitudes();
            CHECK(std::abs(std::abs(v(p1)) - std::abs(v(p11))) <= 1e-2);
            CHECK(std::abs(std::abs(v(p1)) - std::abs(v(p12))) <= 1e-2);
            CHECK(std::abs(v(p1)) == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-2));
        }
    }
}

TEST_CASE("target state") {
    const StateVector t = target_state();
    CHECK(t.norm() == Approx(1.0).epsilon(1e-15));
    CHECK(t[phi::p1].real() == Approx(0.5773502691896258));
    CHECK(t[phi::p11].real() == Approx(-0.5773502691896258));
    CHECK(t[phi::p12].real() == Approx(-0.5773502691896258));
    CHECK(t[phi::p2] == Complex{});
}

TEST_CASE("collapse operators") {
    using namespace phi;
    SystemParams p = SystemParams::reference();

    SUBCASE("zero rates give thirteen zero operators") {
        const auto ops = collapse_operators(p);
        REQUIRE(ops.size() == 13);
        for (const auto& op : ops) CHECK(op.matrix.isZero(0.0));
    }

    SUBCASE("branching of atom A at gamma = 0.4 g") {
        p.gamma = 0.4 * p.gA;
        for (const auto& op : collapse_operators(p)) {
            if (op.channel_label.rfind("atomA_", 0) == 0) CHECK(op.matrix.cwiseAbs2().sum() == Approx(2.0 / 3.0));
            if (op.channel_label.rfind("bec_", 0) == 0) CHECK(op.matrix.cwiseAbs2().sum() == Approx(1.0));
        }
    }

    SUBCASE("atomA_e0_to_ga acts on phi2 and annihilates phi1") {
        p.gamma = 2.0;
        for (const auto& op : collapse_operators(p)) {
            if (op.channel_label != "atomA_e0_to_ga") continue;
            const Vector out = op.matrix * StateVector::basis(p2).amplitudes();
            CHECK((out - std::sqrt(2.0 / 3.0) * StateVector::basis(p1).amplitudes()).norm() < 1e-15);
            CHECK((op.matrix * StateVector::basis(p1).amplitudes()).isZero(0.0));
        }
    }

    SUBCASE("jumps match the basis bookkeeping and close over the basis") {
        p.gamma = 1.0;
        p.kappa_cav = 2.0;
        p.kappa_fib = 3.0;
        for (const auto& op : collapse_operators(p)) {
            // at most one nonzero per column, sinks annihilated
            for (int c = 0; c < kDim; ++c) {
                int nz = 0;
                for (int r = 0; r < kDim; ++r) nz += op.matrix(r, c) != Complex{} ? 1 : 0;
                CHECK(nz <= 1);
            }
            CHECK(op.matrix.col(p13).isZero(0.0));
            CHECK(op.matrix.col(p14).isZero(0.0));

            // The label of the destination is the source label with the jump applied.
            BasisState from = label_of(op.source);
            const std::string& l = op.channel_label;
            if (l.rfind("cavity_", 0) == 0) {
                const int mode = (l[7] == 'A' ? 0 : 2) + (l[9] == 'L' ? 0 : 1);
                CHECK(from.cavity_photons[static_cast<std::size_t>(mode)] == 1);
                from.cavity_photons[static_cast<std::size_t>(mode)] = 0;
            } else if (l.rfind("fiber_", 0) == 0) {
                const int mode = l[6] == 'L' ? 0 : 1;
                CHECK(from.fiber_photons[static_cast<std::size_t>(mode)] == 1);
                from.fiber_photons[static_cast<std::size_t>(mode)] = 0;
            } else if (l.rfind("atomA_", 0) == 0) {
                CHECK(from.atom_a == AtomLevel::e0);
                from.atom_a = l.ends_with("ga") ? AtomLevel::ga : l.ends_with("gL") ? AtomLevel::gL : AtomLevel::gR;
            } else {
                CHECK(from.bec == (l.find("EL") != std::string::npos ? BecLevel::EL : BecLevel::ER));
                from.bec = l.ends_with("GL") ? BecLevel::GL : l.ends_with("GR") ? BecLevel::GR : BecLevel::G0;
            }
            CHECK(index_of(from).value() == op.destination);
        }
    }
}

TEST_CASE("overlap factor mu(N)") {
    CHECK(overlap_mu(1) == Approx(0.7059046996585304).epsilon(1e-14));
    CHECK(overlap_mu(10000) == Approx(0.67957).epsilon(1e-5));
    double prev = overlap_mu(1);
    for (std::int64_t n = 2; n < 100000000; n *= 3) {
        const double mu = overlap_mu(n);
        CHECK(mu < prev);
        prev = mu;
    }
    CHECK_THROWS_AS(overlap_mu(1000000000), DomainError);
    CHECK_THROWS_AS(overlap_mu(0), DomainError);
}

TEST_CASE("parameter validation names the violated field") {
    SystemParams p;
    p.gamma = -1.0;
    try {
        p.validate();
        FAIL("expected ParamError");
    } catch (const ParamError& e) {
        CHECK(std::string(e.what()) == "gamma ≥ 0");
    }
    p = SystemParams{};
    p.branching_A = {0.5, 0.5, 0.5};
    CHECK_THROWS_AS(p.validate(), ParamError);
    p = SystemParams{};
    p.N = 0;
    CHECK_THROWS_AS(p.validate(), ParamError);
    p = SystemParams{};
    p.tau = 0.0;
    CHECK_THROWS_AS(p.validate(), ParamError);
    CHECK_NOTHROW(SystemParams::reference().validate());
}
