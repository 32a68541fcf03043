#include "stirap/basis.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "stirap/errors.hpp"

namespace stirap {
namespace {

constexpr BasisState make(AtomLevel a, BecLevel b, std::array<std::uint8_t, 4> c = {},
                          std::array<std::uint8_t, 2> f = {}) {
    return BasisState{a, b, c, f};
}

using A = AtomLevel;
using B = BecLevel;

// Canonical ordering. The cavity photon polarization in each chain is the one
// that the BEC-side coupling |E_k><G_0| a_{B,k} absorbs, so each chain is
// connected end to end.
const std::array<BasisState, kDim> kTable = {
    make(A::ga, B::G0),                          // phi1
    make(A::e0, B::G0),                          // phi2
    make(A::gL, B::G0, {0, 1, 0, 0}),            // phi3  photon in (A,R)
    make(A::gR, B::G0, {1, 0, 0, 0}),            // phi4  photon in (A,L)
    make(A::gL, B::G0, {0, 0, 0, 0}, {0, 1}),    // phi5  fiber R
    make(A::gR, B::G0, {0, 0, 0, 0}, {1, 0}),    // phi6  fiber L
    make(A::gL, B::G0, {0, 0, 0, 1}),            // phi7  photon in (B,R)
    make(A::gR, B::G0, {0, 0, 1, 0}),            // phi8  photon in (B,L)
    make(A::gL, B::ER),                          // phi9
    make(A::gR, B::EL),                          // phi10
    make(A::gL, B::GR),                          // phi11
    make(A::gR, B::GL),                          // phi12
    make(A::gL, B::G0),                          // phi13
    make(A::gR, B::G0),                          // phi14
};

int photon_count(const BasisState& s) {
    return std::accumulate(s.cavity_photons.begin(), s.cavity_photons.end(), 0) +
           std::accumulate(s.fiber_photons.begin(), s.fiber_photons.end(), 0);
}

bool bec_excited(BecLevel b) { return b == B::EL || b == B::ER; }

}  // namespace

BasisIndex::BasisIndex(int value) : value_(value) {
    if (value < 0 || value >= kDim) throw std::out_of_range("basis index " + std::to_string(value) + " outside [0, 13]");
}

BasisIndex index_of(const BasisState& state) {
    for (std::uint8_t n : state.cavity_photons)
        if (n > 1) throw BasisError("cavity_photons", "occupation must be 0 or 1");
    for (std::uint8_t n : state.fiber_photons)
        if (n > 1) throw BasisError("fiber_photons", "occupation must be 0 or 1");
    if (photon_count(state) > 1) throw BasisError("photons", "total photon number exceeds 1");

    const bool atom_excited = state.atom_a == A::e0;
    const int material = (atom_excited ? 1 : 0) + (bec_excited(state.bec) ? 1 : 0);
    if (material > 1) throw BasisError("bec", "two material excitations (atom A and BEC both excited)");
    if (photon_count(state) == 1 && material == 1)
        throw BasisError(atom_excited ? "atom_a" : "bec", "excited level together with a photon");
    if (excitation_number(state) > 1) throw BasisError("bec", "more than one excitation in the combination");

    const auto it = std::find(kTable.begin(), kTable.end(), state);
    if (it == kTable.end()) throw BasisError("atom_a", "combination " + describe(state) + " is not in the simulation basis");
    return BasisIndex(static_cast<int>(it - kTable.begin()));
}

BasisState label_of(int index) {
    if (index < 0 || index >= kDim) throw std::out_of_range("basis index " + std::to_string(index) + " outside [0, 13]");
    return kTable[static_cast<std::size_t>(index)];
}

int excitation_number(const BasisState& s) {
    const int atom = (s.atom_a == A::ga || s.atom_a == A::e0) ? 1 : 0;
    const int bec = (s.bec == B::G0) ? 0 : 1;
    return atom + photon_count(s) + bec;
}

RealMatrix excitation_operator() {
    RealMatrix n = RealMatrix::Zero();
    for (int i = 0; i < kDim; ++i) n(i, i) = excitation_number(kTable[static_cast<std::size_t>(i)]);
    return n;
}

std::string label_name(int index) {
    if (index < 0 || index >= kDim) throw std::out_of_range("basis index " + std::to_string(index) + " outside [0, 13]");
    return "phi" + std::to_string(index + 1);
}

std::string_view to_string(AtomLevel level) {
    switch (level) {
        case A::ga: return "g_a";
        case A::e0: return "e_0";
        case A::gL: return "g_L";
        case A::gR: return "g_R";
    }
    return "?";
}

std::string_view to_string(BecLevel level) {
    switch (level) {
        case B::G0: return "G_0";
        case B::GL: return "G_L";
        case B::GR: return "G_R";
        case B::EL: return "E_L";
        case B::ER: return "E_R";
    }
    return "?";
}

std::string describe(const BasisState& s) {
    std::string out = "|";
    out += to_string(s.atom_a);
    out += ',';
    out += to_string(s.bec);
    out += ',';
    for (auto n : s.cavity_photons) out += static_cast<char>('0' + n);
    out += ',';
    for (auto n : s.fiber_photons) out += static_cast<char>('0' + n);
    out += '>';
    return out;
}

}  // namespace stirap
