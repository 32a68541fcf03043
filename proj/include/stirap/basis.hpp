#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "stirap/types.hpp"

namespace stirap {

/// Internal state of the single atom in cavity A.
enum class AtomLevel : std::uint8_t { ga, e0, gL, gR };

/// Collective state of the condensate in cavity B.
enum class BecLevel : std::uint8_t { G0, GL, GR, EL, ER };

/// Photon-mode order inside BasisState::cavity_photons.
enum class CavityMode : std::uint8_t { AL = 0, AR = 1, BL = 2, BR = 3 };
/// Photon-mode order inside BasisState::fiber_photons.
enum class FiberMode : std::uint8_t { L = 0, R = 1 };

/// One product state: atom A level, BEC level, four cavity-mode and two
/// fiber-mode occupations. Only the fourteen members of the simulation basis
/// map to an index; see index_of().
struct BasisState {
    AtomLevel atom_a = AtomLevel::ga;
    BecLevel bec = BecLevel::G0;
    std::array<std::uint8_t, 4> cavity_photons{};  // (A,L) (A,R) (B,L) (B,R)
    std::array<std::uint8_t, 2> fiber_photons{};   // (f,L) (f,R)

    friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Strongly-typed position in the canonical ordering phi1..phi14 -> 0..13.
class BasisIndex {
public:
    explicit BasisIndex(int value);
    int value() const noexcept { return value_; }
    operator int() const noexcept { return value_; }
    friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;

private:
    int value_;
};

// Named indices. The two chains are
//   phi2 -> phi3 -> phi5 -> phi7 -> phi9  -> phi11   (atom ends in g_L, BEC in G_R)
//   phi2 -> phi4 -> phi6 -> phi8 -> phi10 -> phi12   (atom ends in g_R, BEC in G_L)
// with photon-loss sinks phi13 (g_L) and phi14 (g_R).
namespace phi {
inline constexpr int p1 = 0, p2 = 1, p3 = 2, p4 = 3, p5 = 4, p6 = 5, p7 = 6,
                     p8 = 7, p9 = 8, p10 = 9, p11 = 10, p12 = 11, p13 = 12, p14 = 13;
}

/// Canonical index of an admissible state; throws BasisError naming the
/// violating field otherwise.
BasisIndex index_of(const BasisState& state);

/// Inverse of index_of; throws std::out_of_range for indices outside [0, 13].
BasisState label_of(int index);

/// Conserved excitation counter: [atom in g_a or e0] + photons + [BEC excited or in G_L/G_R].
/// Equals 1 on phi1..phi12 and 0 on the sinks.
int excitation_number(const BasisState& state);

/// Diagonal matrix of excitation_number over the basis.
RealMatrix excitation_operator();

/// "phi1" .. "phi14".
std::string label_name(int index);

/// Human-readable ket, e.g. "|g_L,G_R,0000,00>".
std::string describe(const BasisState& state);

std::string_view to_string(AtomLevel level);
std::string_view to_string(BecLevel level);

}  // namespace stirap
