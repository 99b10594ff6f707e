// fock_basis.hpp — enumeration and indexing of the truncated qubit ⊗ Fock space
//
// The Hilbert space is one qubit times M bosonic modes, truncated by a global
// excitation budget: only occupation vectors with sum_k n_k <= n_max are kept.
// States are ordered spin-major (spin +1 block first), then by lexicographic
// occupation vector, so a partial trace over the bath is a contiguous-block
// operation.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace silsbm {

using occ_t = std::uint8_t;

inline constexpr int kMaxModes = 128;
inline constexpr int kMaxExcitations = 15;  // index keys pack counts into 4 bits
inline constexpr std::size_t kDefaultMaxDimension = 8'000'000;

// A single basis configuration: sigma_z eigenvalue and per-mode photon counts.
struct BasisConfig {
    int spin = +1;  // +1 or -1
    std::vector<occ_t> occupations;

    bool operator==(const BasisConfig&) const = default;
};

enum class LadderDirection { Raise, Lower };

// Occupation vector packed into fixed-width 4-bit counts; used as hash key.
struct PackedOcc {
    std::array<std::uint64_t, kMaxModes / 16> words{};

    bool operator==(const PackedOcc&) const = default;

    void set(int mode, occ_t n) {
        words[mode >> 4] |= std::uint64_t(n & 0xF) << ((mode & 0xF) * 4);
    }
};

struct PackedOccHash {
    std::size_t operator()(const PackedOcc& key) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (std::uint64_t w : key.words) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// Closed-form count of kept states: 2 + 2 * sum_{j=1}^{n_max} C(n_max,j) C(M,j).
// The two zero-excitation states (bath vacuum times either spin) are included;
// throws std::overflow_error if the count does not fit in 64 bits.
std::uint64_t truncated_dimension(int modes, int max_excitations);

// Same count evaluated in long double, safe for capacity estimates at any size.
long double truncated_dimension_estimate(int modes, int max_excitations);

class BasisTable {
public:
    int modes() const { return modes_; }
    int max_excitations() const { return nmax_; }

    std::size_t bath_dimension() const { return bath_dim_; }
    std::size_t dimension() const { return 2 * bath_dim_; }

    // Global index layout: index = spin_block * bath_dimension() + bath_index,
    // with spin +1 in block 0 and spin -1 in block 1.
    static std::size_t spin_block(int spin) { return spin > 0 ? 0 : 1; }
    int spin_of(std::size_t index) const { return index < bath_dim_ ? +1 : -1; }
    std::size_t bath_index_of(std::size_t index) const { return index % bath_dim_; }
    std::size_t global_index(int spin, std::size_t bath_index) const {
        return spin_block(spin) * bath_dim_ + bath_index;
    }

    std::span<const occ_t> occupations(std::size_t bath_index) const {
        return {occ_.data() + bath_index * modes_, static_cast<std::size_t>(modes_)};
    }
    int total_excitations(std::size_t bath_index) const { return totals_[bath_index]; }

    BasisConfig config_of(std::size_t index) const;

    // Lookup; empty when the config violates the budget or the mode count.
    std::optional<std::size_t> find(const BasisConfig& config) const;
    std::optional<std::size_t> find_bath(std::span<const occ_t> occupations) const;

    // Throwing variant of find (std::out_of_range on absent config).
    std::size_t index_of(const BasisConfig& config) const;

    // Ladder action on the bath index alone (spin untouched). Raising out of
    // the excitation budget or lowering an empty mode yields no result.
    struct Hop {
        std::size_t bath_index;
        double amplitude;
    };
    std::optional<Hop> raised(std::size_t bath_index, int mode) const;
    std::optional<Hop> lowered(std::size_t bath_index, int mode) const;

private:
    friend BasisTable enumerate_basis(int, int, std::size_t);

    int modes_ = 0;
    int nmax_ = 0;
    std::size_t bath_dim_ = 0;
    std::vector<occ_t> occ_;     // bath_dim_ x modes_, row-major
    std::vector<occ_t> totals_;  // per bath config, sum of occupations
    std::unordered_map<PackedOcc, std::uint32_t, PackedOccHash> index_;
};

// Enumerate every configuration within the budget, exactly once, in the
// deterministic order described above. Throws CapacityError when the closed
// form dimension exceeds max_dimension.
BasisTable enumerate_basis(int modes, int max_excitations,
                           std::size_t max_dimension = kDefaultMaxDimension);

// Spec-level ladder operator: apply b_k^dagger (Raise) or b_k (Lower) to a
// configuration. Returns the mapped configuration and the bosonic matrix
// element sqrt(n_k+1) / sqrt(n_k); absent if the result leaves the table.
struct LadderAction {
    BasisConfig config;
    double amplitude;
};
std::optional<LadderAction> ladder_action(const BasisTable& table, const BasisConfig& config,
                                          int mode, LadderDirection direction);

}  // namespace silsbm
