#include "silsbm/fock_basis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "silsbm/errors.hpp"

namespace silsbm {

namespace {

void check_shape(int modes, int max_excitations) {
    if (modes < 1 || modes > kMaxModes)
        throw ConfigError("modes must be in [1, " + std::to_string(kMaxModes) + "], got " +
                          std::to_string(modes));
    if (max_excitations < 0 || max_excitations > kMaxExcitations)
        throw ConfigError("nph must be in [0, " + std::to_string(kMaxExcitations) + "], got " +
                          std::to_string(max_excitations));
}

std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // result * (n-k+i) / i is always integral at this point
        std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        if (result > std::numeric_limits<std::uint64_t>::max() / num)
            throw std::overflow_error("binomial coefficient overflows 64 bits");
        result = result * num / i;
    }
    return result;
}

PackedOcc pack(std::span<const occ_t> occupations) {
    PackedOcc key;
    for (int k = 0; k < static_cast<int>(occupations.size()); ++k) key.set(k, occupations[k]);
    return key;
}

}  // namespace

std::uint64_t truncated_dimension(int modes, int max_excitations) {
    check_shape(modes, max_excitations);
    std::uint64_t total = 1;  // vacuum
    for (int j = 1; j <= max_excitations; ++j) {
        std::uint64_t term = binomial_u64(max_excitations, j) * binomial_u64(modes, j);
        if (total > std::numeric_limits<std::uint64_t>::max() - term)
            throw std::overflow_error("basis dimension overflows 64 bits");
        total += term;
    }
    if (total > std::numeric_limits<std::uint64_t>::max() / 2)
        throw std::overflow_error("basis dimension overflows 64 bits");
    return 2 * total;
}

long double truncated_dimension_estimate(int modes, int max_excitations) {
    check_shape(modes, max_excitations);
    auto binom = [](int n, int k) {
        long double r = 1.0L;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    long double total = 1.0L;
    for (int j = 1; j <= max_excitations; ++j)
        total += binom(max_excitations, j) * binom(modes, j);
    return 2.0L * total;
}

BasisTable enumerate_basis(int modes, int max_excitations, std::size_t max_dimension) {
    check_shape(modes, max_excitations);

    long double estimate = truncated_dimension_estimate(modes, max_excitations);
    if (estimate > static_cast<long double>(max_dimension))
        throw CapacityError("basis dimension " + std::to_string(static_cast<double>(estimate)) +
                            " exceeds the configured ceiling of " + std::to_string(max_dimension) +
                            " states (modes=" + std::to_string(modes) +
                            ", nph=" + std::to_string(max_excitations) + ")");

    const std::uint64_t dim = truncated_dimension(modes, max_excitations);
    const std::size_t bath_dim = static_cast<std::size_t>(dim / 2);

    BasisTable table;
    table.modes_ = modes;
    table.nmax_ = max_excitations;
    table.bath_dim_ = bath_dim;
    table.occ_.reserve(bath_dim * modes);
    table.totals_.reserve(bath_dim);
    table.index_.reserve(bath_dim);

    // Lexicographic enumeration: mode 0 varies slowest.
    std::vector<occ_t> current(modes, 0);
    std::uint32_t next_index = 0;
    auto emit = [&]() {
        table.occ_.insert(table.occ_.end(), current.begin(), current.end());
        occ_t total = 0;
        for (occ_t n : current) total = static_cast<occ_t>(total + n);
        table.totals_.push_back(total);
        table.index_.emplace(pack(current), next_index++);
    };
    auto recurse = [&](auto&& self, int mode, int remaining) -> void {
        if (mode == modes) {
            emit();
            return;
        }
        for (int n = 0; n <= remaining; ++n) {
            current[mode] = static_cast<occ_t>(n);
            self(self, mode + 1, remaining - n);
        }
        current[mode] = 0;
    };
    recurse(recurse, 0, max_excitations);

    if (table.totals_.size() != bath_dim)
        throw std::logic_error("basis enumeration disagrees with the closed-form count");
    return table;
}

BasisConfig BasisTable::config_of(std::size_t index) const {
    if (index >= dimension()) throw std::out_of_range("basis index out of range");
    auto occ = occupations(bath_index_of(index));
    return BasisConfig{spin_of(index), {occ.begin(), occ.end()}};
}

std::optional<std::size_t> BasisTable::find_bath(std::span<const occ_t> occupations) const {
    if (static_cast<int>(occupations.size()) != modes_) return std::nullopt;
    int total = 0;
    for (occ_t n : occupations) total += n;
    if (total > nmax_) return std::nullopt;
    auto it = index_.find(pack(occupations));
    if (it == index_.end()) return std::nullopt;
    return static_cast<std::size_t>(it->second);
}

std::optional<std::size_t> BasisTable::find(const BasisConfig& config) const {
    if (config.spin != +1 && config.spin != -1) return std::nullopt;
    auto bath = find_bath(config.occupations);
    if (!bath) return std::nullopt;
    return global_index(config.spin, *bath);
}

std::size_t BasisTable::index_of(const BasisConfig& config) const {
    auto idx = find(config);
    if (!idx) throw std::out_of_range("configuration is not in the truncated basis");
    return *idx;
}

std::optional<BasisTable::Hop> BasisTable::raised(std::size_t bath_index, int mode) const {
    const occ_t n = occ_[bath_index * modes_ + mode];
    if (totals_[bath_index] + 1 > nmax_) return std::nullopt;  // truncation boundary
    std::vector<occ_t> occ(occupations(bath_index).begin(), occupations(bath_index).end());
    occ[mode] = static_cast<occ_t>(n + 1);
    auto it = index_.find(pack(occ));
    if (it == index_.end()) return std::nullopt;
    return Hop{it->second, std::sqrt(static_cast<double>(n) + 1.0)};
}

std::optional<BasisTable::Hop> BasisTable::lowered(std::size_t bath_index, int mode) const {
    const occ_t n = occ_[bath_index * modes_ + mode];
    if (n == 0) return std::nullopt;
    std::vector<occ_t> occ(occupations(bath_index).begin(), occupations(bath_index).end());
    occ[mode] = static_cast<occ_t>(n - 1);
    auto it = index_.find(pack(occ));
    if (it == index_.end()) return std::nullopt;
    return Hop{it->second, std::sqrt(static_cast<double>(n))};
}

std::optional<LadderAction> ladder_action(const BasisTable& table, const BasisConfig& config,
                                          int mode, LadderDirection direction) {
    if (mode < 0 || mode >= table.modes()) throw std::out_of_range("mode index out of range");
    auto bath = table.find_bath(config.occupations);
    if (!bath) throw std::out_of_range("configuration is not in the truncated basis");
    auto hop = direction == LadderDirection::Raise ? table.raised(*bath, mode)
                                                   : table.lowered(*bath, mode);
    if (!hop) return std::nullopt;
    auto occ = table.occupations(hop->bath_index);
    return LadderAction{BasisConfig{config.spin, {occ.begin(), occ.end()}}, hop->amplitude};
}

}  // namespace silsbm
