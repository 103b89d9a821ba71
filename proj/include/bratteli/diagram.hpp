#pragma once

#include "bratteli/kernels.hpp"
#include "bratteli/level_matrix.hpp"
#include "bratteli/rational.hpp"
#include "bratteli/sequence.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bratteli {

struct VertexId {
    std::size_t level = 0;
    std::size_t index = 1;
    auto operator<=>(const VertexId&) const = default;
};

// Finite window onto a possibly infinite diagram: levels 0..maxLevel,
// vertices 1..maxVertex on each level.
struct Truncation {
    std::size_t max_level = 16;
    std::size_t max_vertex = 16;
    void validate() const;
    bool operator==(const Truncation&) const = default;
};

namespace family {

// f_11 = a, f_ii = a - k for i > 1, superdiagonal 1.
struct StationaryAK {
    BigInt a, k;
};
// f_ii = a_i (a_1 > a_j for j >= 2), superdiagonal 1. Vertex i reads a.at(i-1).
struct StationaryDecreasing {
    Sequence a;
};
// f_ii = i + 1, superdiagonal 1.
struct StationaryIncreasing {};
// f^{(n)}_ii = a_n for every i, superdiagonal 1. Level n reads a.at(n).
struct NonStationaryUniform {
    Sequence a;
};
// f^{(n)}_ii = rows[n][i-1] where given, otherwise fallback.at(i-1).
// Levels past the table use the fallback alone, so they are stationary.
struct GeneralDIO {
    std::vector<std::vector<BigInt>> rows;
    std::optional<Sequence> fallback;
};
// A = F^T, row = target vertex. Vertices 1..N on every level.
struct ExplicitFinite {
    std::vector<std::vector<BigInt>> A;
};
struct ExplicitLevels {
    std::vector<LevelMatrix> levels;
};

}  // namespace family

using FamilyParams = std::variant<family::StationaryAK, family::StationaryDecreasing, family::StationaryIncreasing,
                                  family::NonStationaryUniform, family::GeneralDIO, family::ExplicitFinite,
                                  family::ExplicitLevels>;

class DiagramSpec {
public:
    DiagramSpec(FamilyParams params, Truncation window);

    static DiagramSpec stationary_ak(long a, long k, Truncation window = {});
    static DiagramSpec stationary_decreasing(Sequence a, Truncation window = {});
    static DiagramSpec stationary_increasing(Truncation window = {});
    static DiagramSpec non_stationary_uniform(Sequence a, Truncation window = {});
    static DiagramSpec general_dio(std::vector<std::vector<BigInt>> rows, std::optional<Sequence> fallback,
                                   Truncation window = {});
    static DiagramSpec explicit_finite(std::vector<std::vector<BigInt>> A, Truncation window = {});
    static DiagramSpec explicit_levels(std::vector<LevelMatrix> levels, Truncation window = {});

    const FamilyParams& params() const { return params_; }
    const Truncation& window() const { return window_; }
    DiagramSpec with_window(Truncation window) const;
    std::string family_name() const;

    bool is_dio() const;
    // Same incidence matrix at every level.
    bool is_stationary() const;

    // a_n^{(i)}; DIO families only. Throws WindowError where undefined.
    BigInt diag(std::size_t level, std::size_t i) const;
    // u -> a_level^{(u)} as a sequence indexed by u - 1, when describable.
    std::optional<Sequence> diagonal_at(std::size_t level) const;
    // Smallest v0 such that at every level all vertices >= v0 carry the same
    // diagonal value; heights then agree on all of them.
    std::optional<std::size_t> uniform_tail_from() const;
    // Levels >= n0 all share one incidence matrix.
    std::optional<std::size_t> stationary_from_level() const;
    // Vertex count per level for finite families.
    std::optional<std::size_t> finite_width() const;

private:
    FamilyParams params_;
    Truncation window_;
};

struct HeightsVector {
    std::size_t level = 0;
    std::vector<BigInt> values;  // values[i-1] = H^{(level)}_i, all certified exact
    std::size_t exact_width() const { return values.size(); }
    const BigInt& at(std::size_t i) const;
};

LevelMatrix incidence(const DiagramSpec& spec, std::size_t n, const Truncation& window);

HeightsVector heights(const DiagramSpec& spec, std::size_t n, const Truncation& window,
                      kernels::Exec exec = kernels::Exec::Serial);
// H^{(0)}, ..., H^{(n)}
std::vector<HeightsVector> heights_through(const DiagramSpec& spec, std::size_t n, const Truncation& window,
                                           kernels::Exec exec = kernels::Exec::Serial);

DiagramSpec telescope(const DiagramSpec& spec, const std::vector<std::size_t>& breakpoints, const Truncation& window);

// Default budget: $BRATTELI_MAX_WORK, else 20'000'000 edge visits.
std::uint64_t default_work_budget();
BigInt count_paths_bruteforce(const DiagramSpec& spec, VertexId target, const Truncation& window,
                              std::optional<std::uint64_t> budget = std::nullopt);

}  // namespace bratteli
