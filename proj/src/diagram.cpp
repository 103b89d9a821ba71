#include "bratteli/diagram.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace bratteli {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_min(const Sequence& s, const char* what) {
    if (s.min_value() < 2) throw ConfigError(std::string(what) + " must be >= 2 everywhere (" + s.describe() + ")");
}

void validate_params(const FamilyParams& params) {
    std::visit(overloaded{
                   [](const family::StationaryAK& p) {
                       if (p.a < 2) throw ConfigError("StationaryAK needs a >= 2");
                       if (p.k < 1) throw ConfigError("StationaryAK needs k >= 1");
                       // a - k >= 1 keeps every vertex an odometer with a
                       // nonzero diagonal; the theorems need a - k > 1.
                       if (p.a - p.k < 1) throw ConfigError("StationaryAK needs a - k >= 1");
                   },
                   [](const family::StationaryDecreasing& p) {
                       require_min(p.a, "StationaryDecreasing a_i");
                       BigInt a1 = p.a.at(0);
                       if (auto sup = p.a.sup_from(1)) {
                           if (*sup >= a1) throw ConfigError("StationaryDecreasing needs a_1 > a_j for j >= 2");
                       } else if (auto len = p.a.defined_length()) {
                           for (std::size_t k = 1; k < *len; ++k)
                               if (p.a.at(k) >= a1)
                                   throw ConfigError("StationaryDecreasing needs a_1 > a_j for j >= 2");
                       } else {
                           throw ConfigError("StationaryDecreasing with an unbounded sequence violates a_1 > a_j");
                       }
                   },
                   [](const family::StationaryIncreasing&) {},
                   [](const family::NonStationaryUniform& p) { require_min(p.a, "a_n"); },
                   [](const family::GeneralDIO& p) {
                       if (p.rows.empty() && !p.fallback) throw ConfigError("GeneralDIO needs rows or a fallback");
                       for (const auto& r : p.rows)
                           for (const auto& v : r)
                               if (v < 2) throw ConfigError("GeneralDIO diagonal entries must be >= 2");
                       if (p.fallback) require_min(*p.fallback, "GeneralDIO fallback");
                   },
                   [](const family::ExplicitFinite& p) {
                       std::size_t n = p.A.size();
                       if (n == 0) throw ConfigError("ExplicitFinite needs a nonempty matrix");
                       for (const auto& r : p.A) {
                           if (r.size() != n) throw ConfigError("ExplicitFinite matrix must be square");
                           for (const auto& v : r)
                               if (v < 0) throw ConfigError("ExplicitFinite entries must be nonnegative");
                       }
                       for (std::size_t i = 0; i < n; ++i) {
                           bool row = false, col = false;
                           for (std::size_t j = 0; j < n; ++j) {
                               row = row || p.A[i][j] > 0;
                               col = col || p.A[j][i] > 0;
                           }
                           if (!row || !col)
                               throw ConfigError("ExplicitFinite vertex " + std::to_string(i + 1) +
                                                 " lacks incoming or outgoing edges");
                       }
                   },
                   [](const family::ExplicitLevels& p) {
                       if (p.levels.empty()) throw ConfigError("ExplicitLevels needs at least one level");
                       for (const auto& m : p.levels)
                           for (std::size_t v = 1; v <= m.complete_rows(); ++v)
                               if (m.row(v).empty())
                                   throw ConfigError("ExplicitLevels level " + std::to_string(m.level()) + " row " +
                                                     std::to_string(v) + " is empty");
                   },
               },
               params);
}

}  // namespace

void Truncation::validate() const {
    if (max_level < 1) throw ConfigError("truncation needs maxLevel >= 1");
    if (max_vertex < 2) throw ConfigError("truncation needs maxVertex >= 2");
}

DiagramSpec::DiagramSpec(FamilyParams params, Truncation window) : params_(std::move(params)), window_(window) {
    window_.validate();
    validate_params(params_);
}

DiagramSpec DiagramSpec::stationary_ak(long a, long k, Truncation window) {
    return DiagramSpec(family::StationaryAK{BigInt(a), BigInt(k)}, window);
}
DiagramSpec DiagramSpec::stationary_decreasing(Sequence a, Truncation window) {
    return DiagramSpec(family::StationaryDecreasing{std::move(a)}, window);
}
DiagramSpec DiagramSpec::stationary_increasing(Truncation window) {
    return DiagramSpec(family::StationaryIncreasing{}, window);
}
DiagramSpec DiagramSpec::non_stationary_uniform(Sequence a, Truncation window) {
    return DiagramSpec(family::NonStationaryUniform{std::move(a)}, window);
}
DiagramSpec DiagramSpec::general_dio(std::vector<std::vector<BigInt>> rows, std::optional<Sequence> fallback,
                                     Truncation window) {
    return DiagramSpec(family::GeneralDIO{std::move(rows), std::move(fallback)}, window);
}
DiagramSpec DiagramSpec::explicit_finite(std::vector<std::vector<BigInt>> A, Truncation window) {
    return DiagramSpec(family::ExplicitFinite{std::move(A)}, window);
}
DiagramSpec DiagramSpec::explicit_levels(std::vector<LevelMatrix> levels, Truncation window) {
    return DiagramSpec(family::ExplicitLevels{std::move(levels)}, window);
}

DiagramSpec DiagramSpec::with_window(Truncation window) const { return DiagramSpec(params_, window); }

std::string DiagramSpec::family_name() const {
    static const char* names[] = {"ak",          "decreasing",      "increasing",     "nonstat-uniform",
                                  "general-dio", "explicit-finite", "explicit-levels"};
    return names[params_.index()];
}

bool DiagramSpec::is_dio() const { return params_.index() <= 4; }

bool DiagramSpec::is_stationary() const {
    if (std::holds_alternative<family::ExplicitFinite>(params_)) return true;
    if (std::holds_alternative<family::ExplicitLevels>(params_)) return false;
    auto n0 = stationary_from_level();
    return n0 && *n0 == 0;
}

BigInt DiagramSpec::diag(std::size_t level, std::size_t i) const {
    if (i < 1) throw ConfigError("vertex index must be >= 1");
    return std::visit(overloaded{
                          [&](const family::StationaryAK& p) -> BigInt { return i == 1 ? p.a : BigInt(p.a - p.k); },
                          [&](const family::StationaryDecreasing& p) -> BigInt { return p.a.at(i - 1); },
                          [&](const family::StationaryIncreasing&) -> BigInt {
                              return BigInt(static_cast<unsigned long>(i + 1));
                          },
                          [&](const family::NonStationaryUniform& p) -> BigInt { return p.a.at(level); },
                          [&](const family::GeneralDIO& p) -> BigInt {
                              if (level < p.rows.size() && i - 1 < p.rows[level].size()) return p.rows[level][i - 1];
                              if (p.fallback) return p.fallback->at(i - 1);
                              throw WindowError("GeneralDIO entry (" + std::to_string(level) + "," +
                                                std::to_string(i) + ") undefined");
                          },
                          [&](const auto&) -> BigInt { throw ConfigError("diagonal requested on a non-DIO family"); },
                      },
                      params_);
}

std::optional<Sequence> DiagramSpec::diagonal_at(std::size_t level) const {
    return std::visit(overloaded{
                          [&](const family::StationaryAK& p) -> std::optional<Sequence> {
                              return Sequence::table({p.a}, Sequence::constant(p.a - p.k));
                          },
                          [&](const family::StationaryDecreasing& p) -> std::optional<Sequence> { return p.a; },
                          [&](const family::StationaryIncreasing&) -> std::optional<Sequence> {
                              return Sequence::arithmetic(2, 1);
                          },
                          [&](const family::NonStationaryUniform& p) -> std::optional<Sequence> {
                              if (!p.a.defined_at(level)) return std::nullopt;
                              return Sequence::constant(p.a.at(level));
                          },
                          [&](const family::GeneralDIO& p) -> std::optional<Sequence> {
                              if (level >= p.rows.size()) return p.fallback;
                              if (p.rows[level].empty() && p.fallback) return p.fallback;
                              return Sequence::table(p.rows[level], p.fallback);
                          },
                          [&](const auto&) -> std::optional<Sequence> { return std::nullopt; },
                      },
                      params_);
}

std::optional<std::size_t> DiagramSpec::uniform_tail_from() const {
    return std::visit(overloaded{
                          [](const family::StationaryAK&) -> std::optional<std::size_t> { return 2; },
                          [](const family::StationaryDecreasing& p) -> std::optional<std::size_t> {
                              auto c = p.a.constant_from();
                              if (!c) return std::nullopt;
                              return *c + 1;
                          },
                          [](const family::NonStationaryUniform&) -> std::optional<std::size_t> { return 1; },
                          [](const family::GeneralDIO& p) -> std::optional<std::size_t> {
                              if (!p.fallback) return std::nullopt;
                              auto c = p.fallback->constant_from();
                              if (!c) return std::nullopt;
                              std::size_t widest = 0;
                              for (const auto& r : p.rows) widest = std::max(widest, r.size());
                              return std::max(*c + 1, widest + 1);
                          },
                          [](const auto&) -> std::optional<std::size_t> { return std::nullopt; },
                      },
                      params_);
}

std::optional<std::size_t> DiagramSpec::stationary_from_level() const {
    return std::visit(overloaded{
                          [](const family::NonStationaryUniform& p) -> std::optional<std::size_t> {
                              return p.a.constant_from();
                          },
                          [](const family::GeneralDIO& p) -> std::optional<std::size_t> {
                              if (!p.fallback) return std::nullopt;
                              return p.rows.size();
                          },
                          [](const family::ExplicitFinite&) -> std::optional<std::size_t> { return 0; },
                          [](const family::ExplicitLevels&) -> std::optional<std::size_t> { return std::nullopt; },
                          [](const auto&) -> std::optional<std::size_t> { return 0; },
                      },
                      params_);
}

std::optional<std::size_t> DiagramSpec::finite_width() const {
    if (auto* f = std::get_if<family::ExplicitFinite>(&params_)) return f->A.size();
    return std::nullopt;
}

const BigInt& HeightsVector::at(std::size_t i) const {
    if (i < 1 || i > values.size())
        throw WindowError("height H^(" + std::to_string(level) + ")_" + std::to_string(i) +
                          " outside certified width " + std::to_string(values.size()));
    return values[i - 1];
}

LevelMatrix incidence(const DiagramSpec& spec, std::size_t n, const Truncation& window) {
    window.validate();
    if (n >= window.max_level)
        throw WindowError("level " + std::to_string(n) + " outside window (maxLevel " +
                          std::to_string(window.max_level) + ")");
    const std::size_t M = window.max_vertex;
    if (spec.is_dio()) {
        std::vector<MatrixEntry> e;
        e.reserve(2 * M);
        for (std::size_t v = 1; v <= M; ++v) {
            e.push_back({v, v, spec.diag(n, v)});
            if (v + 1 <= M) e.push_back({v, v + 1, BigInt(1)});
        }
        // Row M is missing its (M, M+1) entry; every column is complete.
        return LevelMatrix(n, M, M, std::move(e), M - 1, M);
    }
    if (auto* f = std::get_if<family::ExplicitFinite>(&spec.params())) {
        std::size_t N = f->A.size();
        std::vector<MatrixEntry> e;
        for (std::size_t w = 0; w < N; ++w)
            for (std::size_t v = 0; v < N; ++v)
                if (f->A[w][v] > 0) e.push_back({v + 1, w + 1, f->A[w][v]});
        return LevelMatrix(n, N, N, std::move(e), N, N).restricted(M);
    }
    const auto& lv = std::get<family::ExplicitLevels>(spec.params());
    if (n >= lv.levels.size()) throw WindowError("ExplicitLevels has no level " + std::to_string(n));
    return lv.levels[n].restricted(M).with_level(n);
}

std::vector<HeightsVector> heights_through(const DiagramSpec& spec, std::size_t n, const Truncation& window,
                                           kernels::Exec exec) {
    window.validate();
    if (n > window.max_level)
        throw WindowError("heights level " + std::to_string(n) + " beyond maxLevel " +
                          std::to_string(window.max_level));
    std::size_t width = window.max_vertex;
    if (auto fw = spec.finite_width()) width = std::min(width, *fw);
    // With a uniform tail, vertex width stands in for every vertex beyond it,
    // so the missing (width, width+1) entry is known and nothing is lost.
    bool compress = false;
    if (spec.is_dio())
        if (auto v0 = spec.uniform_tail_from()) compress = *v0 <= width;

    std::vector<HeightsVector> out;
    std::vector<BigInt> x(width, BigInt(1));
    out.push_back({0, x});
    for (std::size_t l = 0; l < n; ++l) {
        LevelMatrix f = incidence(spec, l, window);
        std::size_t exact = x.size();
        std::size_t r = 0;
        while (r < f.complete_rows() && f.max_col_in_row(r + 1) <= exact) ++r;
        std::vector<BigInt> y = kernels::multiply<BigInt>(f, x, r, exec);
        if (compress && exact == width && r == width - 1) y.push_back((spec.diag(l, width) + 1) * x[width - 1]);
        if (y.empty())
            throw WindowError("window too small to certify any height at level " + std::to_string(l + 1));
        x = std::move(y);
        out.push_back({l + 1, x});
    }
    return out;
}

HeightsVector heights(const DiagramSpec& spec, std::size_t n, const Truncation& window, kernels::Exec exec) {
    return std::move(heights_through(spec, n, window, exec).back());
}

DiagramSpec telescope(const DiagramSpec& spec, const std::vector<std::size_t>& breakpoints,
                      const Truncation& window) {
    window.validate();
    if (breakpoints.size() < 2) throw ConfigError("telescoping needs at least two breakpoints");
    if (breakpoints.front() != 0) throw ConfigError("telescoping breakpoints must start at 0");
    for (std::size_t k = 1; k < breakpoints.size(); ++k)
        if (breakpoints[k] <= breakpoints[k - 1]) throw ConfigError("telescoping breakpoints not strictly increasing");
    if (breakpoints.back() > window.max_level) throw WindowError("breakpoint beyond window maxLevel");

    std::vector<LevelMatrix> levels;
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        LevelMatrix p = incidence(spec, breakpoints[k], window);
        for (std::size_t l = breakpoints[k] + 1; l < breakpoints[k + 1]; ++l) p = compose(incidence(spec, l, window), p);
        if (p.complete_rows() == 0)
            throw WindowError("telescoped level " + std::to_string(k) + " has no certified row in window");
        levels.push_back(p.with_level(k));
    }
    Truncation out{levels.size(), window.max_vertex};
    return DiagramSpec::explicit_levels(std::move(levels), out);
}

std::uint64_t default_work_budget() {
    if (const char* env = std::getenv("BRATTELI_MAX_WORK")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 20'000'000ULL;
}

namespace {

struct PathCounter {
    const std::vector<LevelMatrix>& mats;
    std::uint64_t budget;
    std::uint64_t work = 0;

    std::uint64_t count(std::size_t level, std::size_t v) {
        if (level == 0) return 1;
        const LevelMatrix& f = mats[level - 1];
        if (v > f.complete_rows())
            throw WindowError("brute-force path count reaches vertex (" + std::to_string(level) + "," +
                              std::to_string(v) + ") outside the complete window");
        std::uint64_t total = 0;
        for (const auto& e : f.row(v)) {
            // one branch per individual edge, no multiplication shortcut
            for (BigInt c = 0; c < e.mult; ++c) {
                if (++work > budget) throw WorkBudgetExceeded("path enumeration exceeded work budget");
                total += count(level - 1, e.col);
            }
        }
        return total;
    }
};

}  // namespace

BigInt count_paths_bruteforce(const DiagramSpec& spec, VertexId target, const Truncation& window,
                              std::optional<std::uint64_t> budget) {
    if (target.level > 12) throw ConfigError("brute-force enumeration limited to level <= 12");
    if (target.index < 1) throw ConfigError("vertex index must be >= 1");
    std::vector<LevelMatrix> mats;
    for (std::size_t l = 0; l < target.level; ++l) mats.push_back(incidence(spec, l, window));
    PathCounter pc{mats, budget.value_or(default_work_budget())};
    std::uint64_t c = pc.count(target.level, target.index);
    return BigInt(static_cast<unsigned long>(c));
}

}  // namespace bratteli
