#pragma once

#include "bratteli/diagram.hpp"
#include "bratteli/measure.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

// Orders on DIO diagrams. r^{-1}(n+1, i) consists of the vertical edges
// e_1..e_a from (n, i), a = a_n^{(i)}, and the diagonal edge f from (n, i+1).
namespace bratteli::vershik {

enum class OrderTag { Left, Right, Middle };
const char* to_string(OrderTag t);
OrderTag parse_tag(const std::string& s);

// An edge into a vertex: copy 0 is f, copy k >= 1 is e_k.
struct EdgeRef {
    std::size_t copy = 1;
    bool diagonal() const { return copy == 0; }
    bool operator==(const EdgeRef&) const = default;
};

// Linear order on r^{-1}(v). Canonical orders are generated from a tag:
//   Left   f < e_1 < ... < e_a
//   Right  e_1 < ... < e_a < f
//   Middle e_1 < f < e_2 < ... < e_a
class VertexOrder {
public:
    static VertexOrder canonical(OrderTag tag) { return VertexOrder(tag); }
    // Permutation listing edges from minimal to maximal; must contain 0..a once each.
    static VertexOrder permutation(std::vector<std::size_t> perm);

    OrderTag tag() const;
    // a = number of vertical edges
    std::size_t position(EdgeRef e, std::size_t a) const;
    EdgeRef at_position(std::size_t p, std::size_t a) const;
    const std::optional<std::vector<std::size_t>>& explicit_permutation() const { return perm_; }

private:
    explicit VertexOrder(OrderTag t) : tag_(t) {}
    OrderTag tag_ = OrderTag::Right;
    std::optional<std::vector<std::size_t>> perm_;
};

// Tag per vertex index: table entries first, then a periodic pattern over
// i = 1, 2, ... when present, else the default.
struct TagRule {
    std::map<std::size_t, OrderTag> table;
    std::vector<OrderTag> pattern;
    OrderTag fallback = OrderTag::Right;
    OrderTag at(std::size_t i) const;
    // tags taken by infinitely many i
    std::vector<OrderTag> recurring() const;
};

struct ExplicitOrder {
    std::map<VertexId, VertexOrder> orders;
};
struct QuasiStationary {
    TagRule tags;
};
struct EventuallyQuasiStationary {
    std::map<VertexId, VertexOrder> exceptions;
    TagRule tags;
};

using OrderSpec = std::variant<ExplicitOrder, QuasiStationary, EventuallyQuasiStationary>;

// Order on r^{-1}(v) for a vertex v on a level >= 1.
VertexOrder order_at(const OrderSpec& order, VertexId v);

enum class Tristate { No, Yes, Unknown };
const char* to_string(Tristate t);

struct OdometerClass {
    Tristate finite_right = Tristate::Unknown;
    Tristate finite_left = Tristate::Unknown;
    std::string caveat;
};

OdometerClass classify_odometer(const DiagramSpec& spec, const OrderSpec& order, std::size_t i);

// {0, 1, 2, ...} together with aleph_0
struct Cardinal {
    bool aleph0 = false;
    std::size_t count = 0;
    bool operator==(const Cardinal&) const = default;
    bool empty() const { return !aleph0 && count == 0; }
    std::string str() const;
};

enum class Homeomorphism { Yes, No, NoQuasiStationary };
const char* to_string(Homeomorphism h);

struct ExtensionVerdict {
    Cardinal fr, fl;
    std::vector<std::size_t> fr_witness, fl_witness;  // members with i <= iMax
    bool borel = false;
    Homeomorphism homeomorphism = Homeomorphism::No;
};

// Throws ConfigError for explicit orders: undecidable from finite data.
ExtensionVerdict extension_verdict(const DiagramSpec& spec, const OrderSpec& order, std::size_t i_max);

struct Step {
    bool diagonal = false;
    std::size_t copy = 1;  // vertical copy 1..a; ignored when diagonal
    bool operator==(const Step&) const = default;
};

// x_0, ..., x_{L-1}; x_n runs from level n to level n+1.
struct TruncatedPath {
    std::size_t start = 1;
    std::vector<Step> steps;
    // vertex on level n, n = 0..steps.size()
    std::size_t vertex(std::size_t n) const;
    bool operator==(const TruncatedPath&) const = default;
};

struct AllMaximalPrefix {};

using SuccessorResult = std::variant<TruncatedPath, AllMaximalPrefix>;

void validate_path(const DiagramSpec& spec, const TruncatedPath& p);
std::size_t edge_position(const DiagramSpec& spec, const OrderSpec& order, const TruncatedPath& p, std::size_t n);
// Minimal path of length m from V_0 to (m, u).
TruncatedPath minimal_path(const DiagramSpec& spec, const OrderSpec& order, std::size_t m, std::size_t u);
SuccessorResult successor(const DiagramSpec& spec, const OrderSpec& order, const TruncatedPath& path);

struct FrequencyRow {
    CylinderSpec cylinder;
    std::uint64_t visits = 0;
    std::uint64_t multiplicity = 1;  // number of cylinders an EndVertex query stands for
    double empirical = 0;            // visits / (T * multiplicity)
};

struct OrbitReport {
    std::uint64_t requested = 0;
    std::uint64_t visited = 0;
    bool stopped_at_maximal = false;
    std::vector<FrequencyRow> rows;
    std::vector<std::vector<std::size_t>> trace;  // (step, vertex at levels 1..L) when kept
};

OrbitReport orbit_frequencies(const DiagramSpec& spec, const OrderSpec& order, const TruncatedPath& start,
                              std::uint64_t steps, const std::vector<CylinderSpec>& cylinders,
                              std::size_t trace_rows = 0);

}  // namespace bratteli::vershik
