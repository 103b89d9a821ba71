#pragma once

#include "bratteli/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bratteli {

enum class SeriesNature { Convergent, Divergent, Unknown };

// Integer sequence k -> value (k = 0, 1, 2, ...) given by a closed-form
// generator or by a finite table followed by an optional tail rule.
//
//   constant    c
//   arithmetic  start + step*k            (step >= 0)
//   geometric   start * ratio^k           (ratio >= 1)
//   power       (start + step*k)^exponent (step >= 0)
//   table       values[k], then tail(k - values.size())
//
// Every generator kind is nondecreasing, which the certificates rely on.
class Sequence {
public:
    enum class Kind { Constant, Arithmetic, Geometric, Power, Table };

    static Sequence constant(BigInt c);
    static Sequence arithmetic(BigInt start, BigInt step);
    static Sequence geometric(BigInt start, BigInt ratio);
    static Sequence power(BigInt start, BigInt step, unsigned exponent);
    static Sequence table(std::vector<BigInt> values, std::optional<Sequence> tail = std::nullopt);

    Kind kind() const { return kind_; }
    const BigInt& start() const { return start_; }
    const BigInt& step() const { return step_; }
    const BigInt& ratio() const { return ratio_; }
    unsigned exponent() const { return exponent_; }
    const std::vector<BigInt>& values() const { return values_; }
    const Sequence* tail() const { return tail_.get(); }

    bool defined_at(std::size_t k) const;
    BigInt at(std::size_t k) const;  // throws WindowError past a tailless table
    // nullopt when defined everywhere
    std::optional<std::size_t> defined_length() const;

    BigInt min_value() const;
    bool unbounded() const;
    std::optional<BigInt> sup_from(std::size_t k) const;  // nullopt: unbounded or undefined
    // first k0 with at(k) == at(k0) for every k >= k0
    std::optional<std::size_t> constant_from() const;
    // smallest k >= from with at(k) >= threshold, nullopt if none (or unknowable)
    std::optional<std::size_t> first_at_least(std::size_t from, const BigInt& threshold) const;

    // Behaviour of sum_k 1/at(k).
    SeriesNature reciprocal_nature() const;
    // Upper bound on sum_{k >= from} 1/at(k); requires Convergent.
    Rational reciprocal_tail_bound(std::size_t from) const;
    // q < 1 with (at(n)+1)/at(n+1) <= q for every n >= from, when the
    // generator governing indices >= from makes that ratio nonincreasing.
    std::optional<Rational> term_ratio_bound_from(std::size_t from) const;

    std::string describe() const;
    bool operator==(const Sequence& other) const;

private:
    Sequence() = default;
    // generator governing index k, with k rebased into it
    std::pair<const Sequence*, std::size_t> governing(std::size_t k) const;

    Kind kind_ = Kind::Constant;
    BigInt start_ = 0, step_ = 0, ratio_ = 1;
    unsigned exponent_ = 1;
    std::vector<BigInt> values_;
    std::shared_ptr<const Sequence> tail_;
};

// Parses "constant:2", "arithmetic:2,1", "geometric:2,2", "power:2,1,2",
// "table:5,3|constant:2".
Sequence parse_sequence_shorthand(const std::string& text);

}  // namespace bratteli
