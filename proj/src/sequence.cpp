#include "bratteli/sequence.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <sstream>

namespace bratteli {

Sequence Sequence::constant(BigInt c) {
    Sequence s;
    s.kind_ = Kind::Constant;
    s.start_ = std::move(c);
    return s;
}

Sequence Sequence::arithmetic(BigInt start, BigInt step) {
    if (step < 0) throw ConfigError("arithmetic sequence needs step >= 0");
    Sequence s;
    s.kind_ = Kind::Arithmetic;
    s.start_ = std::move(start);
    s.step_ = std::move(step);
    return s;
}

Sequence Sequence::geometric(BigInt start, BigInt ratio) {
    if (ratio < 1) throw ConfigError("geometric sequence needs ratio >= 1");
    if (start < 1) throw ConfigError("geometric sequence needs start >= 1");
    Sequence s;
    s.kind_ = Kind::Geometric;
    s.start_ = std::move(start);
    s.ratio_ = std::move(ratio);
    return s;
}

Sequence Sequence::power(BigInt start, BigInt step, unsigned exponent) {
    if (step < 0) throw ConfigError("power sequence needs step >= 0");
    if (start < 1) throw ConfigError("power sequence needs start >= 1");
    Sequence s;
    s.kind_ = Kind::Power;
    s.start_ = std::move(start);
    s.step_ = std::move(step);
    s.exponent_ = exponent;
    return s;
}

Sequence Sequence::table(std::vector<BigInt> values, std::optional<Sequence> tail) {
    if (values.empty() && !tail) throw ConfigError("table sequence needs values or a tail rule");
    Sequence s;
    s.kind_ = Kind::Table;
    s.values_ = std::move(values);
    if (tail) s.tail_ = std::make_shared<const Sequence>(std::move(*tail));
    return s;
}

std::pair<const Sequence*, std::size_t> Sequence::governing(std::size_t k) const {
    if (kind_ != Kind::Table) return {this, k};
    if (k < values_.size()) return {this, k};
    if (!tail_) return {nullptr, k};
    return tail_->governing(k - values_.size());
}

bool Sequence::defined_at(std::size_t k) const { return governing(k).first != nullptr; }

std::optional<std::size_t> Sequence::defined_length() const {
    if (kind_ != Kind::Table) return std::nullopt;
    if (!tail_) return values_.size();
    auto t = tail_->defined_length();
    if (!t) return std::nullopt;
    return values_.size() + *t;
}

BigInt Sequence::at(std::size_t k) const {
    switch (kind_) {
        case Kind::Constant: return start_;
        case Kind::Arithmetic: return start_ + step_ * BigInt(static_cast<unsigned long>(k));
        case Kind::Geometric: return start_ * ipow(ratio_, k);
        case Kind::Power: return ipow(BigInt(start_ + step_ * BigInt(static_cast<unsigned long>(k))), exponent_);
        case Kind::Table:
            if (k < values_.size()) return values_[k];
            if (tail_) return tail_->at(k - values_.size());
            throw WindowError("sequence index " + std::to_string(k) + " beyond table without tail rule");
    }
    return 0;
}

BigInt Sequence::min_value() const {
    switch (kind_) {
        case Kind::Constant:
        case Kind::Arithmetic:
        case Kind::Geometric:
        case Kind::Power: return at(0);
        case Kind::Table: {
            std::optional<BigInt> m;
            for (const auto& v : values_)
                if (!m || v < *m) m = v;
            if (tail_) {
                BigInt t = tail_->min_value();
                if (!m || t < *m) m = t;
            }
            return *m;
        }
    }
    return 0;
}

bool Sequence::unbounded() const {
    switch (kind_) {
        case Kind::Constant: return false;
        case Kind::Arithmetic: return step_ > 0;
        case Kind::Geometric: return ratio_ > 1;
        case Kind::Power: return step_ > 0 && exponent_ > 0;
        case Kind::Table: return tail_ && tail_->unbounded();
    }
    return false;
}

std::optional<BigInt> Sequence::sup_from(std::size_t k) const {
    if (unbounded()) return std::nullopt;
    if (kind_ != Kind::Table) return at(0);
    if (!tail_) return std::nullopt;
    BigInt m = tail_->sup_from(k > values_.size() ? k - values_.size() : 0).value();
    for (std::size_t j = k; j < values_.size(); ++j) m = std::max(m, values_[j]);
    return m;
}

std::optional<std::size_t> Sequence::constant_from() const {
    switch (kind_) {
        case Kind::Constant: return 0;
        case Kind::Arithmetic: return step_ == 0 ? std::optional<std::size_t>(0) : std::nullopt;
        case Kind::Geometric: return ratio_ == 1 ? std::optional<std::size_t>(0) : std::nullopt;
        case Kind::Power:
            return (step_ == 0 || exponent_ == 0) ? std::optional<std::size_t>(0) : std::nullopt;
        case Kind::Table: {
            if (!tail_) return std::nullopt;
            auto t0 = tail_->constant_from();
            if (!t0) return std::nullopt;
            if (*t0 > 0) return values_.size() + *t0;
            BigInt c = tail_->at(0);
            std::size_t k0 = values_.size();
            while (k0 > 0 && values_[k0 - 1] == c) --k0;
            return k0;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> Sequence::first_at_least(std::size_t from, const BigInt& threshold) const {
    if (kind_ == Kind::Table) {
        for (std::size_t k = from; k < values_.size(); ++k)
            if (values_[k] >= threshold) return k;
        if (!tail_) return std::nullopt;
        std::size_t rebased = from > values_.size() ? from - values_.size() : 0;
        auto r = tail_->first_at_least(rebased, threshold);
        if (!r) return std::nullopt;
        return values_.size() + *r;
    }
    if (at(from) >= threshold) return from;
    if (!unbounded()) return std::nullopt;
    // Nondecreasing and unbounded: exponential then binary search.
    std::size_t lo = from, hi = from + 1;
    while (at(hi) < threshold) {
        lo = hi;
        hi = from + 2 * (hi - from);
    }
    while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (at(mid) >= threshold)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

SeriesNature Sequence::reciprocal_nature() const {
    switch (kind_) {
        case Kind::Constant:
        case Kind::Arithmetic: return SeriesNature::Divergent;
        case Kind::Geometric: return ratio_ >= 2 ? SeriesNature::Convergent : SeriesNature::Divergent;
        case Kind::Power:
            return (step_ >= 1 && exponent_ >= 2) ? SeriesNature::Convergent : SeriesNature::Divergent;
        case Kind::Table: return tail_ ? tail_->reciprocal_nature() : SeriesNature::Unknown;
    }
    return SeriesNature::Unknown;
}

Rational Sequence::reciprocal_tail_bound(std::size_t from) const {
    if (reciprocal_nature() != SeriesNature::Convergent)
        throw CertificationError("reciprocal series of " + describe() + " is not certified convergent");
    switch (kind_) {
        case Kind::Geometric: {
            // sum_{k>=from} 1/(s r^k) = r / ((r-1) s r^from)
            Rational b(ratio_, BigInt((ratio_ - 1) * at(from)));
            b.canonicalize();
            return b;
        }
        case Kind::Power: {
            // 1/x^e + integral_from^inf dt/(s+dt)^e with x = s + d*from
            BigInt x = start_ + step_ * BigInt(static_cast<unsigned long>(from));
            Rational first(BigInt(1), ipow(x, exponent_));
            Rational rest(BigInt(1), BigInt(step_ * BigInt(exponent_ - 1) * ipow(x, exponent_ - 1)));
            first.canonicalize();
            rest.canonicalize();
            return first + rest;
        }
        case Kind::Table: {
            if (from >= values_.size()) return tail_->reciprocal_tail_bound(from - values_.size());
            Rational s = tail_->reciprocal_tail_bound(0);
            for (std::size_t k = from; k < values_.size(); ++k) {
                Rational r(BigInt(1), values_[k]);
                r.canonicalize();
                s += r;
            }
            return s;
        }
        default: break;
    }
    throw CertificationError("no reciprocal tail bound for " + describe());
}

std::optional<Rational> Sequence::term_ratio_bound_from(std::size_t from) const {
    auto [g, k] = governing(from);
    if (!g || g->kind_ != Kind::Geometric || g->ratio_ < 2) return std::nullopt;
    // (s r^n + 1)/(s r^{n+1}) = 1/r + 1/(s r^{n+1}) decreases in n.
    Rational q = Rational(BigInt(1), g->ratio_) + Rational(BigInt(1), g->at(k + 1));
    q.canonicalize();
    if (q >= 1) return std::nullopt;
    return q;
}

std::string Sequence::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Constant: os << "constant:" << start_; break;
        case Kind::Arithmetic: os << "arithmetic:" << start_ << "," << step_; break;
        case Kind::Geometric: os << "geometric:" << start_ << "," << ratio_; break;
        case Kind::Power: os << "power:" << start_ << "," << step_ << "," << exponent_; break;
        case Kind::Table:
            os << "table:";
            for (std::size_t k = 0; k < values_.size(); ++k) os << (k ? "," : "") << values_[k];
            if (tail_) os << "|" << tail_->describe();
            break;
    }
    return os.str();
}

bool Sequence::operator==(const Sequence& o) const {
    if (kind_ != o.kind_ || start_ != o.start_ || step_ != o.step_ || ratio_ != o.ratio_ ||
        exponent_ != o.exponent_ || values_ != o.values_)
        return false;
    if (!tail_ || !o.tail_) return !tail_ && !o.tail_;
    return *tail_ == *o.tail_;
}

namespace {

std::vector<BigInt> split_ints(const std::string& s) {
    std::vector<BigInt> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_bigint(item));
    return out;
}

}  // namespace

Sequence parse_sequence_shorthand(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("sequence shorthand needs 'kind:args': " + text);
    std::string kind = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    if (kind == "table") {
        auto bar = rest.find('|');
        std::optional<Sequence> tail;
        if (bar != std::string::npos) {
            tail = parse_sequence_shorthand(rest.substr(bar + 1));
            rest = rest.substr(0, bar);
        }
        return Sequence::table(rest.empty() ? std::vector<BigInt>{} : split_ints(rest), std::move(tail));
    }
    auto args = split_ints(rest);
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw ConfigError("sequence '" + kind + "' expects " + std::to_string(n) + " arguments");
    };
    if (kind == "constant") {
        need(1);
        return Sequence::constant(args[0]);
    }
    if (kind == "arithmetic") {
        need(2);
        return Sequence::arithmetic(args[0], args[1]);
    }
    if (kind == "geometric") {
        need(2);
        return Sequence::geometric(args[0], args[1]);
    }
    if (kind == "power") {
        need(3);
        if (args[2] < 0 || args[2] > 64) throw ConfigError("power exponent out of range");
        return Sequence::power(args[0], args[1], static_cast<unsigned>(args[2].get_ui()));
    }
    throw ConfigError("unknown sequence kind: " + kind);
}

}  // namespace bratteli
