#include "bratteli/extension.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

namespace bratteli {

// ---------------------------------------------------------------------------
// Subdiagrams

SubdiagramSpec SubdiagramSpec::odometer(std::size_t i) {
    if (i < 1) throw ConfigError("odometer index must be >= 1");
    SubdiagramSpec s;
    s.odometer_ = i;
    s.single_ = {i};
    return s;
}

SubdiagramSpec SubdiagramSpec::per_level(std::vector<std::vector<std::size_t>> sets) {
    if (sets.empty()) throw ConfigError("subdiagram needs at least one level");
    for (auto& w : sets) {
        std::sort(w.begin(), w.end());
        w.erase(std::unique(w.begin(), w.end()), w.end());
        if (w.empty()) throw ConfigError("subdiagram vertex sets must be nonempty");
        if (w.front() < 1) throw ConfigError("subdiagram vertex indices must be >= 1");
    }
    SubdiagramSpec s;
    s.sets_ = std::move(sets);
    return s;
}

std::optional<std::size_t> SubdiagramSpec::odometer_index() const {
    if (odometer_ == 0) return std::nullopt;
    return odometer_;
}

std::optional<std::size_t> SubdiagramSpec::defined_levels() const {
    if (odometer_ != 0) return std::nullopt;
    return sets_.size();
}

const std::vector<std::size_t>& SubdiagramSpec::vertices(std::size_t level) const {
    if (odometer_ != 0) return single_;
    if (level >= sets_.size()) throw WindowError("subdiagram has no level " + std::to_string(level));
    return sets_[level];
}

bool SubdiagramSpec::contains(std::size_t level, std::size_t v) const {
    const auto& w = vertices(level);
    return std::binary_search(w.begin(), w.end(), v);
}

namespace {

Truncation cover(const Truncation& base, std::size_t level, std::size_t vertex) {
    Truncation w = base;
    w.max_level = std::max(w.max_level, level + 1);
    w.max_vertex = std::max(w.max_vertex, vertex + 1);
    return w;
}

std::size_t usable_levels(const SubdiagramSpec& sub, const MeasureVectors& p) {
    std::size_t n = p.levels();
    if (auto d = sub.defined_levels()) n = std::min(n, *d);
    return n;
}

}  // namespace

TailInvarianceReport check_subdiagram_invariance(const DiagramSpec& spec, const SubdiagramSpec& sub,
                                                 const MeasureVectors& p) {
    TailInvarianceReport rep;
    std::size_t levels = usable_levels(sub, p);
    for (std::size_t n = 0; n < levels; ++n)
        if (p.level(n).size() != sub.vertices(n).size())
            throw ConfigError("subdiagram vector at level " + std::to_string(n) + " has the wrong length");
    for (std::size_t n = 0; n + 1 < levels; ++n) {
        const auto& lower = sub.vertices(n);
        const auto& upper = sub.vertices(n + 1);
        LevelMatrix f = incidence(spec, n, cover(spec.window(), n, std::max(lower.back(), upper.back())));
        bool ok = true;
        for (std::size_t a = 0; a < lower.size(); ++a) {
            Rational lhs = 0;
            for (std::size_t b = 0; b < upper.size(); ++b) lhs += f.at(upper[b], lower[a]) * p.level(n + 1)[b];
            if (lhs != p.level(n)[a]) {
                ok = false;
                rep.failures.push_back({n, lower[a], lhs, p.level(n)[a]});
            }
        }
        rep.level_pass.push_back(ok);
        rep.rows_checked.push_back(lower.size());
    }
    return rep;
}

std::vector<Rational> extension_partial_sums(const DiagramSpec& spec, const SubdiagramSpec& sub,
                                             const MeasureVectors& p, std::size_t levels, const Truncation& window) {
    levels = std::min(levels, usable_levels(sub, p));
    if (levels == 0) throw WindowError("no subdiagram levels to sum");
    std::size_t hmax = std::min(levels - 1, window.max_level);
    auto H = heights_through(spec, hmax, window);
    std::vector<Rational> sums;
    Rational s = 0;
    for (std::size_t a = 0; a < sub.vertices(0).size(); ++a) s += H[0].at(sub.vertices(0)[a]) * p.level(0)[a];
    sums.push_back(s);
    for (std::size_t n = 0; n + 1 < levels && n < hmax; ++n) {
        LevelMatrix f = incidence(spec, n, window);
        const auto& upper = sub.vertices(n + 1);
        Rational t = 0;
        bool certified = true;
        for (std::size_t b = 0; b < upper.size() && certified; ++b) {
            std::size_t v = upper[b];
            if (v > f.complete_rows()) {
                certified = false;
                break;
            }
            BigInt outside = 0;
            for (const auto& e : f.row(v)) {
                if (sub.contains(n, e.col)) continue;
                if (e.col > H[n].exact_width()) {
                    certified = false;
                    break;
                }
                outside += e.mult * H[n].values[e.col - 1];
            }
            t += outside * p.level(n + 1)[b];
        }
        if (!certified) break;
        s += t;
        sums.push_back(s);
    }
    return sums;
}

// ---------------------------------------------------------------------------
// Arrival series
//
// Paths that have not yet reached odometer i sit at vertices u > i. The state
// x_n(u) counts them at level n (for the mass: all paths from level 0; for a
// cylinder ending at (m, j): continuations of one such cylinder). At level n
// the diagonal edge from (n, i+1) delivers x_n(i+1) paths into (n+1, i), each
// of odometer measure 1/D_n with D_n = a_0^{(i)} ... a_n^{(i)}, so the series
// is base + sum_n x_n(i+1) / D_n.

namespace {

enum class Boundary {
    Zero,     // x(u) = 0 beyond the state
    TailRep,  // the last entry stands for every vertex beyond it
    Unknown,  // values beyond the state are not known, the state shrinks
};

struct State {
    std::size_t level = 0;
    std::vector<BigInt> x;  // u = i+1, i+2, ...
    BigInt denom = 1;       // prod_{l < level} a_l^{(i)}
};

struct Run {
    State fin;
    std::optional<State> anchor;  // first state at a stationary level
    std::size_t terms = 0;
    Rational partial;
    std::optional<Rational> last_term;
    std::vector<TracePoint> trace;
    std::string stop;
};

std::vector<BigInt> advance(const DiagramSpec& spec, std::size_t i, const State& s, Boundary b) {
    std::size_t len = s.x.size();
    std::size_t out = b == Boundary::Unknown ? len - 1 : len;
    std::vector<BigInt> nx(out);
    for (std::size_t k = 0; k < out; ++k) {
        BigInt next;
        if (k + 1 < len)
            next = s.x[k + 1];
        else if (b == Boundary::TailRep)
            next = s.x[len - 1];
        else
            next = 0;
        nx[k] = spec.diag(s.level, i + 1 + k) * s.x[k] + next;
    }
    return nx;
}

// With a closed-form boundary the stationary certificate sums the tail
// exactly, so the loop only needs this many terms once the state is stationary.
constexpr std::size_t kStationaryTerms = 64;

Run run_arrival(const DiagramSpec& spec, std::size_t i, State s, Boundary b, const Rational& base,
                const SeriesOptions& opts, std::optional<std::size_t> anchor_level) {
    Run r;
    const bool early = b != Boundary::Unknown && anchor_level &&
                       !std::holds_alternative<family::NonStationaryUniform>(spec.params());
    BigInt numer = 0;
    std::optional<BigInt> last_x;
    auto maybe_anchor = [&] {
        if (anchor_level && !r.anchor && s.level >= *anchor_level) r.anchor = s;
    };
    for (std::size_t t = 0; t < opts.max_terms; ++t) {
        maybe_anchor();
        if (early && s.level >= *anchor_level && t >= kStationaryTerms) break;
        if (s.x.empty()) {
            r.stop = "dependence cone exhausted at level " + std::to_string(s.level);
            break;
        }
        BigInt a;
        std::vector<BigInt> nx;
        try {
            a = spec.diag(s.level, i);
            nx = advance(spec, i, s, b);
        } catch (const WindowError& e) {
            r.stop = e.what();
            break;
        }
        s.denom *= a;
        numer = numer * a + s.x[0];
        last_x = s.x[0];
        if (opts.keep_trace) {
            Rational term(s.x[0], s.denom), part(numer, s.denom);
            term.canonicalize();
            part.canonicalize();
            r.trace.push_back({s.level, term, base + part});
        }
        s.x = std::move(nx);
        ++s.level;
        ++r.terms;
    }
    maybe_anchor();
    Rational part(numer, s.denom);
    part.canonicalize();
    r.partial = base + part;
    if (last_x) {
        Rational lt(*last_x, s.denom);
        lt.canonicalize();
        r.last_term = lt;
    }
    r.fin = std::move(s);
    return r;
}

std::string str(const Rational& q) { return to_fraction_string(q); }

Rational ratio(const BigInt& a, const BigInt& b) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

// Levels >= n0 share one diagonal: d(u).  With d = d(i) and y_n = x_n / d^{n-L}
// the state evolves as y_{n+1} = M y_n, M upper bidiagonal with diagonal
// delta_u = d(u)/d (the tail representative picks up one extra edge) and
// superdiagonal 1/d, and the remaining tail is e_1^T (I - M)^{-1} y_L / (D d).
void stationary_certificate(const DiagramSpec& spec, std::size_t i, const Run& run, Boundary b, std::size_t n0,
                            ConvergenceResult& res) {
    const State* st = nullptr;
    if (b != Boundary::Unknown && run.fin.level >= n0 && !run.fin.x.empty())
        st = &run.fin;
    else if (run.anchor && !run.anchor->x.empty())
        st = &*run.anchor;
    if (!st) {
        res.status = SeriesStatus::Undetermined;
        res.witness = "no computed state at the stationary levels (onset " + std::to_string(n0) + ")";
        return;
    }
    const std::size_t L = st->level;
    const std::size_t K = st->x.size();
    const BigInt d = spec.diag(L, i);
    std::vector<Rational> delta(K);
    for (std::size_t k = 0; k < K; ++k) {
        BigInt g = spec.diag(L, i + 1 + k);
        if (b == Boundary::TailRep && k + 1 == K) g += 1;
        delta[k] = ratio(g, d);
    }

    // Divergence: a vertex u whose count grows at least as fast as D_n keeps
    // feeding vertex i+1, so t_n >= x_L(u) / (D_{L-1} d^{u-i}) for n >= L+u-i-1.
    for (std::size_t k = 0; k < K; ++k) {
        if (delta[k] < 1 || st->x[k] == 0) continue;
        std::size_t u = i + 1 + k;
        Rational eps = ratio(st->x[k], BigInt(st->denom * ipow(d, k + 1)));
        std::size_t from = L + k;
        std::ostringstream w;
        w << "t_n >= " << str(eps) << " for all n >= " << from << ": vertex " << u << " grows by "
          << str(delta[k] * d) << " >= a^(" << i << ") = " << d << " per level";
        if (run.last_term && run.fin.level - 1 >= from && *run.last_term < eps)
            throw CertificationError("internal: lower bound violated by a computed term");
        res.status = SeriesStatus::Infinite;
        res.certificate = Certificate::TermLowerBound;
        res.witness = w.str();
        return;
    }
    if (b == Boundary::Unknown) {
        res.status = SeriesStatus::Undetermined;
        if (auto seq = spec.diagonal_at(L))
            if (auto idx = seq->first_at_least(i, d)) {
                res.witness = "vertex " + std::to_string(*idx + 1) + " dominates a^(" + std::to_string(i) +
                              ") but lies outside the certified window";
                return;
            }
        res.witness = "state is not finitely representable in this window";
        return;
    }

    // All delta < 1: finite. Exact tail by back substitution.
    const BigInt& D = st->denom;
    std::vector<Rational> z(K);
    for (std::size_t k = K; k-- > 0;) {
        Rational rhs = st->x[k];
        if (k + 1 < K) rhs += z[k + 1] / d;
        z[k] = rhs / (1 - delta[k]);
    }
    Rational exact_tail = z[0] / (Rational(D) * d);
    exact_tail.canonicalize();

    // Weights with w^T M <= q w^T give t_n <= q^{n-L} (w . y_L) / (w_1 D d).
    Rational q = delta[0];
    if (K > 1) {
        Rational rho = *std::max_element(delta.begin() + 1, delta.end());
        Rational mid = (1 + rho) / 2;
        if (mid > q) q = mid;
    }
    std::vector<Rational> w(K);
    w[0] = 1;
    for (std::size_t k = 1; k < K; ++k) w[k] = w[k - 1] / (d * (q - delta[k]));
    Rational wy = 0;
    for (std::size_t k = 0; k < K; ++k) wy += w[k] * st->x[k];
    Rational bound = wy / (Rational(D) * d * (1 - q));
    bound.canonicalize();
    // The state may sit before the last computed term (Unknown boundary is
    // excluded above, so here st == &run.fin and the partial sum lines up).
    res.status = SeriesStatus::Finite;
    res.tail_bound = bound;
    res.exact_value = res.partial_sum + exact_tail;
    res.certificate = K == 1 ? Certificate::GeometricRatio : Certificate::WeightedRatio;
    std::ostringstream os;
    if (K == 1)
        os << "t_{n+1}/t_n = " << str(q) << " for all n >= " << L;
    else
        os << "weighted ratio q = " << str(q) << " over " << K << " transfer states from level " << L;
    os << "; tail summed exactly by the transfer resolvent";
    res.witness = os.str();
}

Rational factorial_power(const Rational& s, std::size_t k) {
    Rational r = 1;
    for (std::size_t j = 1; j <= k; ++j) r = r * s / static_cast<unsigned long>(j);
    return r;
}

// Every vertex carries a_n at level n. From a state at level L the remaining
// value is sum_u x_L(u)/D_{L-1} * e_{u-i}(1/a_L, 1/a_{L+1}, ...), and
// e_k <= s^k/k! with s = sum_{l >= L} 1/a_l.
void uniform_certificate(const DiagramSpec& spec, const Sequence& seq, std::size_t i, const Run& run, Boundary b,
                         const std::optional<EndVertex>& cyl, ConvergenceResult& res) {
    (void)spec;
    switch (seq.reciprocal_nature()) {
        case SeriesNature::Unknown:
            res.status = SeriesStatus::Undetermined;
            res.witness = "sum 1/a_n undecidable: table without tail rule";
            return;
        case SeriesNature::Divergent: {
            res.status = SeriesStatus::Infinite;
            auto c0 = seq.constant_from();
            if (c0 && *c0 == 0) {
                BigInt c = seq.at(0);
                std::ostringstream w;
                res.certificate = Certificate::TermLowerBound;
                if (!cyl) {
                    w << "t_n = (" << c << "+1)^n / " << c << "^(n+1) >= 1/" << c << " for all n";
                } else {
                    std::size_t K = cyl->index - i;
                    w << "t_n >= 1/" << c << "^" << cyl->length + K << " for n >= " << cyl->length + K - 1;
                }
                res.witness = w.str();
            } else {
                res.certificate = Certificate::DivergentMinorant;
                res.witness = !cyl ? "partial sums dominate 1 + sum 1/a_n, which diverges for " + seq.describe()
                                   : "value dominates a positive multiple of sum 1/a_n, which diverges for " +
                                         seq.describe();
            }
            return;
        }
        case SeriesNature::Convergent: break;
    }
    const State& st = run.fin;
    const std::size_t L = st.level;
    const std::size_t K = st.x.size();
    if (!cyl && K == 1) {
        if (auto q = seq.term_ratio_bound_from(L)) {
            Rational next = ratio(st.x[0], BigInt(st.denom * seq.at(L)));
            Rational bound = next / (1 - *q);
            bound.canonicalize();
            res.status = SeriesStatus::Finite;
            res.tail_bound = bound;
            res.certificate = Certificate::GeometricRatio;
            res.witness = "t_{n+1}/t_n = (a_n+1)/a_{n+1} <= " + str(*q) + " for all n >= " + std::to_string(L);
            return;
        }
    }
    Rational s = seq.reciprocal_tail_bound(L);
    Rational bound = 0;
    for (std::size_t k = 0; k < K; ++k) {
        Rational term = ratio(st.x[k], st.denom) * factorial_power(s, k + 1);
        if (b == Boundary::TailRep && k + 1 == K) {
            if (s >= 1) {
                res.status = SeriesStatus::Undetermined;
                res.witness = "reciprocal tail bound " + str(s) + " not below 1 at level " + std::to_string(L);
                return;
            }
            term /= (1 - s);
        }
        bound += term;
    }
    bound.canonicalize();
    res.status = SeriesStatus::Finite;
    res.tail_bound = bound;
    res.certificate = Certificate::ReciprocalComparison;
    res.witness = "sum_{l >= " + std::to_string(L) + "} 1/a_l <= " + to_decimal_string(s, 6) + " bounds the tail";
}

ConvergenceResult certify(const DiagramSpec& spec, std::size_t i, Run run, Boundary b,
                          const std::optional<EndVertex>& cyl) {
    ConvergenceResult res;
    res.partial_sum = run.partial;
    res.terms_used = run.terms;
    res.trace = std::move(run.trace);
    if (auto* nu = std::get_if<family::NonStationaryUniform>(&spec.params())) {
        uniform_certificate(spec, nu->a, i, run, b, cyl, res);
    } else if (auto n0 = spec.stationary_from_level()) {
        stationary_certificate(spec, i, run, b, *n0, res);
    } else {
        res.status = SeriesStatus::Undetermined;
        res.witness = "family has no tail rule beyond its table";
    }
    if (res.status == SeriesStatus::Undetermined && !run.stop.empty()) res.witness += " (" + run.stop + ")";
    return res;
}

}  // namespace

ConvergenceResult dio_extension_mass(const DiagramSpec& spec, std::size_t i, const SeriesOptions& opts) {
    if (!spec.is_dio()) throw ConfigError("DIO extension mass needs a DIO family");
    if (i < 1) throw ConfigError("odometer index must be >= 1");
    State s;
    Boundary b;
    if (auto v0 = spec.uniform_tail_from()) {
        s.x.assign(std::max(*v0, i + 1) - i, BigInt(1));
        b = Boundary::TailRep;
    } else {
        std::size_t M = spec.window().max_vertex;
        if (M <= i) throw WindowError("window maxVertex must exceed the odometer index");
        s.x.assign(M - i, BigInt(1));
        b = Boundary::Unknown;
    }
    Run run = run_arrival(spec, i, std::move(s), b, Rational(1), opts, spec.stationary_from_level());
    if (run.terms == 0) throw WindowError("window too narrow to compute a term exactly: " + run.stop);
    return certify(spec, i, std::move(run), b, std::nullopt);
}

ConvergenceResult extended_cylinder_measure(const DiagramSpec& spec, std::size_t i, EndVertex cyl,
                                            const SeriesOptions& opts) {
    if (!spec.is_dio()) throw ConfigError("extended cylinder measures need a DIO family");
    if (i < 1 || cyl.index < 1) throw ConfigError("vertex indices must be >= 1");
    if (cyl.index < i) return ConvergenceResult::exact(0, "cylinder cannot reach the odometer");
    BigInt D = 1;
    for (std::size_t l = 0; l < cyl.length; ++l) D *= spec.diag(l, i);
    if (cyl.index == i) return ConvergenceResult::exact(Rational(BigInt(1), D), "odometer product");
    State s;
    s.level = cyl.length;
    s.denom = D;
    s.x.assign(cyl.index - i, BigInt(0));
    s.x.back() = 1;
    Run run = run_arrival(spec, i, std::move(s), Boundary::Zero, Rational(0), opts, spec.stationary_from_level());
    if (run.terms == 0) throw WindowError("cannot compute any term of the cylinder series: " + run.stop);
    return certify(spec, i, std::move(run), Boundary::Zero, cyl);
}

ConvergenceResult extension_total_mass(const DiagramSpec& spec, const SubdiagramSpec& sub, const MeasureVectors& p,
                                       const SeriesOptions& opts) {
    auto rep = check_subdiagram_invariance(spec, sub, p);
    if (!rep.passed()) {
        auto v = *rep.first_violation();
        throw ConfigError("p fails tail invariance on the subdiagram at level " + std::to_string(v.level) +
                          ", vertex " + std::to_string(v.vertex));
    }
    if (auto i = sub.odometer_index(); i && spec.is_dio()) {
        OdometerMeasure om(spec, *i);
        if (p == om.subdiagram_vectors(p.levels())) return dio_extension_mass(spec, *i, opts);
    }
    auto sums = extension_partial_sums(spec, sub, p, std::min(p.levels(), opts.max_terms + 1), spec.window());
    ConvergenceResult res;
    res.partial_sum = sums.back();
    res.terms_used = sums.size() - 1;
    res.witness = "no tail certificate for a general subdiagram";
    return res;
}

ExtendedMeasure extend_measure(const DiagramSpec& spec, std::size_t i, const SeriesOptions& opts, bool normalize) {
    ExtendedMeasure mu{spec, i, dio_extension_mass(spec, i, opts), false, opts};
    mu.normalized = normalize && mu.mass.finite();
    return mu;
}

ConvergenceResult cylinder_measure(const ExtendedMeasure& mu, const CylinderSpec& cyl) {
    EndVertex ev = resolve_cylinder(mu.spec, cyl);
    ConvergenceResult v = extended_cylinder_measure(mu.spec, mu.index, ev, mu.options);
    if (!mu.normalized || !v.finite()) return v;
    const ConvergenceResult& m = mu.mass;
    if (v.exact_value && m.exact_value) {
        Rational q = *v.exact_value / *m.exact_value;
        q.canonicalize();
        auto r = ConvergenceResult::exact(q, "normalized by the exact mass");
        r.terms_used = v.terms_used;
        return r;
    }
    ConvergenceResult r = v;
    Rational lo = v.partial_sum / m.upper();
    Rational hi = v.upper() / m.partial_sum;
    lo.canonicalize();
    hi.canonicalize();
    r.partial_sum = lo;
    r.tail_bound = hi - lo;
    r.exact_value.reset();
    r.witness = v.witness + "; normalized by the mass interval";
    return r;
}

MeasureVectors exact_vectors(const ExtendedMeasure& mu, std::size_t levels, std::size_t width) {
    return MeasureVectors::tabulate(levels, width, [&](std::size_t n, std::size_t j) -> Rational {
        ConvergenceResult v = cylinder_measure(mu, EndVertex{n, j});
        if (!v.exact_value)
            throw CertificationError("extended measure value at (" + std::to_string(n) + "," + std::to_string(j) +
                                     ") is not known exactly");
        return *v.exact_value;
    });
}

std::size_t ClassificationReport::finite_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.mass.finite(); }));
}

ClassificationReport classify_ergodic_measures(const DiagramSpec& spec, std::size_t i_max, const SeriesOptions& opts,
                                               kernels::Exec exec) {
    if (!spec.is_dio()) throw ConfigError("ergodic classification needs a DIO family");
    if (i_max < 1) throw ConfigError("iMax must be >= 1");
    ClassificationReport rep;
    rep.entries.resize(i_max);
    std::exception_ptr err;
    // Entries are independent; each thread writes only its own slot.
#pragma omp parallel for schedule(dynamic) if (exec == kernels::Exec::Parallel)
    for (std::size_t k = 0; k < i_max; ++k) {
        try {
            ClassificationEntry e{k + 1, dio_extension_mass(spec, k + 1, opts), std::nullopt};
            if (e.mass.finite()) e.normalizing_mass = e.mass.representative();
            rep.entries[k] = std::move(e);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    for (const auto& e : rep.entries)
        if (e.mass.status == SeriesStatus::Undetermined) rep.partial = true;
    rep.notes.push_back(
        "after normalization the finite entries are all the ergodic tail-invariant probability measures");
    rep.notes.push_back("distinct entries are mutually singular: their saturations are pairwise disjoint");
    if (rep.partial) rep.notes.push_back("classification partial: some entries are undetermined");
    return rep;
}

std::optional<ClosedForm> closed_form_oracles(const DiagramSpec& spec, std::size_t i) {
    if (auto* ak = std::get_if<family::StationaryAK>(&spec.params())) {
        if (i > 1) return ClosedForm{Criterion::Divergent, std::nullopt, "(a-k+1)/(a-k) > 1 for i > 1"};
        if (ak->k == 1) return ClosedForm{Criterion::Divergent, std::nullopt, "k = 1"};
        Rational m = 1 + Rational(BigInt(1), BigInt(ak->k - 1));
        m.canonicalize();
        return ClosedForm{Criterion::Convergent, m, "1 + 1/(k-1)"};
    }
    if (auto* dec = std::get_if<family::StationaryDecreasing>(&spec.params())) {
        // sum_{n > i} prod_{v=i+1..n} 1/(a_i - a_v), requires a_i above the tail
        const Sequence& a = dec->a;
        BigInt ai = a.at(i - 1);
        auto sup = a.sup_from(i);
        auto c0 = a.constant_from();
        if (!sup || *sup >= ai || !c0) return std::nullopt;
        std::size_t tail_vertex = std::max(*c0 + 1, i + 1);
        BigInt c = a.at(tail_vertex - 1);
        Rational rho(BigInt(1), BigInt(ai - c));
        rho.canonicalize();
        if (rho >= 1) return ClosedForm{Criterion::Divergent, std::nullopt, "a_i - a_tail = 1"};
        Rational prod = 1, sum = 0;
        for (std::size_t v = i + 1; v <= tail_vertex; ++v) {
            prod /= Rational(ai - a.at(v - 1));
            sum += prod;
        }
        sum += prod * rho / (1 - rho);
        sum.canonicalize();
        return ClosedForm{Criterion::Convergent, 1 + sum, "1 + sum_n prod 1/(a_i - a_v)"};
    }
    if (std::holds_alternative<family::StationaryIncreasing>(spec.params()))
        return ClosedForm{Criterion::Divergent, std::nullopt, "a_v increases: no finite extension"};
    if (auto* nu = std::get_if<family::NonStationaryUniform>(&spec.params())) {
        switch (nu->a.reciprocal_nature()) {
            case SeriesNature::Convergent: return ClosedForm{Criterion::Convergent, std::nullopt, "sum 1/a_n < inf"};
            case SeriesNature::Divergent: return ClosedForm{Criterion::Divergent, std::nullopt, "sum 1/a_n = inf"};
            case SeriesNature::Unknown: return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace bratteli
