#include "bratteli/finite_stationary.hpp"

#include "bratteli/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace bratteli::finite {

void validate_matrix(const IntMatrix& A) {
    const std::size_t n = A.size();
    if (n == 0) throw ConfigError("matrix must have at least one vertex");
    for (std::size_t i = 0; i < n; ++i) {
        if (A[i].size() != n) throw ConfigError("matrix must be square");
        bool row = false, col = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (A[i][j] < 0) throw ConfigError("matrix entries must be nonnegative");
            row = row || A[i][j] > 0;
            col = col || A[j][i] > 0;
        }
        if (!row || !col)
            throw ConfigError("vertex " + std::to_string(i + 1) + " needs an incoming and an outgoing edge");
    }
}

std::vector<std::size_t> ClassDecomposition::access_set(std::size_t alpha) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 1; v <= size; ++v) {
        std::size_t c = class_of[v - 1];
        if (c == alpha || access[c][alpha]) out.push_back(v);
    }
    return out;
}

std::vector<std::vector<double>> ClassDecomposition::class_matrix(const IntMatrix& A, std::size_t alpha) const {
    const auto& e = classes.at(alpha);
    std::vector<std::vector<double>> m(e.size(), std::vector<double>(e.size()));
    for (std::size_t r = 0; r < e.size(); ++r)
        for (std::size_t c = 0; c < e.size(); ++c) m[r][c] = A[e[r] - 1][e[c] - 1].get_d();
    return m;
}

ClassDecomposition decompose(const IntMatrix& A) {
    validate_matrix(A);
    const std::size_t n = A.size();

    // Tarjan
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    int counter = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w = 0; w < n; ++w) {
            if (A[v][w] == 0) continue;
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w + 1);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] < 0) visit(v);

    const std::size_t m = comps.size();
    std::vector<std::size_t> comp_of(n);
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t v : comps[c]) comp_of[v - 1] = c;
    std::vector<std::vector<bool>> direct(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (A[i][j] > 0 && comp_of[i] != comp_of[j]) direct[comp_of[i]][comp_of[j]] = true;

    // Kahn: a class is placed once every class it reaches directly is placed.
    std::vector<std::size_t> pending(m, 0), order;
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t a = 0; a < m; ++a)
            if (direct[b][a]) ++pending[b];
    std::vector<bool> placed(m, false);
    while (order.size() < m) {
        std::size_t best = m;
        for (std::size_t c = 0; c < m; ++c)
            if (!placed[c] && pending[c] == 0 && (best == m || comps[c].front() < comps[best].front())) best = c;
        placed[best] = true;
        order.push_back(best);
        for (std::size_t b = 0; b < m; ++b)
            if (direct[b][best]) --pending[b];
    }
    std::vector<std::size_t> id(m);
    for (std::size_t k = 0; k < m; ++k) id[order[k]] = k;

    ClassDecomposition dec;
    dec.size = n;
    dec.classes.resize(m);
    for (std::size_t c = 0; c < m; ++c) dec.classes[id[c]] = comps[c];
    dec.class_of.resize(n);
    for (std::size_t v = 0; v < n; ++v) dec.class_of[v] = id[comp_of[v]];
    dec.access.assign(m, std::vector<bool>(m, false));
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t a = 0; a < m; ++a)
            if (direct[b][a]) {
                dec.reduced_edges.emplace_back(id[b], id[a]);
                dec.access[id[b]][id[a]] = true;
            }
    std::sort(dec.reduced_edges.begin(), dec.reduced_edges.end());
    // Accessed classes carry smaller ids, so one ascending pass closes the relation.
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t a = 0; a < b; ++a)
            if (dec.access[b][a])
                for (std::size_t c = 0; c < a; ++c)
                    if (dec.access[a][c]) dec.access[b][c] = true;
    return dec;
}

namespace {

struct Perron {
    RadiusBound bound;
    Eigen::VectorXd vec;
};

Perron perron(const std::vector<std::vector<double>>& block, double tol, std::size_t max_iterations) {
    const std::size_t k = block.size();
    if (k == 0) throw ConfigError("empty block");
    Perron out;
    if (k == 1) {
        out.bound = {block[0][0], block[0][0], true, 0};
        out.vec = Eigen::VectorXd::Ones(1);
        return out;
    }
    Eigen::MatrixXd B(k, k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) B(r, c) = block[r][c];
    B += Eigen::MatrixXd::Identity(k, k);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(k);
    double lo = 0, hi = 0;
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        Eigen::VectorXd y = B * x;
        lo = (y.array() / x.array()).minCoeff();
        hi = (y.array() / x.array()).maxCoeff();
        x = y / y.maxCoeff();
        if (hi - lo <= tol) {
            out.bound = {lo - 1, hi - 1, false, it};
            out.vec = x;
            return out;
        }
    }
    std::ostringstream os;
    os.precision(17);
    os << "power iteration cap reached with bounds [" << lo - 1 << ", " << hi - 1 << "]";
    throw CertificationError(os.str());
}

}  // namespace

RadiusBound spectral_radius(const std::vector<std::vector<double>>& block, double tol, std::size_t max_iterations) {
    return perron(block, tol, max_iterations).bound;
}

std::vector<std::size_t> distinguished_classes(const ClassDecomposition& dec, const std::vector<RadiusBound>& radii,
                                               double tol) {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < dec.classes.size(); ++a) {
        bool dist = true;
        for (std::size_t b = 0; b < dec.classes.size(); ++b) {
            if (!dec.has_access(b, a)) continue;
            const auto &ra = radii[a], &rb = radii[b];
            if (ra.exact && rb.exact) {
                if (ra.lo <= rb.lo) dist = false;
                continue;
            }
            double gap = ra.value() - rb.value();
            if (std::abs(gap) <= 2 * tol)
                throw CertificationError("radii of classes " + std::to_string(a) + " and " + std::to_string(b) +
                                         " are not separated at tolerance");
            if (gap < 0) dist = false;
        }
        if (dist) out.push_back(a);
    }
    return out;
}

DistinguishedData distinguished_eigenvector(const IntMatrix& A, const ClassDecomposition& dec, std::size_t alpha,
                                            const RadiusBound& rho, double tol) {
    const std::size_t n = A.size();
    const double r = rho.value();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    auto p = perron(dec.class_matrix(A, alpha), tol, 200000);
    for (std::size_t k = 0; k < dec.classes[alpha].size(); ++k) x(dec.classes[alpha][k] - 1) = p.vec(k);

    // Classes reaching alpha have larger ids and depend only on smaller ones.
    for (std::size_t b = alpha + 1; b < dec.classes.size(); ++b) {
        if (!dec.has_access(b, alpha)) continue;
        const auto& e = dec.classes[b];
        const std::size_t k = e.size();
        Eigen::MatrixXd M(k, k);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) M(i, j) = (i == j ? r : 0.0) - A[e[i] - 1][e[j] - 1].get_d();
            for (std::size_t w = 0; w < n; ++w)
                if (dec.class_of[w] != b && A[e[i] - 1][w] > 0) rhs(i) += A[e[i] - 1][w].get_d() * x(w);
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
        Eigen::VectorXd sol = lu.solve(rhs);
        for (std::size_t i = 0; i < k; ++i) {
            if (!(sol(i) > 0)) throw CertificationError("ill-conditioned solve on class " + std::to_string(b));
            x(e[i] - 1) = sol(i);
        }
    }
    x /= x.sum();

    Eigen::MatrixXd Ad(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Ad(i, j) = A[i][j].get_d();
    DistinguishedData d;
    d.alpha = alpha;
    d.rho = rho;
    d.residual = (Ad * x - r * x).cwiseAbs().maxCoeff();
    d.xi.assign(x.data(), x.data() + n);
    d.support = dec.access_set(alpha);
    return d;
}

double StationaryMeasure::cylinder(std::size_t level, std::size_t w) const {
    if (level < 1) throw ConfigError("finite stationary cylinders start at level 1");
    if (w < 1 || w > data.xi.size()) throw WindowError("vertex outside the diagram");
    return data.xi[w - 1] / std::pow(data.rho.value(), static_cast<double>(level - 1));
}

FiniteStationaryReport measures_finite_stationary(const IntMatrix& A, double tol) {
    FiniteStationaryReport rep;
    rep.tol = tol;
    rep.decomposition = decompose(A);
    const auto& dec = rep.decomposition;
    for (std::size_t c = 0; c < dec.classes.size(); ++c)
        rep.radii.push_back(spectral_radius(dec.class_matrix(A, c), tol));
    auto dist = distinguished_classes(dec, rep.radii, tol);
    rep.distinguished.assign(dec.classes.size(), false);
    for (std::size_t a : dist) {
        rep.distinguished[a] = true;
        if (rep.radii[a].value() <= 0) {
            rep.notes.push_back("class " + std::to_string(a) + " has zero radius and carries no measure");
            continue;
        }
        rep.measures.push_back({distinguished_eigenvector(A, dec, a, rep.radii[a], tol)});
    }
    rep.notes.push_back("each measure is, up to a constant, the extension of the measure on its class subdiagram");
    rep.notes.push_back("levels count from the simple hat: a path ending on level n has value xi(w)/lambda^(n-1)");
    return rep;
}

}  // namespace bratteli::finite
