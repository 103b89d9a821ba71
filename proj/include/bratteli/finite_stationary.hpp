#pragma once

#include "bratteli/rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

// Finite stationary standard diagrams with a simple hat. A = F^T, so row i
// lists the edges arriving at vertex i; G(A) has an edge i -> j iff a_ij > 0.
namespace bratteli::finite {

using IntMatrix = std::vector<std::vector<BigInt>>;

// Classes are numbered so that beta > alpha whenever beta has access to
// alpha (A is then block lower triangular); ties go to the smaller minimum vertex.
struct ClassDecomposition {
    std::size_t size = 0;
    std::vector<std::vector<std::size_t>> classes;  // 1-based vertices, ascending
    std::vector<std::size_t> class_of;              // vertex - 1 -> class id
    std::vector<std::pair<std::size_t, std::size_t>> reduced_edges;  // (beta, alpha), direct access
    std::vector<std::vector<bool>> access;          // access[beta][alpha]: beta > alpha strictly

    bool has_access(std::size_t beta, std::size_t alpha) const { return access[beta][alpha]; }
    // Vertices with access to class alpha (including alpha itself).
    std::vector<std::size_t> access_set(std::size_t alpha) const;
    std::vector<std::vector<double>> class_matrix(const IntMatrix& A, std::size_t alpha) const;
};

ClassDecomposition decompose(const IntMatrix& A);

struct RadiusBound {
    double lo = 0, hi = 0;
    bool exact = false;  // 1x1 blocks
    std::size_t iterations = 0;
    double value() const { return (lo + hi) / 2; }
};

// Collatz-Wielandt bounds from power iteration on B + I. Throws if the
// iteration cap is hit first.
RadiusBound spectral_radius(const std::vector<std::vector<double>>& block, double tol = 1e-12,
                            std::size_t max_iterations = 200000);

// Throws CertificationError naming the pair when a comparison is ambiguous.
std::vector<std::size_t> distinguished_classes(const ClassDecomposition& dec, const std::vector<RadiusBound>& radii,
                                               double tol = 1e-12);

struct DistinguishedData {
    std::size_t alpha = 0;
    RadiusBound rho;
    std::vector<double> xi;              // sum = 1
    std::vector<std::size_t> support;    // 1-based, exactly the access set
    double residual = 0;                 // ||A xi - rho xi||_inf
};

DistinguishedData distinguished_eigenvector(const IntMatrix& A, const ClassDecomposition& dec, std::size_t alpha,
                                            const RadiusBound& rho, double tol = 1e-12);

struct StationaryMeasure {
    DistinguishedData data;
    // mu([e(v0, w)]) for a path ending at w on level n >= 1: xi(w) / lambda^{n-1}
    double cylinder(std::size_t level, std::size_t w) const;
};

struct FiniteStationaryReport {
    ClassDecomposition decomposition;
    std::vector<RadiusBound> radii;
    std::vector<bool> distinguished;
    std::vector<StationaryMeasure> measures;
    std::vector<std::string> notes;
    double tol = 1e-12;
};

FiniteStationaryReport measures_finite_stationary(const IntMatrix& A, double tol = 1e-12);

void validate_matrix(const IntMatrix& A);

}  // namespace bratteli::finite
