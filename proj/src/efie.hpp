#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "analytic.hpp"
#include "rwg.hpp"

namespace gpb {

struct AssemblyOptions {
    int far_rule = 3;          // triangle quadrature points, well-separated pairs
    int near_rule = 7;         // near pairs and the smooth part of singular pairs
    double near_ratio = 2.0;   // centroid distance / max triangle size threshold
    bool image_ground = false; // add the perfect-ground image term (z = 0 plane)
};

/// Dense Galerkin EFIE impedance matrix at one frequency, row-major.
struct SystemMatrix {
    int n = 0;
    double frequency_hz = 0.0;
    std::vector<std::complex<double>> z;  // n*n, z[row*n + col]
    AssemblyOptions options;

    std::complex<double>& at(int r, int c) { return z[static_cast<std::size_t>(r) * n + c]; }
    const std::complex<double>& at(int r, int c) const {
        return z[static_cast<std::size_t>(r) * n + c];
    }
};

struct Excitation {
    std::complex<double> voltage = {1.0, 0.0};  // V across the delta gap
    double gap_mm = 2.0;                        // recorded; the gap is idealized
};

struct CurrentSolution {
    const RwgBasisSet* basis = nullptr;
    std::shared_ptr<RwgBasisSet> owned_basis;  // set when the solver built the basis itself
    double frequency_hz = 0.0;
    std::vector<std::complex<double>> coeffs;  // A (edge currents)
    std::complex<double> voltage;
    std::complex<double> i_feed;
    std::complex<double> zin;
    double residual = 0.0;  // ||Zx - v|| / ||v||
    double rcond = 0.0;     // LAPACK reciprocal condition estimate
    bool image_ground = false;
};

/// Assemble the impedance matrix. Throws std::runtime_error on non-finite
/// entries (reported with the offending basis pair).
SystemMatrix assemble(const RwgBasisSet& basis, const MediumParams& medium,
                      const AssemblyOptions& options = {});

/// Dense direct solve with delta-gap excitation on the basis feed edges.
/// Throws std::runtime_error when the condition estimate exceeds 1e12 or
/// the residual check fails.
CurrentSolution solve(const SystemMatrix& matrix, const RwgBasisSet& basis,
                      const Excitation& excitation);

/// Convenience: build + assemble + solve in image-ground mode for an
/// element mesh lying entirely above z = 0 (throws otherwise).
CurrentSolution solve_image_ground(const TriMesh& element_mesh, const MediumParams& medium,
                                   const Excitation& excitation,
                                   AssemblyOptions options = {});

/// |J| (A/m) at each triangle centroid; masked triangles carry zero.
std::vector<double> surface_current_map(const CurrentSolution& solution);

}  // namespace gpb
