#pragma once

#include "cable/cable_model.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace cable {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModalSolution {
    std::vector<double> frequencies;  // Hz, ascending
    std::vector<double> omegas;       // rad/s
    Eigen::MatrixXd mode_shapes;      // one unit-norm column per mode
    std::vector<double> residuals;    // ‖K w − ω² M w‖
    int discarded_count = 0;
};

// Dense nonsymmetric eigen-solve of M⁻¹K. Throws SolverError when fewer than
// n_modes admissible eigenvalues exist.
ModalSolution solve_modes(const AssembledSystem& system, int n_modes);

enum class EigenMethod {
    dense,     // solve_modes
    krylov,    // shift-invert Arnoldi; throws if it does not converge
    automatic  // krylov, falling back to dense
};

// Lowest n_modes frequencies (Hz) only.
std::vector<double> lowest_frequencies(const AssembledSystem& system, int n_modes,
                                       EigenMethod method = EigenMethod::automatic);

}  // namespace cable
